#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "izeta/geometry.hpp"
#include "izeta/graph.hpp"
#include "izeta/gtrh.hpp"
#include "izeta/spectra.hpp"
#include "izeta/zeta.hpp"

namespace izeta {

// Locale-independent shortest round-trip decimal form.
inline std::string fmt_double(double x) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc())
        throw std::runtime_error("fmt_double: conversion failed");
    return std::string(buf, p);
}

struct ConfigError : std::runtime_error {
    int line;
    std::string field;
    ConfigError(int line_, std::string field_, const std::string& what_)
        : std::runtime_error("config line " + std::to_string(line_) + ", field '" + field_ +
                             "': " + what_),
          line(line_),
          field(std::move(field_)) {}
};

// delta = delta_coeff * chi^delta_exponent; kappa, h_hat as in the trial
// parameters. Key/value config file with [campaign] and [schedule] sections.
struct CampaignConfig {
    std::vector<SchedulePoint> schedule;
    double kappa = 0.5;
    double delta_coeff = 1.0;
    double delta_exponent = -0.375;
    double h_hat = 4.0;
    std::uint64_t seed_root = 1;
    std::string output_dir = ".";
    bool emit_plots = false;
    bool archive_graphs = true;
    int workers = 1;
    int max_resamples = 10;

    double delta_for(double chi) const { return delta_coeff * std::pow(chi, delta_exponent); }
};

inline void validate_campaign_config(const CampaignConfig& cfg) {
    if (cfg.schedule.empty()) throw ConfigError(0, "schedule", "no schedule points");
    for (std::size_t i = 0; i < cfg.schedule.size(); ++i) {
        const auto& pt = cfg.schedule[i];
        if (pt.n < 2) throw ConfigError(0, "schedule", "n must be >= 2");
        if (pt.trials < 1) throw ConfigError(0, "schedule", "trials must be >= 1");
        if (!(pt.chi > 0.0)) throw ConfigError(0, "schedule", "chi must be positive");
        if (!(pt.chi * std::log(static_cast<double>(pt.n)) < pt.n))
            throw ConfigError(0, "schedule", "rho = chi log n must stay below n");
        if (i > 0 && pt.n <= cfg.schedule[i - 1].n)
            throw ConfigError(0, "schedule", "n values must be strictly increasing");
    }
    if (!(cfg.kappa > 0.0) || !(cfg.kappa < 1.0))
        throw ConfigError(0, "kappa", "kappa must lie in (0, 1)");
    if (cfg.workers < 1) throw ConfigError(0, "workers", "workers must be >= 1");
    if (cfg.max_resamples < 0) throw ConfigError(0, "max_resamples", "must be >= 0");
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& text, int line, const std::string& field) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [p, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || p != end)
        throw ConfigError(line, field, "cannot parse number '" + text + "'");
    return value;
}

inline bool parse_bool(const std::string& text, int line, const std::string& field) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError(line, field, "expected true/false, got '" + text + "'");
}

}  // namespace detail

// Sections [campaign] (scalar keys) and [schedule] (repeated
// "point = n chi trials" lines); '#' starts a comment.
inline CampaignConfig parse_campaign_config(std::istream& is, CampaignConfig cfg = {}) {
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, line, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "campaign" && section != "schedule")
                throw ConfigError(lineno, section, "unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, line, "expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (section == "schedule") {
            if (key != "point") throw ConfigError(lineno, key, "only 'point' allowed in [schedule]");
            std::istringstream ps(value);
            SchedulePoint pt;
            if (!(ps >> pt.n >> pt.chi >> pt.trials))
                throw ConfigError(lineno, key, "expected 'n chi trials'");
            cfg.schedule.push_back(pt);
        } else if (section == "campaign") {
            if (key == "kappa") cfg.kappa = detail::parse_number<double>(value, lineno, key);
            else if (key == "delta_coeff") cfg.delta_coeff = detail::parse_number<double>(value, lineno, key);
            else if (key == "delta_exponent") cfg.delta_exponent = detail::parse_number<double>(value, lineno, key);
            else if (key == "h_hat") cfg.h_hat = detail::parse_number<double>(value, lineno, key);
            else if (key == "seed_root") cfg.seed_root = detail::parse_number<std::uint64_t>(value, lineno, key);
            else if (key == "output_dir") cfg.output_dir = value;
            else if (key == "emit_plots") cfg.emit_plots = detail::parse_bool(value, lineno, key);
            else if (key == "archive_graphs") cfg.archive_graphs = detail::parse_bool(value, lineno, key);
            else if (key == "workers") cfg.workers = detail::parse_number<int>(value, lineno, key);
            else if (key == "max_resamples") cfg.max_resamples = detail::parse_number<int>(value, lineno, key);
            else throw ConfigError(lineno, key, "unknown key");
        } else {
            throw ConfigError(lineno, key, "key outside any section");
        }
    }
    return cfg;
}

inline CampaignConfig load_campaign_config(const std::string& path, CampaignConfig base = {}) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    return parse_campaign_config(is, std::move(base));
}

inline nlohmann::ordered_json trial_to_json(const TrialOutcome& t, const std::string& graph_file) {
    nlohmann::ordered_json j;
    j["seed"] = t.seed;
    j["base_seed"] = t.base_seed;
    j["n"] = t.n;
    j["rho"] = t.rho;
    j["chi"] = t.chi;
    j["eps"] = t.eps;
    j["eps_prime"] = t.eps_prime;
    j["eps_hat"] = t.eps_hat;
    j["delta"] = t.delta;
    j["kappa"] = t.kappa;
    j["degenerate"] = t.degenerate;
    j["resamples"] = t.resamples;
    j["lambda1"] = t.lambda1;
    j["lambda2"] = t.lambda2;
    j["lambda_max_breve"] = t.lambda_max_breve;
    j["delta_max"] = t.delta_max;
    j["pole_in_D1"] = t.pole_in_D1;
    j["pole_in_D2"] = t.pole_in_D2;
    j["pole_in_I1"] = t.pole_in_I1;
    j["pole_in_I2"] = t.pole_in_I2;
    j["guard_U"] = t.guard_U;
    j["guard_Psi"] = t.guard_Psi;
    j["empty_D1"] = t.empty_D1;
    j["empty_D2"] = t.empty_D2;
    j["near_boundary"] = t.near_boundary;
    j["graph_file"] = graph_file;
    return j;
}

// Recompute the four domain events of an archived trial from its graph.
// Returns true when every recomputed flag matches bit-for-bit.
inline bool recheck_trial_events(const Graph& g, const TrialOutcome& t) {
    if (t.degenerate) return g.min_degree() < 2;
    const auto poles = normalized_pole_set(g, t.rho);
    DomainSpec d1{DomainKind::annulus_inner, t.eps, t.eps_prime, t.eps_hat, t.kappa};
    DomainSpec d2{DomainKind::annulus_outer, t.eps, t.eps_prime, t.eps_hat, t.kappa};
    DomainSpec i1{DomainKind::real_interval_inner, t.eps, t.eps_prime, t.eps_hat, t.kappa};
    DomainSpec i2{DomainKind::real_interval_outer, t.eps, t.eps_prime, t.eps_hat, t.kappa};
    return domain_event(poles, d1) == t.pole_in_D1 && domain_event(poles, d2) == t.pole_in_D2 &&
           domain_event(poles, i1) == t.pole_in_I1 && domain_event(poles, i2) == t.pole_in_I2;
}

// Self-contained SVG of the v-plane pole set: unit circle, the two annular
// domains (when nonempty), poles as dots. Deterministic byte output.
inline std::string render_spectrum_svg(const Graph& g, double rho, double kappa = 0.5) {
    const double chi = rho / std::log(static_cast<double>(g.vertex_count()));
    const double eps = 2.0 * std::pow(chi, -0.125);
    const double eps_prime = 1.0 / (std::sqrt(rho) * (1.0 - kappa));
    DomainSpec d1{DomainKind::annulus_inner, eps, eps_prime, 0.0, kappa};
    DomainSpec d2{DomainKind::annulus_outer, eps, eps_prime, 0.0, kappa};
    const auto poles = g.min_degree() >= 2 ? rescale_pole_set(poles_via_companion(g), rho)
                                           : rescale_pole_set(poles_via_W(g), rho);

    double extent = 1.0;
    for (const auto& p : poles.all_poles()) extent = std::max(extent, std::abs(p));
    if (!d2.empty()) extent = std::max(extent, 1.0 / eps_prime);
    extent *= 1.1;

    const double size = 720.0;
    const double scale = size / (2.0 * extent);
    auto sx = [&](double x) { return fmt_double(size / 2.0 + x * scale); };
    auto sy = [&](double y) { return fmt_double(size / 2.0 - y * scale); };
    auto sr = [&](double r) { return fmt_double(r * scale); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(size)
        << "\" height=\"" << fmt_double(size) << "\" viewBox=\"0 0 " << fmt_double(size) << ' '
        << fmt_double(size) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto annulus = [&](const DomainSpec& d, const char* fill) {
        const auto [lo, hi] = d.bounds();
        svg << "<path fill-rule=\"evenodd\" fill=\"" << fill << "\" d=\""
            << "M " << sx(hi) << ' ' << sy(0.0)
            << " A " << sr(hi) << ' ' << sr(hi) << " 0 1 0 " << sx(-hi) << ' ' << sy(0.0)
            << " A " << sr(hi) << ' ' << sr(hi) << " 0 1 0 " << sx(hi) << ' ' << sy(0.0)
            << " M " << sx(lo) << ' ' << sy(0.0)
            << " A " << sr(lo) << ' ' << sr(lo) << " 0 1 0 " << sx(-lo) << ' ' << sy(0.0)
            << " A " << sr(lo) << ' ' << sr(lo) << " 0 1 0 " << sx(lo) << ' ' << sy(0.0)
            << "\"/>\n";
    };
    if (!d1.empty()) annulus(d1, "#cfe3ff");
    if (!d2.empty()) annulus(d2, "#ffd9cf");

    svg << "<circle cx=\"" << sx(0.0) << "\" cy=\"" << sy(0.0) << "\" r=\"" << sr(1.0)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& p : poles.all_poles())
        svg << "<circle cx=\"" << sx(p.real()) << "\" cy=\"" << sy(p.imag())
            << "\" r=\"3\" fill=\"#203050\"/>\n";

    svg << "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"13\">n="
        << g.vertex_count() << " m=" << g.edge_count() << " rho=" << fmt_double(rho)
        << " eps=" << fmt_double(eps) << " eps'=" << fmt_double(eps_prime) << "</text>\n";
    std::string legend = "inner annulus: (" + fmt_double(eps_prime) + ", " + fmt_double(1.0 - eps) +
                         ")  outer annulus: (" + fmt_double(1.0 + eps) + ", " +
                         fmt_double(1.0 / eps_prime) + ")";
    if (d1.empty()) legend += "  [inner domain empty]";
    if (d2.empty()) legend += "  [outer domain empty]";
    svg << "<text x=\"10\" y=\"38\" font-family=\"monospace\" font-size=\"13\">" << legend
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

inline void plot_spectrum(const Graph& g, double rho, const std::string& out_path,
                          double kappa = 0.5) {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("plot_spectrum: cannot open " + out_path);
    os << render_spectrum_svg(g, rho, kappa);
    if (!os) throw std::runtime_error("plot_spectrum: write failed for " + out_path);
}

// Writes archive.jsonl, aggregate.csv, report.txt (and graphs/, plots/) to
// cfg.output_dir. Returns 0 on success. All numeric output is shortest
// round-trip decimal, so reruns with the same config are byte-identical.
inline int run_campaign(const CampaignConfig& cfg, std::ostream& log = std::cerr) {
    validate_campaign_config(cfg);
    namespace fs = std::filesystem;
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);
    if (cfg.archive_graphs) fs::create_directories(out_dir / "graphs");
    if (cfg.emit_plots) fs::create_directories(out_dir / "plots");

    auto progress = [&log](int point, int done) {
        if (done % 25 == 0) log << "point " << point << ": " << done << " trials done\n";
    };
    const auto result = campaign_estimate(
        cfg.schedule, cfg.kappa, [&cfg](double chi) { return cfg.delta_for(chi); },
        cfg.seed_root, cfg.h_hat, cfg.workers, progress, cfg.max_resamples);

    std::ofstream archive(out_dir / "archive.jsonl", std::ios::binary);
    std::ofstream csv(out_dir / "aggregate.csv", std::ios::binary);
    std::ofstream report(out_dir / "report.txt", std::ios::binary);
    if (!archive || !csv || !report) {
        log << "cannot open output files under " << cfg.output_dir << "\n";
        return 1;
    }
    csv << "n,chi,rho,event,p_hat,wilson_lo,wilson_hi,trials,degenerate_count\n";

    int spot_checked = 0, spot_mismatch = 0;
    for (std::size_t pi = 0; pi < result.points.size(); ++pi) {
        const auto& pr = result.points[pi];
        for (std::size_t ti = 0; ti < pr.outcomes.size(); ++ti) {
            const auto& t = pr.outcomes[ti];
            std::string graph_ref;
            if (cfg.archive_graphs) {
                graph_ref = "graphs/point" + std::to_string(pi) + "_trial" + std::to_string(ti) +
                            ".edges";
                std::ofstream gf(out_dir / graph_ref, std::ios::binary);
                ErdosRenyiSpec spec{t.n, t.rho, t.seed};
                gf << sample_erdos_renyi(spec).to_edge_list();
            }
            archive << trial_to_json(t, graph_ref).dump() << '\n';
            // spot-check 5% of the trials by full recomputation
            if (ti % 20 == 0) {
                ++spot_checked;
                ErdosRenyiSpec spec{t.n, t.rho, t.seed};
                const Graph g = cfg.archive_graphs
                    ? Graph::from_edge_list(
                          [&] {
                              std::ifstream gf(out_dir / graph_ref);
                              std::stringstream ss;
                              ss << gf.rdbuf();
                              return ss.str();
                          }())
                    : sample_erdos_renyi(spec);
                if (!recheck_trial_events(g, t)) ++spot_mismatch;
            }
        }
        for (const auto& name : campaign_event_names()) {
            const auto& es = pr.events.at(name);
            csv << pr.point.n << ',' << fmt_double(pr.point.chi) << ',' << fmt_double(pr.rho)
                << ',' << name << ',' << fmt_double(es.wilson.p_hat) << ','
                << fmt_double(es.wilson.lo) << ',' << fmt_double(es.wilson.hi) << ','
                << es.trials << ',' << pr.degenerate << '\n';
        }
        if (cfg.emit_plots && !pr.outcomes.empty() && !pr.outcomes.front().degenerate) {
            ErdosRenyiSpec spec{pr.point.n, pr.rho, pr.outcomes.front().seed};
            plot_spectrum(sample_erdos_renyi(spec), pr.rho,
                          (out_dir / ("plots/point" + std::to_string(pi) + ".svg")).string(),
                          cfg.kappa);
        }

        report << "n=" << pr.point.n << " chi=" << fmt_double(pr.point.chi)
               << " rho=" << fmt_double(pr.rho) << " trials=" << pr.point.trials
               << " degenerate=" << pr.degenerate << "\n";
        double dmax_sum = 0.0, dmax_min = 0.0, dmax_max = 0.0;
        double l1_sum = 0.0, l2_sum = 0.0;
        for (std::size_t ti = 0; ti < pr.outcomes.size(); ++ti) {
            const auto& t = pr.outcomes[ti];
            dmax_sum += t.delta_max;
            dmax_min = ti == 0 ? t.delta_max : std::min(dmax_min, t.delta_max);
            dmax_max = ti == 0 ? t.delta_max : std::max(dmax_max, t.delta_max);
            l1_sum += t.lambda1;
            l2_sum += t.lambda2;
        }
        const double nt = static_cast<double>(pr.outcomes.size());
        report << "  delta_max: min=" << fmt_double(dmax_min) << " mean="
               << fmt_double(dmax_sum / nt) << " max=" << fmt_double(dmax_max) << "\n";
        report << "  lambda1/sqrt(rho): mean=" << fmt_double(l1_sum / nt / std::sqrt(pr.rho))
               << "  lambda2: mean=" << fmt_double(l2_sum / nt) << "\n";
        for (const auto& name : campaign_event_names()) {
            const auto& es = pr.events.at(name);
            report << "  " << name << ": p_hat=" << fmt_double(es.wilson.p_hat) << " ci=["
                   << fmt_double(es.wilson.lo) << ", " << fmt_double(es.wilson.hi) << "]\n";
        }
    }
    report << "partial sums over n of p_hat:\n";
    for (const auto& [name, sum] : result.partial_sums)
        report << "  " << name << ": " << fmt_double(sum) << "\n";
    report << "spot check: " << spot_checked << " trials recomputed, " << spot_mismatch
           << " mismatches\n";
    log << "campaign complete: " << result.points.size() << " schedule points\n";
    return spot_mismatch == 0 ? 0 : 1;
}

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

enum class VerifyLevel { fast, full };

namespace detail {

// Angular brute force, independent of the closed-form branches.
inline double ellipse_distance_brute(double a, double b, double x, int points) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= points; ++i) {
        const double th = 2.0 * M_PI * i / points;
        const double dx = a * std::cos(th) - x;
        const double dy = b * std::sin(th);
        best = std::min(best, std::hypot(dx, dy));
    }
    return best;
}

inline std::vector<Graph> verify_graph_suite() {
    std::vector<Graph> gs;
    for (int n = 3; n <= 6; ++n) gs.push_back(cycle_graph(n));
    gs.push_back(complete_graph(4));
    gs.push_back(petersen_graph());
    gs.push_back(circular_ladder(4));
    return gs;
}

}  // namespace detail

// Property checks over all modules. fast stays under a minute; full runs
// the wide random sweeps. tolerance_scale < 1 tightens every slack (0
// turns the suite into a self-test that must report failures).
inline VerifyReport verify_suite(VerifyLevel level, double tolerance_scale = 1.0) {
    VerifyReport rep;
    const bool full = level == VerifyLevel::full;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };

    {  // bass and edge determinants agree; series matches within its bound
        bool pass = true;
        std::string detail;
        for (const auto& g : detail::verify_graph_suite()) {
            const double r_w = nb_spectral_radius(g);
            CounterRng rng(derive_seed(101, g.vertex_count() * 1000 + g.edge_count()));
            for (int k = 0; k < 5 && pass; ++k) {
                const double radius = 0.9 / r_w * rng.uniform();
                const double angle = 2.0 * M_PI * rng.uniform();
                const Complex u = std::polar(radius, angle);
                const Complex bass = inverse_zeta_bass(g, u);
                const Complex edge = inverse_zeta_edge(g, u);
                const double rel = std::abs(bass - edge) / std::max(1.0, std::abs(bass));
                if (rel > tol::kRouteAgreementRel * tolerance_scale) {
                    pass = false;
                    detail = "bass/edge rel err " + fmt_double(rel) + " at n=" +
                             std::to_string(g.vertex_count());
                }
                if (radius * r_w < 0.6) {
                    const auto series = log_zeta_series(g, u, 40);
                    const double err = std::abs(std::exp(series.log_zeta) * bass - 1.0);
                    const double budget = std::expm1(series.truncation_bound) * tolerance_scale +
                                          1e-12 * tolerance_scale;
                    if (err > budget) {
                        pass = false;
                        detail = "series err " + fmt_double(err) + " > bound " + fmt_double(budget);
                    }
                }
            }
        }
        add("zeta-route-agreement", pass, detail);
    }

    {  // Ramanujan criterion and pole scan agree on regular graphs
        bool pass = true;
        std::string detail;
        auto expect = [&](const Graph& g, bool want, const std::string& label) {
            const auto r = gtrh_check_regular(g);
            if (r.ramanujan != r.pole_based || r.ramanujan != want) {
                pass = false;
                detail = label + ": ramanujan=" + (r.ramanujan ? "true" : "false") +
                         " pole_based=" + (r.pole_based ? "true" : "false");
            }
        };
        expect(complete_graph(4), true, "K4");
        expect(petersen_graph(), true, "petersen");
        expect(circular_ladder(20), false, "circular_ladder(20)");
        const int sweeps = full ? 50 : 10;
        for (int i = 0; i < sweeps && pass; ++i) {
            const int d = 3 + static_cast<int>(stream_draw(2024, i) % 3);
            int n = 8 + 2 * static_cast<int>(stream_draw(2025, i) % 9);  // even, <= 24
            const Graph g = random_regular(n, d, derive_seed(7000, i));
            if (!g.is_connected()) continue;
            const auto r = gtrh_check_regular(g);
            if (r.ramanujan != r.pole_based) {
                pass = false;
                detail = "disagreement at seed " + std::to_string(derive_seed(7000, i));
            }
        }
        add("ramanujan-pole-equivalence", pass, detail);
    }

    {  // roots of x^2 - lambda x + q have modulus sqrt(q) iff |lambda| <= 2 sqrt(q)
        bool pass = true;
        std::string detail;
        for (const Graph& g : {complete_graph(4), petersen_graph(), circular_ladder(20)}) {
            const double q = g.degree(0) - 1;
            for (double lam : sym_eigenvalues(g.adjacency_matrix())) {
                const double disc = lam * lam - 4.0 * q;
                const bool small = std::abs(lam) <= 2.0 * std::sqrt(q) +
                                   tol::kQuadRootSlack * tolerance_scale;
                bool on_circle;
                if (disc <= 0.0) {
                    const Complex root(lam / 2.0, std::sqrt(-disc) / 2.0);
                    on_circle = std::abs(std::abs(root) - std::sqrt(q)) <=
                                tol::kQuadRootSlack * tolerance_scale;
                } else {
                    const double r1 = (lam + std::sqrt(disc)) / 2.0;
                    const double r2 = (lam - std::sqrt(disc)) / 2.0;
                    on_circle = std::abs(std::abs(r1) - std::sqrt(q)) <=
                                    tol::kQuadRootSlack * tolerance_scale &&
                                std::abs(std::abs(r2) - std::sqrt(q)) <=
                                    tol::kQuadRootSlack * tolerance_scale;
                }
                if (on_circle != small) {
                    pass = false;
                    detail = "dichotomy fails at lambda=" + fmt_double(lam) + " q=" + fmt_double(q);
                }
            }
        }
        add("quadratic-root-dichotomy", pass, detail);
    }

    {  // eig(W) = {1/u-roots} plus +-1 with multiplicity m-n
        bool pass = true;
        std::string detail;
        for (const auto& g : detail::verify_graph_suite()) {
            if (g.min_degree() < 2) continue;
            const auto wset = poles_via_W(g);
            std::vector<Complex> from_w;
            for (const auto& u : wset.poles) from_w.push_back(1.0 / u);
            const auto cset = poles_via_companion(g);
            std::vector<Complex> from_c;
            for (const auto& u : cset.poles) from_c.push_back(1.0 / u);
            for (int k = 0; k < cset.unit_pole_multiplicity; ++k) {
                from_c.emplace_back(1.0, 0.0);
                from_c.emplace_back(-1.0, 0.0);
            }
            if (!multiset_match(from_w, from_c, tol::kPolePairing * tolerance_scale)) {
                pass = false;
                detail = "multiset mismatch at n=" + std::to_string(g.vertex_count()) +
                         " m=" + std::to_string(g.edge_count());
            }
        }
        add("ihara-bass-multiset", pass, detail);
    }

    {  // every pole has |u| <= 1 and near-zero zeta residual
        bool pass = true;
        std::string detail;
        for (const auto& g : detail::verify_graph_suite()) {
            if (g.min_degree() < 2) continue;
            double scale = 1.0;
            for (int k = 0; k < 8; ++k)
                scale = std::max(scale,
                                 std::abs(inverse_zeta_bass(g, std::polar(1.0, 2.0 * M_PI * k / 8))));
            for (const auto& u : poles_via_companion(g).all_poles()) {
                if (std::abs(u) > 1.0 + 1e-8 * tolerance_scale) {
                    pass = false;
                    detail = "pole modulus " + fmt_double(std::abs(u));
                }
                const double res = std::abs(inverse_zeta_bass(g, u));
                if (res > tol::kPoleResidual * tolerance_scale * scale) {
                    pass = false;
                    detail = "residual " + fmt_double(res) + " (scale " + fmt_double(scale) + ")";
                }
            }
        }
        add("pole-residuals", pass, detail);
    }

    {  // closed-form point-to-ellipse distance vs angular brute force
        bool pass = true;
        std::string detail;
        const int draws = full ? 100 : 10;
        const int pts = full ? 1000000 : 200000;
        CounterRng rng(4242);
        for (int i = 0; i < draws && pass; ++i) {
            const double a = 0.5 + 2.5 * rng.uniform();
            const double b = a * (0.05 + 0.9 * rng.uniform());
            const double x = a * rng.uniform();
            const Ellipse e(a, b);
            const double closed = ellipse_distance(e, x);
            const double brute = detail::ellipse_distance_brute(a, b, x, pts);
            if (std::abs(closed - brute) > tol::kEllipseOracleAbs * tolerance_scale) {
                pass = false;
                detail = "draw " + std::to_string(i) + ": closed=" + fmt_double(closed) +
                         " brute=" + fmt_double(brute);
            }
            const double x0 = ellipse_critical_point(e);
            const double step = 1e-9 * a;
            if (x0 - step > 0.0 && x0 + step < a &&
                std::abs(ellipse_distance(e, x0 - step) - ellipse_distance(e, x0 + step)) >
                    tol::kEllipseBranchAbs * tolerance_scale + 4.0 * step) {
                pass = false;
                detail = "branch discontinuity at x0, draw " + std::to_string(i);
            }
        }
        add("ellipse-distance", pass, detail);
    }

    {  // endpoint closed forms of the interval minimization match grid search
        bool pass = true;
        std::string detail;
        const int draws = full ? 50 : 10;
        CounterRng rng(5151);
        for (int i = 0; i < draws && pass; ++i) {
            // first-regime draw: q = 2 + delta, eps above the stationary band
            {
                const double delta = 0.01 + 0.2 * rng.uniform();
                const double tau = 0.001 + 0.01 * rng.uniform();
                double x1, x2;
                f_quadratic_roots(2.0 + delta, tau, &x1, &x2);
                MinimizationParams p{2.0 + delta, (x2 - 1.0) * (1.05 + rng.uniform()),
                                     0.05 + 0.1 * rng.uniform(), tau};
                const auto outer = min_f_outer(p);
                const auto o_ref = detail::minimize_f_numeric(1.0 + p.eps, 1.0 / p.eps_prime,
                                                              p.q, p.tau, 40000);
                if (!outer.closed_form ||
                    std::abs(outer.value - o_ref.value) >
                        tol::kDetIdentityRel * tolerance_scale * std::max(1.0, o_ref.value)) {
                    pass = false;
                    detail = "outer draw " + std::to_string(i) + " value " +
                             fmt_double(outer.value) + " ref " + fmt_double(o_ref.value);
                }
                MinimizationParams pi_{2.0 + delta, std::max(1.0 - x1, 0.0) * 1.05 + 1e-3,
                                       0.05 + 0.1 * rng.uniform(), tau};
                if (pi_.eps_prime < 1.0 - pi_.eps) {
                    const auto inner = min_f_inner(pi_);
                    const auto i_ref = detail::minimize_f_numeric(pi_.eps_prime, 1.0 - pi_.eps,
                                                                  pi_.q, pi_.tau, 40000);
                    if (!inner.closed_form ||
                        std::abs(inner.value - i_ref.value) >
                            tol::kDetIdentityRel * tolerance_scale * std::max(1.0, i_ref.value)) {
                        pass = false;
                        detail = "inner draw " + std::to_string(i);
                    }
                }
            }
            // second-regime draw: q = sqrt(rho)(1-kappa), endpoints from kappa < h
            {
                const double rho = 50.0 + 400.0 * rng.uniform();
                const double kappa = 0.3 + 0.2 * rng.uniform();
                const double h = kappa + 0.1 + 0.3 * rng.uniform();
                MinimizationParams p{std::sqrt(rho) * (1.0 - kappa), 0.2,
                                     1.0 / (std::sqrt(rho) * (1.0 - h)), 1.0 / rho};
                const auto outer = min_f_outer(p);
                const auto o_ref = detail::minimize_f_numeric(1.0 + p.eps, 1.0 / p.eps_prime,
                                                              p.q, p.tau, 40000);
                if (!outer.closed_form ||
                    std::abs(outer.value - o_ref.value) >
                        tol::kDetIdentityRel * tolerance_scale * std::max(1.0, o_ref.value)) {
                    pass = false;
                    detail = "second-regime outer draw " + std::to_string(i);
                }
            }
        }
        // violating draws must come back flagged
        for (int i = 0; i < 10 && pass; ++i) {
            const double delta = 0.05, tau = 0.01;
            double x1, x2;
            f_quadratic_roots(2.0 + delta, tau, &x1, &x2);
            MinimizationParams p{2.0 + delta, (x2 - 1.0) * 0.3, 0.05, tau};  // x2 interior
            const auto r = min_f_outer(p);
            if (r.flag.empty()) {
                pass = false;
                detail = "interior stationary point not flagged";
            }
        }
        add("interval-minimization", pass, detail);
    }

    {  // epsilon thresholds push inf gamma above 2 + delta, sharply
        bool pass = true;
        std::string detail;
        CounterRng rng(6161);
        for (int i = 0; i < 10 && pass; ++i) {
            const double delta = 0.01 + 0.3 * rng.uniform();
            const double tau = 0.001 + 0.05 * rng.uniform();
            const auto above = gamma_threshold_outer(
                gamma_threshold_outer(0.0, delta, tau).eps0 * 1.01, delta, tau);
            if (!above.condition || !above.implied_inf) {
                pass = false;
                detail = "outer threshold fails above eps0, delta=" + fmt_double(delta);
            }
            const auto in_above = gamma_threshold_inner(
                gamma_threshold_inner(0.0, delta, tau).eps0 * 1.01, delta, tau);
            if (!in_above.condition || !in_above.implied_inf) {
                pass = false;
                detail = "inner threshold fails above eps0, delta=" + fmt_double(delta);
            }
            const auto in_below = gamma_threshold_inner(
                gamma_threshold_inner(0.0, delta, tau).eps0 * 0.95, delta, tau);
            if (in_below.implied_inf) {
                pass = false;
                detail = "inner threshold not sharp below eps0";
            }
        }
        add("gamma-thresholds", pass, detail);
    }

    {  // normalized endpoint values approach their limiting constants
        bool pass = true;
        std::string detail;
        const auto chi_run = asymptotic_ratio_suite({1e4, 1e6, 1e8}, {}, 0.5, 0.0);
        for (std::size_t i = 0; i + 1 < chi_run.chi.size(); ++i) {
            if (!(std::abs(chi_run.f1_ratio[i + 1] - 1.0) < std::abs(chi_run.f1_ratio[i] - 1.0)) ||
                !(std::abs(chi_run.g1_ratio[i + 1] - 1.0) < std::abs(chi_run.g1_ratio[i] - 1.0))) {
                pass = false;
                detail = "chi-indexed ratios not contracting toward 1";
            }
        }
        // rho-indexed ratios with the vanishing h schedule h = rho^{-1/8}
        std::vector<double> f2_err, g2_err;
        for (double rho : {1e4, 1e6}) {
            const double h = std::pow(rho, -0.125);
            const auto r = asymptotic_ratio_suite({}, {rho}, h / 2.0, h);
            f2_err.push_back(std::abs(r.f2_ratio[0] - 1.0));
            g2_err.push_back(std::abs(r.g2_ratio[0] - 1.0));
        }
        if (!(f2_err[1] < f2_err[0]) || !(g2_err[1] < g2_err[0])) {
            pass = false;
            detail = "rho-indexed ratios not contracting toward 1";
        }
        add("asymptotic-ratios", pass, detail);
    }

    {  // centered spectrum interlaces the raw one
        bool pass = true;
        std::string detail;
        const int samples = full ? 100 : 10;
        const int n = full ? 200 : 100;
        const double rho = full ? 30.0 : 10.0;
        for (int i = 0; i < samples && pass; ++i) {
            ErdosRenyiSpec spec{n, rho, derive_seed(8800, i)};
            const Graph g = sample_erdos_renyi(spec);
            const auto r = interlacing_check(g, rho);
            if (!r.top || !r.bottom) {
                pass = false;
                detail = "interlacing fails at seed " + std::to_string(spec.seed);
            }
            // rank-one deflation form: lambda_2(M) <= lambda_1(M - t J), J all ones
            const auto nm = normalized_matrices(g, rho);
            const double t = std::sqrt(rho) / n;
            const Eigen::MatrixXd deflated =
                nm.a_tilde - t * Eigen::MatrixXd::Ones(n, n);
            const auto lt = sym_eigenvalues(nm.a_tilde);
            const auto ld = sym_eigenvalues(deflated);
            const double slack = tol::kInterlacingRel * tolerance_scale *
                                 std::max(1.0, std::abs(lt.front()));
            if (lt[1] > ld.front() + slack) {
                pass = false;
                detail = "rank-one deflation bound fails at seed " + std::to_string(spec.seed);
            }
        }
        add("interlacing", pass, detail);
    }

    {  // Weyl perturbation bounds for the diagonal term of H(v)
        bool pass = true;
        std::string detail;
        const int pairs = full ? 50 : 10;
        CounterRng rng(9090);
        for (int i = 0; i < pairs && pass; ++i) {
            ErdosRenyiSpec spec{60, 8.0, derive_seed(9900, i)};
            const Graph g = sample_erdos_renyi(spec);
            const auto nm = normalized_matrices(g, spec.rho);
            // complex v from an annulus around the unit circle
            const Complex v = std::polar(0.4 + 1.4 * rng.uniform(), 2.0 * M_PI * rng.uniform());
            Eigen::MatrixXcd x = nm.a_tilde.cast<Complex>();
            const Complex gam = gamma_transform(v, nm.tau);
            for (int d = 0; d < nm.n; ++d) x(d, d) -= gam;
            Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(nm.n, nm.n);
            for (int d = 0; d < nm.n; ++d) y(d, d) = -v * nm.b_hat_diag[d];
            const auto sg = weyl_singular_gap(x, y);
            if (sg.max_gap > sg.bound + tol::kWeylRel * tolerance_scale * std::max(1.0, sg.bound)) {
                pass = false;
                detail = "singular-value gap " + fmt_double(sg.max_gap) + " > bound " +
                         fmt_double(sg.bound) + " at seed " + std::to_string(spec.seed);
            }
            // real v from the real intervals
            const double rv = (i % 2 == 0 ? 0.5 : 1.5) + 0.3 * rng.uniform();
            const auto eg = weyl_eigen_gap_real_v(nm, rv);
            if (eg.max_gap > eg.bound + tol::kWeylRel * tolerance_scale * std::max(1.0, eg.bound)) {
                pass = false;
                detail = "hermitian gap " + fmt_double(eg.max_gap) + " > bound " +
                         fmt_double(eg.bound) + " at seed " + std::to_string(spec.seed);
            }
        }
        add("weyl-bounds", pass, detail);
    }

    {  // -v H(v) equals the Bass pencil at u = v / sqrt(rho)
        bool pass = true;
        std::string detail;
        CounterRng rng(1212);
        for (int i = 0; i < 5 && pass; ++i) {
            ErdosRenyiSpec spec{40, 7.0, derive_seed(3300, i)};
            const Graph g = sample_erdos_renyi(spec);
            const auto nm = normalized_matrices(g, spec.rho);
            const Complex v = std::polar(0.3 + 1.2 * rng.uniform(), 2.0 * M_PI * rng.uniform());
            const Complex u = v / std::sqrt(spec.rho);
            Eigen::MatrixXcd pencil = Eigen::MatrixXcd::Identity(nm.n, nm.n);
            for (int d = 0; d < nm.n; ++d)
                pencil(d, d) += u * u * static_cast<double>(g.degree(d) - 1);
            for (const auto& [a, b] : g.edges()) {
                pencil(a, b) -= u;
                pencil(b, a) -= u;
            }
            const Eigen::MatrixXcd lhs = -v * build_H(nm, v);
            const double err = (lhs - pencil).cwiseAbs().maxCoeff();
            if (err > tol::kDetIdentityRel * tolerance_scale *
                          std::max(1.0, pencil.cwiseAbs().maxCoeff())) {
                pass = false;
                detail = "pencil identity err " + fmt_double(err) + " at seed " +
                         std::to_string(spec.seed);
            }
        }
        add("normalized-pencil-identity", pass, detail);
    }

    {  // empty inner annulus handled without error and reported as a non-event
        const double chi = std::log(100.0);
        TrialOutcome t = run_trial({100, chi * std::log(100.0), 11}, 0.5,
                                   std::pow(chi, -0.375), 4.0);
        const double eps_expect = 2.0 * std::pow(chi, -0.125);
        const bool pass = t.empty_D1 && !t.pole_in_D1 &&
                          std::abs(t.eps - eps_expect) < 1e-12;
        add("empty-domain-handling", pass,
            pass ? "" : "eps=" + fmt_double(t.eps) + " empty_D1=" + (t.empty_D1 ? "1" : "0"));
    }

    return rep;
}

}  // namespace izeta
