#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "izeta/harness.hpp"

namespace {

using izeta::Graph;

struct GraphOpts {
    std::string file;
    int cycle = 0;
    int complete = 0;
    int ladder = 0;
    bool petersen = false;
    int er_n = 0;
    double er_rho = 0.0;
    std::uint64_t er_seed = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", file, "read graph from an edge-list file ('-' for stdin)");
        cmd->add_option("--cycle", cycle, "cycle graph C_n");
        cmd->add_option("--complete", complete, "complete graph K_n");
        cmd->add_option("--ladder", ladder, "circular ladder (prism) on 2n vertices");
        cmd->add_flag("--petersen", petersen, "Petersen graph");
        cmd->add_option("--er-n", er_n, "Erdos-Renyi vertex count");
        cmd->add_option("--er-rho", er_rho, "Erdos-Renyi expected degree rho (edge prob rho/n)");
        cmd->add_option("--er-seed", er_seed, "Erdos-Renyi seed");
    }

    Graph build() const {
        if (!file.empty()) {
            if (file == "-") return Graph::from_edge_list(std::cin);
            std::ifstream is(file);
            if (!is) throw std::runtime_error("cannot open graph file: " + file);
            return Graph::from_edge_list(is);
        }
        if (cycle > 0) return izeta::cycle_graph(cycle);
        if (complete > 0) return izeta::complete_graph(complete);
        if (ladder > 0) return izeta::circular_ladder(ladder);
        if (petersen) return izeta::petersen_graph();
        if (er_n > 0) return izeta::sample_erdos_renyi({er_n, er_rho, er_seed});
        throw std::runtime_error("no graph specified (use --graph or a generator flag)");
    }
};

std::string default_output_dir() {
    const char* env = std::getenv("IZETA_OUTPUT_DIR");
    return env ? env : ".";
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ihara zeta functions, pole localization, and sparse-graph experiments"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "draw a seeded Erdos-Renyi graph");
    int s_n = 100;
    double s_rho = 10.0;
    std::uint64_t s_seed = 1;
    std::string s_out;
    sample->add_option("--n", s_n, "vertex count")->required();
    sample->add_option("--rho", s_rho, "expected degree (edge probability rho/n)")->required();
    sample->add_option("--seed", s_seed, "64-bit seed");
    sample->add_option("--out", s_out, "output file (default stdout)");

    // zeta
    auto* zeta = app.add_subcommand("zeta", "evaluate the zeta function by every route");
    GraphOpts z_graph;
    z_graph.attach(zeta);
    double z_re = 0.0, z_im = 0.0;
    int z_terms = 40;
    zeta->add_option("--re", z_re, "Re u")->required();
    zeta->add_option("--im", z_im, "Im u");
    zeta->add_option("--series-terms", z_terms, "path-series truncation order");

    // poles
    auto* poles = app.add_subcommand("poles", "emit the pole set as CSV");
    GraphOpts p_graph;
    p_graph.attach(poles);
    std::string p_route = "companion";
    double p_rho = 0.0;
    std::string p_out;
    poles->add_option("--route", p_route, "companion or edge")
        ->check(CLI::IsMember({"companion", "edge"}));
    poles->add_option("--rho", p_rho, "rescale to the v-plane via v = u sqrt(rho)");
    poles->add_option("--out", p_out, "output file (default stdout)");

    // gtrh-check
    auto* gtrh = app.add_subcommand("gtrh-check", "Ramanujan report for a regular graph");
    GraphOpts g_graph;
    g_graph.attach(gtrh);

    // campaign
    auto* campaign = app.add_subcommand("campaign", "run the pole-avoidance Monte Carlo campaign");
    std::string c_config;
    std::vector<std::string> c_points;
    izeta::CampaignConfig c_overrides;
    c_overrides.output_dir = default_output_dir();
    bool c_emit_plots = false, c_no_archive = false;
    campaign->add_option("--config", c_config, "campaign config file");
    campaign->add_option("--point", c_points, "schedule point 'n chi trials' (repeatable)");
    campaign->add_option("--seed-root", c_overrides.seed_root, "campaign master seed");
    campaign->add_option("--kappa", c_overrides.kappa, "kappa guard parameter");
    campaign->add_option("--h-hat", c_overrides.h_hat, "h-hat interval parameter");
    campaign->add_option("--workers", c_overrides.workers, "worker thread count");
    campaign->add_option("--output-dir", c_overrides.output_dir, "output directory");
    campaign->add_flag("--emit-plots", c_emit_plots, "write per-point spectrum plots");
    campaign->add_flag("--no-archive-graphs", c_no_archive, "skip per-trial graph files");

    // verify
    auto* verify = app.add_subcommand("verify", "run the property suite");
    std::string v_level = "fast";
    verify->add_option("--level", v_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    // plot
    auto* plot = app.add_subcommand("plot", "render the v-plane pole set as SVG");
    GraphOpts pl_graph;
    pl_graph.attach(plot);
    double pl_rho = 0.0;
    double pl_kappa = 0.5;
    std::string pl_out;
    plot->add_option("--rho", pl_rho, "normalization rho")->required();
    plot->add_option("--kappa", pl_kappa, "kappa for the annulus bounds");
    plot->add_option("--out", pl_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            const Graph g = izeta::sample_erdos_renyi({s_n, s_rho, s_seed});
            std::ofstream file;
            open_output(s_out, file) << g.to_edge_list();
        } else if (*zeta) {
            const Graph g = z_graph.build();
            const izeta::Complex u(z_re, z_im);
            const izeta::Complex bass = izeta::inverse_zeta_bass(g, u);
            const izeta::Complex edge = izeta::inverse_zeta_edge(g, u);
            std::cout << "inverse_zeta_bass " << izeta::fmt_double(bass.real()) << ' '
                      << izeta::fmt_double(bass.imag()) << '\n';
            std::cout << "inverse_zeta_edge " << izeta::fmt_double(edge.real()) << ' '
                      << izeta::fmt_double(edge.imag()) << '\n';
            const double r_w = izeta::nb_spectral_radius(g);
            if (std::abs(u) * r_w < 1.0) {
                const auto s = izeta::log_zeta_series(g, u, z_terms);
                std::cout << "log_zeta_series " << izeta::fmt_double(s.log_zeta.real()) << ' '
                          << izeta::fmt_double(s.log_zeta.imag()) << " truncation_bound "
                          << izeta::fmt_double(s.truncation_bound) << '\n';
            } else {
                std::cout << "log_zeta_series divergent (|u| outside 1/r_W = "
                          << izeta::fmt_double(1.0 / r_w) << ")\n";
            }
        } else if (*poles) {
            const Graph g = p_graph.build();
            izeta::PoleSet ps = p_route == "edge" ? izeta::poles_via_W(g)
                                                  : izeta::poles_via_companion(g);
            if (p_rho > 0.0) ps = izeta::rescale_pole_set(ps, p_rho);
            std::ofstream file;
            auto& os = open_output(p_out, file);
            os << "re,im,route,multiplicity_flag\n";
            const char* route = p_route.c_str();
            for (const auto& p : ps.poles)
                os << izeta::fmt_double(p.real()) << ',' << izeta::fmt_double(p.imag()) << ','
                   << route << ",simple\n";
            for (int k = 0; k < ps.unit_pole_multiplicity; ++k) {
                os << izeta::fmt_double(ps.scale) << ",0," << route << ",unit\n";
                os << izeta::fmt_double(-ps.scale) << ",0," << route << ",unit\n";
            }
            for (int k = 0; k < ps.infinite_pole_count; ++k)
                os << "inf,0," << route << ",infinite\n";
        } else if (*gtrh) {
            const Graph g = g_graph.build();
            const auto rep = izeta::gtrh_check_regular(g);
            std::cout << "q " << rep.q << '\n'
                      << "ramanujan " << (rep.ramanujan ? "true" : "false") << '\n'
                      << "pole_based " << (rep.pole_based ? "true" : "false") << '\n';
            if (rep.ramanujan != rep.pole_based) {
                std::cerr << "criteria disagree; this should be impossible\n";
                return 2;
            }
        } else if (*campaign) {
            izeta::CampaignConfig cfg = c_overrides;
            if (!c_config.empty()) {
                izeta::CampaignConfig from_file = izeta::load_campaign_config(c_config);
                // CLI flags override file values where given
                from_file.output_dir = campaign->count("--output-dir") ? c_overrides.output_dir
                                                                       : from_file.output_dir;
                if (campaign->count("--seed-root")) from_file.seed_root = c_overrides.seed_root;
                if (campaign->count("--kappa")) from_file.kappa = c_overrides.kappa;
                if (campaign->count("--h-hat")) from_file.h_hat = c_overrides.h_hat;
                if (campaign->count("--workers")) from_file.workers = c_overrides.workers;
                cfg = from_file;
            }
            for (const auto& text : c_points) {
                std::istringstream ps(text);
                izeta::SchedulePoint pt;
                if (!(ps >> pt.n >> pt.chi >> pt.trials))
                    throw std::runtime_error("bad --point '" + text + "', expected 'n chi trials'");
                cfg.schedule.push_back(pt);
            }
            if (c_emit_plots) cfg.emit_plots = true;
            if (c_no_archive) cfg.archive_graphs = false;
            return izeta::run_campaign(cfg);
        } else if (*verify) {
            const auto rep = izeta::verify_suite(v_level == "full" ? izeta::VerifyLevel::full
                                                                   : izeta::VerifyLevel::fast);
            for (const auto& c : rep.checks)
                std::cout << (c.pass ? "pass " : "FAIL ") << c.name
                          << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
            return rep.all_pass() ? 0 : 1;
        } else if (*plot) {
            izeta::plot_spectrum(pl_graph.build(), pl_rho, pl_out, pl_kappa);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
