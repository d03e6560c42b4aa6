// Acceptance gate: one line per criterion, "pass:" or "FAIL:". The whole
// battery runs twice with identical seeds; criterion 10 compares every
// archived number byte-for-byte across the two passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "izeta/geometry.hpp"
#include "izeta/gtrh.hpp"
#include "izeta/harness.hpp"
#include "oracles.hpp"

using namespace izeta;

namespace {

struct Archive {
    std::string data;
    void put(double x) {
        data += fmt_double(x);
        data += '\n';
    }
    void put(Complex z) {
        put(z.real());
        put(z.imag());
    }
    void put(bool b) { data += b ? "1\n" : "0\n"; }
    void put(int i) {
        data += std::to_string(i);
        data += '\n';
    }
};

struct Criterion {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.empty()) detail = why;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared suite: small named graphs plus 20 seeded random connected
// min-degree>=2 graphs on at most 12 vertices.
std::vector<Graph> route_suite() {
    std::vector<Graph> suite;
    for (int n = 3; n <= 8; ++n) suite.push_back(cycle_graph(n));
    suite.push_back(complete_graph(4));
    suite.push_back(petersen_graph());
    suite.push_back(circular_ladder(4));
    for (int k = 0; k < 20; ++k) {
        const int n = 8 + k % 5;
        for (std::uint64_t attempt = 0;; ++attempt) {
            const Graph g = sample_erdos_renyi(
                {n, 3.8, derive_seed(9001, (static_cast<std::uint64_t>(k) << 16) | attempt)});
            if (g.is_connected() && g.min_degree() >= 2) {
                suite.push_back(g);
                break;
            }
        }
    }
    return suite;
}

Criterion criterion1(const std::vector<Graph>& suite, Archive& ar) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    CounterRng rng(111);
    for (const auto& g : suite) {
        const double r_w = nb_spectral_radius(g);
        for (int p = 0; p < 20; ++p) {
            const double r = 0.9 / r_w * rng.uniform();
            const double th = 2.0 * M_PI * rng.uniform();
            const Complex u = std::polar(r, th);
            const Complex bass = inverse_zeta_bass(g, u);
            const Complex edge = inverse_zeta_edge(g, u);
            if (std::abs(bass - edge) > 1e-9 * std::max(1.0, std::abs(bass)))
                c.fail("bass/edge disagree at |u|=" + fmt_double(r));
            const auto series = log_zeta_series(g, u, 60);
            const double series_err = std::abs(std::exp(series.log_zeta) * bass - 1.0);
            if (series_err > std::expm1(series.truncation_bound) + 1e-12)
                c.fail("series outside its truncation bound");
            ar.put(bass);
            ar.put(edge);
            ar.put(series.log_zeta);
            ar.put(series.truncation_bound);
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 30.0) c.fail("runtime " + fmt_double(dt) + "s >= 30s");
    c.detail = std::to_string(suite.size()) + " graphs x 20 points, " + fmt_double(dt) + "s";
    return c;
}

Criterion criterion2(Archive& ar) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    std::vector<Graph> regulars = {complete_graph(4), complete_graph(5), complete_graph(6),
                                   petersen_graph(),  cycle_graph(5),    cycle_graph(6),
                                   circular_ladder(4), circular_ladder(20)};
    bool ladder20_nonramanujan = false;
    for (std::size_t i = 0; i < regulars.size(); ++i) {
        const auto rep = gtrh_check_regular(regulars[i]);
        if (rep.ramanujan != rep.pole_based) c.fail("spectral/pole routes disagree");
        if (i == 7) ladder20_nonramanujan = !rep.ramanujan;
        ar.put(rep.q);
        ar.put(rep.ramanujan);
        ar.put(rep.pole_based);
    }
    if (!ladder20_nonramanujan) c.fail("circular_ladder(20) should be non-Ramanujan");
    for (int i = 0; i < 50; ++i) {
        const int d = 3 + i % 3;
        const int n = 12 + 4 * ((i / 3) % 4);
        Graph g(2, {{0, 1}});
        for (std::uint64_t attempt = 0;; ++attempt) {
            g = random_regular(n, d,
                               derive_seed(9102, (static_cast<std::uint64_t>(i) << 16) | attempt));
            if (g.is_connected()) break;
        }
        const auto rep = gtrh_check_regular(g);
        if (rep.ramanujan != rep.pole_based) c.fail("spectral/pole routes disagree (random)");
        ar.put(rep.ramanujan);
        ar.put(rep.pole_based);
    }
    const double dt = seconds_since(t0);
    if (dt >= 60.0) c.fail("runtime " + fmt_double(dt) + "s >= 60s");
    c.detail = "58 regular graphs, " + fmt_double(dt) + "s";
    return c;
}

Criterion criterion3(const std::vector<Graph>& suite, Archive& ar) {
    Criterion c;
    for (const auto& g : suite) {
        auto mu = nonsym_eigenvalues(non_backtracking_matrix(g).dense());
        detail::snap_unit_roots(
            mu, g.edge_count() > g.vertex_count() || has_bipartite_component(g));
        const auto ps = poles_via_companion(g);
        std::vector<Complex> expected;
        for (const auto& u : ps.poles) expected.push_back(1.0 / u);
        for (int k = 0; k < ps.unit_pole_multiplicity; ++k) {
            expected.emplace_back(1.0, 0.0);
            expected.emplace_back(-1.0, 0.0);
        }
        if (!multiset_match(mu, expected, tol::kPolePairing))
            c.fail("W spectrum and reciprocal pole multiset differ (n=" +
                   std::to_string(g.vertex_count()) + ")");
        for (const auto& z : mu) ar.put(z);
    }
    c.detail = std::to_string(suite.size()) + " graphs, pairing tol " +
               fmt_double(tol::kPolePairing);
    return c;
}

Criterion criterion4(Archive& ar) {
    Criterion c;
    CounterRng rng(444);
    for (int i = 0; i < 100; ++i) {
        const double a = 0.5 + 3.0 * rng.uniform();
        const double b = a * (0.05 + 0.9 * rng.uniform());
        const double x = a * rng.uniform();
        const Ellipse e(a, b);
        const double closed = ellipse_distance(e, x);
        const double brute = oracle::ellipse_distance_brute(a, b, x);
        if (std::abs(closed - brute) > 1e-6) c.fail("closed form off brute force at i=" +
                                                    std::to_string(i));
        const double x0 = ellipse_critical_point(e);
        const double interior = b * std::sqrt(1.0 - x0 * x0 / (a * a - b * b));
        if (std::abs(interior - (a - x0)) > 1e-10) c.fail("branch mismatch at x0");
        ar.put(closed);
        ar.put(x0);
    }
    c.detail = "100 draws vs 1e6-point oracle";
    return c;
}

Criterion criterion5(Archive& ar) {
    Criterion c;
    CounterRng rng(555);
    int accepted = 0, attempts = 0;
    auto check_value = [&](const MinimizationResult& r, double lo, double hi, double q,
                           double tau) {
        const double brute = oracle::minimize_f_brute(lo, hi, q, tau);
        if (std::abs(r.value - brute) > 1e-8 * std::max(1.0, std::abs(r.value)))
            c.fail("closed form off brute minimum by " + fmt_double(r.value - brute));
        ar.put(r.value);
        ar.put(r.argmin);
    };
    // 50 draws meeting the endpoint side conditions, cycled over the four
    // closed-form regimes
    while (accepted < 50 && attempts < 20000) {
        ++attempts;
        const int regime = accepted % 4;
        MinimizationParams p;
        if (regime == 0) {  // outer minimum at 1+eps
            p.eps = 0.3 + 0.5 * rng.uniform();
            p.eps_prime = 0.05 + 0.25 * rng.uniform();
            p.tau = 0.001 + 0.05 * rng.uniform();
            p.q = 2.0 + 0.01 + 0.2 * rng.uniform();
        } else if (regime == 1) {  // outer minimum at 1/eps'
            const double rho = 50.0 + 450.0 * rng.uniform();
            const double h = 0.45 + 0.25 * rng.uniform();
            p.q = std::sqrt(rho) * (1.0 - 0.3);
            p.eps_prime = 1.0 / (std::sqrt(rho) * (1.0 - h));
            p.eps = 0.1 + 0.4 * rng.uniform();
            p.tau = 1.0 / rho;
        } else if (regime == 2) {  // inner minimum at 1-eps
            p.eps = 0.55 + 0.25 * rng.uniform();
            p.eps_prime = 0.01 + 0.1 * rng.uniform();
            p.tau = 0.001 + 0.05 * rng.uniform();
            p.q = 2.0 + 0.01 + 0.2 * rng.uniform();
        } else {  // inner minimum at eps'
            const double rho = 50.0 + 450.0 * rng.uniform();
            const double kappa = 0.3;
            const double h = kappa + 0.03 + 0.1 * rng.uniform();
            p.q = std::sqrt(rho) * (1.0 - kappa);
            p.eps_prime = 1.0 / (std::sqrt(rho) * (1.0 - h));
            p.eps = 0.1 + 0.3 * rng.uniform();
            p.tau = 1.0 / rho;
        }
        const bool outer = regime < 2;
        if (outer && !(1.0 + p.eps < 1.0 / p.eps_prime)) continue;
        if (!outer && !(p.eps_prime < 1.0 - p.eps)) continue;
        const auto r = outer ? min_f_outer(p) : min_f_inner(p);
        if (!r.closed_form || !r.flag.empty()) continue;
        const double lo = outer ? 1.0 + p.eps : p.eps_prime;
        const double hi = outer ? 1.0 / p.eps_prime : 1.0 - p.eps;
        check_value(r, lo, hi, p.q, p.tau);
        ++accepted;
    }
    if (accepted < 50) c.fail("only " + std::to_string(accepted) + " conforming draws found");

    // 10 draws violating the side conditions must come back flagged, with
    // the numeric minimum still matching the independent oracle
    int flagged = 0;
    for (int i = 0; i < 10; ++i) {
        MinimizationParams p;
        MinimizationResult r;
        double lo, hi;
        if (i % 3 == 0) {  // stationary zero inside the outer interval
            p.q = 2.2 + 0.1 * rng.uniform();
            p.tau = 0.01;
            p.eps = 0.05;
            p.eps_prime = 0.3;
            r = min_f_outer(p);
            lo = 1.0 + p.eps;
            hi = 1.0 / p.eps_prime;
        } else if (i % 3 == 1) {  // complex stationary points
            p.q = 0.8 + 0.3 * rng.uniform();
            p.tau = 0.0;
            p.eps = 0.1;
            p.eps_prime = 0.4;
            r = min_f_outer(p);
            lo = 1.0 + p.eps;
            hi = 1.0 / p.eps_prime;
        } else {  // inner interval whose right endpoint undercuts f(eps')
            p.q = 3.0;
            p.tau = 0.0;
            p.eps = 0.05;
            p.eps_prime = 0.79 + 0.005 * rng.uniform();
            r = min_f_inner(p);
            lo = p.eps_prime;
            hi = 1.0 - p.eps;
        }
        if (!r.flag.empty()) ++flagged;
        const double brute = oracle::minimize_f_brute(lo, hi, p.q, p.tau);
        if (std::abs(r.value - brute) > 1e-8 * std::max(1.0, std::abs(r.value)))
            c.fail("flagged-path minimum off the oracle");
        ar.put(r.value);
    }
    if (flagged != 10) c.fail("only " + std::to_string(flagged) + "/10 draws flagged");
    c.detail = "50 conforming + 10 flagged draws";
    return c;
}

Criterion criterion6(Archive& ar) {
    Criterion c;
    const auto fixed = asymptotic_ratio_suite({1e4, 1e6, 1e8}, {}, 0.5, 0.5);
    for (std::size_t i = 0; i + 1 < fixed.chi.size(); ++i) {
        if (!(std::abs(fixed.f1_ratio[i + 1] - 1.0) < std::abs(fixed.f1_ratio[i] - 1.0)))
            c.fail("F1/eps^4 not contracting toward 1");
        if (!(std::abs(fixed.g1_ratio[i + 1] - 1.0) < std::abs(fixed.g1_ratio[i] - 1.0)))
            c.fail("G1/eps^4 not contracting toward 1");
    }
    for (double x : fixed.f1_ratio) ar.put(x);
    for (double x : fixed.g1_ratio) ar.put(x);

    // rho-indexed ratios contract only along a vanishing schedule
    // h = rho^{-1/8}, kappa = h/2
    std::vector<double> f2, g2;
    for (double rho : {1e4, 1e6}) {
        const double h = std::pow(rho, -0.125);
        const auto r = asymptotic_ratio_suite({}, {rho}, h / 2.0, h);
        f2.push_back(r.f2_ratio[0]);
        g2.push_back(r.g2_ratio[0]);
        ar.put(r.f2_ratio[0]);
        ar.put(r.g2_ratio[0]);
    }
    if (!(std::abs(f2[1] - 1.0) < std::abs(f2[0] - 1.0)))
        c.fail("F2 ratio not contracting toward 1");
    if (!(std::abs(g2[1] - 1.0) < std::abs(g2[0] - 1.0)))
        c.fail("G2 ratio not contracting toward 1");
    c.detail = "chi in {1e4,1e6,1e8}; rho in {1e4,1e6}";
    return c;
}

Criterion criterion7(Archive& ar) {
    Criterion c;
    for (int i = 0; i < 100; ++i) {
        const auto r = interlacing_check(
            sample_erdos_renyi({200, 30.0, derive_seed(7700, static_cast<std::uint64_t>(i))}),
            30.0);
        if (!r.top) c.fail("top interlacing link failed at sample " + std::to_string(i));
        if (!r.bottom) c.fail("bottom interlacing link failed at sample " + std::to_string(i));
        ar.put(r.lambda1_breve);
        ar.put(r.lambda2_tilde);
        ar.put(r.lambda_min_tilde);
        ar.put(r.lambda_min_breve);
    }
    // the deflation lemma verbatim on A~ - tJ
    for (int i = 0; i < 5; ++i) {
        const Graph g = sample_erdos_renyi({100, 10.0, derive_seed(7711, static_cast<std::uint64_t>(i))});
        const auto nm = normalized_matrices(g, 10.0);
        const double t = std::sqrt(10.0) / 100.0;
        const auto lt = sym_eigenvalues(nm.a_tilde);
        const auto ld = sym_eigenvalues(
            Eigen::MatrixXd(nm.a_tilde - t * Eigen::MatrixXd::Ones(100, 100)));
        const double slack = tol::kInterlacingRel * std::max(1.0, std::abs(lt.front()));
        if (!(lt[1] <= ld.front() + slack)) c.fail("lambda_2(A~) > lambda_1(A~ - tJ)");
        if (!(lt.back() >= ld.back() - slack)) c.fail("lambda_min(A~) < lambda_min(A~ - tJ)");
        ar.put(lt[1]);
        ar.put(ld.front());
    }
    c.detail = "100 ER samples n=200 rho=30, plus deflation";
    return c;
}

Criterion criterion8(Archive& ar) {
    Criterion c;
    CounterRng rng(888);
    const double eps = 0.2, eps_prime = 0.3;
    for (int i = 0; i < 50; ++i) {
        const Graph g = sample_erdos_renyi({60, 8.0, derive_seed(8800, static_cast<std::uint64_t>(i))});
        const auto nm = normalized_matrices(g, 8.0);
        // modulus alternates between the inner and outer annulus
        const double r = i % 2 == 0 ? eps_prime + (1.0 - eps - eps_prime) * rng.uniform()
                                    : 1.0 + eps + (1.0 / eps_prime - 1.0 - eps) * rng.uniform();
        const Complex v = std::polar(r, 2.0 * M_PI * rng.uniform());
        Eigen::MatrixXcd x = nm.a_tilde.cast<Complex>();
        const Complex gamma = gamma_transform(v, nm.tau);
        for (int k = 0; k < nm.n; ++k) x(k, k) -= gamma;
        Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(nm.n, nm.n);
        for (int k = 0; k < nm.n; ++k) y(k, k) = -v * nm.b_hat_diag[k];
        const auto gap = weyl_singular_gap(x, y);
        if (gap.max_gap > gap.bound + tol::kWeylRel * std::max(1.0, gap.bound))
            c.fail("singular value Weyl bound violated");
        ar.put(gap.max_gap);
        ar.put(gap.bound);
    }
    for (int i = 0; i < 50; ++i) {
        const Graph g = sample_erdos_renyi({60, 8.0, derive_seed(8811, static_cast<std::uint64_t>(i))});
        const auto nm = normalized_matrices(g, 8.0);
        double v = i % 2 == 0 ? eps_prime + (1.0 - eps - eps_prime) * rng.uniform()
                              : 1.0 + eps + (1.0 / eps_prime - 1.0 - eps) * rng.uniform();
        if (i % 4 < 2) v = -v;
        const auto gap = weyl_eigen_gap_real_v(nm, v);
        if (gap.max_gap > gap.bound + tol::kWeylRel * std::max(1.0, gap.bound))
            c.fail("hermitian Weyl bound violated");
        ar.put(gap.max_gap);
        ar.put(gap.bound);
    }
    c.detail = "50 singular + 50 hermitian pairs";
    return c;
}

Criterion criterion9(Archive& ar) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    std::vector<SchedulePoint> schedule;
    for (int n : {100, 200, 400, 800}) schedule.push_back({n, std::log(static_cast<double>(n)), 200});
    const auto result = campaign_estimate(
        schedule, 0.5, [](double chi) { return std::pow(chi, -0.375); }, 20260823);

    std::vector<double> p, lo, hi, mean_dmax, mean_l1_ratio, guard_u_viol;
    for (const auto& pt : result.points) {
        const auto& es = pt.events.at("phi1_or_phi2");
        p.push_back(es.wilson.p_hat);
        lo.push_back(es.wilson.lo);
        hi.push_back(es.wilson.hi);
        guard_u_viol.push_back(pt.events.at("guard_U_violated").wilson.p_hat);
        double dsum = 0.0, lsum = 0.0;
        for (const auto& t : pt.outcomes) {
            dsum += t.delta_max;
            lsum += t.lambda1 / std::sqrt(pt.rho);
            ar.put(t.lambda1);
            ar.put(t.delta_max);
            ar.put(t.pole_in_D1 || t.pole_in_D2);
        }
        mean_dmax.push_back(dsum / pt.outcomes.size());
        mean_l1_ratio.push_back(lsum / pt.outcomes.size());
        for (const auto& name : campaign_event_names()) {
            const auto& e = pt.events.at(name);
            ar.put(e.count);
            ar.put(e.wilson.p_hat);
            ar.put(e.wilson.lo);
            ar.put(e.wilson.hi);
        }
        ar.put(mean_dmax.back());
        ar.put(mean_l1_ratio.back());
    }

    int inversions = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i + 1] > p[i]) {
            ++inversions;
            if (lo[i + 1] > hi[i]) c.fail("inversion outside overlapping Wilson intervals");
        }
    }
    if (inversions > 1) c.fail(std::to_string(inversions) + " inversions in P(phi1 or phi2)");
    for (std::size_t i = 0; i + 1 < mean_dmax.size(); ++i)
        if (!(mean_dmax[i + 1] < mean_dmax[i])) c.fail("mean degree deviation not decreasing");
    if (!(guard_u_viol.back() < 0.10))
        c.fail("guard_U violation rate " + fmt_double(guard_u_viol.back()) + " at n=800");
    if (!(mean_l1_ratio.back() >= 0.9 && mean_l1_ratio.back() <= 1.1))
        c.fail("mean lambda_1/sqrt(rho) = " + fmt_double(mean_l1_ratio.back()) + " at n=800");
    const double dt = seconds_since(t0);
    if (dt >= 1800.0) c.fail("runtime " + fmt_double(dt) + "s >= 30min");
    c.detail = "P = [" + fmt_double(p[0]) + ", " + fmt_double(p[1]) + ", " + fmt_double(p[2]) +
               ", " + fmt_double(p[3]) + "], " + fmt_double(dt) + "s";
    return c;
}

struct PassResult {
    std::vector<Criterion> criteria;
    std::string archive;
};

PassResult run_battery() {
    PassResult out;
    Archive ar;
    const auto suite = route_suite();
    out.criteria.push_back(criterion1(suite, ar));
    out.criteria.push_back(criterion2(ar));
    out.criteria.push_back(criterion3(suite, ar));
    out.criteria.push_back(criterion4(ar));
    out.criteria.push_back(criterion5(ar));
    out.criteria.push_back(criterion6(ar));
    out.criteria.push_back(criterion7(ar));
    out.criteria.push_back(criterion8(ar));
    out.criteria.push_back(criterion9(ar));
    out.archive = std::move(ar.data);
    return out;
}

}  // namespace

int main() {
    static const char* names[] = {
        "zeta route agreement",
        "Ramanujan/pole-scan equivalence",
        "Ihara-Bass multiplicity identity",
        "ellipse distance closed form",
        "endpoint minimization closed forms",
        "asymptotic ratio contraction",
        "interlacing of centered spectra",
        "Weyl perturbation bounds",
        "pole avoidance decay trend",
        "byte-for-byte determinism",
    };
    const PassResult first = run_battery();
    const PassResult second = run_battery();

    Criterion determinism;
    determinism.detail = std::to_string(first.archive.size()) + " archived bytes compared";
    if (first.archive != second.archive) determinism.fail("reruns diverge");

    std::vector<Criterion> all = first.criteria;
    all.push_back(determinism);
    int failures = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& c = all[i];
        if (!c.pass) ++failures;
        std::printf("%s: criterion %zu (%s)%s%s\n", c.pass ? "pass" : "FAIL", i + 1, names[i],
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
