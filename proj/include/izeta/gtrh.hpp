#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "izeta/graph.hpp"
#include "izeta/spectra.hpp"
#include "izeta/tolerances.hpp"
#include "izeta/zeta.hpp"

namespace izeta {

enum class PoleRoute { companion, edge };

// Poles of the (normalized) zeta function. The +-1 poles contributed by the
// (1-u^2)^{r-1} prefactor are kept separately with their common
// multiplicity; scale records the v = u * sqrt(rho) rescaling (1 = u-plane).
struct PoleSet {
    std::vector<Complex> poles;      // finite poles, det-route multiplicities
    int unit_pole_multiplicity = 0;  // each of +-scale carries this multiplicity
    int infinite_pole_count = 0;     // zero eigenvalues of W (edge route only)
    PoleRoute route = PoleRoute::companion;
    double scale = 1.0;

    // Finite poles plus the explicitly stored unit poles, in one list.
    std::vector<Complex> all_poles() const {
        std::vector<Complex> out = poles;
        for (int k = 0; k < unit_pole_multiplicity; ++k) {
            out.emplace_back(scale, 0.0);
            out.emplace_back(-scale, 0.0);
        }
        return out;
    }
};

inline bool has_bipartite_component(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] >= 0) continue;
        bool bipartite = true;
        std::vector<int> queue{s};
        color[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int v = queue[qi];
            for (int w : g.neighbors(v)) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if (color[w] == color[v]) {
                    bipartite = false;
                }
            }
        }
        if (bipartite) return true;
    }
    return false;
}

namespace detail {

// Eigensolvers locate defective +-1 roots (Jordan blocks of the pencil)
// only to sqrt(machine epsilon). u = 1 is always a root since the
// Laplacian B - A is singular; u = -1 is a root exactly when a bipartite
// component makes B + A singular. Snap the computed clusters onto the
// exact values they provably represent.
inline void snap_unit_roots(std::vector<Complex>& roots, bool minus_one_is_root) {
    for (auto& z : roots) {
        if (std::abs(z - 1.0) <= tol::kUnitPoleSnap) z = 1.0;
        else if (minus_one_is_root && std::abs(z + 1.0) <= tol::kUnitPoleSnap) z = -1.0;
    }
}

}  // namespace detail

// u-plane poles as eigenvalues of the 2n x 2n companion linearization
// [[0, I], [-(B-I)^{-1}, (B-I)^{-1} A]] of det(I + u^2 (B-I) - u A).
inline PoleSet poles_via_companion(const Graph& g) {
    if (g.min_degree() < 2)
        throw std::invalid_argument(
            "poles_via_companion: singular pencil (vertex of degree < 2); use poles_via_W");
    const int n = g.vertex_count();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    c.block(0, n, n, n).setIdentity();
    for (int i = 0; i < n; ++i) c(n + i, i) = -1.0 / (g.degree(i) - 1);
    const Eigen::MatrixXd a = g.adjacency_matrix();
    for (int i = 0; i < n; ++i) c.row(n + i).tail(n) = a.row(i) / (g.degree(i) - 1);
    PoleSet ps;
    ps.poles = nonsym_eigenvalues_lapack(c);
    detail::snap_unit_roots(ps.poles, has_bipartite_component(g));
    ps.unit_pole_multiplicity = g.edge_count() - n;  // r - 1
    ps.route = PoleRoute::companion;
    return ps;
}

// u-plane poles as reciprocals of the nonzero eigenvalues of W.
inline PoleSet poles_via_W(const Graph& g) {
    const auto w = non_backtracking_matrix(g);
    auto mu = nonsym_eigenvalues_lapack(w.dense());
    // det(I - uW) equals the full zeta reciprocal, so the prefactor's unit
    // roots also live in the W spectrum once m > n
    detail::snap_unit_roots(
        mu, g.edge_count() > g.vertex_count() || has_bipartite_component(g));
    double radius = 0.0;
    for (const auto& m : mu) radius = std::max(radius, std::abs(m));
    const double zero_cut = tol::kPolePairing * std::max(1.0, radius);
    PoleSet ps;
    ps.route = PoleRoute::edge;
    for (const auto& m : mu) {
        if (std::abs(m) <= zero_cut) ++ps.infinite_pole_count;
        else ps.poles.push_back(1.0 / m);
    }
    return ps;
}

// Greedy nearest-point pairing of two complex multisets.
inline bool multiset_match(std::vector<Complex> a, std::vector<Complex> b, double tolerance) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        std::size_t best = b.size();
        double best_d = tolerance;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double d = std::abs(p - b[i]);
            if (d <= best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == b.size()) return false;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return true;
}

inline PoleSet rescale_pole_set(const PoleSet& u_plane, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("rescale_pole_set: rho must be positive");
    PoleSet ps = u_plane;
    const double s = std::sqrt(rho);
    for (auto& p : ps.poles) p *= s;
    ps.scale = u_plane.scale * s;
    return ps;
}

// v-plane pole set of the normalized zeta function, v = u sqrt(rho).
inline PoleSet normalized_pole_set(const Graph& g, double rho) {
    return rescale_pole_set(poles_via_companion(g), rho);
}

struct GtrhReport {
    int q = 0;            // degree is q + 1
    bool ramanujan = false;   // every |lambda| != q+1 has |lambda| <= 2 sqrt(q)
    bool pole_based = false;  // every pole with 1/q < |u| < 1 sits on |u| = 1/sqrt(q)
};

// Both faces of the regular-graph Riemann hypothesis; they must agree.
inline GtrhReport gtrh_check_regular(const Graph& g) {
    if (!g.is_regular() || !g.is_connected())
        throw std::invalid_argument("gtrh_check_regular: graph must be connected and regular");
    GtrhReport rep;
    rep.q = g.degree(0) - 1;
    if (rep.q < 1) throw std::invalid_argument("gtrh_check_regular: need degree >= 2");
    const double two_sqrt_q = 2.0 * std::sqrt(static_cast<double>(rep.q));

    const auto lambda = sym_eigenvalues(g.adjacency_matrix());
    rep.ramanujan = true;
    for (double l : lambda) {
        if (std::abs(std::abs(l) - (rep.q + 1)) <= tol::kPoleModulus) continue;
        if (std::abs(l) > two_sqrt_q + tol::kPoleModulus) rep.ramanujan = false;
    }

    const auto ps = poles_via_companion(g);
    const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(rep.q));
    rep.pole_based = true;
    for (const auto& u : ps.all_poles()) {
        const double r = std::abs(u);
        if (r > 1.0 / rep.q + tol::kPoleModulus && r < 1.0 - tol::kPoleModulus &&
            std::abs(r - inv_sqrt_q) > tol::kPoleModulus)
            rep.pole_based = false;
    }
    return rep;
}

enum class DomainKind { annulus_inner, annulus_outer, real_interval_inner, real_interval_outer };

// Annulus or real-interval region of the v-plane, with the epsilon
// schedule parameters attached.
struct DomainSpec {
    DomainKind kind = DomainKind::annulus_inner;
    double eps = 0.0;
    double eps_prime = 0.0;
    double eps_hat = 0.0;
    double kappa = 0.0;

    // (lo, hi) bounds of the modulus (annuli) or the real value (intervals).
    std::pair<double, double> bounds() const {
        switch (kind) {
            case DomainKind::annulus_inner: return {eps_prime, 1.0 - eps};
            case DomainKind::annulus_outer: return {1.0 + eps, 1.0 / eps_prime};
            case DomainKind::real_interval_inner: return {eps_prime, 1.0 - eps_hat};
            case DomainKind::real_interval_outer: return {1.0 + eps_hat, 1.0 / eps_prime};
        }
        return {0.0, 0.0};
    }

    bool empty() const {
        auto [lo, hi] = bounds();
        return !(lo < hi);
    }
};

// True iff some pole lies strictly inside the region. Unit poles included;
// the empty-domain case is defined false. For interval kinds only exactly
// real poles qualify (dgeev reports real eigenvalues with zero imaginary
// part). near_boundary, when given, receives the count of poles within
// kBoundaryAudit of either boundary for audit.
inline bool domain_event(const PoleSet& ps, const DomainSpec& d, int* near_boundary = nullptr) {
    if (near_boundary) *near_boundary = 0;
    if (d.empty()) return false;
    const auto [lo, hi] = d.bounds();
    const bool interval = d.kind == DomainKind::real_interval_inner ||
                          d.kind == DomainKind::real_interval_outer;
    bool hit = false;
    for (const auto& p : ps.all_poles()) {
        double value;
        if (interval) {
            if (p.imag() != 0.0) continue;
            value = p.real();
        } else {
            value = std::abs(p);
        }
        if (near_boundary &&
            (std::abs(value - lo) < tol::kBoundaryAudit || std::abs(value - hi) < tol::kBoundaryAudit))
            ++*near_boundary;
        if (value > lo && value < hi) hit = true;
    }
    return hit;
}

// Per-sample record of one Monte Carlo trial; every boolean is
// recomputable from the archived graph.
struct TrialOutcome {
    std::uint64_t seed = 0;      // seed of the accepted sample
    std::uint64_t base_seed = 0; // seed before any resampling
    int n = 0;
    double rho = 0.0;
    double chi = 0.0;
    double eps = 0.0;
    double eps_prime = 0.0;
    double eps_hat = 0.0;
    double delta = 0.0;
    double kappa = 0.0;
    bool degenerate = false;  // min degree stayed < 2 after all resamples
    int resamples = 0;
    double lambda1 = 0.0;     // lambda_1(A~)
    double lambda2 = 0.0;     // lambda_2(A~)
    double lambda_max_breve = 0.0;
    double delta_max = 0.0;
    bool pole_in_D1 = false;
    bool pole_in_D2 = false;
    bool pole_in_I1 = false;
    bool pole_in_I2 = false;
    bool guard_U = false;     // lambda_max(A') <= 2 + delta
    bool guard_Psi = false;   // lambda_1(A~) >= sqrt(rho) (1 - kappa)
    bool empty_D1 = false;
    bool empty_D2 = false;
    int near_boundary = 0;
};

// One Theorem-1 trial. Resamples with derived sub-seeds when the minimum
// degree is below 2 (companion route requirement); after max_resamples the
// outcome is marked degenerate instead of erroring.
inline TrialOutcome run_trial(const ErdosRenyiSpec& spec, double kappa, double delta,
                              double h_hat, int max_resamples = 10) {
    TrialOutcome t;
    t.base_seed = spec.seed;
    t.n = spec.n;
    t.rho = spec.rho;
    t.chi = spec.rho / std::log(static_cast<double>(spec.n));
    t.kappa = kappa;
    t.delta = delta;
    t.eps = 2.0 * std::pow(t.chi, -0.125);
    t.eps_prime = 1.0 / (std::sqrt(spec.rho) * (1.0 - kappa));
    t.eps_hat = h_hat * std::pow(t.chi, -0.25);

    ErdosRenyiSpec cur = spec;
    Graph g = sample_erdos_renyi(cur);
    while (g.min_degree() < 2 && t.resamples < max_resamples) {
        ++t.resamples;
        cur.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(t.resamples));
        g = sample_erdos_renyi(cur);
    }
    t.seed = cur.seed;

    const auto nm = normalized_matrices(g, spec.rho);
    t.delta_max = nm.delta_max;
    const auto lt = sym_eigenvalues(nm.a_tilde);
    t.lambda1 = lt[0];
    t.lambda2 = lt.size() > 1 ? lt[1] : lt[0];
    t.lambda_max_breve = sym_eigenvalues(nm.a_breve)[0];
    t.guard_U = t.lambda_max_breve <= 2.0 + delta;
    t.guard_Psi = t.lambda1 >= std::sqrt(spec.rho) * (1.0 - kappa);

    DomainSpec d1{DomainKind::annulus_inner, t.eps, t.eps_prime, t.eps_hat, kappa};
    DomainSpec d2{DomainKind::annulus_outer, t.eps, t.eps_prime, t.eps_hat, kappa};
    DomainSpec i1{DomainKind::real_interval_inner, t.eps, t.eps_prime, t.eps_hat, kappa};
    DomainSpec i2{DomainKind::real_interval_outer, t.eps, t.eps_prime, t.eps_hat, kappa};
    t.empty_D1 = d1.empty();
    t.empty_D2 = d2.empty();

    if (g.min_degree() < 2) {
        t.degenerate = true;
        return t;
    }
    const auto poles_v = normalized_pole_set(g, spec.rho);
    int nb = 0;
    t.pole_in_D1 = domain_event(poles_v, d1, &nb);
    t.near_boundary += nb;
    t.pole_in_D2 = domain_event(poles_v, d2, &nb);
    t.near_boundary += nb;
    t.pole_in_I1 = domain_event(poles_v, i1, &nb);
    t.near_boundary += nb;
    t.pole_in_I2 = domain_event(poles_v, i2, &nb);
    t.near_boundary += nb;
    return t;
}

// Wilson 95% score interval for k successes out of n.
struct WilsonInterval {
    double p_hat = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

inline WilsonInterval wilson_interval(int k, int n, double z = 1.959963984540054) {
    WilsonInterval w;
    if (n <= 0) return w;
    const double p = static_cast<double>(k) / n;
    w.p_hat = p;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * static_cast<double>(n) * n)) /
                        (1.0 + z2n);
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

struct SchedulePoint {
    int n = 0;
    double chi = 0.0;  // rho = chi * log n
    int trials = 0;
};

struct EventStats {
    int count = 0;
    int trials = 0;
    WilsonInterval wilson;
};

struct CampaignPointResult {
    SchedulePoint point;
    double rho = 0.0;
    int degenerate = 0;
    std::map<std::string, EventStats> events;
    std::vector<TrialOutcome> outcomes;  // trial order
};

struct CampaignResult {
    std::vector<CampaignPointResult> points;
    std::map<std::string, double> partial_sums;  // sum over n of p_hat per event
};

inline const std::vector<std::string>& campaign_event_names() {
    static const std::vector<std::string> names = {
        "phi1", "phi2", "phi1_or_phi2", "i1", "i2", "guard_U_violated", "guard_Psi_violated"};
    return names;
}

inline bool trial_event(const TrialOutcome& t, const std::string& name) {
    if (name == "phi1") return t.pole_in_D1;
    if (name == "phi2") return t.pole_in_D2;
    if (name == "phi1_or_phi2") return t.pole_in_D1 || t.pole_in_D2;
    if (name == "i1") return t.pole_in_I1;
    if (name == "i2") return t.pole_in_I2;
    if (name == "guard_U_violated") return !t.guard_U;
    if (name == "guard_Psi_violated") return !t.guard_Psi;
    throw std::invalid_argument("unknown event: " + name);
}

// Seeded Monte Carlo over a schedule of (n, chi, trials) points. Trials are
// independent given their seeds; worker threads pull trial indices and the
// aggregation is by (point, trial) key, so results do not depend on
// scheduling order. delta_rule maps chi to the guard threshold delta.
inline CampaignResult campaign_estimate(const std::vector<SchedulePoint>& schedule,
                                        double kappa,
                                        const std::function<double(double)>& delta_rule,
                                        std::uint64_t seed_root,
                                        double h_hat = 4.0,
                                        int workers = 1,
                                        const std::function<void(int, int)>& progress = {},
                                        int max_resamples = 10) {
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
        if (schedule[i + 1].n <= schedule[i].n)
            throw std::invalid_argument("campaign_estimate: schedule n values must be increasing");
    CampaignResult result;
    for (std::size_t pi = 0; pi < schedule.size(); ++pi) {
        const auto& pt = schedule[pi];
        if (pt.trials < 1) throw std::invalid_argument("campaign_estimate: trials must be >= 1");
        CampaignPointResult pr;
        pr.point = pt;
        pr.rho = pt.chi * std::log(static_cast<double>(pt.n));
        if (!(pr.rho < pt.n))
            throw std::invalid_argument("campaign_estimate: rho = chi log n must stay below n");
        const double delta = delta_rule(pt.chi);
        pr.outcomes.resize(static_cast<std::size_t>(pt.trials));

        std::atomic<int> next{0};
        std::atomic<int> done{0};
        auto work = [&]() {
            for (;;) {
                const int ti = next.fetch_add(1);
                if (ti >= pt.trials) return;
                ErdosRenyiSpec spec;
                spec.n = pt.n;
                spec.rho = pr.rho;
                spec.seed = derive_seed(seed_root, (static_cast<std::uint64_t>(pi) << 32) |
                                                       static_cast<std::uint64_t>(ti));
                pr.outcomes[static_cast<std::size_t>(ti)] =
                    run_trial(spec, kappa, delta, h_hat, max_resamples);
                const int d = done.fetch_add(1) + 1;
                if (progress) progress(static_cast<int>(pi), d);
            }
        };
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int wi = 0; wi < workers; ++wi) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }

        for (const auto& t : pr.outcomes)
            if (t.degenerate) ++pr.degenerate;
        for (const auto& name : campaign_event_names()) {
            EventStats es;
            es.trials = pt.trials;
            for (const auto& t : pr.outcomes)
                if (trial_event(t, name)) ++es.count;
            es.wilson = wilson_interval(es.count, es.trials);
            pr.events[name] = es;
            result.partial_sums[name] += es.wilson.p_hat;
        }
        result.points.push_back(std::move(pr));
    }
    return result;
}

}  // namespace izeta
