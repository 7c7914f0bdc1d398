#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "iplab/generator_matrix.hpp"
#include "iplab/kernel.hpp"

namespace iplab {

namespace detail {

/// Killed IP(k) generator for the avoidance event: rings of an edge
/// containing the last particle together with any earlier particle send
/// the chain to an absorbing "interaction happened" state; all other rings
/// act normally.  Row sums are -(kill rate) instead of zero.
inline SparseRates build_clean_subgenerator(const HypergraphInstance& g, int k,
                                            const StateSpace& space) {
    const std::int64_t n_states = space.size();
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> kill(n_states, 0.0);
    LabeledConfig a(k), b(k);
    std::vector<int> coords;
    for (std::int64_t s = 0; s < n_states; ++s) {
        space.unrank(s, a);
        for (const auto& e : g.edges) {
            coords.clear();
            for (int i = 0; i < k; ++i)
                if (e.contains(a[i])) coords.push_back(i);
            if (coords.empty()) continue;
            const bool has_last = e.contains(a[k - 1]);
            const bool flags = has_last && coords.size() >= 2;
            if (flags) {
                kill[s] += e.rate;
                continue;
            }
            const int m = static_cast<int>(coords.size());
            switch (e.law.kind) {
            case LawKind::Uniform: {
                double prob = 1.0;
                for (int i = 0; i < m; ++i) prob /= (e.size() - i);
                for_each_injection(e.vertices, m, [&](const std::vector<int>& target) {
                    b = a;
                    for (int i = 0; i < m; ++i) b[coords[i]] = target[i];
                    if (b != a) trip.emplace_back(s, space.rank(b), e.rate * prob);
                });
                break;
            }
            case LawKind::Transposition: {
                b = a;
                for (int i : coords)
                    b[i] = (b[i] == e.vertices[0]) ? e.vertices[1] : e.vertices[0];
                if (b != a) trip.emplace_back(s, space.rank(b), e.rate);
                break;
            }
            case LawKind::Explicit: {
                for (const auto& atom : e.law.atoms) {
                    if (atom.prob == 0.0) continue;
                    b = a;
                    for (int i : coords) b[i] = atom.images[e.index_of(a[i])];
                    if (b != a) trip.emplace_back(s, space.rank(b), e.rate * atom.prob);
                }
                break;
            }
            }
        }
    }
    SparseRates l(n_states, n_states);
    l.setFromTriplets(trip.begin(), trip.end());
    // diagonal = -(off-diagonal row sum + kill rate)
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n_states);
    for (std::int64_t r = 0; r < n_states; ++r)
        for (SparseRates::InnerIterator it(l, r); it; ++it)
            if (it.col() != r) rowsum[r] += it.value();
    for (std::int64_t r = 0; r < n_states; ++r)
        l.coeffRef(r, r) = -(rowsum[r] + kill[r]);
    return l;
}

} // namespace detail

/// P[J_s(x)] for every start x of IP(k): survive the burn-in of length s,
/// then stay interaction-free for another s.  Computed as
/// exp(sQ) * exp(sL) * 1 with L the killed subgenerator.
inline Eigen::VectorXd exact_probJ_all(const HypergraphInstance& g, int k, double s,
                                       const Budgets& budgets = default_budgets(),
                                       const Tolerances& tol = default_tols()) {
    ProcessSpec spec = ip(g, k);
    StateSpace space = enumerate_states(spec, budgets);
    if (2 * space.size() > budgets.max_states)
        throw BudgetError("augmented clean/dirty space exceeds the state budget");
    if (k == 1) return Eigen::VectorXd::Ones(space.size());
    SparseRates clean = detail::build_clean_subgenerator(g, k, space);
    Eigen::VectorXd survive = expm_apply(clean, s, Eigen::VectorXd::Ones(space.size()), tol);
    GeneratorMatrix gen = build_ip_generator(g, k, budgets, tol);
    return expm_apply(gen.rates, s, std::move(survive), tol);
}

inline double exact_probJ(const HypergraphInstance& g, const LabeledConfig& start, double s,
                          const Budgets& budgets = default_budgets(),
                          const Tolerances& tol = default_tols()) {
    const int k = static_cast<int>(start.size());
    if (k == 1) return 1.0;
    ProcessSpec spec = ip(g, k);
    StateSpace space = enumerate_states(spec, budgets);
    Eigen::VectorXd all = exact_probJ_all(g, k, s, budgets, tol);
    return all[space.rank(start)];
}

namespace detail {

template <typename Fn>
double adaptive_simpson(Fn&& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <typename Fn>
double integrate(Fn&& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace detail

/// Exact E[number of (i,j) interactions during (t1, t2]]: integral of the
/// instantaneous pair rate rho_ij under the evolving law, by adaptive
/// Simpson quadrature.
inline double exact_expected_interactions(const HypergraphInstance& g, int k, int i, int j,
                                          const LabeledConfig& start, double t1, double t2,
                                          const Budgets& budgets = default_budgets(),
                                          const Tolerances& tol = default_tols()) {
    if (!(0 <= t1 && t1 <= t2)) throw std::invalid_argument("bad interaction window");
    if (t1 == t2) return 0.0;
    GeneratorMatrix gen = build_ip_generator(g, k, budgets, tol);
    const std::int64_t n_states = gen.size();
    // rho_ij(sigma) = sum of rates of edges containing both particles
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(n_states);
    {
        LabeledConfig a(k);
        for (std::int64_t s = 0; s < n_states; ++s) {
            gen.space.unrank(s, a);
            double r = 0;
            for (const auto& e : g.edges)
                if (e.contains(a[i]) && e.contains(a[j])) r += e.rate;
            rho[s] = r;
        }
    }
    SparseRates qt = gen.rates.transpose();
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n_states);
    e0[gen.space.rank(start)] = 1.0;
    auto integrand = [&](double t) {
        Eigen::VectorXd dist = expm_apply(qt, t, e0, tol);
        return dist.dot(rho);
    };
    return detail::integrate(integrand, t1, t2, tol.quadrature);
}

/// Same integral but averaged over a start distribution (uniform start
/// reproduces the stationary pair-interaction identity exactly).
inline double exact_expected_interactions_avg(const HypergraphInstance& g, int k, int i, int j,
                                              const Eigen::VectorXd& start_dist, double t1,
                                              double t2,
                                              const Budgets& budgets = default_budgets(),
                                              const Tolerances& tol = default_tols()) {
    if (!(0 <= t1 && t1 <= t2)) throw std::invalid_argument("bad interaction window");
    if (t1 == t2) return 0.0;
    GeneratorMatrix gen = build_ip_generator(g, k, budgets, tol);
    const std::int64_t n_states = gen.size();
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(n_states);
    {
        LabeledConfig a(k);
        for (std::int64_t s = 0; s < n_states; ++s) {
            gen.space.unrank(s, a);
            double r = 0;
            for (const auto& e : g.edges)
                if (e.contains(a[i]) && e.contains(a[j])) r += e.rate;
            rho[s] = r;
        }
    }
    SparseRates qt = gen.rates.transpose();
    auto integrand = [&](double t) {
        Eigen::VectorXd dist = expm_apply(qt, t, start_dist, tol);
        return dist.dot(rho);
    };
    return detail::integrate(integrand, t1, t2, tol.quadrature);
}

} // namespace iplab
