#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "iplab/kernel.hpp"

namespace iplab {

/// Total-variation distance between two distributions given as vectors.
inline double tv_distance(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
    return 0.5 * (mu - nu).cwiseAbs().sum();
}

inline double tv_row_to_uniform(const Eigen::MatrixXd& p, std::int64_t row) {
    const double pi = 1.0 / static_cast<double>(p.cols());
    double s = 0;
    for (std::int64_t c = 0; c < p.cols(); ++c) s += std::abs(p(row, c) - pi);
    return 0.5 * s;
}

/// d(t) = max over start states of || P_t(a,.) - pi ||_TV (pi uniform).
inline double worst_case_d(const Eigen::MatrixXd& pt) {
    double worst = 0;
    for (std::int64_t r = 0; r < pt.rows(); ++r)
        worst = std::max(worst, tv_row_to_uniform(pt, r));
    return worst;
}

inline double worst_case_d(TransitionKernel& kernel, double t) {
    return worst_case_d(kernel.at(t));
}

/// bar_d_k(t) for an IP(k) kernel: the worst TV between laws started from
/// two configurations agreeing in the first k-1 coordinates.  For k = 1
/// this is the worst TV between two single-particle starts.
inline double bar_d_k(const StateSpace& space, const Eigen::MatrixXd& pt) {
    if (space.kind() != SpaceKind::Tuples && space.k() != 1)
        throw std::invalid_argument("bar_d_k needs an ordered-tuple state space");
    const std::int64_t n_states = space.size();
    const int k = space.k();
    if (k == 1) {
        double worst = 0;
        for (std::int64_t u = 0; u < n_states; ++u)
            for (std::int64_t v = u + 1; v < n_states; ++v)
                worst = std::max(worst, 0.5 * (pt.row(u) - pt.row(v)).cwiseAbs().sum());
        return worst;
    }
    // group states by their first k-1 coordinates
    std::map<std::vector<int>, std::vector<std::int64_t>> groups;
    LabeledConfig s(k);
    for (std::int64_t r = 0; r < n_states; ++r) {
        space.unrank(r, s);
        std::vector<int> prefix(s.begin(), s.end() - 1);
        groups[std::move(prefix)].push_back(r);
    }
    double worst = 0;
    for (const auto& [prefix, members] : groups)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                worst = std::max(worst,
                                 0.5 * (pt.row(members[i]) - pt.row(members[j])).cwiseAbs().sum());
    return worst;
}

/// Exact TV curve on a time grid; optionally with bar_d_k values.
struct TVCurve {
    std::vector<double> times;
    std::vector<double> d;
    std::vector<double> bar_dk; // empty unless requested
};

inline TVCurve tv_curve(const GeneratorMatrix& gen, const std::vector<double>& times,
                        bool with_bar_dk = false,
                        const Budgets& budgets = default_budgets(),
                        const Tolerances& tol = default_tols()) {
    TransitionKernel kernel(gen, budgets, tol);
    TVCurve curve;
    curve.times = times;
    for (double t : times) {
        Eigen::MatrixXd pt = kernel.at(t);
        curve.d.push_back(worst_case_d(pt));
        if (with_bar_dk) curve.bar_dk.push_back(bar_d_k(gen.space, pt));
    }
    return curve;
}

/// t_mix(eps) by bracketing + bisection on the monotone d(t).  Throws for
/// reducible generators (the distance never crosses).
inline double mixing_time(const GeneratorMatrix& gen, TransitionKernel& kernel, double eps,
                          const Tolerances& tol = default_tols()) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("mixing time needs eps in (0,1)");
    if (!is_irreducible(gen)) throw std::runtime_error("mixing time infinite: generator reducible");
    if (worst_case_d(kernel, 0.0) <= eps) return 0.0;
    double hi = (gen.max_exit_rate > 0) ? 1.0 / gen.max_exit_rate : 1.0;
    int guard = 0;
    while (worst_case_d(kernel, hi) > eps) {
        hi *= 2;
        if (++guard > 200) throw std::runtime_error("mixing time bracket failed to close");
    }
    double lo = guard ? hi / 2 : 0.0;
    while (hi - lo > tol.mixing_rel * hi) {
        const double mid = 0.5 * (lo + hi);
        if (worst_case_d(kernel, mid) > eps)
            lo = mid;
        else
            hi = mid;
    }
    return hi; // d(returned) <= eps
}

inline double mixing_time(const GeneratorMatrix& gen, double eps,
                          const Budgets& budgets = default_budgets(),
                          const Tolerances& tol = default_tols()) {
    TransitionKernel kernel(gen, budgets, tol);
    return mixing_time(gen, kernel, eps, tol);
}

} // namespace iplab
