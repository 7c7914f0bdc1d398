#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "iplab/generator_matrix.hpp"

namespace iplab {

namespace detail {

/// Poisson(lambda) weights w_j for j in [0, jmax], computed mode-centred so
/// large lambda stays in range, truncated when the missed tail mass is
/// below `tail_tol`, then normalized.
inline std::vector<double> poisson_weights(double lambda, double tail_tol) {
    if (lambda <= 0) return {1.0};
    const int mode = static_cast<int>(lambda);
    // upper cut: crude but safe Chernoff-style cap, refined by the mass scan
    int jmax = mode;
    {
        double spread = 8.0 * std::sqrt(lambda) + 40.0;
        jmax = static_cast<int>(lambda + spread);
    }
    std::vector<double> w(static_cast<std::size_t>(jmax) + 1, 0.0);
    w[mode] = 1.0;
    for (int j = mode + 1; j <= jmax; ++j) w[j] = w[j - 1] * (lambda / j);
    for (int j = mode - 1; j >= 0; --j) w[j] = w[j + 1] * ((j + 1) / lambda);
    double total = 0;
    for (double v : w) total += v;
    for (double& v : w) v /= total;
    // trim the upper tail once cumulative mass reaches 1 - tail_tol
    double cum = 0;
    std::size_t cut = w.size();
    for (std::size_t j = 0; j < w.size(); ++j) {
        cum += w[j];
        if (cum >= 1.0 - tail_tol) {
            cut = j + 1;
            break;
        }
    }
    w.resize(cut);
    return w;
}

} // namespace detail

/// Transition kernels P(t) = exp(tQ) by uniformization with rate
/// Lambda* = max_a |Q(a,a)|.  Powers of the uniformized matrix are cached
/// across calls, so repeated evaluations (bisection!) cost one accumulation
/// each.  Entrywise truncation error is bounded by the Poisson tail.
class TransitionKernel {
public:
    explicit TransitionKernel(const GeneratorMatrix& gen,
                              const Budgets& budgets = default_budgets(),
                              const Tolerances& tol = default_tols(),
                              std::size_t cache_bytes = std::size_t(256) << 20)
        : tol_(tol) {
        const std::int64_t n = gen.size();
        if (n > budgets.kernel_states)
            throw BudgetError("dense transition kernel above budget (" + std::to_string(n) +
                              " states); use vector products or Monte Carlo");
        lambda_ = gen.max_exit_rate;
        Eigen::MatrixXd q = gen.dense();
        p_ = Eigen::MatrixXd::Identity(n, n);
        if (lambda_ > 0) p_ += q / lambda_;
        powers_.push_back(Eigen::MatrixXd::Identity(n, n));
        cache_limit_ = std::max<std::size_t>(
            2, cache_bytes / (static_cast<std::size_t>(n) * n * sizeof(double)));
    }

    std::int64_t size() const { return p_.rows(); }

    /// P(t), rows renormalized to sum to one; t >= 0.
    Eigen::MatrixXd at(double t) {
        if (t < 0) throw std::invalid_argument("transition kernel needs t >= 0");
        const std::int64_t n = p_.rows();
        if (t == 0 || lambda_ == 0) return Eigen::MatrixXd::Identity(n, n);
        const auto w = detail::poisson_weights(lambda_ * t, tol_.kernel_truncation);
        const std::size_t cached = std::min(w.size(), cache_limit_);
        while (powers_.size() < cached) powers_.push_back(powers_.back() * p_);
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t j = 0; j < std::min(w.size(), powers_.size()); ++j)
            out += w[j] * powers_[j];
        if (w.size() > powers_.size()) {
            // past the cache: stream the remaining powers
            Eigen::MatrixXd cur = powers_.back();
            for (std::size_t j = powers_.size(); j < w.size(); ++j) {
                cur = cur * p_;
                out += w[j] * cur;
            }
        }
        // clamp roundoff negatives and renormalize rows
        out = out.cwiseMax(0.0);
        for (std::int64_t r = 0; r < n; ++r) {
            const double s = out.row(r).sum();
            if (s > 0) out.row(r) /= s;
        }
        return out;
    }

private:
    Tolerances tol_;
    double lambda_ = 0.0;
    Eigen::MatrixXd p_;
    std::vector<Eigen::MatrixXd> powers_;
    std::size_t cache_limit_ = 2;
};

/// v(t) = exp(tM) v for a generator-like M (non-negative off-diagonal,
/// row sums <= 0, as for killed semigroups).  Sparse, any state count.
inline Eigen::VectorXd expm_apply(const SparseRates& m, double t, Eigen::VectorXd v,
                                  const Tolerances& tol = default_tols()) {
    if (t < 0) throw std::invalid_argument("expm_apply needs t >= 0");
    if (t == 0) return v;
    double lambda = 0;
    for (std::int64_t r = 0; r < m.rows(); ++r) lambda = std::max(lambda, -m.coeff(r, r));
    if (lambda == 0) return v;
    const auto w = detail::poisson_weights(lambda * t, tol.kernel_truncation);
    SparseRates p = m / lambda;
    for (std::int64_t r = 0; r < m.rows(); ++r) p.coeffRef(r, r) += 1.0;
    Eigen::VectorXd acc = w[0] * v;
    Eigen::VectorXd cur = std::move(v);
    for (std::size_t j = 1; j < w.size(); ++j) {
        cur = p * cur;
        acc += w[j] * cur;
    }
    return acc;
}

/// Row `start` of exp(tQ): the time-t distribution from a point mass.
inline Eigen::VectorXd distribution_at(const GeneratorMatrix& gen, std::int64_t start, double t,
                                       const Tolerances& tol = default_tols()) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(gen.size());
    e[start] = 1.0;
    SparseRates qt = gen.rates.transpose();
    Eigen::VectorXd d = expm_apply(qt, t, std::move(e), tol);
    d = d.cwiseMax(0.0);
    const double s = d.sum();
    if (s > 0) d /= s;
    return d;
}

} // namespace iplab
