#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "iplab/generator_matrix.hpp"
#include "iplab/rng.hpp"

namespace iplab {

namespace detail {

/// Largest eigenvalue of B = Lambda I + Q on the mean-zero subspace,
/// via Lanczos with full reorthogonalization.  Q symmetric, uniform pi.
inline double lanczos_top_deflated(const SparseRates& q, double lambda, double rel_tol,
                                   int max_iter = 600) {
    const std::int64_t n = q.rows();
    auto deflate = [n](Eigen::VectorXd& v) { v.array() -= v.mean(); };
    CounterRng rng(0x1a2b3c4dULL, 77);
    Eigen::VectorXd v(n);
    for (std::int64_t i = 0; i < n; ++i) v[i] = rng.uniform() - 0.5;
    deflate(v);
    v.normalize();

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;
    Eigen::VectorXd w;
    double prev_theta = -std::numeric_limits<double>::infinity();
    int stagnant = 0;
    for (int it = 0; it < max_iter; ++it) {
        basis.push_back(v);
        w = lambda * v + q * v;
        deflate(w);
        const double a = v.dot(w);
        alpha.push_back(a);
        w -= a * v;
        if (it > 0) w -= beta.back() * basis[it - 1];
        for (const auto& b : basis) w -= b.dot(w) * b; // full reorthogonalization
        const double bnorm = w.norm();

        // top Ritz value of the tridiagonal
        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
        const double theta = es.eigenvalues().maxCoeff();
        // the gap comes from lambda - theta, so theta must converge well
        // below the gap scale, not just relative to theta itself
        stagnant = (it > 4 && std::abs(theta - prev_theta) <=
                                  rel_tol * std::max(lambda - theta, 1e-3 * lambda))
                       ? stagnant + 1
                       : 0;
        if (stagnant >= 3) return theta;
        prev_theta = theta;
        if (bnorm < 1e-14 * lambda) return theta; // invariant subspace exhausted
        beta.push_back(bnorm);
        v = w / bnorm;
    }
    return prev_theta;
}

} // namespace detail

/// Spectral gap: smallest nonzero eigenvalue of -Q for a reversible,
/// irreducible generator with uniform stationary distribution.  Dense
/// eigendecomposition below the dense budget, Lanczos above.
inline double spectral_gap(const GeneratorMatrix& gen,
                           const Budgets& budgets = default_budgets(),
                           const Tolerances& tol = default_tols()) {
    if (!gen.reversible)
        throw std::runtime_error(
            "spectral gap undefined in this artifact: generator not reversible "
            "w.r.t. the uniform distribution");
    if (!is_irreducible(gen))
        throw std::runtime_error("spectral gap zero: generator reducible");
    const std::int64_t n = gen.size();
    if (n < 2) throw std::invalid_argument("spectral gap needs at least two states");

    if (n <= budgets.dense_states) {
        Eigen::MatrixXd q = gen.dense();
        Eigen::MatrixXd sym = -0.5 * (q + q.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
        return es.eigenvalues()[1]; // ascending; [0] ~ 0 for the constants
    }
    const double lambda = gen.max_exit_rate;
    const double theta = detail::lanczos_top_deflated(gen.rates, lambda, tol.eigen_rel * 0.01);
    return lambda - theta;
}

inline double relaxation_time(const GeneratorMatrix& gen,
                              const Budgets& budgets = default_budgets(),
                              const Tolerances& tol = default_tols()) {
    return 1.0 / spectral_gap(gen, budgets, tol);
}

} // namespace iplab
