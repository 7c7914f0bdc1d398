#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "iplab/generator_matrix.hpp"
#include "iplab/spectral.hpp"

namespace iplab {

/// Real test function on (V)_2, indexed like the Tuples(n,2) state space.
using TestFunction = Eigen::VectorXd;

/// A Dirichlet form value together with its named term decomposition.
struct FormBreakdown {
    double total = 0;
    std::map<std::string, double> terms;
    double term(const std::string& name) const {
        auto it = terms.find(name);
        return it == terms.end() ? 0.0 : it->second;
    }
};

inline double variance_uniform(const TestFunction& f) {
    const double mean = f.mean();
    return f.squaredNorm() / f.size() - mean * mean;
}

/// 1/2 sum_a pi(a) sum_b q(a,b) (f(a)-f(b))^2 straight from the generator.
inline double dirichlet_total(const GeneratorMatrix& gen, const TestFunction& f) {
    const double pi = gen.uniform_pi();
    double total = 0;
    for (std::int64_t r = 0; r < gen.size(); ++r)
        for (SparseRates::InnerIterator it(gen.rates, r); it; ++it) {
            if (it.col() == r) continue;
            const double d = f[r] - f[it.col()];
            total += it.value() * d * d;
        }
    return 0.5 * pi * total;
}

namespace detail {

struct PairIndex {
    StateSpace tuples;
    explicit PairIndex(int n) : tuples(SpaceKind::Tuples, n, 2) {}
    std::int64_t operator()(int a, int b) const {
        const int s[2] = {a, b};
        return tuples.rank(std::span<const int>(s, 2));
    }
};

/// sum over edges containing u of r_e.
inline std::vector<double> incident_rate(const HypergraphInstance& g) {
    std::vector<double> c(g.n, 0.0);
    for (const auto& e : g.edges)
        for (int v : e.vertices) c[v] += e.rate;
    return c;
}

inline void require_uniform_laws(const HypergraphInstance& g) {
    if (!all_laws_uniform(g))
        throw std::invalid_argument("decomposition valid for uniform laws only");
}

} // namespace detail

/// IP(2) Dirichlet form with the three-term edge decomposition: pairs
/// moving inside one edge (weight r_e/(|e|(|e|-1))), and one coordinate
/// moving while the other sits outside the edge (weight r_e/|e|).  The
/// stationary weight is pi = 1/(n(n-1)) per ordered pair, which makes the
/// displayed terms sum exactly to the generator form.
inline FormBreakdown dirichlet_ip2(const HypergraphInstance& g, const TestFunction& f,
                                   const Budgets& budgets = default_budgets(),
                                   const Tolerances& tol = default_tols()) {
    detail::require_uniform_laws(g);
    GeneratorMatrix gen = build_ip_generator(g, 2, budgets, tol);
    if (f.size() != gen.size())
        throw std::invalid_argument("test function has the wrong dimension");
    FormBreakdown out;
    out.total = dirichlet_total(gen, f);
    const double pi = gen.uniform_pi();
    detail::PairIndex idx(g.n);

    double t1 = 0, t2 = 0, t3 = 0;
    for (const auto& e : g.edges) {
        const int m = e.size();
        const double w_pair = e.rate / (static_cast<double>(m) * (m - 1));
        const double w_single = e.rate / m;
        // both coordinates inside e
        for (int a1 : e.vertices)
            for (int a2 : e.vertices) {
                if (a1 == a2) continue;
                const double fa = f[idx(a1, a2)];
                for (int b1 : e.vertices)
                    for (int b2 : e.vertices) {
                        if (b1 == b2 || (b1 == a1 && b2 == a2)) continue;
                        const double d = fa - f[idx(b1, b2)];
                        t1 += w_pair * d * d;
                    }
            }
        // one coordinate inside e, the other outside
        for (int out_v = 0; out_v < g.n; ++out_v) {
            if (e.contains(out_v)) continue;
            for (int a : e.vertices)
                for (int b : e.vertices) {
                    if (a == b) continue;
                    const double d2 = f[idx(out_v, a)] - f[idx(out_v, b)];
                    t2 += w_single * d2 * d2;
                    const double d3 = f[idx(a, out_v)] - f[idx(b, out_v)];
                    t3 += w_single * d3 * d3;
                }
        }
    }
    out.terms["EIP2_1"] = 0.5 * pi * t1;
    out.terms["EIP2_2"] = 0.5 * pi * t2;
    out.terms["EIP2_3"] = 0.5 * pi * t3;
    return out;
}

/// Q(2) Dirichlet form: total from the censored generator, the four
/// coordinate-pattern terms from classifying censored transitions (the
/// swap (x2,x1) matches two patterns and is counted in both, hence the
/// pattern sum upper-bounds the total), and the explicit one-step /
/// through-diagonal refinements of the y(1)=x(1) and y(2)=x(1) patterns.
inline FormBreakdown dirichlet_q2(const HypergraphInstance& g, const TestFunction& f,
                                  const Budgets& budgets = default_budgets(),
                                  const Tolerances& tol = default_tols()) {
    detail::require_uniform_laws(g);
    GeneratorMatrix q2gen = build_censored_q2(g, budgets, tol);
    if (f.size() != q2gen.size())
        throw std::invalid_argument("test function has the wrong dimension");
    FormBreakdown out;
    out.total = dirichlet_total(q2gen, f);
    const double pi = q2gen.uniform_pi();
    const int n = g.n;
    detail::PairIndex idx(n);

    double p1 = 0, p2 = 0, p3 = 0, p4 = 0, unmatched = 0;
    {
        LabeledConfig x(2), y(2);
        for (std::int64_t r = 0; r < q2gen.size(); ++r) {
            q2gen.space.unrank(r, x);
            for (SparseRates::InnerIterator it(q2gen.rates, r); it; ++it) {
                if (it.col() == r || it.value() <= 0) continue;
                q2gen.space.unrank(it.col(), y);
                const double d = f[r] - f[it.col()];
                const double v = it.value() * d * d;
                bool matched = false;
                if (y[0] == x[0]) { p1 += v; matched = true; }
                if (y[1] == x[1]) { p2 += v; matched = true; }
                if (y[1] == x[0]) { p3 += v; matched = true; }
                if (y[0] == x[1]) { p4 += v; matched = true; }
                if (!matched) unmatched += v;
            }
        }
    }
    out.terms["EQ2_1"] = 0.5 * pi * p1;
    out.terms["EQ2_2"] = 0.5 * pi * p2;
    out.terms["EQ2_3"] = 0.5 * pi * p3;
    out.terms["EQ2_4"] = 0.5 * pi * p4;
    out.terms["unclassified"] = 0.5 * pi * unmatched;

    // explicit refinements (uniform-law rate formulas)
    const auto inc = detail::incident_rate(g);
    auto rate_both = [&](int u, int v, auto&& weight) {
        double s = 0;
        for (const auto& e : g.edges)
            if (e.contains(u) && e.contains(v)) s += weight(e);
        return s;
    };

    double simple1 = 0, simple2 = 0, compound = 0;
    double decomp1 = 0, decomp2 = 0, decomp3 = 0;
    double term3 = 0, t3p1 = 0, t3p2 = 0, t3p3 = 0, t3p4 = 0;

    for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2) {
            if (x1 == x2) continue;
            const double fx = f[idx(x1, x2)];
            // pattern y = (x1, y2): direct jumps split by x1 membership,
            // plus the excursion through (x1,x1)
            for (int y2 = 0; y2 < n; ++y2) {
                if (y2 == x1 || y2 == x2) continue;
                const double d = fx - f[idx(x1, y2)];
                const double dd = d * d;
                for (const auto& e : g.edges) {
                    if (!(e.contains(x2) && e.contains(y2))) continue;
                    if (e.contains(x1))
                        simple2 += (e.rate / e.size()) * dd;
                    else
                        simple1 += (e.rate / e.size()) * dd;
                }
                const double entry = rate_both(x1, x2, [](const Hyperedge& e) {
                    return e.rate / (2.0 * e.size());
                });
                const double exit = rate_both(x1, y2, [](const Hyperedge& e) {
                    return e.rate / (e.size() - 1.0);
                });
                compound += entry * exit / inc[x1] * dd;
            }

            // compound split along f(x)-f(w), f(w)-f(z), f(z)-f(y) with
            // w=(y2,x2), z=(y2,x1); the three pieces aggregate to decomp1-3
            for (int w1 = 0; w1 < n; ++w1) {
                if (w1 == x1 || w1 == x2) continue;
                const double d = fx - f[idx(w1, x2)];
                const double entry = rate_both(x1, x2, [](const Hyperedge& e) {
                    return e.rate / (2.0 * e.size());
                });
                const double exit = rate_both(x1, w1, [](const Hyperedge& e) {
                    return e.rate / (e.size() - 1.0);
                });
                decomp1 += entry * exit / inc[x1] * d * d;
            }
            // here (x1,x2) plays the role of w=(w1,w2); z=(w1,z2)
            for (int z2 = 0; z2 < n; ++z2) {
                if (z2 == x1 || z2 == x2) continue;
                const double d = fx - f[idx(x1, z2)];
                const double entry = rate_both(x2, z2, [](const Hyperedge& e) {
                    return e.rate / (2.0 * e.size());
                });
                const double exit = rate_both(x1, z2, [](const Hyperedge& e) {
                    return e.rate / (e.size() - 1.0);
                });
                decomp2 += entry * exit / inc[z2] * d * d;
            }
            // here (x1,x2) plays the role of z; zbar = (x2,x1)
            {
                const double d = fx - f[idx(x2, x1)];
                const double exit = rate_both(x1, x2, [](const Hyperedge& e) {
                    return e.rate / (e.size() - 1.0);
                });
                double entry = 0;
                for (int v = 0; v < n; ++v) {
                    if (v == x1 || v == x2) continue;
                    entry += rate_both(x2, v, [](const Hyperedge& e) {
                        return e.rate / (2.0 * e.size());
                    });
                }
                decomp3 += entry * exit / inc[x2] * d * d;
            }

            // pattern y = (y1, x1): excursion through (x1,x1) with the
            // first particle exiting; z = (y1, x2)
            for (int y1 = 0; y1 < n; ++y1) {
                if (y1 == x1) continue;
                const double d = fx - f[idx(y1, x1)];
                const double entry = rate_both(x1, x2, [](const Hyperedge& e) {
                    return e.rate / e.size();
                });
                const double exit = rate_both(y1, x1, [](const Hyperedge& e) {
                    return e.rate / (2.0 * (e.size() - 1.0));
                });
                term3 += entry * exit / inc[x1] * d * d;
                if (y1 == x2) continue; // z would collide; split needs z in (V)_2
                const double dxz = fx - f[idx(y1, x2)];
                const double dzy = f[idx(y1, x2)] - f[idx(y1, x1)];
                // pt1/pt2: entry split by whether z2=x2 sits on the exit edge
                const double exit_with = rate_both(y1, x1, [&](const Hyperedge& e) {
                    return e.contains(x2) ? e.rate / (2.0 * (e.size() - 1.0)) : 0.0;
                });
                const double exit_without = rate_both(y1, x1, [&](const Hyperedge& e) {
                    return !e.contains(x2) ? e.rate / (2.0 * (e.size() - 1.0)) : 0.0;
                });
                t3p1 += 2.0 * entry * exit_with / inc[x1] * dxz * dxz;
                t3p2 += 2.0 * entry * exit_without / inc[x1] * dxz * dxz;
                // pt3/pt4: the (z,y) leg, classified by whether y1 is on the
                // entry edge; roles: y=(y1,x1), z=(y1,x2)
                const double entry_with = rate_both(x1, x2, [&](const Hyperedge& e) {
                    return e.contains(y1) ? e.rate / e.size() : 0.0;
                });
                const double entry_without = rate_both(x1, x2, [&](const Hyperedge& e) {
                    return !e.contains(y1) ? e.rate / e.size() : 0.0;
                });
                const double exit_full = rate_both(y1, x1, [](const Hyperedge& e) {
                    return e.rate / (2.0 * (e.size() - 1.0));
                });
                t3p3 += 2.0 * entry_with * exit_full / inc[x1] * dzy * dzy;
                t3p4 += 2.0 * entry_without * exit_full / inc[x1] * dzy * dzy;
            }
        }

    out.terms["simple1"] = 0.5 * pi * simple1;
    out.terms["simple2"] = 0.5 * pi * simple2;
    out.terms["compound"] = 0.5 * pi * compound;
    out.terms["decomp1"] = 1.5 * pi * decomp1;
    out.terms["decomp2"] = 1.5 * pi * decomp2;
    out.terms["decomp3"] = 1.5 * pi * decomp3;
    out.terms["term3"] = 0.5 * pi * term3;
    out.terms["term3pt1"] = 0.5 * pi * t3p1;
    out.terms["term3pt2"] = 0.5 * pi * t3p2;
    out.terms["term3pt3"] = 0.5 * pi * t3p3;
    out.terms["term3pt4"] = 0.5 * pi * t3p4;
    return out;
}

/// One verified comparison: lhs <= constant * rhs (+ slack) per test
/// function; worst_ratio = max over f of lhs / rhs.
struct InequalityResult {
    std::string name;
    double constant = 0;
    double worst_ratio = 0; // attained max of lhs/rhs over tested f
    bool witness_available = false;
    TestFunction witness;
    bool pass = true;
};

struct DirichletComparisonReport {
    std::vector<InequalityResult> inequalities;
    double generalized_worst_ratio = 0; // sup_f E^Q2 / E^IP2 (eigenproblem)
    int trials = 0;
    bool pass() const {
        for (const auto& i : inequalities)
            if (!i.pass) return false;
        return true;
    }
};

namespace detail {

/// Dense symmetric form matrix: E(f) = f^T A f with A = -pi * sym(Q).
inline Eigen::MatrixXd form_matrix(const GeneratorMatrix& gen) {
    Eigen::MatrixXd q = gen.dense();
    return -0.5 * gen.uniform_pi() * (q + q.transpose());
}

/// Orthonormal basis of the mean-zero subspace (N x (N-1)): the Helmert
/// contrasts, column j = (1,...,1,-(j+1),0,...)/sqrt((j+1)(j+2)).
inline Eigen::MatrixXd meanzero_basis(std::int64_t n) {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 1);
    for (std::int64_t j = 0; j + 1 < n; ++j) {
        const double norm = std::sqrt(double(j + 1) * (j + 2));
        for (std::int64_t i = 0; i <= j; ++i) basis(i, j) = 1.0 / norm;
        basis(j + 1, j) = -double(j + 1) / norm;
    }
    return basis;
}

} // namespace detail

/// sup_f E_a(f,f) / E_b(f,f) over nonconstant f, via the generalized
/// symmetric eigenproblem on the mean-zero subspace.  Also returns the
/// maximizing f.
inline std::pair<double, TestFunction> worst_form_ratio(const GeneratorMatrix& gen_a,
                                                        const GeneratorMatrix& gen_b) {
    const std::int64_t n = gen_a.size();
    Eigen::MatrixXd a = detail::form_matrix(gen_a);
    Eigen::MatrixXd b = detail::form_matrix(gen_b);
    Eigen::MatrixXd u = detail::meanzero_basis(n);
    Eigen::MatrixXd ar = u.transpose() * a * u;
    Eigen::MatrixXd br = u.transpose() * b * u;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ar, br);
    const auto& vals = es.eigenvalues();
    Eigen::Index arg = 0;
    vals.maxCoeff(&arg);
    TestFunction f = u * es.eigenvectors().col(arg);
    return {vals[arg], f};
}

/// Eigenvector attaining the spectral gap (the adversarial f for the
/// variational characterization).
inline TestFunction gap_eigenvector(const GeneratorMatrix& gen) {
    Eigen::MatrixXd q = gen.dense();
    Eigen::MatrixXd sym = -0.5 * (q + q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    return es.eigenvectors().col(1); // ascending; col 0 ~ constants
}

/// Runs the five comparison constants (8, 36, 44, 16, 120) over random
/// mean-zero unit-variance test functions plus adversarial eigenvectors.
inline DirichletComparisonReport comparison_report(const HypergraphInstance& g, int trials,
                                                   const RngSpec& rng,
                                                   const Budgets& budgets = default_budgets(),
                                                   const Tolerances& tol = default_tols()) {
    detail::require_uniform_laws(g);
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    GeneratorMatrix ip2gen = build_ip_generator(g, 2, budgets, tol);
    GeneratorMatrix q2gen = build_censored_q2(g, budgets, tol);
    const std::int64_t n = ip2gen.size();

    std::vector<TestFunction> fs;
    {
        CounterRng stream(rng, 0, 0xd1f);
        for (int t = 0; t < trials; ++t) {
            TestFunction f(n);
            for (std::int64_t i = 0; i < n; ++i) f[i] = stream.normal();
            f.array() -= f.mean();
            const double sd = std::sqrt(variance_uniform(f));
            if (sd < 1e-12) { --t; continue; }
            f /= sd;
            fs.push_back(std::move(f));
        }
    }
    auto push_normalized = [&](TestFunction f) {
        f.array() -= f.mean();
        const double sd = std::sqrt(variance_uniform(f));
        if (sd > 1e-12) fs.push_back(f / sd);
    };
    auto [gen_ratio, gen_witness] = worst_form_ratio(q2gen, ip2gen);
    push_normalized(gen_witness);
    push_normalized(gap_eigenvector(ip2gen));
    push_normalized(gap_eigenvector(q2gen));

    DirichletComparisonReport rep;
    rep.trials = static_cast<int>(fs.size());
    rep.generalized_worst_ratio = gen_ratio;
    auto mk = [&](const std::string& name, double constant) {
        InequalityResult r;
        r.name = name;
        r.constant = constant;
        return r;
    };
    std::vector<InequalityResult> res;
    res.push_back(mk("simple2<=8*EIP2_1", 8));
    res.push_back(mk("compound<=36*EIP2", 36));
    res.push_back(mk("EQ2_1<=44*EIP2", 44));
    res.push_back(mk("EQ2_2<=44*EIP2", 44));
    res.push_back(mk("EQ2_3<=16*EIP2", 16));
    res.push_back(mk("EQ2_4<=16*EIP2", 16));
    res.push_back(mk("EQ2<=120*EIP2", 120));

    for (const auto& f : fs) {
        FormBreakdown bi = dirichlet_ip2(g, f, budgets, tol);
        FormBreakdown bq = dirichlet_q2(g, f, budgets, tol);
        struct Pair {
            double lhs, rhs;
        };
        const Pair pairs[] = {
            {bq.term("simple2"), bi.term("EIP2_1")},
            {bq.term("compound"), bi.total},
            {bq.term("EQ2_1"), bi.total},
            {bq.term("EQ2_2"), bi.total},
            {bq.term("EQ2_3"), bi.total},
            {bq.term("EQ2_4"), bi.total},
            {bq.total, bi.total},
        };
        for (std::size_t i = 0; i < res.size(); ++i) {
            auto& r = res[i];
            const double lhs = pairs[i].lhs, rhs = pairs[i].rhs;
            if (rhs > 0) r.worst_ratio = std::max(r.worst_ratio, lhs / rhs);
            if (lhs > r.constant * rhs + tol.inequality) {
                r.pass = false;
                if (!r.witness_available) {
                    r.witness_available = true;
                    r.witness = f;
                }
            }
        }
    }
    rep.inequalities = std::move(res);
    return rep;
}

/// Relaxation-time chain: t_rel^Q2 <= t_rel^RW2, and the explicit
/// Dirichlet-comparison constant t_rel^IP2 <= 120 t_rel^RW1.  The 120 is
/// the traceable default; a sharper constant can be passed instead.
struct TrelComparison {
    double t_rel_ip2 = 0, t_rel_rw1 = 0, t_rel_rw2 = 0, t_rel_q2 = 0;
    double ratio_ip2_rw1 = 0;
    double chain_constant = 120.0;
    bool pass_chain = false;   // t_rel_ip2 <= chain_constant * t_rel_rw1
    bool pass_censor = false;  // t_rel_q2 <= t_rel_rw2
};

inline TrelComparison trel_comparison(const HypergraphInstance& g,
                                      const Budgets& budgets = default_budgets(),
                                      const Tolerances& tol = default_tols(),
                                      double chain_constant = 120.0) {
    detail::require_uniform_laws(g);
    TrelComparison out;
    out.chain_constant = chain_constant;
    GeneratorMatrix rw1 = build_rw_generator(g, 1, budgets, tol);
    GeneratorMatrix rw2 = build_rw_generator(g, 2, budgets, tol);
    GeneratorMatrix ip2 = build_ip_generator(g, 2, budgets, tol);
    GeneratorMatrix q2g = build_censored_q2(g, budgets, tol);
    out.t_rel_rw1 = relaxation_time(rw1, budgets, tol);
    out.t_rel_rw2 = relaxation_time(rw2, budgets, tol);
    out.t_rel_ip2 = relaxation_time(ip2, budgets, tol);
    out.t_rel_q2 = relaxation_time(q2g, budgets, tol);
    out.ratio_ip2_rw1 = out.t_rel_ip2 / out.t_rel_rw1;
    out.pass_chain = out.t_rel_ip2 <= chain_constant * out.t_rel_rw1 + tol.inequality;
    out.pass_censor = out.t_rel_q2 <= out.t_rel_rw2 + tol.inequality;
    return out;
}

} // namespace iplab
