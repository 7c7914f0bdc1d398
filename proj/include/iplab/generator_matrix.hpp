#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <map>
#include <queue>
#include <vector>

#include "iplab/common.hpp"
#include "iplab/process.hpp"

namespace iplab {

using SparseRates = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Explicit rate matrix over an enumerated state space.  Off-diagonal
/// entries are transition rates, the diagonal is minus the row sum.
/// Stationarity and reversibility flags are set from residual checks
/// against the uniform distribution.
struct GeneratorMatrix {
    StateSpace space;
    SparseRates rates;
    bool uniform_stationary = false;
    bool reversible = false;
    double stationarity_residual = 0.0;
    double reversibility_residual = 0.0;
    double max_exit_rate = 0.0; // max_a |Q(a,a)|

    std::int64_t size() const { return space.size(); }
    double uniform_pi() const { return 1.0 / static_cast<double>(space.size()); }

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(rates); }
};

namespace detail {

inline GeneratorMatrix assemble_generator(StateSpace space,
                                          std::vector<Eigen::Triplet<double>>& triplets,
                                          const Tolerances& tol) {
    const std::int64_t n = space.size();
    SparseRates q(n, n);
    q.setFromTriplets(triplets.begin(), triplets.end()); // sums duplicates
    triplets.clear();
    triplets.shrink_to_fit();

    // diagonal = -(row sum of off-diagonal rates)
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n);
    for (std::int64_t r = 0; r < n; ++r)
        for (SparseRates::InnerIterator it(q, r); it; ++it)
            if (it.col() != r) rowsum[r] += it.value();
    std::vector<Eigen::Triplet<double>> diag;
    diag.reserve(n);
    for (std::int64_t r = 0; r < n; ++r)
        if (rowsum[r] != 0.0) diag.emplace_back(r, r, -rowsum[r]);
    SparseRates d(n, n);
    d.setFromTriplets(diag.begin(), diag.end());
    q += d;

    GeneratorMatrix gen;
    gen.space = std::move(space);
    gen.rates = std::move(q);
    gen.max_exit_rate = rowsum.size() ? rowsum.maxCoeff() : 0.0;

    // uniform stationarity: column sums of Q vanish
    Eigen::VectorXd colsum = Eigen::VectorXd::Zero(n);
    double asym = 0.0;
    for (std::int64_t r = 0; r < n; ++r)
        for (SparseRates::InnerIterator it(gen.rates, r); it; ++it) {
            colsum[it.col()] += it.value();
            if (it.col() != r) {
                const double back = gen.rates.coeff(it.col(), r);
                asym = std::max(asym, std::abs(it.value() - back));
            }
        }
    gen.stationarity_residual = colsum.size() ? colsum.cwiseAbs().maxCoeff() : 0.0;
    gen.reversibility_residual = asym;
    gen.uniform_stationary = gen.stationarity_residual <= tol.generator_residual;
    gen.reversible = gen.uniform_stationary && asym <= tol.generator_residual;
    return gen;
}

/// Enumerates ordered injections of `count` targets chosen from `pool`,
/// invoking fn(targets).  Used for the uniform-law marginal on the occupied
/// coordinates: each injection has probability (|e|-m)!/|e|!.
template <typename Fn>
void for_each_injection(const std::vector<int>& pool, int count, Fn&& fn) {
    std::vector<int> chosen(count);
    std::vector<char> used(pool.size(), 0);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == count) {
            fn(chosen);
            return;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            chosen[depth] = pool[i];
            self(self, depth + 1);
            used[i] = 0;
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// Generator of IP(k) on (V)_k.  q(a,b) = sum_e r_e P_e[lifted sigma maps a
/// to b] for b != a; permutations fixing the configuration cancel and are
/// dropped.
inline GeneratorMatrix build_ip_generator(const HypergraphInstance& g, int k,
                                          const Budgets& budgets = default_budgets(),
                                          const Tolerances& tol = default_tols()) {
    ProcessSpec spec = ip(g, k);
    StateSpace space = enumerate_states(spec, budgets);
    const std::int64_t n_states = space.size();
    std::vector<Eigen::Triplet<double>> trip;

    LabeledConfig a(k), b(k);
    std::vector<int> coords; // coordinate indices occupying the ringing edge
    for (std::int64_t s = 0; s < n_states; ++s) {
        space.unrank(s, a);
        for (const auto& e : g.edges) {
            coords.clear();
            for (int i = 0; i < k; ++i)
                if (e.contains(a[i])) coords.push_back(i);
            if (coords.empty()) continue;
            const int m = static_cast<int>(coords.size());
            switch (e.law.kind) {
            case LawKind::Uniform: {
                // occupied coordinates map to a uniform injection into e
                double prob = 1.0;
                for (int i = 0; i < m; ++i) prob /= (e.size() - i);
                detail::for_each_injection(e.vertices, m, [&](const std::vector<int>& target) {
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
    return detail::assemble_generator(std::move(space), trip, tol);
}

/// Generator of RW(k) on V^k: k independent single-particle walks summed
/// coordinate-wise.
inline GeneratorMatrix build_rw_generator(const HypergraphInstance& g, int k,
                                          const Budgets& budgets = default_budgets(),
                                          const Tolerances& tol = default_tols()) {
    ProcessSpec spec = rw(g, k);
    StateSpace space = enumerate_states(spec, budgets);
    const auto w = single_particle_rates(g);
    const std::int64_t n_states = space.size();
    std::vector<Eigen::Triplet<double>> trip;

    LabeledConfig a(k), b(k);
    for (std::int64_t s = 0; s < n_states; ++s) {
        space.unrank(s, a);
        for (int i = 0; i < k; ++i) {
            for (int v = 0; v < g.n; ++v) {
                if (v == a[i]) continue;
                const double r = w[static_cast<std::size_t>(a[i]) * g.n + v];
                if (r <= 0) continue;
                b = a;
                b[i] = v;
                trip.emplace_back(s, space.rank(b), r);
            }
        }
    }
    return detail::assemble_generator(std::move(space), trip, tol);
}

/// Lumps an IP(k) generator onto k-subsets (the exclusion process).  The
/// lumping must be exact: every labeling of a subset has the same aggregate
/// rate to each target subset, checked to 1e-12.
inline GeneratorMatrix project_to_exclusion(const GeneratorMatrix& ip_gen,
                                            const Tolerances& tol = default_tols()) {
    if (ip_gen.space.kind() != SpaceKind::Tuples)
        throw std::invalid_argument("exclusion projection expects an IP generator");
    const int n = ip_gen.space.n(), k = ip_gen.space.k();
    StateSpace subsets(SpaceKind::Subsets, n, k);
    const std::int64_t n_ip = ip_gen.space.size();

    // subset rank of every IP state
    std::vector<std::int64_t> cls(n_ip);
    {
        LabeledConfig a(k), sorted(k);
        for (std::int64_t s = 0; s < n_ip; ++s) {
            ip_gen.space.unrank(s, a);
            sorted = a;
            std::sort(sorted.begin(), sorted.end());
            cls[s] = subsets.rank(sorted);
        }
    }

    std::vector<std::map<std::int64_t, double>> rows(subsets.size());
    std::vector<char> seen(subsets.size(), 0);
    std::map<std::int64_t, double> agg;
    for (std::int64_t s = 0; s < n_ip; ++s) {
        agg.clear();
        for (SparseRates::InnerIterator it(ip_gen.rates, s); it; ++it) {
            if (it.col() == s) continue;
            if (cls[it.col()] == cls[s]) continue; // internal relabeling
            agg[cls[it.col()]] += it.value();
        }
        const std::int64_t c = cls[s];
        if (!seen[c]) {
            rows[c] = agg;
            seen[c] = 1;
        } else {
            // lumping validity: identical aggregate rates for all labelings
            const auto& ref = rows[c];
            bool same = agg.size() == ref.size();
            if (same)
                for (auto& [col, val] : agg) {
                    auto it = ref.find(col);
                    if (it == ref.end() || std::abs(it->second - val) > 1e-12 * std::max(1.0, std::abs(val))) {
                        same = false;
                        break;
                    }
                }
            if (!same)
                throw std::logic_error("exclusion lumping inconsistent: generator bug");
        }
    }

    std::vector<Eigen::Triplet<double>> trip;
    for (std::int64_t c = 0; c < subsets.size(); ++c)
        for (auto& [col, val] : rows[c]) trip.emplace_back(c, col, val);
    return detail::assemble_generator(std::move(subsets), trip, tol);
}

/// Censored two-walk generator on (V)_2 via the Schur complement
/// Q_AA + Q_AB (-Q_BB)^{-1} Q_BA of the RW(2) generator, where B is the
/// diagonal {(x,x)}.
inline GeneratorMatrix build_censored_q2(const HypergraphInstance& g,
                                         const Budgets& budgets = default_budgets(),
                                         const Tolerances& tol = default_tols()) {
    GeneratorMatrix rw2 = build_rw_generator(g, 2, budgets, tol);
    const int n = g.n;
    const std::int64_t n_states = rw2.space.size();
    if (n_states > budgets.kernel_states)
        throw BudgetError("censored construction needs a dense RW(2) block within the kernel budget");

    StateSpace tuples(SpaceKind::Tuples, n, 2);
    // index maps: A = off-diagonal pairs in tuple order, B = diagonal pairs
    std::vector<std::int64_t> a_of_rw(n_states, -1), b_of_rw(n_states, -1);
    {
        LabeledConfig s(2);
        for (std::int64_t r = 0; r < n_states; ++r) {
            rw2.space.unrank(r, s);
            if (s[0] == s[1])
                b_of_rw[r] = s[0];
            else
                a_of_rw[r] = tuples.rank(s);
        }
    }
    const std::int64_t na = tuples.size();
    Eigen::MatrixXd qaa = Eigen::MatrixXd::Zero(na, na);
    Eigen::MatrixXd qab = Eigen::MatrixXd::Zero(na, n);
    Eigen::MatrixXd qba = Eigen::MatrixXd::Zero(n, na);
    Eigen::MatrixXd qbb = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t r = 0; r < n_states; ++r) {
        for (SparseRates::InnerIterator it(rw2.rates, r); it; ++it) {
            const std::int64_t c = it.col();
            if (a_of_rw[r] >= 0 && a_of_rw[c] >= 0) qaa(a_of_rw[r], a_of_rw[c]) = it.value();
            else if (a_of_rw[r] >= 0) qab(a_of_rw[r], b_of_rw[c]) = it.value();
            else if (a_of_rw[c] >= 0) qba(b_of_rw[r], a_of_rw[c]) = it.value();
            else qbb(b_of_rw[r], b_of_rw[c]) = it.value();
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(-qbb);
    if (!lu.isInvertible())
        throw std::logic_error("censored diagonal block singular; move graph disconnected?");
    Eigen::MatrixXd schur = qaa + qab * lu.solve(qba);

    std::vector<Eigen::Triplet<double>> trip;
    for (std::int64_t r = 0; r < na; ++r)
        for (std::int64_t c = 0; c < na; ++c) {
            if (r == c) continue;
            double v = schur(r, c);
            if (v < 0 && v > -1e-12) v = 0; // roundoff from the solve
            if (v < 0) throw std::logic_error("censored rate negative beyond roundoff");
            if (v > 0) trip.emplace_back(r, c, v);
        }
    return detail::assemble_generator(std::move(tuples), trip, tol);
}

/// Builds the generator for any process kind.
inline GeneratorMatrix build_generator(const ProcessSpec& spec,
                                       const Budgets& budgets = default_budgets(),
                                       const Tolerances& tol = default_tols()) {
    spec.check();
    switch (spec.kind) {
    case ProcessKind::IP: return build_ip_generator(*spec.instance, spec.k, budgets, tol);
    case ProcessKind::RW: return build_rw_generator(*spec.instance, spec.k, budgets, tol);
    case ProcessKind::EX: {
        GeneratorMatrix ipg = build_ip_generator(*spec.instance, spec.k, budgets, tol);
        return project_to_exclusion(ipg, tol);
    }
    case ProcessKind::Q2: return build_censored_q2(*spec.instance, budgets, tol);
    }
    throw std::logic_error("unknown process kind");
}

/// Strong connectivity of the positive-rate transition graph.
inline bool is_irreducible(const GeneratorMatrix& gen) {
    const std::int64_t n = gen.size();
    if (n == 0) return false;
    if (n == 1) return true;
    SparseRates tr = gen.rates.transpose();
    auto reaches_all = [n](const SparseRates& m) {
        std::vector<char> seen(n, 0);
        std::queue<std::int64_t> q;
        q.push(0);
        seen[0] = 1;
        std::int64_t count = 1;
        while (!q.empty()) {
            std::int64_t u = q.front();
            q.pop();
            for (SparseRates::InnerIterator it(m, u); it; ++it)
                if (it.col() != u && it.value() > 0 && !seen[it.col()]) {
                    seen[it.col()] = 1;
                    ++count;
                    q.push(it.col());
                }
        }
        return count == n;
    };
    return reaches_all(gen.rates) && reaches_all(tr);
}

/// Number of states reachable from `start` (used by the reducibility
/// example where IP(4) splits into even/odd classes).
inline std::int64_t reachable_class_size(const GeneratorMatrix& gen, const LabeledConfig& start) {
    const std::int64_t n = gen.size();
    std::vector<char> seen(n, 0);
    std::queue<std::int64_t> q;
    const std::int64_t s0 = gen.space.rank(start);
    q.push(s0);
    seen[s0] = 1;
    std::int64_t count = 1;
    while (!q.empty()) {
        std::int64_t u = q.front();
        q.pop();
        for (SparseRates::InnerIterator it(gen.rates, u); it; ++it)
            if (it.col() != u && it.value() > 0 && !seen[it.col()]) {
                seen[it.col()] = 1;
                ++count;
                q.push(it.col());
            }
    }
    return count;
}

/// Assumption checks for IP(2) (and optionally further k): irreducibility,
/// uniform stationarity, reversibility.
struct AssumptionEntry {
    int k = 0;
    bool irreducible = false;
    bool uniform_stationary = false;
    bool reversible = false;
    double stationarity_residual = 0.0;
    double reversibility_residual = 0.0;
};

struct AssumptionReport {
    std::vector<AssumptionEntry> entries;
    const AssumptionEntry* for_k(int k) const {
        for (const auto& e : entries)
            if (e.k == k) return &e;
        return nullptr;
    }
    bool ip2_ok() const {
        const auto* e = for_k(2);
        return e && e->irreducible && e->uniform_stationary;
    }
};

inline AssumptionReport check_ip2_assumptions(const HypergraphInstance& g,
                                              std::vector<int> extra_k = {},
                                              const Budgets& budgets = default_budgets(),
                                              const Tolerances& tol = default_tols()) {
    std::vector<int> ks = {2};
    for (int k : extra_k)
        if (k != 2 && k >= 1 && k <= g.n) ks.push_back(k);
    AssumptionReport rep;
    for (int k : ks) {
        GeneratorMatrix gen = build_ip_generator(g, k, budgets, tol);
        AssumptionEntry e;
        e.k = k;
        e.irreducible = is_irreducible(gen);
        e.uniform_stationary = gen.uniform_stationary;
        e.reversible = gen.reversible;
        e.stationarity_residual = gen.stationarity_residual;
        e.reversibility_residual = gen.reversibility_residual;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace iplab
