#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "iplab/common.hpp"
#include "iplab/event_log.hpp"
#include "iplab/process.hpp"

namespace iplab {

/// A Monte Carlo estimate with its binomial / empirical standard error.
struct McEstimate {
    double value = 0;
    double std_error = 0;
    long replicas = 0;
};

namespace detail {

/// Runs fn over replica ids with per-replica RNG streams; results land in
/// a vector indexed by replica, so any thread count gives identical output.
template <typename T, typename Fn>
std::vector<T> run_replicas(long replicas, int threads, Fn&& fn) {
    std::vector<T> out(replicas);
    parallel_for_index(replicas, threads, [&](std::int64_t r) { out[r] = fn(r); });
    return out;
}

inline McEstimate binomial_estimate(const std::vector<char>& hits) {
    const long n = static_cast<long>(hits.size());
    long s = 0;
    for (char h : hits) s += h;
    const double p = static_cast<double>(s) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), n};
}

} // namespace detail

/// Lane ids keep the independent streams of one replica apart: lane 0 is
/// the shared interchange log, lanes 1..k are per-particle logs for RW(k).
inline constexpr std::uint64_t kLaneSharedLog = 0;

/// P[J_s]: fraction of replicas in which the last particle avoids every
/// interaction with the others during (s, 2s].
inline McEstimate estimate_probJ(const HypergraphInstance& g, const LabeledConfig& start,
                                 double s, long replicas, const RngSpec& rng,
                                 int threads = 1) {
    if (replicas < 1) throw std::invalid_argument("need at least one replica");
    if (start.size() == 1) return {1.0, 0.0, replicas}; // vacuous event
    auto hits = detail::run_replicas<char>(replicas, threads, [&](std::int64_t rep) -> char {
        CounterRng stream(rng, rep, kLaneSharedLog);
        EventLog log = sample_event_log(g, 2 * s, stream);
        return count_interactions_with_rest(g, start, log, s, 2 * s) == 0;
    });
    return detail::binomial_estimate(hits);
}

/// p_t(x,x): fraction of replicas with the walk back at x at time t.
inline McEstimate estimate_heat_kernel(const HypergraphInstance& g, int x, double t,
                                       long replicas, const RngSpec& rng, int threads = 1) {
    if (replicas < 1) throw std::invalid_argument("need at least one replica");
    auto hits = detail::run_replicas<char>(replicas, threads, [&](std::int64_t rep) -> char {
        CounterRng stream(rng, rep, kLaneSharedLog);
        EventLog log = sample_event_log(g, t, stream);
        LabeledConfig c = evolve(g, {x}, log, 0, t);
        return c[0] == x;
    });
    return detail::binomial_estimate(hits);
}

/// Mean ring count and per-edge choice frequencies over replicas of the
/// graphical construction (used to validate the event-log sampler).
struct RingStats {
    McEstimate count;              // mean rings per log, SE of the mean
    std::vector<double> edge_freq; // fraction of rings choosing each edge
};

inline RingStats ring_stats(const HypergraphInstance& g, double horizon, long replicas,
                            const RngSpec& rng, int threads = 1) {
    struct Tally {
        long rings = 0;
        std::vector<long> per_edge;
    };
    auto tallies = detail::run_replicas<Tally>(replicas, threads, [&](std::int64_t rep) {
        CounterRng stream(rng, rep, kLaneSharedLog);
        EventLog log = sample_event_log(g, horizon, stream);
        Tally t;
        t.rings = static_cast<long>(log.rings.size());
        t.per_edge.assign(g.edges.size(), 0);
        for (const auto& ring : log.rings) t.per_edge[ring.edge]++;
        return t;
    });
    double mean = 0, sq = 0;
    std::vector<double> freq(g.edges.size(), 0.0);
    long total_rings = 0;
    for (const auto& t : tallies) {
        mean += t.rings;
        sq += static_cast<double>(t.rings) * t.rings;
        total_rings += t.rings;
        for (std::size_t e = 0; e < freq.size(); ++e) freq[e] += t.per_edge[e];
    }
    mean /= replicas;
    const double var = sq / replicas - mean * mean;
    for (double& f : freq) f /= std::max<long>(total_rings, 1);
    return {{mean, std::sqrt(std::max(var, 0.0) / replicas), replicas}, freq};
}

/// Evolves a start configuration to time t under the process semantics:
/// IP uses the shared log (lane 0), RW gives each particle its own log.
inline LabeledConfig mc_state_at(const ProcessSpec& spec, const LabeledConfig& start, double t,
                                 const RngSpec& rng, std::int64_t replica) {
    const HypergraphInstance& g = *spec.instance;
    switch (spec.kind) {
    case ProcessKind::IP:
    case ProcessKind::EX: {
        CounterRng stream(rng, replica, kLaneSharedLog);
        EventLog log = sample_event_log(g, t, stream);
        LabeledConfig c = evolve(g, start, log, 0, t);
        if (spec.kind == ProcessKind::EX) std::sort(c.begin(), c.end());
        return c;
    }
    case ProcessKind::RW: {
        LabeledConfig c = start;
        for (std::size_t i = 0; i < c.size(); ++i) {
            CounterRng stream(rng, replica, 1 + i);
            EventLog log = sample_event_log(g, t, stream);
            LabeledConfig single = evolve(g, {c[i]}, log, 0, t);
            c[i] = single[0];
        }
        return c;
    }
    case ProcessKind::Q2:
        throw std::invalid_argument("Q2 has no Monte Carlo path; use the exact censored chain");
    }
    throw std::logic_error("unknown process kind");
}

/// Plug-in total-variation estimate between the time-t laws from two start
/// configurations, sharing the graphical construction between the starts.
/// The estimator has positive bias; `bias_bound` carries the first-order
/// multinomial bound and the CI is a 200-resample bootstrap.
struct TvEstimate {
    double value = 0;
    double bias_bound = 0;
    double ci_lo = 0, ci_hi = 0;
    long replicas = 0;
};

inline TvEstimate empirical_tv(const ProcessSpec& spec, const LabeledConfig& start_a,
                               const LabeledConfig& start_b, double t, long replicas,
                               const RngSpec& rng, int threads = 1,
                               const std::function<std::int64_t(const LabeledConfig&)>& coarsen = {},
                               std::int64_t coarse_states = -1,
                               const Budgets& budgets = default_budgets()) {
    if (replicas < 1) throw std::invalid_argument("need at least one replica");
    std::int64_t n_states;
    std::optional<StateSpace> space;
    if (coarsen) {
        if (coarse_states < 1)
            throw std::invalid_argument("coarsening map needs its state count");
        n_states = coarse_states;
    } else {
        space = enumerate_states(spec, budgets); // throws BudgetError when too large
        n_states = space->size();
    }
    auto index_of = [&](const LabeledConfig& c) -> std::int64_t {
        return coarsen ? coarsen(c) : space->rank(c);
    };

    struct Pair {
        std::int64_t a, b;
    };
    auto samples = detail::run_replicas<Pair>(replicas, threads, [&](std::int64_t rep) {
        return Pair{index_of(mc_state_at(spec, start_a, t, rng, rep)),
                    index_of(mc_state_at(spec, start_b, t, rng, rep))};
    });

    auto tv_of = [&](const std::vector<Pair>& pairs) {
        std::vector<double> mu(n_states, 0.0), nu(n_states, 0.0);
        for (const auto& p : pairs) {
            mu[p.a] += 1.0;
            nu[p.b] += 1.0;
        }
        double tv = 0;
        for (std::int64_t i = 0; i < n_states; ++i) tv += std::abs(mu[i] - nu[i]);
        return 0.5 * tv / pairs.size();
    };

    TvEstimate est;
    est.replicas = replicas;
    est.value = tv_of(samples);

    // first-order bias bound: E[TV_hat] - TV <= sum_a (se(mu_a)+se(nu_a))/2
    {
        std::vector<double> mu(n_states, 0.0), nu(n_states, 0.0);
        for (const auto& p : samples) {
            mu[p.a] += 1.0 / replicas;
            nu[p.b] += 1.0 / replicas;
        }
        double b = 0;
        for (std::int64_t i = 0; i < n_states; ++i)
            b += std::sqrt(mu[i] * (1 - mu[i]) / replicas) +
                 std::sqrt(nu[i] * (1 - nu[i]) / replicas);
        est.bias_bound = 0.5 * b;
    }

    // bootstrap CI, 200 resamples
    const int B = 200;
    std::vector<double> boot(B);
    std::vector<Pair> resample(samples.size());
    for (int b = 0; b < B; ++b) {
        CounterRng stream(rng.seed, rng.stream ^ 0xb007b007ULL, b);
        for (auto& p : resample) p = samples[stream.uniform_int(samples.size())];
        boot[b] = tv_of(resample);
    }
    std::sort(boot.begin(), boot.end());
    est.ci_lo = boot[static_cast<int>(0.025 * (B - 1))];
    est.ci_hi = boot[static_cast<int>(0.975 * (B - 1))];
    return est;
}

/// Plug-in TV between two sampled laws without enumerating the state
/// space: histograms over observed configurations only.  Used by the
/// Monte Carlo fallbacks of the verification harness.
inline TvEstimate empirical_tv_hashed(const ProcessSpec& spec, const LabeledConfig& start_a,
                                      const LabeledConfig& start_b, double t, long replicas,
                                      const RngSpec& rng, int threads = 1) {
    struct Pair {
        LabeledConfig a, b;
    };
    auto samples = detail::run_replicas<Pair>(replicas, threads, [&](std::int64_t rep) {
        return Pair{mc_state_at(spec, start_a, t, rng, rep),
                    mc_state_at(spec, start_b, t, rng, rep)};
    });
    auto tv_of = [&](const std::vector<Pair>& pairs) {
        std::map<LabeledConfig, std::pair<long, long>> hist;
        for (const auto& p : pairs) {
            hist[p.a].first++;
            hist[p.b].second++;
        }
        double tv = 0;
        for (const auto& [state, counts] : hist)
            tv += std::abs(double(counts.first) - double(counts.second));
        return 0.5 * tv / pairs.size();
    };
    TvEstimate est;
    est.replicas = replicas;
    est.value = tv_of(samples);
    {
        std::map<LabeledConfig, std::pair<long, long>> hist;
        for (const auto& p : samples) {
            hist[p.a].first++;
            hist[p.b].second++;
        }
        double b = 0;
        for (const auto& [state, counts] : hist) {
            const double mu = double(counts.first) / replicas;
            const double nu = double(counts.second) / replicas;
            b += std::sqrt(mu * (1 - mu) / replicas) + std::sqrt(nu * (1 - nu) / replicas);
        }
        est.bias_bound = 0.5 * b;
    }
    const int B = 200;
    std::vector<double> boot(B);
    std::vector<Pair> resample(samples.size());
    for (int b = 0; b < B; ++b) {
        CounterRng stream(rng.seed, rng.stream ^ 0xb007b007ULL, b);
        for (auto& p : resample) p = samples[stream.uniform_int(samples.size())];
        boot[b] = tv_of(resample);
    }
    std::sort(boot.begin(), boot.end());
    est.ci_lo = boot[static_cast<int>(0.025 * (B - 1))];
    est.ci_hi = boot[static_cast<int>(0.975 * (B - 1))];
    return est;
}

/// Empirical distribution of the time-t state over replicas (for
/// law-agreement tests against exact kernels).
inline Eigen::VectorXd empirical_law(const ProcessSpec& spec, const LabeledConfig& start,
                                     double t, long replicas, const RngSpec& rng,
                                     int threads = 1,
                                     const Budgets& budgets = default_budgets()) {
    StateSpace space = enumerate_states(spec, budgets);
    auto idx = detail::run_replicas<std::int64_t>(replicas, threads, [&](std::int64_t rep) {
        return space.rank(mc_state_at(spec, start, t, rng, rep));
    });
    Eigen::VectorXd law = Eigen::VectorXd::Zero(space.size());
    for (auto i : idx) law[i] += 1.0 / replicas;
    return law;
}

/// Mean interaction count between particles i and j over (t1, t2].
inline McEstimate estimate_expected_interactions(const HypergraphInstance& g,
                                                 const LabeledConfig& start, int i, int j,
                                                 double t1, double t2, long replicas,
                                                 const RngSpec& rng, int threads = 1) {
    auto counts = detail::run_replicas<double>(replicas, threads, [&](std::int64_t rep) {
        CounterRng stream(rng, rep, kLaneSharedLog);
        EventLog log = sample_event_log(g, t2, stream);
        return static_cast<double>(count_interactions(g, start, i, j, log, t1, t2));
    });
    double mean = 0, sq = 0;
    for (double c : counts) {
        mean += c;
        sq += c * c;
    }
    mean /= replicas;
    const double var = sq / replicas - mean * mean;
    return {mean, std::sqrt(std::max(var, 0.0) / replicas), replicas};
}

} // namespace iplab
