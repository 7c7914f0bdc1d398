#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "iplab/instance.hpp"
#include "iplab/rng.hpp"
#include "iplab/state_space.hpp"

namespace iplab {

/// One ring of the graphical construction: time, edge index, and the
/// sampled permutation (images of the edge's sorted vertex list).
struct Ring {
    double time = 0;
    int edge = 0;
    std::vector<int> perm;
};

/// Realization of the graphical construction on [0, T]: Poisson ring times
/// at rate sum_e r_e, edge choices proportional to r_e, permutations from
/// each edge's law.
struct EventLog {
    double horizon = 0;
    std::vector<Ring> rings;
};

namespace detail {

inline std::vector<int> sample_edge_permutation(const Hyperedge& e, CounterRng& rng) {
    switch (e.law.kind) {
    case LawKind::Transposition:
        return {e.vertices[1], e.vertices[0]};
    case LawKind::Uniform: {
        std::vector<int> images = e.vertices;
        for (int i = static_cast<int>(images.size()) - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_int(i + 1));
            std::swap(images[i], images[j]);
        }
        return images;
    }
    case LawKind::Explicit: {
        double u = rng.uniform();
        for (const auto& atom : e.law.atoms) {
            if (u < atom.prob) return atom.images;
            u -= atom.prob;
        }
        return e.law.atoms.back().images;
    }
    }
    throw std::logic_error("unknown law kind");
}

} // namespace detail

/// Structural check for logs that did not come from the sampler: strictly
/// increasing times in (0, T], valid edge indices, and each permutation a
/// bijection of its edge.
inline bool validate_event_log(const HypergraphInstance& g, const EventLog& log) {
    double prev = 0;
    for (const auto& r : log.rings) {
        if (!(r.time > prev) || r.time > log.horizon) return false;
        prev = r.time;
        if (r.edge < 0 || r.edge >= static_cast<int>(g.edges.size())) return false;
        if (!detail::is_permutation_of(r.perm, g.edges[r.edge].vertices)) return false;
    }
    return true;
}

inline EventLog sample_event_log(const HypergraphInstance& g, double horizon, CounterRng& rng) {
    if (horizon < 0) throw std::invalid_argument("event log horizon must be >= 0");
    EventLog log;
    log.horizon = horizon;
    const double total = g.total_rate();
    if (total <= 0 || horizon == 0) return log;
    std::vector<double> cum;
    cum.reserve(g.edges.size());
    double acc = 0;
    for (const auto& e : g.edges) cum.push_back(acc += e.rate);

    double t = 0;
    for (;;) {
        t += rng.exponential(total);
        if (t > horizon) break;
        const int ei = static_cast<int>(rng.pick_cumulative(cum));
        log.rings.push_back({t, ei, detail::sample_edge_permutation(g.edges[ei], rng)});
    }
    return log;
}

/// I_{(s,t]} applied to a configuration: composes the ring permutations
/// with time in (s, t].  The half-open window makes the cocycle
/// I_{(s,u]} = I_{(t,u]} o I_{(s,t]} exact for every split point.
inline LabeledConfig evolve(const HypergraphInstance& g, LabeledConfig config,
                            const EventLog& log, double s, double t) {
    if (!(0 <= s && s <= t && t <= log.horizon))
        throw std::invalid_argument("evolve window outside the log horizon");
    auto begin = std::upper_bound(log.rings.begin(), log.rings.end(), s,
                                  [](double v, const Ring& r) { return v < r.time; });
    for (auto it = begin; it != log.rings.end() && it->time <= t; ++it)
        apply_permutation_inplace(config, g.edges[it->edge], it->perm);
    return config;
}

/// Piecewise-constant sample path of a configuration under an event log,
/// cadlag: the value at a ring time is the post-ring state.  Jump times
/// only record rings that actually move the configuration.
struct Trajectory {
    LabeledConfig start;
    double horizon = 0;
    std::vector<double> jump_times;
    std::vector<LabeledConfig> states; // states[i] = value on [jump_times[i], next)

    const LabeledConfig& state_at(double t) const {
        auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
        const auto idx = static_cast<std::size_t>(it - jump_times.begin());
        return idx == 0 ? start : states[idx - 1];
    }
};

inline Trajectory sample_trajectory(const HypergraphInstance& g, LabeledConfig config,
                                    const EventLog& log) {
    Trajectory traj;
    traj.start = config;
    traj.horizon = log.horizon;
    for (const auto& r : log.rings) {
        LabeledConfig next = config;
        apply_permutation_inplace(next, g.edges[r.edge], r.perm);
        if (next != config) {
            traj.jump_times.push_back(r.time);
            traj.states.push_back(next);
            config = std::move(next);
        }
    }
    return traj;
}

/// Number of rings in (t1, t2] whose edge contains the pre-ring positions
/// of both labelled particles i and j.  The sampled permutation is
/// irrelevant: an interaction is a ring of an edge covering both.
inline int count_interactions(const HypergraphInstance& g, LabeledConfig config,
                              int i, int j, const EventLog& log, double t1, double t2) {
    if (!(0 <= t1 && t1 <= t2 && t2 <= log.horizon))
        throw std::invalid_argument("interaction window outside the log horizon");
    const int k = static_cast<int>(config.size());
    if (i < 0 || j < 0 || i >= k || j >= k)
        throw std::invalid_argument("interaction labels out of range");
    config = evolve(g, std::move(config), log, 0, t1);
    auto begin = std::upper_bound(log.rings.begin(), log.rings.end(), t1,
                                  [](double v, const Ring& r) { return v < r.time; });
    int count = 0;
    for (auto it = begin; it != log.rings.end() && it->time <= t2; ++it) {
        const auto& e = g.edges[it->edge];
        if (e.contains(config[i]) && e.contains(config[j])) ++count;
        apply_permutation_inplace(config, e, it->perm);
    }
    return count;
}

/// Rings in (t1, t2] where particle `last` shares an edge with any of the
/// particles 0..last-1 (pre-ring positions).  Zero count is the event J.
inline int count_interactions_with_rest(const HypergraphInstance& g, LabeledConfig config,
                                        const EventLog& log, double t1, double t2) {
    const int k = static_cast<int>(config.size());
    if (k < 1) throw std::invalid_argument("empty configuration");
    config = evolve(g, std::move(config), log, 0, t1);
    auto begin = std::upper_bound(log.rings.begin(), log.rings.end(), t1,
                                  [](double v, const Ring& r) { return v < r.time; });
    int count = 0;
    for (auto it = begin; it != log.rings.end() && it->time <= t2; ++it) {
        const auto& e = g.edges[it->edge];
        if (e.contains(config[k - 1])) {
            for (int i = 0; i + 1 < k; ++i)
                if (e.contains(config[i])) {
                    ++count;
                    break;
                }
        }
        apply_permutation_inplace(config, e, it->perm);
    }
    return count;
}

} // namespace iplab
