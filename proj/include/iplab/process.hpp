#pragma once

#include <stdexcept>
#include <string>

#include "iplab/instance.hpp"
#include "iplab/state_space.hpp"

namespace iplab {

enum class ProcessKind { RW, IP, EX, Q2 };

inline std::string to_string(ProcessKind k) {
    switch (k) {
    case ProcessKind::RW: return "RW";
    case ProcessKind::IP: return "IP";
    case ProcessKind::EX: return "EX";
    case ProcessKind::Q2: return "Q2";
    }
    return "?";
}

/// Which process runs on which instance.  Q2 forces k = 2.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::IP;
    int k = 1;
    const HypergraphInstance* instance = nullptr;

    void check() const {
        if (!instance) throw std::invalid_argument("process spec has no instance");
        if (k < 1 || k > instance->n)
            throw std::invalid_argument("particle count must satisfy 1 <= k <= n");
        if (kind == ProcessKind::Q2 && k != 2)
            throw std::invalid_argument("Q2 is a two-particle process");
    }
};

inline ProcessSpec rw(const HypergraphInstance& g, int k) { return {ProcessKind::RW, k, &g}; }
inline ProcessSpec ip(const HypergraphInstance& g, int k) { return {ProcessKind::IP, k, &g}; }
inline ProcessSpec ex(const HypergraphInstance& g, int k) { return {ProcessKind::EX, k, &g}; }
inline ProcessSpec q2(const HypergraphInstance& g) { return {ProcessKind::Q2, 2, &g}; }

inline SpaceKind space_kind_for(ProcessKind kind) {
    switch (kind) {
    case ProcessKind::RW: return SpaceKind::Words;
    case ProcessKind::IP: return SpaceKind::Tuples;
    case ProcessKind::EX: return SpaceKind::Subsets;
    case ProcessKind::Q2: return SpaceKind::Tuples;
    }
    return SpaceKind::Words;
}

/// Indexed state list for the process, refusing above the state budget.
inline StateSpace enumerate_states(const ProcessSpec& spec,
                                   const Budgets& budgets = default_budgets()) {
    spec.check();
    StateSpace space(space_kind_for(spec.kind), spec.instance->n, spec.k);
    if (space.size() > budgets.max_states)
        throw BudgetError("state space too large (" + std::to_string(space.size()) +
                          " states, budget " + std::to_string(budgets.max_states) +
                          "); consider the Monte Carlo path");
    return space;
}

} // namespace iplab
