#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "iplab/common.hpp"

namespace iplab {

enum class LawKind { Uniform, Transposition, Explicit };

struct ExplicitAtom {
    std::vector<int> images; // images of the edge's sorted vertex list
    double prob = 0.0;
};

/// Law of the random permutation applied to a hyperedge when it rings.
struct PermutationLaw {
    LawKind kind = LawKind::Uniform;
    std::vector<ExplicitAtom> atoms; // Explicit only

    static PermutationLaw uniform() { return {LawKind::Uniform, {}}; }
    static PermutationLaw transposition() { return {LawKind::Transposition, {}}; }
    static PermutationLaw explicit_law(std::vector<ExplicitAtom> a) {
        return {LawKind::Explicit, std::move(a)};
    }
};

struct Hyperedge {
    std::vector<int> vertices; // sorted ascending, distinct
    double rate = 1.0;
    PermutationLaw law;

    int size() const { return static_cast<int>(vertices.size()); }
    bool contains(int v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }
    /// Position of v in the sorted vertex list, or -1.
    int index_of(int v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (it == vertices.end() || *it != v) return -1;
        return static_cast<int>(it - vertices.begin());
    }
};

inline Hyperedge make_edge(std::vector<int> vertices, double rate,
                           PermutationLaw law = PermutationLaw::uniform()) {
    std::sort(vertices.begin(), vertices.end());
    return Hyperedge{std::move(vertices), rate, std::move(law)};
}

/// A finite hypergraph with rated, law-carrying hyperedges.  Immutable by
/// convention after construction; all analysis code treats it read-only.
struct HypergraphInstance {
    int n = 0;
    std::vector<Hyperedge> edges;
    bool allow_small = false; // test-only override of the n >= 3 rule

    double total_rate() const {
        double s = 0;
        for (const auto& e : edges) s += e.rate;
        return s;
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Single-particle transition rates: W(u,v) = sum_{e∋u} r_e P_e[σ(u)=v],
/// v != u.  Returned as a dense row-major n*n matrix (diagonal zero).
inline std::vector<double> single_particle_rates(const HypergraphInstance& g) {
    std::vector<double> w(static_cast<std::size_t>(g.n) * g.n, 0.0);
    auto at = [&](int u, int v) -> double& { return w[static_cast<std::size_t>(u) * g.n + v]; };
    for (const auto& e : g.edges) {
        const int m = e.size();
        switch (e.law.kind) {
        case LawKind::Uniform:
            for (int u : e.vertices)
                for (int v : e.vertices)
                    if (u != v) at(u, v) += e.rate / m;
            break;
        case LawKind::Transposition:
            at(e.vertices[0], e.vertices[1]) += e.rate;
            at(e.vertices[1], e.vertices[0]) += e.rate;
            break;
        case LawKind::Explicit:
            for (const auto& atom : e.law.atoms)
                for (int i = 0; i < m; ++i)
                    if (atom.images[i] != e.vertices[i])
                        at(e.vertices[i], atom.images[i]) += e.rate * atom.prob;
            break;
        }
    }
    return w;
}

namespace detail {
inline bool is_permutation_of(const std::vector<int>& images, const std::vector<int>& verts) {
    if (images.size() != verts.size()) return false;
    std::vector<int> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    return sorted == verts;
}
} // namespace detail

/// Checks every structural invariant and reports violations; empty = valid.
/// Includes strong connectivity of the single-particle move graph.
inline ValidationReport validate_instance(const HypergraphInstance& g,
                                          const Tolerances& tol = default_tols()) {
    ValidationReport rep;
    auto add = [&](std::string s) { rep.violations.push_back(std::move(s)); };

    if (g.n < 3 && !g.allow_small)
        add("vertex count below three (standing assumption n >= 3)");
    if (g.n < 1) add("vertex count must be positive");
    if (g.edges.empty()) add("instance has no hyperedges");

    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        const std::string tag = "edge " + std::to_string(i) + ": ";
        if (e.size() < 2) add(tag + "fewer than two vertices");
        if (e.size() > g.n) add(tag + "more vertices than the instance");
        if (!std::is_sorted(e.vertices.begin(), e.vertices.end()))
            add(tag + "vertices not sorted");
        if (std::adjacent_find(e.vertices.begin(), e.vertices.end()) != e.vertices.end())
            add(tag + "repeated vertex");
        for (int v : e.vertices)
            if (v < 0 || v >= g.n) add(tag + "vertex out of range");
        if (!(e.rate > 0)) add(tag + "nonpositive rate");
        switch (e.law.kind) {
        case LawKind::Uniform:
            break;
        case LawKind::Transposition:
            if (e.size() != 2) add(tag + "transposition law on a non-binary edge");
            break;
        case LawKind::Explicit: {
            double total = 0;
            for (const auto& atom : e.law.atoms) {
                if (atom.prob < 0) add(tag + "negative law probability");
                total += atom.prob;
                if (!detail::is_permutation_of(atom.images, e.vertices))
                    add(tag + "law support not a permutation of the edge");
            }
            if (std::abs(total - 1.0) > tol.law_normalization)
                add(tag + "law not normalized");
            break;
        }
        }
    }

    // Strong connectivity of positive-rate single-particle moves.
    if (rep.ok() && g.n >= 1) {
        const auto w = single_particle_rates(g);
        auto reach = [&](bool transpose) {
            std::vector<char> seen(g.n, 0);
            std::queue<int> q;
            q.push(0);
            seen[0] = 1;
            int count = 1;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                for (int v = 0; v < g.n; ++v) {
                    double r = transpose ? w[static_cast<std::size_t>(v) * g.n + u]
                                         : w[static_cast<std::size_t>(u) * g.n + v];
                    if (r > 0 && !seen[v]) {
                        seen[v] = 1;
                        ++count;
                        q.push(v);
                    }
                }
            }
            return count;
        };
        if (reach(false) != g.n || reach(true) != g.n)
            add("single-particle move graph not strongly connected");
    }
    return rep;
}

/// R = sum_e r_e |e|(|e|-1).  R / (n(n-1)) is the equilibrium rate at which
/// a fixed pair of particles interacts.
inline double interaction_rate_R(const HypergraphInstance& g) {
    double r = 0;
    for (const auto& e : g.edges) {
        const double m = e.size();
        r += e.rate * m * (m - 1.0);
    }
    return r;
}

inline double equilibrium_pair_rate(const HypergraphInstance& g) {
    return interaction_rate_R(g) / (static_cast<double>(g.n) * (g.n - 1.0));
}

inline bool all_laws_uniform(const HypergraphInstance& g) {
    for (const auto& e : g.edges)
        if (e.law.kind != LawKind::Uniform) return false;
    return true;
}

inline bool is_graph(const HypergraphInstance& g) {
    for (const auto& e : g.edges)
        if (e.size() != 2) return false;
    return true;
}

/// True when all edges are binary with Transposition laws (the classical
/// graph interchange process).
inline bool is_transposition_graph(const HypergraphInstance& g) {
    for (const auto& e : g.edges)
        if (e.size() != 2 || e.law.kind != LawKind::Transposition) return false;
    return true;
}

/// Vertex degrees counting one per incident edge; used by the d-regular
/// checks.
inline std::vector<int> vertex_degrees(const HypergraphInstance& g) {
    std::vector<int> deg(g.n, 0);
    for (const auto& e : g.edges)
        for (int v : e.vertices) deg[v]++;
    return deg;
}

} // namespace iplab
