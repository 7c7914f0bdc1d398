#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iplab/instance.hpp"
#include "iplab/rng.hpp"

namespace iplab {

/// Law selection for generated instances.  Default: transposition on
/// binary edges, uniform on larger hyperedges.
enum class LawChoice { Default, Uniform, Transposition, ThreeCycles };

namespace detail {

inline PermutationLaw law_for_edge(std::size_t edge_size, LawChoice choice) {
    switch (choice) {
    case LawChoice::Default:
        return edge_size == 2 ? PermutationLaw::transposition() : PermutationLaw::uniform();
    case LawChoice::Uniform:
        return PermutationLaw::uniform();
    case LawChoice::Transposition:
        if (edge_size != 2)
            throw std::invalid_argument("transposition law needs binary edges");
        return PermutationLaw::transposition();
    case LawChoice::ThreeCycles:
        break;
    }
    throw std::invalid_argument("three-cycle law is only supported by the single-hyperedge generator");
}

} // namespace detail

/// Uniform law over all 3-cycles of the edge's vertex set (2 * C(m,3)
/// atoms).  With m = 4 this is the classical parity-trapped example:
/// 3-cycles are even, so the full interchange is reducible.
inline PermutationLaw three_cycle_law(const std::vector<int>& sorted_vertices) {
    const int m = static_cast<int>(sorted_vertices.size());
    if (m < 3) throw std::invalid_argument("three-cycle law needs edges of size >= 3");
    std::vector<ExplicitAtom> atoms;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                // the two cyclic orders on {a,b,c}
                for (int dir = 0; dir < 2; ++dir) {
                    std::vector<int> images = sorted_vertices;
                    if (dir == 0) {
                        images[a] = sorted_vertices[b];
                        images[b] = sorted_vertices[c];
                        images[c] = sorted_vertices[a];
                    } else {
                        images[a] = sorted_vertices[c];
                        images[b] = sorted_vertices[a];
                        images[c] = sorted_vertices[b];
                    }
                    atoms.push_back({std::move(images), 0.0});
                }
            }
    for (auto& atom : atoms) atom.prob = 1.0 / atoms.size();
    return PermutationLaw::explicit_law(std::move(atoms));
}

inline HypergraphInstance make_cycle(int n, double rate = 1.0,
                                     LawChoice law = LawChoice::Default) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    HypergraphInstance g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        g.edges.push_back(make_edge({i, (i + 1) % n}, rate, detail::law_for_edge(2, law)));
    return g;
}

inline HypergraphInstance make_path(int n, double rate = 1.0,
                                    LawChoice law = LawChoice::Default) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    HypergraphInstance g;
    g.n = n;
    g.allow_small = n < 3;
    for (int i = 0; i + 1 < n; ++i)
        g.edges.push_back(make_edge({i, i + 1}, rate, detail::law_for_edge(2, law)));
    return g;
}

inline HypergraphInstance make_complete(int n, double rate = 1.0,
                                        LawChoice law = LawChoice::Default) {
    if (n < 3) throw std::invalid_argument("complete graph needs n >= 3");
    HypergraphInstance g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.edges.push_back(make_edge({i, j}, rate, detail::law_for_edge(2, law)));
    return g;
}

/// Torus Z_m^d; n = m^d vertices, nearest-neighbour edges per coordinate.
inline HypergraphInstance make_torus(int d, int m, double rate = 1.0,
                                     LawChoice law = LawChoice::Default) {
    if (d < 1 || m < 2) throw std::invalid_argument("torus needs d >= 1, m >= 2");
    std::int64_t n = 1;
    for (int i = 0; i < d; ++i) n *= m;
    HypergraphInstance g;
    g.n = static_cast<int>(n);
    std::set<std::pair<int, int>> seen;
    std::vector<int> coord(d);
    for (int v = 0; v < g.n; ++v) {
        int rem = v;
        for (int i = 0; i < d; ++i) {
            coord[i] = rem % m;
            rem /= m;
        }
        for (int i = 0; i < d; ++i) {
            std::vector<int> nb = coord;
            nb[i] = (coord[i] + 1) % m;
            int u = 0;
            for (int j = d - 1; j >= 0; --j) u = u * m + nb[j];
            auto key = std::minmax(v, u);
            if (u != v && seen.insert(key).second)
                g.edges.push_back(make_edge({key.first, key.second}, rate,
                                            detail::law_for_edge(2, law)));
        }
    }
    return g;
}

inline HypergraphInstance make_hypercube(int d, double rate = 1.0,
                                         LawChoice law = LawChoice::Default) {
    if (d < 2) throw std::invalid_argument("hypercube needs d >= 2");
    HypergraphInstance g;
    g.n = 1 << d;
    for (int v = 0; v < g.n; ++v)
        for (int b = 0; b < d; ++b) {
            int u = v ^ (1 << b);
            if (u > v) g.edges.push_back(make_edge({v, u}, rate, detail::law_for_edge(2, law)));
        }
    return g;
}

/// All s-subsets of [n] as hyperedges with the uniform law: the complete
/// s-uniform interchange hypergraph.
inline HypergraphInstance make_complete_uniform(int n, int s, double rate = 1.0) {
    if (s < 2 || s > n) throw std::invalid_argument("complete-uniform needs 2 <= s <= n");
    HypergraphInstance g;
    g.n = n;
    std::vector<int> pick(s);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == s) {
            g.edges.push_back(make_edge(pick, rate, PermutationLaw::uniform()));
            return;
        }
        for (int v = start; v < n; ++v) {
            pick[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return g;
}

inline HypergraphInstance make_single_hyperedge(int n, double rate = 1.0,
                                                LawChoice law = LawChoice::Uniform) {
    if (n < 2) throw std::invalid_argument("single hyperedge needs n >= 2");
    HypergraphInstance g;
    g.n = n;
    g.allow_small = n < 3;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    PermutationLaw l = (law == LawChoice::ThreeCycles) ? three_cycle_law(all)
                                                       : PermutationLaw::uniform();
    g.edges.push_back(make_edge(all, rate, l));
    return g;
}

/// The reducibility example: one 4-vertex hyperedge whose rings apply a
/// uniformly random 3-cycle.  IP(2) is irreducible, IP(4) is not.
inline HypergraphInstance make_three_cycle_example() {
    return make_single_hyperedge(4, 1.0, LawChoice::ThreeCycles);
}

/// Random d-regular simple connected graph via the pairing model with
/// retries; deterministic given the seed.
inline HypergraphInstance make_random_regular(int n, int d, std::uint64_t seed,
                                              double rate = 1.0,
                                              LawChoice law = LawChoice::Default) {
    if (n < 3 || d < 2 || d >= n || (n * d) % 2 != 0)
        throw std::invalid_argument("random-regular needs n >= 3, 2 <= d < n, n*d even");
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 5000) throw std::runtime_error("random-regular: too many retries");
        CounterRng rng(seed, 0x7e6, attempt);
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i) stubs.push_back(v);
        for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.uniform_int(i + 1)]);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int a = stubs[i], b = stubs[i + 1];
            if (a == b) { ok = false; break; }
            auto key = std::minmax(a, b);
            if (!edges.insert(key).second) { ok = false; break; }
        }
        if (!ok) continue;
        HypergraphInstance g;
        g.n = n;
        for (auto& [a, b] : edges)
            g.edges.push_back(make_edge({a, b}, rate, detail::law_for_edge(2, law)));
        if (validate_instance(g).ok()) return g; // includes connectivity
    }
}

/// Named-generator dispatch used by the CLI.
struct GeneratorParams {
    int n = 0, d = 0, m = 0, s = 0;
    double rate = 1.0;
    LawChoice law = LawChoice::Default;
    std::uint64_t seed = 0;
};

inline HypergraphInstance generate_instance(const std::string& name, const GeneratorParams& p) {
    if (name == "cycle") return make_cycle(p.n, p.rate, p.law);
    if (name == "path") return make_path(p.n, p.rate, p.law);
    if (name == "complete") return make_complete(p.n, p.rate, p.law);
    if (name == "torus") return make_torus(p.d, p.m, p.rate, p.law);
    if (name == "hypercube") return make_hypercube(p.d, p.rate, p.law);
    if (name == "complete-uniform") return make_complete_uniform(p.n, p.s, p.rate);
    if (name == "random-regular") return make_random_regular(p.n, p.d, p.seed, p.rate, p.law);
    if (name == "single-hyperedge") return make_single_hyperedge(p.n, p.rate, p.law);
    throw std::invalid_argument("unknown generator: " + name);
}

} // namespace iplab
