#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "iplab/common.hpp"
#include "iplab/instance.hpp"

namespace iplab {

/// A labeled configuration: positions of k particles (distinct for IP/EX,
/// unrestricted for RW).
using LabeledConfig = std::vector<int>;

enum class SpaceKind {
    Words,   // V^k            (RW)
    Tuples,  // (V)_k          (IP, Q2)
    Subsets, // k-subsets of V (EX)
};

/// Bijective, lexicographic state indexing for the three space kinds.
/// Ranking is arithmetic (no lookup tables beyond binomials), so the index
/// map is stable across runs by construction.
class StateSpace {
public:
    StateSpace() = default;
    StateSpace(SpaceKind kind, int n, int k) : kind_(kind), n_(n), k_(k) {
        if (k < 0 || n < 0) throw std::invalid_argument("state space needs n,k >= 0");
        if (kind != SpaceKind::Words && k > n)
            throw std::invalid_argument("distinct-position space needs k <= n");
        size_ = compute_size();
        if (kind == SpaceKind::Subsets) build_binomials();
    }

    SpaceKind kind() const { return kind_; }
    int n() const { return n_; }
    int k() const { return k_; }
    std::int64_t size() const { return size_; }

    std::int64_t rank(std::span<const int> s) const {
        switch (kind_) {
        case SpaceKind::Words: {
            std::int64_t r = 0;
            for (int i = 0; i < k_; ++i) r = r * n_ + s[i];
            return r;
        }
        case SpaceKind::Tuples: {
            std::vector<char> used(n_, 0);
            std::int64_t r = 0;
            std::int64_t weight = size_; // (n)_k
            for (int i = 0; i < k_; ++i) {
                weight /= (n_ - i);
                int smaller = 0;
                for (int v = 0; v < s[i]; ++v) smaller += !used[v];
                r += smaller * weight;
                used[s[i]] = 1;
            }
            return r;
        }
        case SpaceKind::Subsets: {
            std::int64_t r = 0;
            int prev = -1;
            for (int i = 0; i < k_; ++i) {
                for (int v = prev + 1; v < s[i]; ++v)
                    r += binom(n_ - 1 - v, k_ - 1 - i);
                prev = s[i];
            }
            return r;
        }
        }
        return -1;
    }

    void unrank(std::int64_t r, std::span<int> out) const {
        switch (kind_) {
        case SpaceKind::Words: {
            for (int i = k_ - 1; i >= 0; --i) {
                out[i] = static_cast<int>(r % n_);
                r /= n_;
            }
            return;
        }
        case SpaceKind::Tuples: {
            std::vector<char> used(n_, 0);
            std::int64_t weight = size_;
            for (int i = 0; i < k_; ++i) {
                weight /= (n_ - i);
                std::int64_t idx = r / weight;
                r %= weight;
                for (int v = 0;; ++v) {
                    if (used[v]) continue;
                    if (idx == 0) {
                        out[i] = v;
                        used[v] = 1;
                        break;
                    }
                    --idx;
                }
            }
            return;
        }
        case SpaceKind::Subsets: {
            int v = 0;
            for (int i = 0; i < k_; ++i) {
                for (;; ++v) {
                    std::int64_t c = binom(n_ - 1 - v, k_ - 1 - i);
                    if (r < c) {
                        out[i] = v;
                        ++v;
                        break;
                    }
                    r -= c;
                }
            }
            return;
        }
        }
    }

    LabeledConfig state(std::int64_t r) const {
        LabeledConfig s(k_);
        unrank(r, s);
        return s;
    }

private:
    std::int64_t compute_size() const {
        long double approx = 1.0L;
        std::int64_t exact = 1;
        auto mul = [&](std::int64_t f) {
            approx *= f;
            if (approx > 4e18L) throw BudgetError("state space too large to index");
            exact *= f;
        };
        switch (kind_) {
        case SpaceKind::Words:
            for (int i = 0; i < k_; ++i) mul(n_);
            break;
        case SpaceKind::Tuples:
            for (int i = 0; i < k_; ++i) mul(n_ - i);
            break;
        case SpaceKind::Subsets: {
            // C(n,k) via the product formula, exact in int64 for our scales
            for (int i = 0; i < k_; ++i) {
                exact = exact * (n_ - i) / (i + 1);
                approx = static_cast<long double>(exact);
                if (approx > 4e18L) throw BudgetError("state space too large to index");
            }
            break;
        }
        }
        return exact;
    }

    void build_binomials() {
        binom_.assign(static_cast<std::size_t>(n_ + 1) * (k_ + 1), 0);
        for (int a = 0; a <= n_; ++a) {
            at(a, 0) = 1;
            for (int b = 1; b <= std::min(a, k_); ++b)
                at(a, b) = at(a - 1, b - 1) + at(a - 1, b);
        }
    }
    std::int64_t& at(int a, int b) { return binom_[static_cast<std::size_t>(a) * (k_ + 1) + b]; }
    std::int64_t binom(int a, int b) const {
        if (b < 0 || b > a || a < 0) return 0;
        return binom_[static_cast<std::size_t>(a) * (k_ + 1) + b];
    }

    SpaceKind kind_ = SpaceKind::Words;
    int n_ = 0, k_ = 0;
    std::int64_t size_ = 0;
    std::vector<std::int64_t> binom_;
};

/// Lifts a permutation of an edge (given as images of the edge's sorted
/// vertex list) to a configuration: coordinates inside the edge map through
/// sigma, the rest stay put.
inline LabeledConfig apply_permutation(const LabeledConfig& config, const Hyperedge& edge,
                                       const std::vector<int>& images) {
    if (!detail::is_permutation_of(images, edge.vertices))
        throw std::invalid_argument("invalid permutation");
    LabeledConfig out = config;
    for (auto& p : out) {
        int idx = edge.index_of(p);
        if (idx >= 0) p = images[idx];
    }
    return out;
}

/// In-place variant used by hot loops; assumes images was validated.
inline void apply_permutation_inplace(LabeledConfig& config, const Hyperedge& edge,
                                      const std::vector<int>& images) {
    for (auto& p : config) {
        int idx = edge.index_of(p);
        if (idx >= 0) p = images[idx];
    }
}

} // namespace iplab
