#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace iplab {

/// Identifies a reproducible random stream.  (seed, stream) pairs map to
/// byte-identical draw sequences on every platform and thread count.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h + 0x9e3779b97f4a7c15ULL + v);
}
} // namespace detail

/// Counter-based generator keyed by (seed, stream, replica, lane).  Each
/// draw advances a counter through the splitmix64 permutation, so replicas
/// are independent streams that can run on any worker without coordination.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t replica = 0, std::uint64_t lane = 0) {
        std::uint64_t h = detail::mix64(seed ^ 0x5851f42d4c957f2dULL);
        h = detail::combine(h, stream);
        h = detail::combine(h, replica);
        h = detail::combine(h, lane);
        state_ = h;
    }
    CounterRng(const RngSpec& spec, std::uint64_t replica = 0, std::uint64_t lane = 0)
        : CounterRng(spec.seed, spec.stream, replica, lane) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // multiply-shift; bias is negligible for the n used here but we
        // reject the short range anyway to keep draws exact
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            __uint128_t m = static_cast<__uint128_t>(r) * n;
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    double normal() {
        // Box-Muller, one value per call (second draw discarded for
        // reproducibility independent of call pairing)
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Index into a cumulative-weight table: smallest i with u*total < cum[i].
    std::size_t pick_cumulative(const std::vector<double>& cum) {
        const double u = uniform() * cum.back();
        std::size_t lo = 0, hi = cum.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (u < cum[mid]) hi = mid; else lo = mid + 1;
        }
        return lo;
    }

private:
    std::uint64_t state_;
};

} // namespace iplab
