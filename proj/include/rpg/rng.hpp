#pragma once

#include <cmath>

#include "rpg/common.hpp"

namespace rpg {

// (value, stream) fully determines every sample drawn through a Seed.
struct Seed {
    u64 value = 0;
    u64 stream = 0;

    Seed with_stream(u64 s) const { return Seed{value, s}; }
    Seed derived(u64 salt) const;
};

// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline u64 mix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline u64 mix64(u64 a, u64 b) { return mix64(mix64(a) ^ (b * 0xd1342543de82ef95ULL + 1)); }
inline u64 mix64(u64 a, u64 b, u64 c) { return mix64(mix64(a, b) ^ (c * 0x2545f4914f6cdd1dULL + 1)); }

inline Seed Seed::derived(u64 salt) const { return Seed{value, mix64(stream, salt)}; }

// Counter-based generator: draw t is a pure function of (seed, stream, t),
// so parallel consumers never contend and goldens are stable.
class Rng {
public:
    explicit Rng(Seed s) : base_(mix64(s.value, s.stream)) {}
    Rng(u64 value, u64 stream) : base_(mix64(value, stream)) {}

    u64 next_u64() { return mix64(base_, counter_++); }

    // Uniform in [0, bound) without modulo bias (Lemire).
    u64 next_below(u64 bound) {
        if (bound == 0) return 0;
        while (true) {
            u64 x = next_u64();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            u64 lo = static_cast<u64>(m);
            if (lo >= bound || lo >= (0 - bound) % bound) return static_cast<u64>(m >> 64);
        }
    }

    // Uniform double in (0, 1]; never returns 0 so log() is safe.
    double next_unit() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return next_unit() <= p;
    }

private:
    u64 base_;
    u64 counter_ = 0;
};

// Per-pair Bernoulli indicator, keyed so exposure order cannot change the
// sample: edge {u,v} of trial (seed) is present iff a pure hash of the pair
// clears the threshold.
class PairExposure {
public:
    PairExposure(Seed s, double p)
        : key_(mix64(s.value, s.stream, 0x70616972ULL)), always_(p >= 1.0), never_(p <= 0.0) {
        double t = p * 0x1.0p64;
        threshold_ = t >= 0x1.0p64 ? ~0ULL : static_cast<u64>(t);
    }

    bool edge(u32 u, u32 v) const {
        if (u == v || never_) return false;
        if (always_) return true;
        if (u > v) std::swap(u, v);
        u64 pair = (static_cast<u64>(u) << 32) | v;
        return mix64(key_ ^ pair) < threshold_;
    }

private:
    u64 key_;
    u64 threshold_;
    bool always_, never_;
};

inline void fisher_yates(std::vector<u32>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.next_below(i)]);
}

}  // namespace rpg
