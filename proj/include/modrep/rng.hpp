#pragma once

#include <cstdint>

#include "field.hpp"

namespace modrep {

/// Splittable deterministic PRNG (splitmix64 core). All randomized routines
/// take an explicit Rng so whole runs are reproducible from one seed;
/// independent stages split off their own stream with a tag.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : state_(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). n must be nonzero.
    uint64_t below(uint64_t n) {
        // modulo bias is irrelevant for our n << 2^64
        return next() % n;
    }

    bool coin() { return next() & 1; }

    uint8_t field_element(const Field& f) { return uint8_t(below(f.size())); }

    uint8_t nonzero_field_element(const Field& f) { return uint8_t(1 + below(f.size() - 1)); }

    /// Derive an independent stream; deterministic in (state, tag).
    Rng split(uint64_t tag) const {
        Rng r;
        r.state_ = state_ ^ (tag * 0xd6e8feb86659fd93ULL + 0xa529cc6e8e65d64bULL);
        r.next();
        return r;
    }

private:
    uint64_t state_;
};

}  // namespace modrep
