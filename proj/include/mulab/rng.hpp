#pragma once

#include <cstdint>

namespace mulab {

// Reproducibility handle: a 64-bit seed value plus a 64-bit stream id.
// Equal (value, stream) pairs always reproduce the same draws; distinct
// stream ids give statistically independent streams for the same value.
struct Seed {
    uint64_t value = 0;
    uint64_t stream = 0;

    // Derived substream for replica/purpose `index` (hash-mixed, so nested
    // derivations do not collide in practice).
    Seed sub(uint64_t index) const;

    bool operator==(const Seed&) const = default;
};

// The project-wide PRNG is SplitMix64 (Steele, Lea & Flood, OOPSLA 2014):
// the state walks an arithmetic sequence with the golden-gamma increment
// and every output is a finalizing hash of the state.  That makes it a
// counter-based generator: the i-th draw is a pure function of (seed, i),
// identical on every platform and unaffected by how replicas are assigned
// to threads.
class Rng {
  public:
    explicit Rng(Seed seed);

    uint64_t next_u64();

    // Uniform in [0, 1), 53 random mantissa bits.
    double next_double();

    // Uniform integer in [0, bound), unbiased via masked rejection.
    uint64_t next_below(uint64_t bound);

    bool bernoulli(double p) { return next_double() < p; }

    // Poisson via inversion by sequential search; intended for small means
    // (the callers keep lambda < 10).
    int poisson(double lambda);

  private:
    uint64_t state_;
};

}  // namespace mulab
