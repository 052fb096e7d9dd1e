#include "mulab/rng.hpp"

#include <bit>
#include <cassert>
#include <cmath>

#include "mulab/errors.hpp"

namespace mulab {

namespace {

constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Stafford mix13).
uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Seed Seed::sub(uint64_t index) const {
    return Seed{value, mix64(stream + kGamma * (index + 1))};
}

Rng::Rng(Seed seed) : state_(mix64(seed.value) + kGamma * mix64(seed.stream)) {}

uint64_t Rng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double Rng::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::next_below(uint64_t bound) {
    assert(bound > 0);
    uint64_t mask = ~uint64_t(0) >> std::countl_zero(bound | 1);
    uint64_t x;
    do {
        x = next_u64() & mask;
    } while (x >= bound);
    return x;
}

int Rng::poisson(double lambda) {
    if (lambda < 0 || lambda >= 30)
        throw DomainError("poisson: lambda out of supported range [0, 30)");
    double u = next_double();
    double p = std::exp(-lambda);
    double cum = p;
    int k = 0;
    while (u > cum) {
        ++k;
        p *= lambda / k;
        cum += p;
        if (p == 0.0 || k > 2000) break;  // fp underflow guard
    }
    return k;
}

}  // namespace mulab
