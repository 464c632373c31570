#pragma once

#include "isolab/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace isolab {

// Seeded sampler. Bounded integers use rejection on raw mt19937_64 output so
// the stream is identical on every platform (std distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    long uniform(long lo, long hi);
    FieldScalar scalar(long box) { return FieldScalar(uniform(-box, box)); }
    Vec vector(int n, long box);
    // Random combination of the basis rows of a subspace.
    Vec element(const Subspace& S, long box);
    Rng fork(const std::string& salt);

private:
    std::mt19937_64 eng_;
};

std::uint64_t default_seed();
void set_default_seed(std::uint64_t seed);

}  // namespace isolab
