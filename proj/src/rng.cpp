#include "isolab/rng.hpp"

#include <cstdlib>
#include <stdexcept>

namespace isolab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t& seed_slot() {
    static std::uint64_t seed = [] {
        if (const char* env = std::getenv("ISOLAB_SEED")) return std::strtoull(env, nullptr, 10);
        return 42ULL;
    }();
    return seed;
}

}  // namespace

long Rng::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("empty range in Rng::uniform");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = eng_();
    while (r >= limit);
    return lo + static_cast<long>(r % span);
}

Vec Rng::vector(int n, long box) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v(k) = scalar(box);
    return v;
}

Vec Rng::element(const Subspace& S, long box) {
    Vec c(S.dim());
    for (int k = 0; k < S.dim(); ++k) c(k) = scalar(box);
    return S.from_coords(c);
}

Rng Rng::fork(const std::string& salt) {
    std::uint64_t h = eng_();
    for (unsigned char ch : salt) h = splitmix(h ^ ch);
    return Rng(splitmix(h));
}

std::uint64_t default_seed() { return seed_slot(); }
void set_default_seed(std::uint64_t seed) { seed_slot() = seed; }

}  // namespace isolab
