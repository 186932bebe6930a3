#pragma once

#include <cstdint>
#include <random>

namespace cherry {

// Deterministic stream with a fixed draw protocol. The engine is
// std::mt19937_64, whose output sequence the C++ standard pins down; integer
// draws use rejection sampling rather than std::uniform_int_distribution,
// whose algorithm differs between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n). One engine draw, repeated only on rejection:
    // draws below (2^64 mod n) are discarded, the rest are reduced mod n.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t x = engine_();
            if (x >= threshold) return x % n;
        }
    }

    // True with probability num/den, as below(den) < num.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer, used to derive independent per-instance seeds.
inline std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
    std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace cherry
