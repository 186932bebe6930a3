#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace cherry {

// Taxa are opaque tokens; ordering, when needed, is injected by the caller.
using Taxon = std::string;

struct Pair {
    Taxon first;
    Taxon second;

    Pair() = default;
    // Throws DomainError when both coordinates are equal.
    Pair(Taxon x, Taxon y);

    friend bool operator==(const Pair&, const Pair&) = default;
};

struct PairHash {
    std::size_t operator()(const Pair& p) const noexcept {
        std::size_t h = std::hash<Taxon>{}(p.first);
        return h ^ (std::hash<Taxon>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

std::string to_string(const Pair& p);

} // namespace cherry
