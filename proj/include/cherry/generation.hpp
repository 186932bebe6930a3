#pragma once

#include <cstdint>
#include <string>

#include "cherry/network.hpp"
#include "cherry/rng.hpp"
#include "cherry/sequence.hpp"

namespace cherry {

// Random tree-child sequence on taxa "1".."n" with r reticulated pairs.
//
// Draw protocol, per loop iteration while pairs remain to be prepended:
//   1. if both kinds of step are possible, one draw below(L+R) < L picks a
//      leaf step, otherwise a reticulation step; no draw when only one kind
//      is possible;
//   2. reticulation step: first = NF[below(|NF|)], NF sorted ascending;
//      leaf step: first = the next unused taxon (no draw);
//   3. second = (Y \ {first}, sorted ascending)[below(|Y|-1)].
// With binary set, a reticulation step also retires first from NF; this can
// run out of candidates, which raises DomainError.
Sequence random_tcs(std::size_t n, std::size_t r, Rng& rng, bool binary = false);

// Random sub-sequence of a tree-child sequence keeping one pair per taxon
// that occurs as a first coordinate plus r_prime further pairs.
//
// Draw protocol: taxa with at least one first-coordinate index, in natural
// order, each draw below(|I_x|) to keep one of their indices; then r_prime
// partial Fisher-Yates draws below(m-j), j = 0..r_prime-1, over the remaining
// indices in ascending order. The result lists the kept pairs in input order.
Sequence random_sub_tcs(const Sequence& s, std::size_t r_prime, Rng& rng);

enum class InstanceKind { Yes, No };
std::string to_string(InstanceKind k);

struct Instance {
    Network big;
    Network small;
    InstanceKind kind = InstanceKind::Yes;
    std::size_t n = 0, r = 0, r_prime = 0;
    std::uint64_t seed = 0;
};

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t r, std::size_t r_prime,
                            InstanceKind kind, std::size_t replicate);

// Big network built under (1a,2b) from random_tcs(n, r). A yes-instance's
// small network comes from a random sub-sequence of big's sequence, a
// no-instance's from an independent random_tcs(n, r_prime).
Instance make_instance(std::size_t n, std::size_t r, std::size_t r_prime, InstanceKind kind,
                       std::uint64_t base_seed, std::size_t replicate = 0);

} // namespace cherry
