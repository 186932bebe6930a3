#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cherry/network.hpp"
#include "cherry/pair.hpp"

namespace cherry {

struct ClassReport {
    bool is_binary = false;
    bool is_semi_binary = false;
    bool is_stack_free = false;
    bool is_tree_child = false;
    std::size_t n_leaves = 0;
    std::size_t reticulation_number = 0;
};

std::string to_string(const ClassReport& c);

// Validates first; throws ValidationError on a malformed graph.
ClassReport classify(const Network& net);

enum class PairKind { None, Cherry, ReticulatedCherry };

// Kind of (x,y) in the current network. Absent taxa give None.
PairKind pair_kind(const Network& net, const Pair& p);

// Reducible pairs with x as second coordinate. On semi-binary input this
// is the constant-time walk up to x's parent and down its other child.
// Throws DomainError if x is not a leaf.
std::vector<Pair> find_rp_2nd(const Network& net, const Taxon& x);

// Reticulated cherries with x as first coordinate.
std::vector<Pair> find_rc_1st(const Network& net, const Taxon& x);

// Reduces p in place and reports what it was. Non-reducible pairs leave the
// network untouched.
PairKind reduce_pair(Network& net, const Pair& p);

struct TaggedPair {
    Pair pair;
    PairKind kind;
};

// Every cherry and reticulated cherry, ordered by the leaf scan.
std::vector<TaggedPair> all_reducible_pairs(const Network& net);

} // namespace cherry
