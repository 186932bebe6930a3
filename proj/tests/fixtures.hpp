#pragma once

#include <array>
#include <string>
#include <vector>

#include "cherry/construction.hpp"
#include "cherry/network.hpp"
#include "cherry/rng.hpp"
#include "cherry/sequence.hpp"

namespace fixtures {

using cherry::Network;
using cherry::Sequence;

Network from_edges(const std::string& text);

// Four leaves, two reticulations; reduced to leaf 4 by worked_sequence().
extern const char* const kWorkedNetwork;
Sequence worked_sequence();
// The worked network after its first pair (2,1).
extern const char* const kWorkedAfterFirst;

// Five leaves, smallest sequence (1,2),(3,2),(3,4),(4,5),(2,5).
extern const char* const kSmallestNetwork;

// Semi-binary, stack-free, not tree-child; its reducible pairs are (2,3) and
// (6,5). kCounterTree is a subnetwork that no minimal sequence reduces.
extern const char* const kCounterNetwork;
extern const char* const kCounterTree;

// Pair where a tree-child sequence of the big network reduces the small one,
// which is contained in but not a subnetwork of the big one.
extern const char* const kReductionBig;
extern const char* const kReductionSmall;
Sequence reduction_sequence();

// Star tree contained in, but not a subnetwork of, kStarHost.
extern const char* const kStarHost;
extern const char* const kStarTree;

// Networks built from class_sequence() under the eight classes, in the order
// of cherry::all_classes().
Sequence class_sequence();
extern const std::array<const char*, 8> kClassNetworks;

// Two different networks sharing the minimal sequence shared_sequence() in
// class (1a,2c).
extern const char* const kSharedA;
extern const char* const kSharedB;
Sequence shared_sequence();

// Reducing (x,y) and adding it back under (1a,2c) changes this network.
extern const char* const kNonUniqueNetwork;

// Same network with NodeIds assigned in a random order.
Network shuffled_copy(const Network& net, cherry::Rng& rng);

// Random CPS on taxa 1..n with r reticulated pairs and no tree-child
// restriction, built back to front.
Sequence random_cps(std::size_t n, std::size_t r, cherry::Rng& rng);

// Random network of class c with at most max_n leaves and max_r
// reticulations.
Network random_class_network(cherry::CpnClass c, std::size_t max_n, std::size_t max_r, cherry::Rng& rng);

// Whether pair p is a cherry or reticulated cherry, decided from the
// definitions on the current adjacency without the library's helpers.
bool naive_is_reducible(const Network& net, const std::string& x, const std::string& y);

} // namespace fixtures
