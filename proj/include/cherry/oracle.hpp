#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cherry/network.hpp"
#include "cherry/sequence.hpp"

// Exhaustive reference implementations for small networks. Everything here
// is exponential; the size caps turn oversized inputs into CapExceeded.

namespace cherry {

struct CleanupResult {
    Network net;
    bool normalizable = true;
    std::string reason;
};

// Drops labels outside keep, then repeats until nothing changes: remove
// unlabeled sinks, remove sources other than the root, suppress non-root
// nodes with one parent and one child. The result is checked against the
// network invariants; failures are reported, not thrown.
CleanupResult cleanup(Network net, const std::unordered_set<Taxon>& keep);

bool labeled_iso(const Network& a, const Network& b);

struct EmbeddingWitness {
    std::unordered_map<NodeId, NodeId> node_map;  // small node -> big node
    // One entry per small edge instance: (small parent, small child) and the
    // big-network node path realising it, endpoints included.
    std::vector<std::pair<std::pair<NodeId, NodeId>, std::vector<NodeId>>> edge_paths;
};

// Checks injectivity, endpoints, edge existence and edge-disjointness.
bool witness_is_valid(const Network& big, const Network& small, const EmbeddingWitness& w);

inline constexpr std::size_t kMaxReticulationEdges = 20;

bool subnetwork_bruteforce(const Network& big, const Network& small, EmbeddingWitness* witness = nullptr);
bool containment_bruteforce(const Network& big, const Network& small);

// Calls visit on every minimal sequence, in depth-first order over
// all_reducible_pairs. No cap; the count grows factorially with wide nodes.
void for_each_minimal_cps(const Network& net, const std::function<void(const Sequence&)>& visit);
// All minimal sequences, in the same order.
std::vector<Sequence> enumerate_all_minimal_cps(const Network& net, std::size_t cap = 200000);

} // namespace cherry
