#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cherry/construction.hpp"
#include "cherry/network.hpp"
#include "cherry/rng.hpp"
#include "cherry/sequence.hpp"

namespace cherry {

// Default compares labels bytewise except that maximal digit runs compare by
// numeric value, so "2" < "10". An explicit list overrides it.
class TaxonOrder {
public:
    TaxonOrder() = default;
    // Throws DomainError on a repeated taxon.
    static TaxonOrder from_list(const std::vector<Taxon>& ranked);

    // Throws DomainError if an explicit order lacks one of the taxa.
    bool less(const Taxon& a, const Taxon& b) const;
    bool less(const Pair& a, const Pair& b) const;
    bool covers(const std::vector<Taxon>& taxa) const;

private:
    std::optional<std::unordered_map<Taxon, std::size_t>> rank_;
};

bool natural_less(const Taxon& a, const Taxon& b);

enum class PopPolicy { Fifo, Lifo, Random };

// Worklist of candidate pairs. Without an order it pops by policy; with an
// order it always pops the smallest pair. Erasure is lazy in policy mode.
class ReduciblePairSet {
public:
    explicit ReduciblePairSet(PopPolicy policy = PopPolicy::Fifo, std::uint64_t seed = 0);
    explicit ReduciblePairSet(const TaxonOrder& order);

    void insert(const Pair& p);
    template <typename Range>
    void insert_all(const Range& r) {
        for (const Pair& p : r) insert(p);
    }
    void erase(const Pair& p);
    bool contains(const Pair& p) const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::optional<Pair> pop();

private:
    struct OrderLess {
        const TaxonOrder* order;
        bool operator()(const Pair& a, const Pair& b) const { return order->less(a, b); }
    };

    PopPolicy policy_;
    Rng rng_;
    std::deque<Pair> queue_;
    std::unordered_set<Pair, PairHash> live_;
    std::optional<std::set<Pair, OrderLess>> ordered_;
};

struct FindTcsOptions {
    PopPolicy policy = PopPolicy::Fifo;
    std::uint64_t seed = 0;
};

// Minimal tree-child sequence of a semi-binary tree-child network.
// Throws PreconditionError (with the class report) on other inputs.
Sequence find_tcs(const Network& net, FindTcsOptions opts = {});

// Whether small is a subnetwork of big. Both must be semi-binary tree-child
// on the same leaf set.
bool tcn_contains(const Network& big, const Network& small);

enum class CpsVariant { SemiBinaryStackFree, Binary, NonBinary };

CpsVariant parse_variant(const std::string& name);
std::string to_string(CpsVariant v);

// Lexicographically smallest minimal CPS under order. Throws
// PreconditionError when the network is outside the variant's class or is
// not fully reducible.
Sequence smallest_cps(const Network& net, const TaxonOrder& order, CpsVariant variant);

// Variant able to handle every network of a reconstructible class.
CpsVariant variant_for(CpnClass c);

// Linear-time test for semi-binary tree-child networks on equal leaf sets.
bool isomorphic_tree_child(const Network& a, const Network& b);
// Compares smallest sequences; both networks must have the shape of class c,
// which must be reconstructible.
bool isomorphic_in_class(const Network& a, const Network& b, CpnClass c, const TaxonOrder& order = {});

} // namespace cherry
