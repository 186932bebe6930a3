#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cherry/network.hpp"
#include "cherry/pair.hpp"

namespace cherry {

// Ordered list of pairs. step(i) and prefix(i) count from 1; prefix(0) is empty.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {}
    Sequence(std::initializer_list<std::pair<const char*, const char*>> pairs);

    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const Pair& step(std::size_t i) const { return pairs_.at(i - 1); }
    // First i pairs.
    Sequence prefix(std::size_t i) const;
    // Everything after the first i pairs.
    Sequence suffix(std::size_t i) const;
    Sequence concat(const Sequence& other) const;
    void push_back(Pair p) { pairs_.push_back(std::move(p)); }
    void pop_back() { pairs_.pop_back(); }

    const std::vector<Pair>& pairs() const { return pairs_; }
    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<Pair> pairs_;
};

std::string to_string(const Sequence& s);

// Distinct taxa appearing anywhere in s, in first-appearance order.
std::vector<Taxon> taxa_of(const Sequence& s);

bool check_cps(const Sequence& s);
// Index (1-based) of the first pair breaking the CPS rule, 0 if none.
std::size_t first_cps_violation(const Sequence& s);
bool check_tcs(const Sequence& s);

Network apply(Network net, const Sequence& s);
// Applies s in place; active[i-1] records whether step i changed the network.
void apply_traced(Network& net, const Sequence& s, std::vector<bool>& active);

bool is_fully_reduced(const Network& net);
bool cps_reduces_network(Network net, const Sequence& s);
bool is_minimal_for(Network net, const Sequence& s);

} // namespace cherry
