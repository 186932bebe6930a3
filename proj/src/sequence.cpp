#include "cherry/sequence.hpp"

#include <unordered_set>

#include "cherry/reduction.hpp"

namespace cherry {

Sequence::Sequence(std::initializer_list<std::pair<const char*, const char*>> pairs) {
    for (const auto& [x, y] : pairs) pairs_.emplace_back(x, y);
}

Sequence Sequence::prefix(std::size_t i) const {
    return Sequence(std::vector<Pair>(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(i)));
}

Sequence Sequence::suffix(std::size_t i) const {
    return Sequence(std::vector<Pair>(pairs_.begin() + static_cast<std::ptrdiff_t>(i), pairs_.end()));
}

Sequence Sequence::concat(const Sequence& other) const {
    std::vector<Pair> all = pairs_;
    all.insert(all.end(), other.pairs_.begin(), other.pairs_.end());
    return Sequence(std::move(all));
}

std::string to_string(const Sequence& s) {
    std::string out;
    for (const Pair& p : s) {
        if (!out.empty()) out += ",";
        out += to_string(p);
    }
    return out;
}

std::vector<Taxon> taxa_of(const Sequence& s) {
    std::vector<Taxon> out;
    std::unordered_set<Taxon> seen;
    for (const Pair& p : s)
        for (const Taxon* t : {&p.first, &p.second})
            if (seen.insert(*t).second) out.push_back(*t);
    return out;
}

std::size_t first_cps_violation(const Sequence& s) {
    // Scan right to left, remembering which taxa occur later as a first coordinate.
    std::unordered_set<Taxon> later_firsts;
    std::size_t bad = 0;
    for (std::size_t i = s.size(); i >= 1; --i) {
        const Pair& p = s.step(i);
        if (p.second != s.step(s.size()).second && !later_firsts.count(p.second)) bad = i;
        later_firsts.insert(p.first);
    }
    return bad;
}

bool check_cps(const Sequence& s) { return first_cps_violation(s) == 0; }

bool check_tcs(const Sequence& s) {
    if (!check_cps(s)) return false;
    std::unordered_set<Taxon> later_seconds;
    for (std::size_t i = s.size(); i >= 1; --i) {
        const Pair& p = s.step(i);
        if (later_seconds.count(p.first)) return false;
        later_seconds.insert(p.second);
    }
    return true;
}

Network apply(Network net, const Sequence& s) {
    for (const Pair& p : s) reduce_pair(net, p);
    return net;
}

void apply_traced(Network& net, const Sequence& s, std::vector<bool>& active) {
    active.clear();
    active.reserve(s.size());
    for (const Pair& p : s) active.push_back(reduce_pair(net, p) != PairKind::None);
}

bool is_fully_reduced(const Network& net) {
    return net.node_count() == 2 && net.leaf_count() == 1 && net.alive(net.root()) && net.outdegree(net.root()) == 1;
}

bool cps_reduces_network(Network net, const Sequence& s) {
    for (const Pair& p : s) reduce_pair(net, p);
    return is_fully_reduced(net);
}

bool is_minimal_for(Network net, const Sequence& s) {
    std::vector<bool> active;
    apply_traced(net, s, active);
    for (bool a : active)
        if (!a) return false;
    return is_fully_reduced(net);
}

} // namespace cherry
