#include "cherry/algorithms.hpp"

#include <algorithm>
#include <stdexcept>

#include "cherry/error.hpp"
#include "cherry/reduction.hpp"

namespace cherry {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

bool natural_less(const Taxon& a, const Taxon& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && is_digit(a[ie])) ++ie;
            while (je < b.size() && is_digit(b[je])) ++je;
            std::size_t is = i, js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            std::string_view na(a.data() + is, ie - is), nb(b.data() + js, je - js);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
        ++i;
        ++j;
    }
    if ((i < a.size()) != (j < b.size())) return j < b.size();
    // Equal up to leading zeros; fall back to bytes so the order stays total.
    return a < b;
}

TaxonOrder TaxonOrder::from_list(const std::vector<Taxon>& ranked) {
    TaxonOrder o;
    o.rank_.emplace();
    for (std::size_t i = 0; i < ranked.size(); ++i)
        if (!o.rank_->emplace(ranked[i], i).second) throw DomainError("taxon '" + ranked[i] + "' listed twice in order");
    return o;
}

bool TaxonOrder::less(const Taxon& a, const Taxon& b) const {
    if (!rank_) return natural_less(a, b);
    auto ia = rank_->find(a), ib = rank_->find(b);
    if (ia == rank_->end()) throw DomainError("taxon '" + a + "' missing from order");
    if (ib == rank_->end()) throw DomainError("taxon '" + b + "' missing from order");
    return ia->second < ib->second;
}

bool TaxonOrder::less(const Pair& a, const Pair& b) const {
    if (a.first != b.first) return less(a.first, b.first);
    return a.second != b.second && less(a.second, b.second);
}

bool TaxonOrder::covers(const std::vector<Taxon>& taxa) const {
    if (!rank_) return true;
    return std::all_of(taxa.begin(), taxa.end(), [&](const Taxon& t) { return rank_->count(t) != 0; });
}

ReduciblePairSet::ReduciblePairSet(PopPolicy policy, std::uint64_t seed) : policy_(policy), rng_(seed) {}

ReduciblePairSet::ReduciblePairSet(const TaxonOrder& order)
    : policy_(PopPolicy::Fifo), rng_(0), ordered_(std::in_place, OrderLess{&order}) {}

void ReduciblePairSet::insert(const Pair& p) {
    if (ordered_) {
        ordered_->insert(p);
        return;
    }
    if (live_.insert(p).second) queue_.push_back(p);
}

void ReduciblePairSet::erase(const Pair& p) {
    if (ordered_)
        ordered_->erase(p);
    else
        live_.erase(p);
}

bool ReduciblePairSet::contains(const Pair& p) const {
    return ordered_ ? ordered_->count(p) != 0 : live_.count(p) != 0;
}

std::size_t ReduciblePairSet::size() const { return ordered_ ? ordered_->size() : live_.size(); }

std::optional<Pair> ReduciblePairSet::pop() {
    if (ordered_) {
        if (ordered_->empty()) return std::nullopt;
        Pair p = *ordered_->begin();
        ordered_->erase(ordered_->begin());
        return p;
    }
    while (!queue_.empty()) {
        Pair p;
        switch (policy_) {
        case PopPolicy::Fifo:
            p = std::move(queue_.front());
            queue_.pop_front();
            break;
        case PopPolicy::Lifo:
            p = std::move(queue_.back());
            queue_.pop_back();
            break;
        case PopPolicy::Random: {
            std::size_t k = rng_.below(queue_.size());
            std::swap(queue_[k], queue_.back());
            p = std::move(queue_.back());
            queue_.pop_back();
            break;
        }
        }
        // Stale entries were erased from live_ but left in the queue.
        if (live_.erase(p)) return p;
    }
    return std::nullopt;
}

namespace {

void require_tree_child(const ClassReport& rep, const char* what) {
    if (!rep.is_semi_binary || !rep.is_tree_child)
        throw PreconditionError(std::string(what) + " must be semi-binary tree-child (" + to_string(rep) + ")");
}

bool same_leaf_set(const Network& a, const Network& b) {
    if (a.leaf_count() != b.leaf_count()) return false;
    for (NodeId v : a.nodes())
        if (a.labeled(v) && !b.has_taxon(a.label(v))) return false;
    return true;
}

Sequence find_tcs_unchecked(Network n, FindTcsOptions opts) {
    ReduciblePairSet worklist(opts.policy, opts.seed);
    // NodeId order keeps the seeding deterministic without a sort.
    for (NodeId v : n.nodes())
        if (n.labeled(v)) worklist.insert_all(find_rp_2nd(n, n.label(v)));

    Sequence s;
    while (auto p = worklist.pop()) {
        PairKind k = reduce_pair(n, *p);
        if (k == PairKind::None) throw std::logic_error("worklist held a non-reducible pair " + to_string(*p));
        s.push_back(*p);
        const Taxon& y = p->second;
        if (k == PairKind::Cherry) worklist.erase(Pair(y, p->first));
        worklist.insert_all(find_rp_2nd(n, y));
        worklist.insert_all(find_rc_1st(n, y));
    }
    if (!is_fully_reduced(n)) throw std::logic_error("tree-child reduction stalled before a single leaf");
    return s;
}

// Cherries with v as first coordinate. The printed update rules only look for
// pairs with v second, which loses (v,z) when v's parent was just suppressed.
void insert_cherries_from(ReduciblePairSet& c, const Network& n, const Taxon& v) {
    NodeId lv = n.leaf(v);
    if (lv == kNoNode) return;
    NodeId p = n.parents(lv).front();
    if (n.kind(p) != NodeKind::TreeNode) return;
    for (NodeId ch : n.children(p))
        if (ch != lv && n.kind(ch) == NodeKind::Leaf) c.insert(Pair(v, n.label(ch)));
}

} // namespace

Sequence find_tcs(const Network& net, FindTcsOptions opts) {
    require_tree_child(classify(net), "network");
    return find_tcs_unchecked(net, opts);
}

bool tcn_contains(const Network& big, const Network& small) {
    require_tree_child(classify(big), "containing network");
    require_tree_child(classify(small), "contained network");
    if (!same_leaf_set(big, small)) throw PreconditionError("networks have different leaf sets");
    return cps_reduces_network(small, find_tcs_unchecked(big, {}));
}

CpsVariant parse_variant(const std::string& name) {
    if (name == "semibinary-stackfree") return CpsVariant::SemiBinaryStackFree;
    if (name == "binary") return CpsVariant::Binary;
    if (name == "nonbinary") return CpsVariant::NonBinary;
    throw DomainError("unknown variant '" + name + "' (expected semibinary-stackfree, binary or nonbinary)");
}

std::string to_string(CpsVariant v) {
    switch (v) {
    case CpsVariant::SemiBinaryStackFree: return "semibinary-stackfree";
    case CpsVariant::Binary: return "binary";
    case CpsVariant::NonBinary: return "nonbinary";
    }
    return "?";
}

Sequence smallest_cps(const Network& net, const TaxonOrder& order, CpsVariant variant) {
    ClassReport rep = classify(net);
    if (variant == CpsVariant::SemiBinaryStackFree && !(rep.is_semi_binary && rep.is_stack_free))
        throw PreconditionError("semibinary-stackfree variant needs a semi-binary stack-free network (" +
                                to_string(rep) + ")");
    if (variant == CpsVariant::Binary && !rep.is_binary)
        throw PreconditionError("binary variant needs a binary network (" + to_string(rep) + ")");
    if (!order.covers(net.taxa())) throw PreconditionError("taxon order does not cover every leaf");

    Network n = net;
    ReduciblePairSet c(order);
    for (const Taxon& x : n.taxa()) c.insert_all(find_rp_2nd(n, x));

    const bool general = variant == CpsVariant::NonBinary;
    Sequence s;
    while (auto p = c.pop()) {
        const Taxon& x = p->first;
        const Taxon& y = p->second;
        PairKind k = pair_kind(n, *p);
        if (k == PairKind::None) {
            if (general) continue;
            throw std::logic_error("worklist held a non-reducible pair " + to_string(*p));
        }
        std::size_t in_px = n.indegree(n.parents(n.leaf(x)).front());
        std::size_t out_py = n.outdegree(n.parents(n.leaf(y)).front());
        reduce_pair(n, *p);
        s.push_back(*p);

        if (k == PairKind::Cherry) {
            c.erase(Pair(y, x));
            if (!general || out_py == 2) c.insert_all(find_rp_2nd(n, y));
            c.insert_all(find_rc_1st(n, y));
        } else if (general) {
            // With a reticulation of indegree above two, or parallel edges,
            // the same pair can stay reducible.
            if (pair_kind(n, *p) != PairKind::None) c.insert(*p);
            c.insert_all(find_rc_1st(n, y));
            if (in_px == 2) {
                c.insert_all(find_rc_1st(n, x));
                c.insert_all(find_rp_2nd(n, x));
            }
            if (out_py == 2) c.insert_all(find_rp_2nd(n, y));
            insert_cherries_from(c, n, x);
        } else {
            c.insert_all(find_rp_2nd(n, x));
            if (variant == CpsVariant::Binary) c.insert_all(find_rc_1st(n, x));
            c.insert_all(find_rp_2nd(n, y));
            c.insert_all(find_rc_1st(n, y));
            insert_cherries_from(c, n, x);
        }
        insert_cherries_from(c, n, y);
    }
    if (!is_fully_reduced(n)) throw PreconditionError("network is not fully reducible by any sequence");
    return s;
}

CpsVariant variant_for(CpnClass c) {
    if (c == CpnClass{CherryRule::Resolved1a, RetRule::Plain2a}) return CpsVariant::Binary;
    if (c == CpnClass{CherryRule::Resolved1a, RetRule::MergeRetic2b}) return CpsVariant::SemiBinaryStackFree;
    return CpsVariant::NonBinary;
}

bool isomorphic_tree_child(const Network& a, const Network& b) {
    ClassReport ra = classify(a), rb = classify(b);
    require_tree_child(ra, "first network");
    require_tree_child(rb, "second network");
    if (!same_leaf_set(a, b)) throw PreconditionError("networks have different leaf sets");
    return ra.reticulation_number == rb.reticulation_number && cps_reduces_network(b, find_tcs_unchecked(a, {}));
}

bool isomorphic_in_class(const Network& a, const Network& b, CpnClass c, const TaxonOrder& order) {
    if (!is_reconstructible(c)) throw PreconditionError("class " + to_string(c) + " is not reconstructible");
    a.validate();
    b.validate();
    if (!has_class_shape(a, c) || !has_class_shape(b, c))
        throw PreconditionError("network does not have the shape of class " + to_string(c));
    if (!same_leaf_set(a, b)) return false;
    CpsVariant v = variant_for(c);
    return smallest_cps(a, order, v) == smallest_cps(b, order, v);
}

} // namespace cherry
