#include "cherry/reduction.hpp"

#include <algorithm>

#include "cherry/error.hpp"

namespace cherry {

std::string to_string(const ClassReport& c) {
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    return std::string("binary=") + flag(c.is_binary) + " semi_binary=" + flag(c.is_semi_binary) +
           " stack_free=" + flag(c.is_stack_free) + " tree_child=" + flag(c.is_tree_child) +
           " leaves=" + std::to_string(c.n_leaves) + " reticulations=" + std::to_string(c.reticulation_number);
}

ClassReport classify(const Network& net) {
    net.validate();
    ClassReport rep;
    rep.is_semi_binary = true;
    bool retics_binary = true;
    bool no_rr = true;
    bool tree_nodes_ok = true;
    for (NodeId v : net.nodes()) {
        switch (net.kind(v)) {
        case NodeKind::Leaf: ++rep.n_leaves; break;
        case NodeKind::Root: break;
        case NodeKind::Reticulation: {
            rep.reticulation_number += net.indegree(v) - 1;
            if (net.indegree(v) != 2) retics_binary = false;
            if (net.kind(net.children(v).front()) == NodeKind::Reticulation) no_rr = false;
            break;
        }
        case NodeKind::TreeNode: {
            if (net.outdegree(v) != 2) rep.is_semi_binary = false;
            bool good_child = std::any_of(net.children(v).begin(), net.children(v).end(), [&](NodeId c) {
                return net.kind(c) != NodeKind::Reticulation;
            });
            if (!good_child) tree_nodes_ok = false;
            break;
        }
        }
    }
    rep.is_binary = rep.is_semi_binary && retics_binary;
    rep.is_stack_free = no_rr;
    rep.is_tree_child = no_rr && tree_nodes_ok;
    return rep;
}

namespace {

NodeId leaf_or_throw(const Network& net, const Taxon& x) {
    NodeId v = net.leaf(x);
    if (v == kNoNode) throw DomainError("taxon '" + x + "' is not a leaf of the network");
    return v;
}

void add_unique(std::vector<Pair>& out, Pair p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
}

} // namespace

PairKind pair_kind(const Network& net, const Pair& p) {
    NodeId vx = net.leaf(p.first), vy = net.leaf(p.second);
    if (vx == kNoNode || vy == kNoNode) return PairKind::None;
    NodeId px = net.parents(vx).front(), py = net.parents(vy).front();
    if (px == py) return PairKind::Cherry;
    if (net.kind(px) != NodeKind::Reticulation || net.kind(py) != NodeKind::TreeNode) return PairKind::None;
    const auto& ps = net.parents(px);
    return std::find(ps.begin(), ps.end(), py) != ps.end() ? PairKind::ReticulatedCherry : PairKind::None;
}

std::vector<Pair> find_rp_2nd(const Network& net, const Taxon& x) {
    NodeId v = leaf_or_throw(net, x);
    std::vector<Pair> out;
    NodeId p = net.parents(v).front();
    if (net.kind(p) != NodeKind::TreeNode) return out;
    for (NodeId c : net.children(p)) {
        if (c == v) continue;
        NodeKind k = net.kind(c);
        if (k == NodeKind::Leaf) {
            add_unique(out, Pair(net.label(c), x));
        } else if (k == NodeKind::Reticulation) {
            NodeId below = net.children(c).front();
            if (net.kind(below) == NodeKind::Leaf) add_unique(out, Pair(net.label(below), x));
        }
    }
    return out;
}

std::vector<Pair> find_rc_1st(const Network& net, const Taxon& x) {
    NodeId v = leaf_or_throw(net, x);
    std::vector<Pair> out;
    NodeId p = net.parents(v).front();
    if (net.kind(p) != NodeKind::Reticulation) return out;
    for (NodeId g : net.parents(p)) {
        if (net.kind(g) != NodeKind::TreeNode) continue;
        for (NodeId c : net.children(g))
            if (c != p && net.kind(c) == NodeKind::Leaf) add_unique(out, Pair(x, net.label(c)));
    }
    return out;
}

PairKind reduce_pair(Network& net, const Pair& p) {
    PairKind k = pair_kind(net, p);
    if (k == PairKind::Cherry) {
        NodeId vx = net.leaf(p.first);
        NodeId parent = net.parents(vx).front();
        net.remove_node(vx);
        if (parent != net.root() && net.indegree(parent) == 1 && net.outdegree(parent) == 1) net.suppress(parent);
    } else if (k == PairKind::ReticulatedCherry) {
        NodeId px = net.parents(net.leaf(p.first)).front();
        NodeId py = net.parents(net.leaf(p.second)).front();
        net.remove_edge(py, px);
        if (net.indegree(px) == 1) net.suppress(px);
        if (py != net.root() && net.outdegree(py) == 1) net.suppress(py);
    }
    return k;
}

std::vector<TaggedPair> all_reducible_pairs(const Network& net) {
    std::vector<TaggedPair> out;
    for (const Taxon& x : net.taxa())
        for (Pair& p : find_rp_2nd(net, x)) {
            PairKind k = pair_kind(net, p);
            out.push_back({std::move(p), k});
        }
    return out;
}

} // namespace cherry
