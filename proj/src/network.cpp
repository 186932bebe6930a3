#include "cherry/network.hpp"

#include <algorithm>

#include "cherry/error.hpp"

namespace cherry {

Pair::Pair(Taxon x, Taxon y) : first(std::move(x)), second(std::move(y)) {
    if (first == second) throw DomainError("pair (" + first + "," + second + ") repeats a taxon");
}

std::string to_string(const Pair& p) { return "(" + p.first + "," + p.second + ")"; }

const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Root: return "root";
    case NodeKind::TreeNode: return "tree node";
    case NodeKind::Reticulation: return "reticulation";
    case NodeKind::Leaf: return "leaf";
    }
    return "?";
}

namespace {

void erase_one(Network::AdjList& list, NodeId v) {
    auto it = std::find(list.begin(), list.end(), v);
    list.erase(it);
}

void replace_one(Network::AdjList& list, NodeId from, NodeId to) {
    *std::find(list.begin(), list.end(), from) = to;
}

} // namespace

Network Network::single_leaf(const Taxon& t) {
    Network net;
    NodeId r = net.add_node();
    NodeId l = net.add_leaf(t);
    net.add_edge(r, l);
    net.set_root(r);
    return net;
}

NodeId Network::add_node() {
    ++live_;
    if (!free_.empty()) {
        NodeId v = free_.back();
        free_.pop_back();
        nodes_[v] = Node{};
        return v;
    }
    nodes_.emplace_back();
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Network::add_leaf(const Taxon& t) {
    NodeId v = add_node();
    set_label(v, t);
    return v;
}

void Network::add_edge(NodeId u, NodeId v, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        nodes_[u].children.push_back(v);
        nodes_[v].parents.push_back(u);
    }
    edges_ += count;
}

bool Network::remove_edge(NodeId u, NodeId v) {
    auto& ch = nodes_[u].children;
    auto it = std::find(ch.begin(), ch.end(), v);
    if (it == ch.end()) return false;
    ch.erase(it);
    erase_one(nodes_[v].parents, u);
    --edges_;
    return true;
}

void Network::remove_node(NodeId v) {
    while (!nodes_[v].parents.empty()) remove_edge(nodes_[v].parents.back(), v);
    while (!nodes_[v].children.empty()) remove_edge(v, nodes_[v].children.back());
    clear_label(v);
    nodes_[v].alive = false;
    if (root_ == v) root_ = kNoNode;
    free_.push_back(v);
    --live_;
}

void Network::suppress(NodeId u) {
    NodeId a = nodes_[u].parents.front();
    NodeId b = nodes_[u].children.front();
    replace_one(nodes_[a].children, u, b);
    replace_one(nodes_[b].parents, u, a);
    nodes_[u].parents.clear();
    nodes_[u].children.clear();
    --edges_;
    clear_label(u);
    nodes_[u].alive = false;
    free_.push_back(u);
    --live_;
}

NodeId Network::subdivide(NodeId u, NodeId v) {
    NodeId w = add_node();
    replace_one(nodes_[u].children, v, w);
    replace_one(nodes_[v].parents, u, w);
    nodes_[w].parents.push_back(u);
    nodes_[w].children.push_back(v);
    ++edges_;
    return w;
}

void Network::set_label(NodeId v, const Taxon& t) {
    auto [it, inserted] = leaf_of_.emplace(t, v);
    if (!inserted && it->second != v) throw ValidationError("taxon '" + t + "' labels two nodes");
    clear_label(v);
    leaf_of_[t] = v;
    nodes_[v].label = t;
    nodes_[v].labeled = true;
}

void Network::clear_label(NodeId v) {
    if (!nodes_[v].labeled) return;
    leaf_of_.erase(nodes_[v].label);
    nodes_[v].label.clear();
    nodes_[v].labeled = false;
}

std::vector<NodeId> Network::nodes() const {
    std::vector<NodeId> out;
    out.reserve(live_);
    for (NodeId v = 0; v < nodes_.size(); ++v)
        if (nodes_[v].alive) out.push_back(v);
    return out;
}

std::size_t Network::multiplicity(NodeId u, NodeId v) const {
    const auto& ch = nodes_[u].children;
    return static_cast<std::size_t>(std::count(ch.begin(), ch.end(), v));
}

NodeKind Network::kind(NodeId v) const {
    if (v == root_) return NodeKind::Root;
    const Node& n = nodes_[v];
    if (n.children.empty()) return NodeKind::Leaf;
    if (n.parents.size() >= 2) return NodeKind::Reticulation;
    return NodeKind::TreeNode;
}

NodeId Network::leaf(const Taxon& t) const {
    auto it = leaf_of_.find(t);
    return it == leaf_of_.end() ? kNoNode : it->second;
}

std::vector<Taxon> Network::taxa() const {
    std::vector<Taxon> out;
    out.reserve(leaf_of_.size());
    for (const auto& [t, v] : leaf_of_) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Network::describe(NodeId v) const {
    if (v < nodes_.size() && nodes_[v].labeled) return "leaf '" + nodes_[v].label + "'";
    return "node #" + std::to_string(v);
}

void Network::validate() const {
    if (live_ == 0) throw ValidationError("network is empty");
    if (!alive(root_)) throw ValidationError("network has no root");
    if (!nodes_[root_].parents.empty())
        throw ValidationError("root " + describe(root_) + " has a parent (cycle through the root)");
    if (nodes_[root_].children.size() != 1)
        throw ValidationError("root " + describe(root_) + " must have exactly one child");
    if (nodes_[root_].labeled) throw ValidationError("root " + describe(root_) + " carries a label");

    for (NodeId v = 0; v < nodes_.size(); ++v) {
        const Node& n = nodes_[v];
        if (!n.alive || v == root_) continue;
        std::size_t in = n.parents.size(), out = n.children.size();
        if (in == 0) throw ValidationError(describe(v) + " is a second source");
        if (out == 0) {
            if (!n.labeled) throw ValidationError(describe(v) + " is an unlabeled sink");
            if (in != 1) throw ValidationError(describe(v) + " is a leaf with indegree " + std::to_string(in));
            continue;
        }
        if (n.labeled) throw ValidationError(describe(v) + " is labeled but has children");
        if (in == 1 && out == 1) throw ValidationError(describe(v) + " has indegree 1 and outdegree 1");
        if (in >= 2 && out != 1)
            throw ValidationError(describe(v) + " has indegree " + std::to_string(in) + " and outdegree " +
                                  std::to_string(out));
    }

    // Kahn's algorithm; any node left unvisited lies on a cycle.
    std::vector<std::size_t> pending(nodes_.size(), 0);
    std::vector<NodeId> stack{root_};
    std::size_t seen = 0;
    for (NodeId v = 0; v < nodes_.size(); ++v)
        if (nodes_[v].alive) pending[v] = nodes_[v].parents.size();
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        ++seen;
        for (NodeId c : nodes_[v].children)
            if (--pending[c] == 0) stack.push_back(c);
    }
    if (seen != live_) {
        for (NodeId v = 0; v < nodes_.size(); ++v)
            if (nodes_[v].alive && pending[v] != 0) throw ValidationError(describe(v) + " lies on a cycle");
    }
}

} // namespace cherry
