#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cherry/pair.hpp"

namespace cherry {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind { Root, TreeNode, Reticulation, Leaf };

const char* to_string(NodeKind k);

// Rooted DAG with labeled leaves. Parallel edges are stored as repeated
// entries in both adjacency lists, so the multiplicity of u->v is the number
// of times v occurs in children(u).
//
// Mutators do not enforce the structural invariants; intermediate states
// (during construction, cleanup or parsing) may be invalid. validate() checks
// them all.
class Network {
public:
    using AdjList = boost::container::small_vector<NodeId, 2>;

    Network() = default;
    static Network single_leaf(const Taxon& t);

    NodeId add_node();
    NodeId add_leaf(const Taxon& t);
    void add_edge(NodeId u, NodeId v, std::size_t count = 1);
    void set_root(NodeId v) { root_ = v; }

    // Removes one instance of u->v. Returns false if there is none.
    bool remove_edge(NodeId u, NodeId v);
    // Removes v together with all its incident edges and its label.
    void remove_node(NodeId v);
    // Replaces a->u->b by a->b. u must have exactly one parent and one child.
    void suppress(NodeId u);
    // Replaces one instance of u->v by u->w->v and returns the new node w.
    NodeId subdivide(NodeId u, NodeId v);
    void set_label(NodeId v, const Taxon& t);
    void clear_label(NodeId v);

    bool alive(NodeId v) const { return v < nodes_.size() && nodes_[v].alive; }
    // Upper bound (exclusive) on NodeIds ever handed out.
    std::size_t id_bound() const { return nodes_.size(); }
    std::size_t node_count() const { return live_; }
    std::size_t edge_count() const { return edges_; }
    std::vector<NodeId> nodes() const;

    const AdjList& parents(NodeId v) const { return nodes_[v].parents; }
    const AdjList& children(NodeId v) const { return nodes_[v].children; }
    std::size_t indegree(NodeId v) const { return nodes_[v].parents.size(); }
    std::size_t outdegree(NodeId v) const { return nodes_[v].children.size(); }
    std::size_t multiplicity(NodeId u, NodeId v) const;
    NodeKind kind(NodeId v) const;

    NodeId root() const { return root_; }
    // kNoNode when the taxon is not a leaf label.
    NodeId leaf(const Taxon& t) const;
    bool has_taxon(const Taxon& t) const { return leaf_of_.count(t) != 0; }
    bool labeled(NodeId v) const { return nodes_[v].labeled; }
    const Taxon& label(NodeId v) const { return nodes_[v].label; }
    std::size_t leaf_count() const { return leaf_of_.size(); }
    // Sorted bytewise.
    std::vector<Taxon> taxa() const;

    // Human-readable node name for error messages.
    std::string describe(NodeId v) const;

    // Throws ValidationError naming the first offending node.
    void validate() const;

private:
    struct Node {
        AdjList parents;
        AdjList children;
        Taxon label;
        bool labeled = false;
        bool alive = true;
    };

    std::vector<Node> nodes_;
    std::vector<NodeId> free_;
    std::unordered_map<Taxon, NodeId> leaf_of_;
    NodeId root_ = kNoNode;
    std::size_t live_ = 0;
    std::size_t edges_ = 0;
};

} // namespace cherry
