#include "cherry/construction.hpp"

#include "cherry/error.hpp"

namespace cherry {

std::string to_string(CpnClass c) {
    std::string s = c.cherry == CherryRule::Resolved1a ? "1a" : "1b";
    switch (c.ret) {
    case RetRule::Plain2a: return s + "2a";
    case RetRule::MergeRetic2b: return s + "2b";
    case RetRule::MergeTree2c: return s + "2c";
    case RetRule::MergeBoth2d: return s + "2d";
    }
    return s;
}

const std::array<CpnClass, 8>& all_classes() {
    static const std::array<CpnClass, 8> classes = [] {
        std::array<CpnClass, 8> out{};
        std::size_t i = 0;
        for (CherryRule a : {CherryRule::Resolved1a, CherryRule::Contracted1b})
            for (RetRule b : {RetRule::Plain2a, RetRule::MergeRetic2b, RetRule::MergeTree2c, RetRule::MergeBoth2d})
                out[i++] = CpnClass{a, b};
        return out;
    }();
    return classes;
}

CpnClass parse_class(const std::string& name) {
    for (CpnClass c : all_classes())
        if (to_string(c) == name) return c;
    throw DomainError("unknown network class '" + name + "' (expected 1a2a ... 1b2d)");
}

bool is_reconstructible(CpnClass c) {
    if (c.cherry == CherryRule::Resolved1a) return c.ret == RetRule::Plain2a || c.ret == RetRule::MergeRetic2b;
    return c.ret == RetRule::MergeTree2c || c.ret == RetRule::MergeBoth2d;
}

namespace {

bool merges_into_tree(CpnClass c) { return c.ret == RetRule::MergeTree2c || c.ret == RetRule::MergeBoth2d; }
bool merges_into_retic(CpnClass c) { return c.ret == RetRule::MergeRetic2b || c.ret == RetRule::MergeBoth2d; }

} // namespace

void add_pair(Network& net, const Pair& p, CpnClass c) {
    NodeId y = net.leaf(p.second);
    if (y == kNoNode) throw PreconditionError("cannot add " + to_string(p) + ": '" + p.second + "' is not a leaf");
    NodeId py = net.parents(y).front();
    NodeId x = net.leaf(p.first);

    if (x == kNoNode) {
        NodeId nx = net.add_leaf(p.first);
        if (c.cherry == CherryRule::Contracted1b && net.kind(py) == NodeKind::TreeNode) {
            net.add_edge(py, nx);
        } else {
            NodeId q = net.subdivide(py, y);
            net.add_edge(q, nx);
        }
        return;
    }

    // Kinds are read before any edit so both guards see the network as given.
    NodeId px = net.parents(x).front();
    bool reuse_px = merges_into_retic(c) && net.kind(px) == NodeKind::Reticulation;
    bool reuse_py = merges_into_tree(c) && net.kind(py) == NodeKind::TreeNode;
    NodeId lower = reuse_px ? px : net.subdivide(px, x);
    NodeId upper = reuse_py ? py : net.subdivide(py, y);
    net.add_edge(upper, lower);
}

Network build_from_cps(const Sequence& s, CpnClass c, const std::optional<Taxon>& seed_taxon) {
    if (std::size_t bad = first_cps_violation(s))
        throw ValidationError("not a cherry-picking sequence: pair " + std::to_string(bad) + " " +
                              to_string(s.step(bad)) + " has a second coordinate that never reappears");
    if (s.empty()) {
        if (!seed_taxon) throw PreconditionError("an empty sequence needs a seed taxon");
        return Network::single_leaf(*seed_taxon);
    }
    Network net = Network::single_leaf(s.step(s.size()).second);
    for (std::size_t i = s.size(); i >= 1; --i) add_pair(net, s.step(i), c);
    return net;
}

bool has_class_shape(const Network& net, CpnClass c) {
    bool binary_tree = c.cherry == CherryRule::Resolved1a && !merges_into_tree(c);
    bool binary_retic = !merges_into_retic(c);
    bool no_rr = merges_into_retic(c);
    bool no_tt = c.cherry == CherryRule::Contracted1b && merges_into_tree(c);
    for (NodeId v : net.nodes()) {
        NodeKind k = net.kind(v);
        if (k == NodeKind::TreeNode) {
            if (binary_tree && net.outdegree(v) != 2) return false;
            if (no_tt)
                for (NodeId ch : net.children(v))
                    if (net.kind(ch) == NodeKind::TreeNode) return false;
        } else if (k == NodeKind::Reticulation) {
            if (binary_retic && net.indegree(v) != 2) return false;
            if (no_rr && net.kind(net.children(v).front()) == NodeKind::Reticulation) return false;
        }
    }
    return true;
}

} // namespace cherry
