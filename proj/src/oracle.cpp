#include "cherry/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cherry/error.hpp"
#include "cherry/reduction.hpp"

namespace cherry {

CleanupResult cleanup(Network net, const std::unordered_set<Taxon>& keep) {
    CleanupResult res;
    for (NodeId v : net.nodes())
        if (net.labeled(v) && !keep.count(net.label(v))) net.clear_label(v);

    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId v : net.nodes()) {
            if (!net.alive(v) || v == net.root()) continue;
            std::size_t in = net.indegree(v), out = net.outdegree(v);
            if (out == 0 && !net.labeled(v)) {
                net.remove_node(v);
                changed = true;
            } else if (in == 0) {
                if (net.labeled(v)) {
                    res.normalizable = false;
                    res.reason = "leaf '" + net.label(v) + "' lost every incoming edge";
                    res.net = std::move(net);
                    return res;
                }
                net.remove_node(v);
                changed = true;
            } else if (in == 1 && out == 1) {
                net.suppress(v);
                changed = true;
            }
        }
    }
    for (const Taxon& t : keep)
        if (!net.has_taxon(t)) {
            res.normalizable = false;
            res.reason = "taxon '" + t + "' is missing";
        }
    if (res.normalizable) {
        try {
            net.validate();
        } catch (const ValidationError& e) {
            res.normalizable = false;
            res.reason = e.what();
        }
    }
    res.net = std::move(net);
    return res;
}

namespace {

// Children before parents.
std::vector<NodeId> bottom_up_order(const Network& net) {
    std::vector<NodeId> order;
    std::vector<std::size_t> pending(net.id_bound(), 0);
    for (NodeId v : net.nodes()) {
        pending[v] = net.outdegree(v);
        if (pending[v] == 0) order.push_back(v);
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (NodeId p : net.parents(order[i]))
            if (--pending[p] == 0) order.push_back(p);
    return order;
}

std::vector<NodeId> sorted_children(const Network& net, NodeId v) {
    std::vector<NodeId> out(net.children(v).begin(), net.children(v).end());
    std::sort(out.begin(), out.end());
    return out;
}

// Node map a -> b, or nullopt.
std::optional<std::unordered_map<NodeId, NodeId>> iso_map(const Network& a, const Network& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count() || a.leaf_count() != b.leaf_count())
        return std::nullopt;
    std::vector<NodeId> to_b(a.id_bound(), kNoNode);
    std::vector<bool> used(b.id_bound(), false);
    for (NodeId v : a.nodes()) {
        if (!a.labeled(v)) continue;
        NodeId w = b.leaf(a.label(v));
        if (w == kNoNode) return std::nullopt;
        to_b[v] = w;
        used[w] = true;
    }

    std::vector<NodeId> order;
    for (NodeId v : bottom_up_order(a))
        if (!a.labeled(v)) order.push_back(v);
    if (order.size() + a.leaf_count() != a.node_count()) return std::nullopt;  // cyclic input

    std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
        if (i == order.size()) return true;
        NodeId u = order[i];
        std::vector<NodeId> image;
        for (NodeId c : a.children(u)) image.push_back(to_b[c]);
        std::sort(image.begin(), image.end());

        std::vector<NodeId> candidates;
        if (u == a.root())
            candidates.push_back(b.root());
        else if (!image.empty())
            candidates.assign(b.parents(image.front()).begin(), b.parents(image.front()).end());
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        for (NodeId w : candidates) {
            if (!b.alive(w) || used[w] || b.labeled(w)) continue;
            if ((w == b.root()) != (u == a.root())) continue;
            if (b.indegree(w) != a.indegree(u) || b.outdegree(w) != a.outdegree(u)) continue;
            if (sorted_children(b, w) != image) continue;
            to_b[u] = w;
            used[w] = true;
            if (extend(i + 1)) return true;
            used[w] = false;
            to_b[u] = kNoNode;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;

    std::unordered_map<NodeId, NodeId> out;
    for (NodeId v : a.nodes()) out[v] = to_b[v];
    return out;
}

std::size_t reticulation_number(const Network& net) {
    std::size_t r = 0;
    for (NodeId v : net.nodes())
        if (v != net.root() && net.indegree(v) >= 2) r += net.indegree(v) - 1;
    return r;
}

struct RetEdgeGroup {
    NodeId parent;
    NodeId child;
    std::size_t count;
};

std::vector<RetEdgeGroup> reticulation_edge_groups(const Network& net) {
    std::vector<RetEdgeGroup> groups;
    std::size_t total = 0;
    for (NodeId h : net.nodes()) {
        if (net.kind(h) != NodeKind::Reticulation) continue;
        std::map<NodeId, std::size_t> per_parent;
        for (NodeId g : net.parents(h)) ++per_parent[g];
        for (auto [g, m] : per_parent) groups.push_back({g, h, m});
        total += net.indegree(h);
    }
    if (total > kMaxReticulationEdges)
        throw CapExceeded("network has " + std::to_string(total) + " reticulation edges; the limit is " +
                          std::to_string(kMaxReticulationEdges));
    return groups;
}

std::unordered_set<Taxon> taxon_set(const Network& net) {
    std::unordered_set<Taxon> out;
    for (const Taxon& t : net.taxa()) out.insert(t);
    return out;
}

// Calls visit(cleaned network) for every deletion of reticulation-edge
// instances whose cleanup is a network on small's leaves with small's
// reticulation number. Stops early when visit returns true.
bool for_each_candidate(const Network& big, const Network& small,
                        const std::function<bool(const Network&)>& visit) {
    big.validate();
    small.validate();
    for (const Taxon& t : small.taxa())
        if (!big.has_taxon(t)) throw PreconditionError("taxon '" + t + "' of the small network is not in the big one");

    std::vector<RetEdgeGroup> groups = reticulation_edge_groups(big);
    std::size_t r_big = reticulation_number(big), r_small = reticulation_number(small);
    if (r_small > r_big) return false;
    std::size_t budget = r_big - r_small;
    std::unordered_set<Taxon> keep = taxon_set(small);

    std::vector<std::size_t> del(groups.size(), 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) -> bool {
        if (i == groups.size()) {
            Network g = big;
            for (std::size_t k = 0; k < groups.size(); ++k)
                for (std::size_t c = 0; c < del[k]; ++c) g.remove_edge(groups[k].parent, groups[k].child);
            CleanupResult cr = cleanup(std::move(g), keep);
            if (!cr.normalizable || cr.net.leaf_count() != keep.size()) return false;
            if (reticulation_number(cr.net) != r_small) return false;
            return visit(cr.net);
        }
        for (std::size_t c = 0; c <= groups[i].count && used + c <= budget; ++c) {
            del[i] = c;
            if (rec(i + 1, used + c)) return true;
        }
        del[i] = 0;
        return false;
    };
    return rec(0, 0);
}

// Edge-disjoint paths in big realising every edge of small under node_map.
bool route_edges(const Network& big, const Network& small, EmbeddingWitness& w) {
    std::vector<std::pair<NodeId, NodeId>> todo;
    for (NodeId u : small.nodes())
        for (NodeId c : small.children(u)) todo.emplace_back(u, c);

    std::unordered_set<NodeId> image;
    for (auto [s, b] : w.node_map) image.insert(b);
    std::map<std::pair<NodeId, NodeId>, std::size_t> used;
    std::vector<NodeId> path;

    std::function<bool(std::size_t)> next_edge;
    std::function<bool(NodeId, NodeId, std::size_t)> walk = [&](NodeId at, NodeId target, std::size_t i) -> bool {
        if (at == target) {
            w.edge_paths.push_back({todo[i], path});
            if (next_edge(i + 1)) return true;
            w.edge_paths.pop_back();
            return false;
        }
        std::vector<NodeId> kids(big.children(at).begin(), big.children(at).end());
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        for (NodeId c : kids) {
            if (c != target && image.count(c)) continue;
            if (std::find(path.begin(), path.end(), c) != path.end()) continue;
            auto key = std::make_pair(at, c);
            if (used[key] >= big.multiplicity(at, c)) continue;
            ++used[key];
            path.push_back(c);
            if (walk(c, target, i)) return true;
            path.pop_back();
            --used[key];
        }
        return false;
    };
    next_edge = [&](std::size_t i) -> bool {
        if (i == todo.size()) return true;
        std::vector<NodeId> saved = path;
        path.assign(1, w.node_map.at(todo[i].first));
        bool ok = walk(path.front(), w.node_map.at(todo[i].second), i);
        path = saved;
        return ok;
    };
    return next_edge(0);
}

// Merges the endpoints of each chosen edge; nullopt if the result is not a
// valid network.
std::optional<Network> contract(const Network& m, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<NodeId> rep(m.id_bound());
    std::iota(rep.begin(), rep.end(), 0);
    std::function<NodeId(NodeId)> find = [&](NodeId v) { return rep[v] == v ? v : rep[v] = find(rep[v]); };
    for (auto [u, v] : edges) rep[find(v)] = find(u);

    Network out;
    std::vector<NodeId> id(m.id_bound(), kNoNode);
    for (NodeId v : m.nodes()) {
        NodeId r = find(v);
        if (id[r] == kNoNode) id[r] = m.labeled(v) ? out.add_leaf(m.label(v)) : out.add_node();
    }
    std::multiset<std::pair<NodeId, NodeId>> skip(edges.begin(), edges.end());
    for (NodeId u : m.nodes())
        for (NodeId c : m.children(u)) {
            auto it = skip.find({u, c});
            if (it != skip.end()) {
                skip.erase(it);
                continue;
            }
            if (find(u) == find(c)) return std::nullopt;
            out.add_edge(id[find(u)], id[find(c)]);
        }
    out.set_root(id[find(m.root())]);
    try {
        out.validate();
    } catch (const ValidationError&) {
        return std::nullopt;
    }
    return out;
}

} // namespace

bool labeled_iso(const Network& a, const Network& b) { return iso_map(a, b).has_value(); }

bool witness_is_valid(const Network& big, const Network& small, const EmbeddingWitness& w) {
    std::unordered_set<NodeId> image;
    for (NodeId v : small.nodes()) {
        auto it = w.node_map.find(v);
        if (it == w.node_map.end() || !big.alive(it->second)) return false;
        if (!image.insert(it->second).second) return false;
        if (small.labeled(v) && (!big.labeled(it->second) || big.label(it->second) != small.label(v))) return false;
    }
    if (w.node_map.at(small.root()) != big.root()) return false;
    if (w.edge_paths.size() != small.edge_count()) return false;

    std::map<std::pair<NodeId, NodeId>, std::size_t> demand;
    for (NodeId u : small.nodes())
        for (NodeId c : small.children(u)) ++demand[{u, c}];
    std::map<std::pair<NodeId, NodeId>, std::size_t> used;
    for (const auto& [edge, path] : w.edge_paths) {
        auto d = demand.find(edge);
        if (d == demand.end() || d->second == 0) return false;
        --d->second;
        if (path.size() < 2 || path.front() != w.node_map.at(edge.first) ||
            path.back() != w.node_map.at(edge.second))
            return false;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            if (image.count(path[i])) return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (++used[{path[i], path[i + 1]}] > big.multiplicity(path[i], path[i + 1])) return false;
    }
    return true;
}

bool subnetwork_bruteforce(const Network& big, const Network& small, EmbeddingWitness* witness) {
    return for_each_candidate(big, small, [&](const Network& m) {
        auto map = iso_map(small, m);
        if (!map) return false;
        if (witness) {
            // Cleanup keeps NodeIds, so the map already points into big.
            witness->node_map = std::move(*map);
            witness->edge_paths.clear();
            if (!route_edges(big, small, *witness)) return false;
        }
        return true;
    });
}

bool containment_bruteforce(const Network& big, const Network& small) {
    constexpr std::size_t kMaxContractions = 5'000'000;
    std::size_t tried = 0;
    return for_each_candidate(big, small, [&](const Network& m) {
        if (labeled_iso(small, m)) return true;
        if (m.node_count() <= small.node_count()) return false;
        std::size_t k = m.node_count() - small.node_count();
        if (m.edge_count() != small.edge_count() + k) return false;

        std::vector<std::pair<NodeId, NodeId>> candidates;
        for (NodeId u : m.nodes()) {
            NodeKind ku = m.kind(u);
            if (ku != NodeKind::TreeNode && ku != NodeKind::Reticulation) continue;
            for (NodeId c : m.children(u))
                if (m.kind(c) == ku) candidates.emplace_back(u, c);
        }
        if (candidates.size() < k) return false;

        std::vector<std::pair<NodeId, NodeId>> chosen;
        std::function<bool(std::size_t)> pick = [&](std::size_t from) -> bool {
            if (chosen.size() == k) {
                if (++tried > kMaxContractions) throw CapExceeded("contraction search exceeded its limit");
                auto c = contract(m, chosen);
                return c && labeled_iso(small, *c);
            }
            for (std::size_t i = from; i + (k - chosen.size()) <= candidates.size(); ++i) {
                chosen.push_back(candidates[i]);
                if (pick(i + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        return pick(0);
    });
}

void for_each_minimal_cps(const Network& net, const std::function<void(const Sequence&)>& visit) {
    net.validate();
    Sequence current;
    std::function<void(const Network&)> dfs = [&](const Network& n) {
        std::vector<TaggedPair> pairs = all_reducible_pairs(n);
        if (pairs.empty()) {
            if (is_fully_reduced(n)) visit(current);
            return;
        }
        for (const TaggedPair& tp : pairs) {
            Network next = n;
            reduce_pair(next, tp.pair);
            current.push_back(tp.pair);
            dfs(next);
            current.pop_back();
        }
    };
    dfs(net);
}

std::vector<Sequence> enumerate_all_minimal_cps(const Network& net, std::size_t cap) {
    std::vector<Sequence> out;
    for_each_minimal_cps(net, [&](const Sequence& s) {
        if (out.size() == cap) throw CapExceeded("more than " + std::to_string(cap) + " minimal sequences");
        out.push_back(s);
    });
    return out;
}

} // namespace cherry
