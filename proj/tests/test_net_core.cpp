#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

#include "cherry/error.hpp"
#include "cherry/oracle.hpp"
#include "cherry/reduction.hpp"

using namespace cherry;
using fixtures::from_edges;

namespace {

std::set<std::pair<std::string, std::string>> as_set(const std::vector<Pair>& v) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Pair& p : v) out.emplace(p.first, p.second);
    return out;
}

std::set<std::pair<std::string, std::string>> brute_pairs(const Network& net) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Taxon& x : net.taxa())
        for (const Taxon& y : net.taxa())
            if (x != y && fixtures::naive_is_reducible(net, x, y)) out.emplace(x, y);
    return out;
}

Network random_network(Rng& rng) {
    const auto& classes = all_classes();
    return fixtures::random_class_network(classes[rng.below(classes.size())], 6, 4, rng);
}

} // namespace

TEST_CASE("classify reports leaves and reticulation number of the worked network") {
    ClassReport c = classify(from_edges(fixtures::kWorkedNetwork));
    CHECK(c.n_leaves == 4);
    CHECK(c.reticulation_number == 2);
    CHECK(c.is_binary);
    CHECK(c.is_semi_binary);
    CHECK(c.is_stack_free);
    CHECK_FALSE(c.is_tree_child);  // node 7 has two reticulation children
}

TEST_CASE("classify on a single leaf") {
    ClassReport c = classify(Network::single_leaf("a"));
    CHECK(c.n_leaves == 1);
    CHECK(c.reticulation_number == 0);
    CHECK(c.is_binary);
    CHECK(c.is_tree_child);
}

TEST_CASE("counterexample network is semi-binary and stack-free but not tree-child") {
    ClassReport c = classify(from_edges(fixtures::kCounterNetwork));
    CHECK(c.is_semi_binary);
    CHECK(c.is_stack_free);
    CHECK_FALSE(c.is_tree_child);
    CHECK(c.n_leaves == 7);
    CHECK(c.reticulation_number == 4);
}

TEST_CASE("classify agrees with a per-node degree audit") {
    for (const char* text : {fixtures::kWorkedNetwork, fixtures::kSmallestNetwork, fixtures::kCounterNetwork,
                             fixtures::kReductionBig, fixtures::kReductionSmall, fixtures::kStarHost,
                             fixtures::kSharedA, fixtures::kSharedB}) {
        Network net = from_edges(text);
        ClassReport c = classify(net);
        bool semi = true, bin = true, rr = false, tc = true;
        std::size_t r = 0;
        for (NodeId v : net.nodes()) {
            std::size_t in = net.parents(v).size(), out = net.children(v).size();
            if (in == 1 && out >= 2) {
                semi = semi && out == 2;
                bool ok = false;
                for (NodeId ch : net.children(v)) ok = ok || net.parents(ch).size() == 1;
                tc = tc && ok;
            }
            if (in >= 2) {
                r += in - 1;
                bin = bin && in == 2;
                rr = rr || net.parents(net.children(v)[0]).size() >= 2;
            }
        }
        CHECK(c.is_semi_binary == semi);
        CHECK(c.is_binary == (semi && bin));
        CHECK(c.is_stack_free == !rr);
        CHECK(c.is_tree_child == (tc && !rr));
        CHECK(c.reticulation_number == r);
        CHECK((!c.is_binary || c.is_semi_binary));
        CHECK((!c.is_tree_child || c.is_stack_free));
    }
}

TEST_CASE("validation names the offending node") {
    Network net;
    NodeId r = net.add_node(), a = net.add_node(), b = net.add_node(), x = net.add_leaf("x");
    net.set_root(r);
    net.add_edge(r, a);
    net.add_edge(a, b);
    net.add_edge(b, a);
    net.add_edge(a, x);
    net.add_edge(b, x);
    CHECK_THROWS_AS(classify(net), ValidationError);

    Network sink;
    NodeId s = sink.add_node(), t = sink.add_node(), u = sink.add_node(), l = sink.add_leaf("l");
    sink.set_root(s);
    sink.add_edge(s, t);
    sink.add_edge(t, u);
    sink.add_edge(t, l);
    try {
        sink.validate();
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("#" + std::to_string(u)) != std::string::npos);
        CHECK(std::string(e.what()).find("unlabeled sink") != std::string::npos);
    }
}

TEST_CASE("find_rp_2nd") {
    Network worked = from_edges(fixtures::kWorkedNetwork);
    CHECK(as_set(find_rp_2nd(worked, "1")) == std::set<std::pair<std::string, std::string>>{{"2", "1"}});
    CHECK(find_rp_2nd(Network::single_leaf("a"), "a").empty());
    CHECK_THROWS_AS(find_rp_2nd(worked, "zz"), DomainError);

    Network smallest = from_edges(fixtures::kSmallestNetwork);
    for (const Taxon& x : smallest.taxa()) {
        auto expected = brute_pairs(smallest);
        std::erase_if(expected, [&](const auto& p) { return p.second != x; });
        CHECK(as_set(find_rp_2nd(smallest, x)) == expected);
    }
    CHECK(as_set(find_rp_2nd(smallest, "2")) == std::set<std::pair<std::string, std::string>>{{"1", "2"}});
}

TEST_CASE("find_rc_1st") {
    Network counter = from_edges(fixtures::kCounterNetwork);
    CHECK(as_set(find_rc_1st(counter, "2")) == std::set<std::pair<std::string, std::string>>{{"2", "3"}});
    CHECK(as_set(find_rc_1st(counter, "6")) == std::set<std::pair<std::string, std::string>>{{"6", "5"}});
    Network tree = from_edges(fixtures::kCounterTree);
    for (const Taxon& x : tree.taxa()) CHECK(find_rc_1st(tree, x).empty());
    CHECK_THROWS_AS(find_rc_1st(tree, "9"), DomainError);
}

TEST_CASE("find_rc_1st and find_rp_2nd match the brute-force predicate on random networks") {
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        Network net = random_network(rng);
        auto all = brute_pairs(net);
        for (const Taxon& x : net.taxa()) {
            auto second = all, first = all;
            std::erase_if(second, [&](const auto& p) { return p.second != x; });
            std::erase_if(first, [&](const auto& p) {
                if (p.first != x) return true;
                return pair_kind(net, Pair(p.first, p.second)) != PairKind::ReticulatedCherry;
            });
            CHECK(as_set(find_rp_2nd(net, x)) == second);
            CHECK(as_set(find_rc_1st(net, x)) == first);
        }
    }
}

TEST_CASE("reduce_pair on the worked network") {
    Network net = from_edges(fixtures::kWorkedNetwork);
    CHECK(reduce_pair(net, Pair("2", "1")) == PairKind::ReticulatedCherry);
    net.validate();
    CHECK(labeled_iso(net, from_edges(fixtures::kWorkedAfterFirst)));
    CHECK(classify(net).reticulation_number == 1);
    CHECK(net.leaf_count() == 4);
}

TEST_CASE("non-reducible pair leaves the network identical") {
    Network net = from_edges(fixtures::kWorkedNetwork);
    Network before = net;
    CHECK(reduce_pair(net, Pair("4", "1")) == PairKind::None);
    CHECK(reduce_pair(net, Pair("9", "1")) == PairKind::None);
    CHECK(net.node_count() == before.node_count());
    CHECK(net.edge_count() == before.edge_count());
    for (NodeId v : before.nodes()) {
        CHECK(net.alive(v));
        CHECK(std::equal(net.children(v).begin(), net.children(v).end(), before.children(v).begin(),
                         before.children(v).end()));
        CHECK(std::equal(net.parents(v).begin(), net.parents(v).end(), before.parents(v).begin(),
                         before.parents(v).end()));
    }
}

TEST_CASE("cherry reduction in a multifurcation keeps the parent") {
    Network star = from_edges("r p\np 1\np 2\np 3\n");
    NodeId p = star.parents(star.leaf("2"))[0];
    CHECK(reduce_pair(star, Pair("1", "2")) == PairKind::Cherry);
    CHECK(star.alive(p));
    CHECK(star.outdegree(p) == 2);
    CHECK(star.parents(star.leaf("3"))[0] == p);
}

TEST_CASE("reticulated cherry reduction removes one parallel edge") {
    // t has two parallel edges into h, plus leaf y.
    Network net = from_edges("r t\nt h 2\nt y\nh x\n");
    CHECK(pair_kind(net, Pair("x", "y")) == PairKind::ReticulatedCherry);
    reduce_pair(net, Pair("x", "y"));
    net.validate();
    // h is suppressed, t keeps x and y.
    CHECK(net.parents(net.leaf("x"))[0] == net.parents(net.leaf("y"))[0]);
    CHECK(net.node_count() == 4);
}

TEST_CASE("suppression that duplicates an edge raises its multiplicity") {
    // Reducing (x,y) suppresses the tree node above y, whose other child h
    // already has t as a parent.
    Network net = from_edges("r t\nt h\nt s\ns h\ns y\nh z\n");
    net.set_label(net.add_leaf("x"), "x");
    NodeId s = net.parents(net.leaf("y"))[0];
    net.add_edge(s, net.leaf("x"));
    NodeId t = net.parents(s)[0];
    NodeId h = net.parents(net.leaf("z"))[0];
    CHECK(reduce_pair(net, Pair("x", "y")) == PairKind::Cherry);
    CHECK(net.multiplicity(t, h) == 1);
    CHECK(reduce_pair(net, Pair("z", "y")) == PairKind::ReticulatedCherry);
    net.validate();
    (void)h;
}

TEST_CASE("all_reducible_pairs") {
    Network counter = from_edges(fixtures::kCounterNetwork);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& tp : all_reducible_pairs(counter)) {
        got.emplace(tp.pair.first, tp.pair.second);
        CHECK(tp.kind == PairKind::ReticulatedCherry);
    }
    CHECK(got == std::set<std::pair<std::string, std::string>>{{"2", "3"}, {"6", "5"}});

    Network cherry = from_edges("r p\np 1\np 2\n");
    got.clear();
    for (const auto& tp : all_reducible_pairs(cherry)) {
        got.emplace(tp.pair.first, tp.pair.second);
        CHECK(tp.kind == PairKind::Cherry);
    }
    CHECK(got == std::set<std::pair<std::string, std::string>>{{"1", "2"}, {"2", "1"}});
}

TEST_CASE("reduction properties on random networks") {
    Rng rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        Network net = random_network(rng);
        auto before_list = all_reducible_pairs(net);
        std::set<std::pair<std::string, std::string>> before;
        for (const auto& tp : before_list) before.emplace(tp.pair.first, tp.pair.second);
        CHECK(before == brute_pairs(net));
        if (before_list.empty()) continue;

        const Pair p = before_list[rng.below(before_list.size())].pair;
        bool semi = classify(net).is_semi_binary;
        bool tree_child = classify(net).is_tree_child;
        std::size_t nodes = net.node_count(), edges = net.edge_count();
        Network reduced = net;
        reduce_pair(reduced, p);
        reduced.validate();
        CHECK(reduced.node_count() + reduced.edge_count() < nodes + edges);
        if (tree_child) CHECK(classify(reduced).is_tree_child);

        std::set<std::pair<std::string, std::string>> after;
        for (const auto& tp : all_reducible_pairs(reduced)) after.emplace(tp.pair.first, tp.pair.second);
        for (const auto& q : after)
            if (!before.count(q)) {
                bool touches = q.first == p.first || q.first == p.second || q.second == p.first ||
                               q.second == p.second;
                CHECK(touches);
            }
        if (semi)
            for (const auto& q : before)
                if (!after.count(q)) {
                    bool expected = (q.first == p.first && q.second == p.second) ||
                                    (q.first == p.second && q.second == p.first);
                    CHECK(expected);
                }
    }
}
