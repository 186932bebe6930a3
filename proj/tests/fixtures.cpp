#include "fixtures.hpp"

#include <algorithm>

#include "cherry/io.hpp"

namespace fixtures {

Network from_edges(const std::string& text) { return cherry::parse_network(text).net; }

const char* const kWorkedNetwork = R"(
rt n0
n0 n5
n0 n8
n5 n6
n5 n7
n6 1
n6 n9
n9 2
n7 n9
n7 n10
n10 3
n8 n10
n8 4
)";

Sequence worked_sequence() { return {{"2", "1"}, {"3", "2"}, {"3", "4"}, {"2", "1"}, {"1", "4"}}; }

const char* const kWorkedAfterFirst = R"(
rt n0
n0 n5
n0 n8
n5 1
n5 n7
n7 2
n7 n10
n10 3
n8 n10
n8 4
)";

const char* const kSmallestNetwork = R"(
rt n0
n0 n6
n0 n8
n6 n7
n6 n10
n7 1
n7 2
n10 3
n8 n9
n8 5
n9 4
n9 n10
)";

const char* const kCounterNetwork = R"(
rt n0
n0 n8
n0 n16
n8 n9
n8 n11
n9 1
n9 n10
n10 n15
n10 n13
n15 2
n13 n14
n14 n15
n14 3
n11 4
n11 n12
n12 n13
n12 n18
n18 n19
n19 n20
n19 5
n20 6
n16 n17
n16 7
n17 n18
n17 n20
)";

const char* const kCounterTree = R"(
rt n0
n0 n8
n0 n11
n8 n9
n8 4
n9 1
n9 n10
n10 2
n10 3
n11 n12
n11 7
n12 5
n12 6
)";

const char* const kReductionBig = R"(
rt n0
n0 n5
n0 n6
n5 n8
n5 n7
n8 1
n8 2
n6 n7
n6 n9
n7 n10
n9 n10
n9 4
n10 3
)";

const char* const kReductionSmall = R"(
rt n0
n0 n5
n0 n6
n5 1
n5 nR
n6 nR
n6 n7
n7 nR
n7 4
nR 3
)";

Sequence reduction_sequence() { return {{"2", "1"}, {"3", "4"}, {"3", "1"}, {"3", "4"}, {"1", "4"}}; }

const char* const kStarHost = R"(
rt n0
n0 n5 2
n0 n6 2
n0 4
n5 n7
n6 n8
n7 1
n7 n9
n8 n9
n8 3
n9 2
)";

const char* const kStarTree = R"(
rt n0
n0 1
n0 2
n0 3
n0 4
)";

Sequence class_sequence() { return {{"3", "2"}, {"1", "2"}, {"3", "2"}, {"3", "4"}, {"2", "4"}}; }

const std::array<const char*, 8> kClassNetworks = {
    // (1a,2a)
    "rt n0\nn0 n5\nn0 n6\nn5 n7\nn5 n8\nn6 n8\nn6 4\nn7 1\nn7 n9\nn8 n10\nn9 n10\nn9 2\nn10 3\n",
    // (1a,2b)
    "rt n0\nn0 n5\nn0 n6\nn5 n7\nn5 n10\nn6 n10\nn6 4\nn7 1\nn7 n9\nn9 n10\nn9 2\nn10 3\n",
    // (1a,2c)
    "rt n0\nn0 n7\nn0 n6\nn0 n8\nn6 n8\nn6 4\nn7 1\nn8 n10\nn7 n10\nn7 2\nn10 3\n",
    // (1a,2d)
    "rt n0\nn0 n7\nn0 n6\nn0 n10\nn6 n10\nn6 4\nn7 1\nn7 n10\nn7 2\nn10 3\n",
    // (1b,2a)
    "rt n0\nn0 n5\nn5 n8\nn0 n8\nn0 4\nn5 1\nn5 n9\nn8 n10\nn9 n10\nn9 2\nn10 3\n",
    // (1b,2b)
    "rt n0\nn0 n5\nn5 n10\nn0 n10\nn0 4\nn5 1\nn5 n9\nn9 n10\nn9 2\nn10 3\n",
    // (1b,2c)
    "rt n0\nn0 n8 2\nn0 4\nn0 1\nn8 n10\nn0 n10\nn0 2\nn10 3\n",
    // (1b,2d)
    "rt n0\nn0 n10 3\nn0 4\nn0 1\nn0 2\nn10 3\n",
};

const char* const kSharedA = R"(
rt n0
n0 1
n0 n4
n0 n5
n4 n6
n5 n4
n5 n6
n5 3
n6 2
)";

const char* const kSharedB = R"(
rt n0
n0 n4
n0 n5
n0 n6
n0 3
n4 1
n4 n5
n5 n6
n6 2
)";

Sequence shared_sequence() { return {{"2", "3"}, {"2", "1"}, {"2", "3"}, {"1", "3"}}; }

const char* const kNonUniqueNetwork = R"(
rt nu
nu na
nu n5
na n3
na w
n5 z
n5 n6
n6 n3
n6 y
n3 x
)";

Network shuffled_copy(const Network& net, cherry::Rng& rng) {
    std::vector<cherry::NodeId> order = net.nodes();
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    Network out;
    std::vector<cherry::NodeId> id(net.id_bound(), cherry::kNoNode);
    for (cherry::NodeId v : order) id[v] = net.labeled(v) ? out.add_leaf(net.label(v)) : out.add_node();
    for (cherry::NodeId u : order)
        for (cherry::NodeId c : net.children(u)) out.add_edge(id[u], id[c]);
    out.set_root(id[net.root()]);
    return out;
}

Sequence random_cps(std::size_t n, std::size_t r, cherry::Rng& rng) {
    std::vector<cherry::Pair> rev{cherry::Pair("2", "1")};
    std::size_t have = 2, left = n - 2, retics = r;
    while (left + retics > 0) {
        std::size_t first;
        if (rng.chance(left, left + retics)) {
            first = ++have;
            --left;
        } else {
            first = 1 + rng.below(have);
            --retics;
        }
        std::size_t second = 1 + rng.below(have - 1);
        if (second >= first) ++second;
        rev.emplace_back(std::to_string(first), std::to_string(second));
    }
    std::reverse(rev.begin(), rev.end());
    return Sequence(std::move(rev));
}

Network random_class_network(cherry::CpnClass c, std::size_t max_n, std::size_t max_r, cherry::Rng& rng) {
    std::size_t n = 2 + rng.below(max_n - 1);
    std::size_t r = rng.below(max_r + 1);
    return cherry::build_from_cps(random_cps(n, r, rng), c);
}

bool naive_is_reducible(const Network& net, const std::string& x, const std::string& y) {
    cherry::NodeId vx = cherry::kNoNode, vy = cherry::kNoNode;
    for (cherry::NodeId v : net.nodes()) {
        if (!net.labeled(v)) continue;
        if (net.label(v) == x) vx = v;
        if (net.label(v) == y) vy = v;
    }
    if (vx == cherry::kNoNode || vy == cherry::kNoNode) return false;
    cherry::NodeId px = net.parents(vx)[0], py = net.parents(vy)[0];
    if (px == py) return true;
    bool px_retic = net.parents(px).size() >= 2 && net.children(px).size() == 1;
    bool py_tree = py != net.root() && net.parents(py).size() == 1 && net.children(py).size() >= 2;
    bool linked = std::count(net.children(py).begin(), net.children(py).end(), px) > 0;
    return px_retic && py_tree && linked;
}

} // namespace fixtures
