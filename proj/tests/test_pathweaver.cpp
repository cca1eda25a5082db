#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "jalign/path_family.hpp"
#include "jalign/rng.hpp"

using namespace jalign;

namespace {

QueryGraph complete_graph(int n, int k, std::uint64_t seed) {
    const Assignment truth = Assignment::uniform_random(n, k, seed);
    return build_query_graph(truth, SimplePlusMinus{0.0}, static_cast<long long>(n) * (n - 1) / 2,
                             seed + 1);
}

// Build a graph from explicit noiseless edges via the text format.
QueryGraph graph_from_edges(int n, int k, const std::vector<std::pair<int, int>>& edges) {
    std::ostringstream text;
    text << n << ' ' << k << ' ' << edges.size() << " 0\n";
    for (const auto& [u, v] : edges) text << u << ' ' << v << " 0\n";
    std::istringstream in(text.str());
    return load_query_graph(in);
}

}  // namespace

TEST_CASE("grow_tree") {
    SUBCASE("first level capped at b1") {
        const QueryGraph g = complete_graph(8, 2, 1);
        std::vector<char> used(8, 0);
        Rng rng(5);
        const Tree t = grow_tree(0, g, 1, 3, 2, used, rng);
        REQUIRE(t.leaves.size() == 3);
        std::set<int> children;
        for (int leaf : t.leaves) {
            const TreeNode& node = t.nodes[static_cast<std::size_t>(leaf)];
            CHECK(node.depth == 1);
            CHECK(g.has_edge(0, node.vertex));
            children.insert(node.vertex);
        }
        CHECK(children.size() == 3);  // all distinct
    }
    SUBCASE("depth-2 tree arithmetic on a complete graph") {
        const QueryGraph g = complete_graph(50, 2, 2);
        std::vector<char> used(50, 0);
        Rng rng(6);
        const Tree t = grow_tree(7, g, 2, 2, 2, used, rng);
        CHECK(t.nodes.size() == 7);   // root + 2 + 4
        CHECK(t.leaves.size() == 4);  // all at depth 2
        std::set<int> vertices;
        for (const TreeNode& node : t.nodes) vertices.insert(node.vertex);
        CHECK(vertices.size() == 7);  // no repeats
    }
    SUBCASE("starved root yields a leafless tree") {
        const QueryGraph g = complete_graph(6, 2, 3);
        std::vector<char> used(6, 0);
        for (const auto& [nbr, edge] : g.neighbors(0)) used[static_cast<std::size_t>(nbr)] = 1;
        Rng rng(7);
        const Tree t = grow_tree(0, g, 1, 4, 4, used, rng);
        CHECK(t.empty());
        CHECK(t.nodes.size() == 1);
    }
}

TEST_CASE("almost_edge_disjoint_paths") {
    SUBCASE("forced topology: the unique path x-z-y") {
        // Path graph 0-1-2; bare-root trees, subtrees carry depth 1.
        const QueryGraph g = graph_from_edges(3, 2, {{0, 1}, {1, 2}});
        const RecoveryParams params = RecoveryParams::tuned(1, 0.3, 1, 1, 2);
        const PathFamily fam = almost_edge_disjoint_paths(0, 2, g, params, 9);
        REQUIRE(fam.size() == 1);
        CHECK(fam.paths[0].vertices == std::vector<int>{0, 1, 2});
        CHECK(validate_family(fam, g).pass);
    }
    SUBCASE("debug dump is one path per line") {
        const QueryGraph g = graph_from_edges(3, 2, {{0, 1}, {1, 2}});
        const RecoveryParams params = RecoveryParams::tuned(1, 0.3, 1, 1, 2);
        const PathFamily fam = almost_edge_disjoint_paths(0, 2, g, params, 9);
        std::ostringstream out;
        dump_paths(fam, out);
        CHECK(out.str() == "0 1 2\n");
    }
    SUBCASE("disconnected endpoints yield the explicit no-paths result") {
        const QueryGraph g = graph_from_edges(4, 2, {{0, 1}, {2, 3}});
        const RecoveryParams params = RecoveryParams::tuned(1, 0.3, 2, 2, 2);
        const PathFamily fam = almost_edge_disjoint_paths(0, 2, g, params, 9);
        CHECK(fam.no_paths_found());
        CHECK(fam.size() == 0);
    }
    SUBCASE("x == y throws") {
        const QueryGraph g = complete_graph(10, 2, 4);
        const RecoveryParams params = RecoveryParams::tuned(2, 0.45, 2, 2, 45);
        CHECK_THROWS_AS(almost_edge_disjoint_paths(3, 3, g, params, 1), std::invalid_argument);
    }
    SUBCASE("depth-1 trees on a complete graph validate") {
        const QueryGraph g = complete_graph(30, 3, 5);
        const RecoveryParams params = RecoveryParams::tuned(2, 0.45, 2, 2, 435);
        const PathFamily fam = almost_edge_disjoint_paths(0, 1, g, params, 11);
        CHECK(fam.size() >= 1);
        const FamilyReport report = validate_family(fam, g);
        for (const FamilyCheck& c : report.checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.pass);
        }
    }
    SUBCASE("nominal fan-out is achieved when nothing is scarce") {
        // complete graph, depth-2 root trees: N = b1 * b leaves, all linked
        const QueryGraph g = complete_graph(200, 2, 6);
        const RecoveryParams params = RecoveryParams::tuned(4, 0.45, 3, 2, 100);
        REQUIRE(params.root_depth() == 2);
        REQUIRE(params.total_depth() == 4);
        const PathFamily fam = almost_edge_disjoint_paths(0, 1, g, params, 13);
        CHECK(fam.size() == 6);  // b1 * b^(root_depth-1)
        CHECK(validate_family(fam, g).pass);
    }
    SUBCASE("determinism: identical inputs give identical families") {
        const QueryGraph g = complete_graph(40, 3, 7);
        const RecoveryParams params = RecoveryParams::tuned(3, 0.25, 4, 3, 780);
        const PathFamily a = almost_edge_disjoint_paths(2, 9, g, params, 21);
        const PathFamily b = almost_edge_disjoint_paths(2, 9, g, params, 21);
        REQUIRE(a.size() == b.size());
        for (int i = 0; i < a.size(); ++i) CHECK(a.paths[i].vertices == b.paths[i].vertices);
        const PathFamily c = almost_edge_disjoint_paths(2, 9, g, params, 22);
        bool same = a.size() == c.size();
        if (same) {
            for (int i = 0; i < a.size(); ++i) same = same && a.paths[i].vertices == c.paths[i].vertices;
        }
        CHECK_FALSE(same);
    }
}

TEST_CASE("validator catches constructed families and named faults") {
    const QueryGraph g = complete_graph(60, 2, 8);
    const RecoveryParams params = RecoveryParams::tuned(3, 0.25, 4, 3, 1770);

    SUBCASE("constructor output passes across seeds") {
        Rng rng(33);
        for (int rep = 0; rep < 25; ++rep) {
            const int x = static_cast<int>(rng.uniform_index(60));
            int y = static_cast<int>(rng.uniform_index(59));
            if (y >= x) ++y;
            const PathFamily fam = almost_edge_disjoint_paths(x, y, g, params, rng.next_u64());
            CHECK(validate_family(fam, g).pass);
        }
    }
    SUBCASE("duplicated below-leaf edge fails the disjointness check and names the edge") {
        PathFamily fam = almost_edge_disjoint_paths(0, 1, g, params, 55);
        REQUIRE(fam.size() >= 2);
        fam.paths[1] = fam.paths[0];  // clone: below-leaf edges now collide
        const FamilyReport report = validate_family(fam, g);
        CHECK_FALSE(report.pass);
        const FamilyCheck* check = report.find("below-leaf-edge-disjoint");
        REQUIRE(check != nullptr);
        CHECK_FALSE(check->pass);
        CHECK(check->detail.find("below-leaf edge") != std::string::npos);
    }
    SUBCASE("overlapping root trees fail the vertex-disjointness check") {
        PathFamily fam = almost_edge_disjoint_paths(0, 1, g, params, 56);
        REQUIRE(fam.tree_x.nodes.size() >= 2);
        REQUIRE(fam.tree_y.nodes.size() >= 2);
        fam.tree_y.nodes[1].vertex = fam.tree_x.nodes[1].vertex;
        const FamilyReport report = validate_family(fam, g);
        CHECK_FALSE(report.pass);
        const FamilyCheck* check = report.find("tree-vertex-disjoint");
        REQUIRE(check != nullptr);
        CHECK_FALSE(check->pass);
        // the other checks stay green
        CHECK(report.find("endpoints")->pass);
        CHECK(report.find("below-leaf-edge-disjoint")->pass);
    }
    SUBCASE("length bound violations are reported") {
        PathFamily fam = almost_edge_disjoint_paths(0, 1, g, params, 57);
        REQUIRE(fam.size() >= 1);
        fam.path_length_scale = 1;
        fam.epsilon = 0.01;  // bound shrinks below any real path length
        const FamilyReport report = validate_family(fam, g);
        const FamilyCheck* check = report.find("length-bound");
        REQUIRE(check != nullptr);
        CHECK_FALSE(check->pass);
    }
}

TEST_CASE("paths never exceed the length bound and stay inside the graph") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 30 + static_cast<int>(rng.uniform_index(80));
        const long long max_pairs = static_cast<long long>(n) * (n - 1) / 2;
        const long long m = std::max<long long>(n, static_cast<long long>(rng.uniform_index(
                                                       static_cast<std::uint64_t>(max_pairs))));
        const Assignment truth = Assignment::uniform_random(n, 3, rng.next_u64());
        const QueryGraph g = build_query_graph(truth, SimplePlusMinus{0.2}, m, rng.next_u64());
        const RecoveryParams params = RecoveryParams::tuned(3, 0.25, 4, 3, m);
        const int x = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        int y = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
        if (y >= x) ++y;
        const PathFamily fam = almost_edge_disjoint_paths(x, y, g, params, rng.next_u64());
        const FamilyReport report = validate_family(fam, g);
        for (const FamilyCheck& c : report.checks) {
            INFO("n=", n, " m=", m, " check ", c.name, ": ", c.detail);
            CHECK(c.pass);
        }
    }
}
