#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jalign/query_graph.hpp"
#include "jalign/recovery_params.hpp"

namespace jalign {

class Rng;

struct TreeNode {
    int vertex = -1;
    int parent = -1;  // index into Tree::nodes; -1 for the root
    int depth = 0;
};

// BFS tree with capped branching. Leaves are the nodes at exactly the
// requested depth; branches that starve earlier contribute none.
struct Tree {
    int requested_depth = 0;
    std::vector<TreeNode> nodes;   // nodes[0] is the root
    std::vector<int> leaves;       // node indices at requested_depth

    int root_vertex() const { return nodes.empty() ? -1 : nodes[0].vertex; }
    bool empty() const { return leaves.empty(); }
    // Vertices from the given node up to and including the root.
    std::vector<int> vertices_to_root(int node_index) const;
    std::vector<int> vertex_set() const;
};

// Grows a BFS tree of depth <= depth from `root`. The first level takes up to
// b1 children, deeper levels up to b, chosen uniformly at random among
// neighbors not marked in `used`. Vertices marked in `used` on entry act as
// forbidden; every grown vertex (including the root) is marked on exit.
Tree grow_tree(int root, const QueryGraph& graph, int depth, int b1, int b,
               std::vector<char>& used, Rng& rng);

struct FamilyPath {
    std::vector<int> vertices;  // starts at x, ends at y
    int leaf_x_pos = 0;         // position of the matched leaf x_i in `vertices`
    int leaf_y_pos = 0;         // position of the matched leaf y_i
};

// Output of the almost-edge-disjoint path construction for one pair (x, y):
// two isomorphic vertex-disjoint root trees plus one linked path per matched
// leaf pair that found a connecting edge. Edges strictly between the matched
// leaves are pairwise disjoint across paths; edges inside the root trees may
// be shared.
struct PathFamily {
    int x = -1;
    int y = -1;
    Tree tree_x;
    Tree tree_y;
    std::vector<FamilyPath> paths;
    // Snapshot of the invocation's depth parameters, for validation.
    int path_length_scale = 0;
    double epsilon = 0.0;

    int size() const { return static_cast<int>(paths.size()); }
    bool no_paths_found() const { return paths.empty(); }
};

// The full construction: grow T_x and T_y in lockstep (keeping them
// isomorphic; deficient branches are dropped symmetrically and their vertices
// released), extend each matched leaf with node-disjoint subtrees, then link
// each leaf pair through the graph edge with the lowest index that joins the
// two subtrees. All stages draw from one stream seeded by `seed`; a single
// used-vertex set spans the whole invocation. Honest failure: leaf pairs with
// no linking edge contribute no path, and a family with zero paths is the
// explicit "no paths found" result.
PathFamily almost_edge_disjoint_paths(int x, int y, const QueryGraph& graph,
                                      const RecoveryParams& params, std::uint64_t seed);

struct FamilyCheck {
    std::string name;
    bool pass = true;
    std::string detail;  // counterexample description on failure
};

struct FamilyReport {
    bool pass = true;
    std::vector<FamilyCheck> checks;

    const FamilyCheck* find(const std::string& name) const;
};

// Mechanized structural invariants: endpoints, edge existence, simple paths,
// vertex-disjoint root trees, pairwise disjointness of the below-leaf edge
// segments, and the (1+2eps)L + 2 length bound.
FamilyReport validate_family(const PathFamily& family, const QueryGraph& graph);

// Debug dump: one path per line as space-separated vertex ids.
void dump_paths(const PathFamily& family, std::ostream& out);

}  // namespace jalign
