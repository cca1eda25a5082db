#include "jalign/path_family.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "jalign/rng.hpp"

namespace jalign {

namespace {

// Eligible neighbors of `vertex`, sampled uniformly without replacement up to
// `cap` and marked in `used`. Scan order is the sorted adjacency list, so the
// draw sequence is fixed by the rng state alone.
std::vector<int> sample_children(const QueryGraph& graph, int vertex, int cap,
                                 std::vector<char>& used, Rng& rng) {
    std::vector<int> eligible;
    for (const auto& [nbr, edge] : graph.neighbors(vertex)) {
        if (!used[static_cast<std::size_t>(nbr)]) eligible.push_back(nbr);
    }
    const int take = std::min<int>(cap, static_cast<int>(eligible.size()));
    for (int i = 0; i < take; ++i) {
        const auto j = i + static_cast<int>(rng.uniform_index(eligible.size() - static_cast<std::size_t>(i)));
        std::swap(eligible[static_cast<std::size_t>(i)], eligible[static_cast<std::size_t>(j)]);
        used[static_cast<std::size_t>(eligible[static_cast<std::size_t>(i)])] = 1;
    }
    eligible.resize(static_cast<std::size_t>(take));
    return eligible;
}

// Two BFS trees grown level by level in lockstep. At every expansion the two
// sides keep min(|children_x|, |children_y|) children each, so the trees stay
// isomorphic under the match-by-construction-order map; surplus children are
// released back to the pool.
struct PairedTrees {
    Tree tx, ty;
    // matched leaf pairs as (node index in tx, node index in ty)
    std::vector<std::pair<int, int>> leaf_pairs;
};

PairedTrees grow_paired_trees(int x, int y, const QueryGraph& graph, int depth, int b1, int b,
                              std::vector<char>& used, Rng& rng) {
    PairedTrees out;
    out.tx.requested_depth = depth;
    out.ty.requested_depth = depth;
    used[static_cast<std::size_t>(x)] = 1;
    used[static_cast<std::size_t>(y)] = 1;
    out.tx.nodes.push_back({x, -1, 0});
    out.ty.nodes.push_back({y, -1, 0});

    std::vector<std::pair<int, int>> frontier = {{0, 0}};
    for (int level = 1; level <= depth && !frontier.empty(); ++level) {
        const int cap = level == 1 ? b1 : b;
        std::vector<std::pair<int, int>> next;
        for (const auto& [ux, uy] : frontier) {
            std::vector<int> cx = sample_children(graph, out.tx.nodes[static_cast<std::size_t>(ux)].vertex,
                                                  cap, used, rng);
            std::vector<int> cy = sample_children(graph, out.ty.nodes[static_cast<std::size_t>(uy)].vertex,
                                                  cap, used, rng);
            const int keep = std::min<int>(static_cast<int>(cx.size()), static_cast<int>(cy.size()));
            for (int j = keep; j < static_cast<int>(cx.size()); ++j)
                used[static_cast<std::size_t>(cx[static_cast<std::size_t>(j)])] = 0;
            for (int j = keep; j < static_cast<int>(cy.size()); ++j)
                used[static_cast<std::size_t>(cy[static_cast<std::size_t>(j)])] = 0;
            for (int j = 0; j < keep; ++j) {
                out.tx.nodes.push_back({cx[static_cast<std::size_t>(j)], ux, level});
                out.ty.nodes.push_back({cy[static_cast<std::size_t>(j)], uy, level});
                next.emplace_back(static_cast<int>(out.tx.nodes.size()) - 1,
                                  static_cast<int>(out.ty.nodes.size()) - 1);
            }
        }
        frontier = std::move(next);
    }
    for (const auto& [ix, iy] : frontier) {
        if (out.tx.nodes[static_cast<std::size_t>(ix)].depth == depth) {
            out.tx.leaves.push_back(ix);
            out.ty.leaves.push_back(iy);
            out.leaf_pairs.emplace_back(ix, iy);
        }
    }
    return out;
}

}  // namespace

std::vector<int> Tree::vertices_to_root(int node_index) const {
    std::vector<int> path;
    for (int i = node_index; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
        path.push_back(nodes[static_cast<std::size_t>(i)].vertex);
    return path;
}

std::vector<int> Tree::vertex_set() const {
    std::vector<int> vs;
    vs.reserve(nodes.size());
    for (const TreeNode& node : nodes) vs.push_back(node.vertex);
    return vs;
}

Tree grow_tree(int root, const QueryGraph& graph, int depth, int b1, int b,
               std::vector<char>& used, Rng& rng) {
    if (depth < 0) throw std::invalid_argument("grow_tree: depth must be >= 0");
    if (b1 < 1 || b < 1) throw std::invalid_argument("grow_tree: branching caps must be >= 1");
    Tree tree;
    tree.requested_depth = depth;
    used[static_cast<std::size_t>(root)] = 1;
    tree.nodes.push_back({root, -1, 0});
    std::vector<int> frontier = {0};
    for (int level = 1; level <= depth && !frontier.empty(); ++level) {
        const int cap = level == 1 ? b1 : b;
        std::vector<int> next;
        for (int u : frontier) {
            const std::vector<int> kids =
                sample_children(graph, tree.nodes[static_cast<std::size_t>(u)].vertex, cap, used, rng);
            for (int v : kids) {
                tree.nodes.push_back({v, u, level});
                next.push_back(static_cast<int>(tree.nodes.size()) - 1);
            }
        }
        frontier = std::move(next);
    }
    for (int idx : frontier) {
        if (tree.nodes[static_cast<std::size_t>(idx)].depth == depth) tree.leaves.push_back(idx);
    }
    return tree;
}

PathFamily almost_edge_disjoint_paths(int x, int y, const QueryGraph& graph,
                                      const RecoveryParams& params, std::uint64_t seed) {
    if (x == y) throw std::invalid_argument("almost_edge_disjoint_paths: x and y must differ");
    const int n = graph.n();
    const int root_depth = params.root_depth();
    const int sub_depth = params.total_depth() - root_depth;

    PathFamily family;
    family.x = x;
    family.y = y;
    family.path_length_scale = params.path_length_scale;
    family.epsilon = params.epsilon;

    Rng rng(seed);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    PairedTrees trees = grow_paired_trees(x, y, graph, root_depth, params.first_level_branching,
                                          params.branching, used, rng);
    family.tree_x = trees.tx;
    family.tree_y = trees.ty;
    if (trees.leaf_pairs.empty()) return family;  // no paths found

    const int num_pairs = static_cast<int>(trees.leaf_pairs.size());

    // Leaf subtrees, grown greedily in leaf order within the shared vertex
    // pool. owner[v] encodes (leaf pair, side) for every subtree vertex so a
    // single pass over the edge list can find all linking edges.
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    std::vector<Tree> subs_x, subs_y;
    subs_x.reserve(static_cast<std::size_t>(num_pairs));
    subs_y.reserve(static_cast<std::size_t>(num_pairs));
    for (int i = 0; i < num_pairs; ++i) {
        const auto [lx, ly] = trees.leaf_pairs[static_cast<std::size_t>(i)];
        const int vx = trees.tx.nodes[static_cast<std::size_t>(lx)].vertex;
        const int vy = trees.ty.nodes[static_cast<std::size_t>(ly)].vertex;
        subs_x.push_back(grow_tree(vx, graph, sub_depth, params.branching, params.branching, used, rng));
        subs_y.push_back(grow_tree(vy, graph, sub_depth, params.branching, params.branching, used, rng));
        for (const TreeNode& node : subs_x.back().nodes)
            owner[static_cast<std::size_t>(node.vertex)] = 2 * i;
        for (const TreeNode& node : subs_y.back().nodes)
            owner[static_cast<std::size_t>(node.vertex)] = 2 * i + 1;
    }

    // Lowest-index edge joining the two subtrees of each leaf pair. Edges are
    // scanned in canonical order, so the first hit per pair is the minimum.
    std::vector<int> link_edge(static_cast<std::size_t>(num_pairs), -1);
    const auto& edges = graph.edges();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const int ou = owner[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].u)];
        const int ov = owner[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].v)];
        if (ou < 0 || ov < 0 || (ou >> 1) != (ov >> 1) || ou == ov) continue;
        if (link_edge[static_cast<std::size_t>(ou >> 1)] < 0)
            link_edge[static_cast<std::size_t>(ou >> 1)] = e;
    }

    for (int i = 0; i < num_pairs; ++i) {
        const int e = link_edge[static_cast<std::size_t>(i)];
        if (e < 0) continue;
        const QueryEdge& link = edges[static_cast<std::size_t>(e)];
        const bool u_on_x_side = owner[static_cast<std::size_t>(link.u)] % 2 == 0;
        const int ax = u_on_x_side ? link.u : link.v;  // endpoint inside the x-side subtree
        const int by = u_on_x_side ? link.v : link.u;

        const Tree& sx = subs_x[static_cast<std::size_t>(i)];
        const Tree& sy = subs_y[static_cast<std::size_t>(i)];
        const auto node_of = [](const Tree& t, int vertex) {
            for (int idx = 0; idx < static_cast<int>(t.nodes.size()); ++idx)
                if (t.nodes[static_cast<std::size_t>(idx)].vertex == vertex) return idx;
            throw std::logic_error("almost_edge_disjoint_paths: link endpoint not in subtree");
        };

        FamilyPath path;
        // x down to the matched leaf x_i
        std::vector<int> seg = family.tree_x.vertices_to_root(trees.leaf_pairs[static_cast<std::size_t>(i)].first);
        std::reverse(seg.begin(), seg.end());
        path.vertices = std::move(seg);
        path.leaf_x_pos = static_cast<int>(path.vertices.size()) - 1;
        // x_i down to the link endpoint (skip the subtree root, already present)
        seg = sx.vertices_to_root(node_of(sx, ax));
        std::reverse(seg.begin(), seg.end());
        path.vertices.insert(path.vertices.end(), seg.begin() + 1, seg.end());
        // across the link and up to y_i
        seg = sy.vertices_to_root(node_of(sy, by));
        path.vertices.insert(path.vertices.end(), seg.begin(), seg.end());
        path.leaf_y_pos = static_cast<int>(path.vertices.size()) - 1;
        // y_i up to y (skip the leaf, already present)
        seg = family.tree_y.vertices_to_root(trees.leaf_pairs[static_cast<std::size_t>(i)].second);
        path.vertices.insert(path.vertices.end(), seg.begin() + 1, seg.end());

        family.paths.push_back(std::move(path));
    }
    return family;
}

const FamilyCheck* FamilyReport::find(const std::string& name) const {
    for (const FamilyCheck& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

FamilyReport validate_family(const PathFamily& family, const QueryGraph& graph) {
    FamilyReport report;
    const auto add = [&report](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
        report.pass = report.pass && pass;
    };
    std::ostringstream detail;

    bool endpoints_ok = true;
    for (std::size_t i = 0; i < family.paths.size() && endpoints_ok; ++i) {
        const auto& vs = family.paths[i].vertices;
        if (vs.size() < 2 || vs.front() != family.x || vs.back() != family.y) {
            endpoints_ok = false;
            detail << "path " << i << " does not run from x to y";
        }
    }
    add("endpoints", endpoints_ok, detail.str());
    detail.str("");

    bool edges_ok = true;
    for (std::size_t i = 0; i < family.paths.size() && edges_ok; ++i) {
        const auto& vs = family.paths[i].vertices;
        for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
            if (!graph.has_edge(vs[j], vs[j + 1])) {
                edges_ok = false;
                detail << "path " << i << " uses non-edge (" << vs[j] << ", " << vs[j + 1] << ")";
                break;
            }
        }
    }
    add("edges-exist", edges_ok, detail.str());
    detail.str("");

    bool simple_ok = true;
    for (std::size_t i = 0; i < family.paths.size() && simple_ok; ++i) {
        std::unordered_set<int> seen;
        for (int v : family.paths[i].vertices) {
            if (!seen.insert(v).second) {
                simple_ok = false;
                detail << "path " << i << " repeats vertex " << v;
                break;
            }
        }
    }
    add("simple-paths", simple_ok, detail.str());
    detail.str("");

    bool leaf_ok = true;
    for (std::size_t i = 0; i < family.paths.size() && leaf_ok; ++i) {
        const FamilyPath& p = family.paths[i];
        const int len = static_cast<int>(p.vertices.size());
        if (p.leaf_x_pos < 0 || p.leaf_y_pos >= len || p.leaf_x_pos > p.leaf_y_pos) {
            leaf_ok = false;
            detail << "path " << i << " has inconsistent leaf anchors";
        }
    }
    add("leaf-anchors", leaf_ok, detail.str());
    detail.str("");

    bool trees_ok = true;
    {
        std::unordered_set<int> in_x;
        for (int v : family.tree_x.vertex_set()) in_x.insert(v);
        for (int v : family.tree_y.vertex_set()) {
            if (in_x.count(v)) {
                trees_ok = false;
                detail << "vertex " << v << " appears in both root trees";
                break;
            }
        }
    }
    add("tree-vertex-disjoint", trees_ok, detail.str());
    detail.str("");

    bool disjoint_ok = true;
    if (leaf_ok) {
        std::unordered_set<std::uint64_t> below_leaf_edges;
        const auto key = [&graph](int a, int b) {
            return static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(graph.n()) +
                   static_cast<std::uint64_t>(std::max(a, b));
        };
        for (std::size_t i = 0; i < family.paths.size() && disjoint_ok; ++i) {
            const FamilyPath& p = family.paths[i];
            for (int j = p.leaf_x_pos; j < p.leaf_y_pos; ++j) {
                const int a = p.vertices[static_cast<std::size_t>(j)];
                const int b = p.vertices[static_cast<std::size_t>(j + 1)];
                if (!below_leaf_edges.insert(key(a, b)).second) {
                    disjoint_ok = false;
                    detail << "below-leaf edge (" << a << ", " << b << ") shared by path " << i
                           << " and an earlier path";
                    break;
                }
            }
        }
    }
    add("below-leaf-edge-disjoint", disjoint_ok, detail.str());
    detail.str("");

    bool length_ok = true;
    const double bound = (1.0 + 2.0 * family.epsilon) * family.path_length_scale + 2.0;
    for (std::size_t i = 0; i < family.paths.size() && length_ok; ++i) {
        const double len = static_cast<double>(family.paths[i].vertices.size()) - 1.0;
        if (len > bound + 1e-9) {
            length_ok = false;
            detail << "path " << i << " has length " << len << " above bound " << bound;
        }
    }
    add("length-bound", length_ok, detail.str());

    return report;
}

void dump_paths(const PathFamily& family, std::ostream& out) {
    for (const FamilyPath& p : family.paths) {
        for (std::size_t i = 0; i < p.vertices.size(); ++i) {
            if (i > 0) out << ' ';
            out << p.vertices[i];
        }
        out << '\n';
    }
}

}  // namespace jalign
