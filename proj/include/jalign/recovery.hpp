#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jalign/assignment.hpp"
#include "jalign/path_family.hpp"
#include "jalign/query_graph.hpp"
#include "jalign/recovery_params.hpp"

namespace jalign {

// Sum of oriented answers along the path, mod k. Traversing an edge against
// its stored orientation negates the answer; that is what makes the sum
// telescope to g(first) - g(last) in the noiseless case. Throws when two
// consecutive vertices were never queried as a pair.
int path_difference(const std::vector<int>& path, const QueryGraph& graph);

// k=2 view of the same quantity: +1 when the path reports "same side",
// -1 otherwise. Product of per-edge signs. Throws unless graph.k() == 2.
int path_sign_product(const std::vector<int>& path, const QueryGraph& graph);

// Winner with maximal multiplicity; ties break toward the smallest value and
// set the flag. Throws on an empty list.
std::pair<int, bool> plurality_vote(const std::vector<int>& values, int k);

struct PairEstimate {
    int x = -1;
    int y = -1;
    bool resolved = false;  // false when the path construction found no paths
    int value = 0;          // estimate of (g(x) - g(y)) mod k, valid when resolved
    std::vector<long long> votes;
    int n_paths = 0;
    bool tie = false;
};

// Builds the path family for (x, y) and takes the plurality vote of the
// per-path differences. An unresolved pair is a value, not an error.
PairEstimate estimate_pair(int x, int y, const QueryGraph& graph, const RecoveryParams& params,
                           std::uint64_t seed);

struct RecoveryDiagnostics {
    long long unresolved = 0;  // pair estimates with no paths
    long long ties = 0;
    long long consistency_violations = 0;  // all-pairs mode only
    long long pairs_evaluated = 0;
    std::vector<int> unresolved_items;     // items whose anchor estimate failed
};

struct RecoveryResult {
    Assignment assignment;
    RecoveryDiagnostics diagnostics;
};

// Assembles labels from the anchor column: g(i) = estimate(i, anchor 0).
// All-pairs mode evaluates every pair and counts violations of
// estimate(x,y) = g(x) - g(y) mod k, but assembles identically, so both
// modes return the same assignment for the same seed. Unresolved anchor
// items get label 0 and are flagged. Output is canonicalized.
//
// Per-pair seeds derive from `seed` keyed by the unordered pair, so the
// evaluation order cannot change any estimate.
RecoveryResult recover_assignment(const QueryGraph& graph, const RecoveryParams& params,
                                  std::uint64_t seed);

struct BaselineResult {
    Assignment assignment;
    std::vector<int> unreached;  // items outside item 0's component, labeled 0
};

// Single-path baseline: random BFS spanning tree from item 0, each label the
// oriented answer-sum along its unique tree path. Exact when q = 0; degrades
// quickly under noise.
BaselineResult spanning_tree_baseline(const QueryGraph& graph, std::uint64_t seed);

// Text format: header "k n mode", one "item label" line per item, then a
// diagnostics block.
void save_recovery(const RecoveryResult& r, AnchorMode mode, std::ostream& out);
void save_recovery(const RecoveryResult& r, AnchorMode mode, const std::string& path);

}  // namespace jalign
