#pragma once

#include <cstdint>
#include <string>

namespace jalign {

enum class AnchorMode { SingleAnchor, AllPairs };
enum class ParamMode { Paper, Tuned };

std::string to_string(AnchorMode m);
AnchorMode anchor_mode_from_string(const std::string& s);

// Knobs of the path-vote recovery pipeline.
//
//   L        path length scale
//   epsilon  depth split: root trees grow to depth round(eps*L), leaf
//            subtrees extend total depth from the root to round((1/2+eps)*L)
//   b1       branching cap for the first level of the root trees
//   b        branching cap everywhere else
//   m        query budget used when building the graph
//
// Paper mode computes everything from (n, delta) with the asymptotic
// formulas; it refuses to produce parameters that are infeasible at the given
// n rather than silently capping them. Tuned mode takes all five knobs
// verbatim.
struct RecoveryParams {
    int path_length_scale = 0;      // L
    double epsilon = 0.0;
    int first_level_branching = 0;  // b1
    int branching = 0;              // b
    long long num_queries = 0;      // m
    AnchorMode anchor = AnchorMode::SingleAnchor;
    ParamMode mode = ParamMode::Tuned;

    static RecoveryParams tuned(int L, double epsilon, int b1, int b, long long m,
                                AnchorMode anchor = AnchorMode::SingleAnchor);
    // L = round(ln n / ln ln n), epsilon = 1/sqrt(ln ln n),
    // b1 = ceil(4 ln n / delta^L), b = ceil(4 ln n), m = ceil(20 n ln n / delta^L).
    static RecoveryParams paper(int n, double delta,
                                AnchorMode anchor = AnchorMode::SingleAnchor);

    // Depth of the root trees: round(eps * L). May be 0, in which case the
    // "trees" are the bare endpoints and only leaf subtrees grow.
    int root_depth() const;
    // Total depth reached by the leaf subtrees, measured from the root.
    int total_depth() const;
    // Every constructed path has at most this many edges.
    double path_length_bound() const;  // (1 + 2 eps) L + 2
};

}  // namespace jalign
