#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jalign/assignment.hpp"
#include "jalign/noise_model.hpp"

namespace jalign {

class Rng;

// One queried pair, stored on the canonical orientation u < v.
// answer = (g(u) - g(v) + eta) mod k for the noise draw eta made at build time.
struct QueryEdge {
    int u = 0;
    int v = 0;
    int answer = 0;

    bool operator==(const QueryEdge&) const = default;
};

// The non-adaptive query graph: m distinct unordered pairs, each answered
// exactly once. Answers are stored only on the canonical orientation; reads
// in the reverse direction are computed as the additive inverse mod k, so
// antisymmetry holds structurally. Immutable after construction.
class QueryGraph {
public:
    QueryGraph(int n, int k, std::uint64_t seed, std::vector<QueryEdge> edges);

    int n() const { return n_; }
    int k() const { return k_; }
    std::uint64_t seed() const { return seed_; }
    long long queries_used() const { return static_cast<long long>(edges_.size()); }

    // Sorted by (u, v); the position of an edge in this vector is its index.
    const std::vector<QueryEdge>& edges() const { return edges_; }

    // (neighbor, edge index) pairs, sorted by neighbor id.
    const std::vector<std::pair<int, int>>& neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
    int edge_index(int u, int v) const;  // -1 when the pair was never queried

    // Answer read in the direction u -> v; the stored value when (u, v) is
    // canonical, its inverse mod k otherwise. Throws when the pair is absent.
    int answer_oriented(int u, int v) const;

private:
    int n_;
    int k_;
    std::uint64_t seed_;
    std::vector<QueryEdge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::unordered_map<std::uint64_t, int> index_;
};

// One oracle call: (g(u) - g(v) + eta) mod k with eta drawn once from the
// model. Throws when u == v.
int sample_answer(int u, int v, const Assignment& truth, const NoiseModel& model, Rng& rng);

// Chooses m distinct unordered pairs uniformly at random (Floyd sampling over
// linear pair indices) and answers each one. Stream discipline: the pair
// selection uses child stream 0 of `seed`; edge i's noise draw uses child
// stream 1+i, so construction order cannot change any answer.
QueryGraph build_query_graph(const Assignment& truth, const NoiseModel& model,
                             long long num_queries, std::uint64_t seed);

struct DegreeReport {
    bool pass = true;
    int threshold = 0;
    std::vector<int> failing;  // vertices with degree < threshold
};

// Diagnostic only; never aborts.
DegreeReport min_degree_check(const QueryGraph& graph, int threshold);

// Text format: header "n k m seed", then "u v answer" per edge in index
// order. Round-trips losslessly.
void save_query_graph(const QueryGraph& g, std::ostream& out);
void save_query_graph(const QueryGraph& g, const std::string& path);
QueryGraph load_query_graph(std::istream& in);
QueryGraph load_query_graph(const std::string& path);

}  // namespace jalign
