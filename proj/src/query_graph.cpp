#include "jalign/query_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "jalign/rng.hpp"

namespace jalign {

namespace {

std::uint64_t pair_key(int n, int u, int v) {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(v);
}

// Number of canonical pairs (u', v') with u' < u.
long long pair_offset(int n, int u) {
    return static_cast<long long>(u) * (n - 1) - static_cast<long long>(u) * (u - 1) / 2;
}

// Inverse of the row-major pair enumeration: index -> (u, v), u < v.
std::pair<int, int> decode_pair(int n, long long index) {
    int lo = 0, hi = n - 1;  // find largest u with pair_offset(u) <= index
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (pair_offset(n, mid) <= index) lo = mid;
        else hi = mid - 1;
    }
    const int u = lo;
    const int v = u + 1 + static_cast<int>(index - pair_offset(n, u));
    return {u, v};
}

}  // namespace

QueryGraph::QueryGraph(int n, int k, std::uint64_t seed, std::vector<QueryEdge> edges)
    : n_(n), k_(k), seed_(seed), edges_(std::move(edges)) {
    if (n_ < 2 || k_ < 2) throw std::invalid_argument("QueryGraph: need n >= 2 and k >= 2");
    std::sort(edges_.begin(), edges_.end(),
              [](const QueryEdge& a, const QueryEdge& b) {
                  return a.u != b.u ? a.u < b.u : a.v < b.v;
              });
    adj_.resize(static_cast<std::size_t>(n_));
    std::vector<int> degree(static_cast<std::size_t>(n_), 0);
    for (const QueryEdge& e : edges_) {
        if (e.u >= 0 && e.u < n_) ++degree[static_cast<std::size_t>(e.u)];
        if (e.v >= 0 && e.v < n_) ++degree[static_cast<std::size_t>(e.v)];
    }
    for (int v = 0; v < n_; ++v) adj_[static_cast<std::size_t>(v)].reserve(degree[static_cast<std::size_t>(v)]);
    index_.reserve(edges_.size() * 2);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const QueryEdge& e = edges_[static_cast<std::size_t>(i)];
        if (e.u == e.v) throw std::invalid_argument("QueryGraph: self-loop");
        if (e.u > e.v || e.u < 0 || e.v >= n_)
            throw std::invalid_argument("QueryGraph: edge endpoints out of range or not canonical");
        if (e.answer < 0 || e.answer >= k_)
            throw std::invalid_argument("QueryGraph: answer out of [0, k)");
        if (!index_.emplace(pair_key(n_, e.u, e.v), i).second)
            throw std::invalid_argument("QueryGraph: duplicate pair");
        adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, i);
        adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, i);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int QueryGraph::edge_index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
    const auto it = index_.find(pair_key(n_, std::min(u, v), std::max(u, v)));
    return it == index_.end() ? -1 : it->second;
}

int QueryGraph::answer_oriented(int u, int v) const {
    const int idx = edge_index(u, v);
    if (idx < 0) throw std::out_of_range("QueryGraph: pair was never queried");
    const int y = edges_[static_cast<std::size_t>(idx)].answer;
    return u < v ? y : (k_ - y) % k_;
}

int sample_answer(int u, int v, const Assignment& truth, const NoiseModel& model, Rng& rng) {
    if (u == v) throw std::invalid_argument("sample_answer: u and v must differ");
    const int k = truth.k();
    const int eta = sample_error(model, k, rng);
    return ((truth.label(u) - truth.label(v) + eta) % k + k) % k;
}

QueryGraph build_query_graph(const Assignment& truth, const NoiseModel& model,
                             long long num_queries, std::uint64_t seed) {
    const int n = truth.n();
    const int k = truth.k();
    const long long max_pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (num_queries < 0 || num_queries > max_pairs)
        throw std::invalid_argument("build_query_graph: num_queries exceeds n(n-1)/2");
    error_probs(model, k);  // validate the model against k up front

    // Floyd's algorithm: a uniform m-subset of pair indices.
    Rng pair_rng(derive_seed(seed, 0));
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<std::size_t>(num_queries) * 2);
    for (long long j = max_pairs - num_queries; j < max_pairs; ++j) {
        const long long t =
            static_cast<long long>(pair_rng.uniform_index(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<long long> indices(chosen.begin(), chosen.end());
    std::sort(indices.begin(), indices.end());

    const std::vector<double> probs = error_probs(model, k);
    std::vector<QueryEdge> edges;
    edges.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto [u, v] = decode_pair(n, indices[i]);
        SplitMix64 edge_rng(derive_seed(seed, 1 + static_cast<std::uint64_t>(i)));
        const int eta = error_from_uniform(probs, edge_rng.uniform_double());
        edges.push_back({u, v, ((truth.label(u) - truth.label(v) + eta) % k + k) % k});
    }
    return QueryGraph(n, k, seed, std::move(edges));
}

DegreeReport min_degree_check(const QueryGraph& graph, int threshold) {
    DegreeReport report;
    report.threshold = threshold;
    for (int v = 0; v < graph.n(); ++v) {
        if (graph.degree(v) < threshold) report.failing.push_back(v);
    }
    report.pass = report.failing.empty();
    return report;
}

void save_query_graph(const QueryGraph& g, std::ostream& out) {
    out << g.n() << ' ' << g.k() << ' ' << g.queries_used() << ' ' << g.seed() << '\n';
    for (const QueryEdge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.answer << '\n';
}

void save_query_graph(const QueryGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_query_graph: cannot open " + path);
    save_query_graph(g, out);
}

QueryGraph load_query_graph(std::istream& in) {
    int n = 0, k = 0;
    long long m = 0;
    std::uint64_t seed = 0;
    if (!(in >> n >> k >> m >> seed)) throw std::runtime_error("load_query_graph: bad header");
    std::vector<QueryEdge> edges(static_cast<std::size_t>(m));
    for (auto& e : edges) {
        if (!(in >> e.u >> e.v >> e.answer))
            throw std::runtime_error("load_query_graph: truncated edge list");
    }
    return QueryGraph(n, k, seed, std::move(edges));
}

QueryGraph load_query_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_query_graph: cannot open " + path);
    return load_query_graph(in);
}

}  // namespace jalign
