#include "jalign/recovery.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "jalign/rng.hpp"

namespace jalign {

namespace {

std::uint64_t pair_stream(int n, int x, int y) {
    const auto lo = static_cast<std::uint64_t>(std::min(x, y));
    const auto hi = static_cast<std::uint64_t>(std::max(x, y));
    return lo * static_cast<std::uint64_t>(n) + hi;
}

}  // namespace

int path_difference(const std::vector<int>& path, const QueryGraph& graph) {
    if (path.size() < 2) throw std::invalid_argument("path_difference: need at least one edge");
    const int k = graph.k();
    int sum = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        sum = (sum + graph.answer_oriented(path[i], path[i + 1])) % k;
    }
    return sum;
}

int path_sign_product(const std::vector<int>& path, const QueryGraph& graph) {
    if (graph.k() != 2) throw std::invalid_argument("path_sign_product: defined only for k = 2");
    int sign = 1;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (graph.answer_oriented(path[i], path[i + 1]) == 1) sign = -sign;
    }
    return sign;
}

std::pair<int, bool> plurality_vote(const std::vector<int>& values, int k) {
    if (values.empty()) throw std::invalid_argument("plurality_vote: empty vote list");
    std::vector<long long> hist(static_cast<std::size_t>(k), 0);
    for (int v : values) {
        if (v < 0 || v >= k) throw std::invalid_argument("plurality_vote: value out of [0, k)");
        ++hist[static_cast<std::size_t>(v)];
    }
    int winner = 0;
    for (int v = 1; v < k; ++v) {
        if (hist[static_cast<std::size_t>(v)] > hist[static_cast<std::size_t>(winner)]) winner = v;
    }
    const bool tie =
        std::count(hist.begin(), hist.end(), hist[static_cast<std::size_t>(winner)]) > 1;
    return {winner, tie};
}

PairEstimate estimate_pair(int x, int y, const QueryGraph& graph, const RecoveryParams& params,
                           std::uint64_t seed) {
    if (x == y) throw std::invalid_argument("estimate_pair: x and y must differ");
    const int k = graph.k();
    PairEstimate est;
    est.x = x;
    est.y = y;
    est.votes.assign(static_cast<std::size_t>(k), 0);

    const PathFamily family = almost_edge_disjoint_paths(x, y, graph, params, seed);
    est.n_paths = family.size();
    if (family.no_paths_found()) return est;  // unresolved

    std::vector<int> values;
    values.reserve(family.paths.size());
    for (const FamilyPath& p : family.paths) values.push_back(path_difference(p.vertices, graph));
    for (int v : values) ++est.votes[static_cast<std::size_t>(v)];
    const auto [winner, tie] = plurality_vote(values, k);
    est.resolved = true;
    est.value = winner;
    est.tie = tie;
    return est;
}

RecoveryResult recover_assignment(const QueryGraph& graph, const RecoveryParams& params,
                                  std::uint64_t seed) {
    const int n = graph.n();
    const int k = graph.k();
    RecoveryDiagnostics diag;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);

    for (int i = 1; i < n; ++i) {
        const PairEstimate est =
            estimate_pair(i, 0, graph, params, derive_seed(seed, pair_stream(n, 0, i)));
        ++diag.pairs_evaluated;
        if (est.tie) ++diag.ties;
        if (!est.resolved) {
            ++diag.unresolved;
            diag.unresolved_items.push_back(i);
            continue;  // label stays 0, flagged above
        }
        labels[static_cast<std::size_t>(i)] = est.value;
    }

    if (params.anchor == AnchorMode::AllPairs) {
        for (int x = 2; x < n; ++x) {
            for (int y = 1; y < x; ++y) {
                const PairEstimate est =
                    estimate_pair(x, y, graph, params, derive_seed(seed, pair_stream(n, y, x)));
                ++diag.pairs_evaluated;
                if (est.tie) ++diag.ties;
                if (!est.resolved) {
                    ++diag.unresolved;
                    continue;
                }
                const int expected =
                    ((labels[static_cast<std::size_t>(x)] - labels[static_cast<std::size_t>(y)]) % k + k) % k;
                if (est.value != expected) ++diag.consistency_violations;
            }
        }
    }

    RecoveryResult result{canonicalize(Assignment(k, std::move(labels))), std::move(diag)};
    return result;
}

BaselineResult spanning_tree_baseline(const QueryGraph& graph, std::uint64_t seed) {
    const int n = graph.n();
    const int k = graph.k();
    Rng rng(seed);
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[0] = 1;
    std::deque<int> queue = {0};
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        std::vector<int> nbrs;
        nbrs.reserve(graph.neighbors(u).size());
        for (const auto& [v, edge] : graph.neighbors(u)) {
            if (!visited[static_cast<std::size_t>(v)]) nbrs.push_back(v);
        }
        // random visit order; keeps distinct seeds honest about tree shape
        for (std::size_t i = 0; i + 1 < nbrs.size(); ++i) {
            const auto j = i + rng.uniform_index(nbrs.size() - i);
            std::swap(nbrs[i], nbrs[j]);
        }
        for (int v : nbrs) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = 1;
            labels[static_cast<std::size_t>(v)] =
                ((labels[static_cast<std::size_t>(u)] - graph.answer_oriented(u, v)) % k + k) % k;
            queue.push_back(v);
        }
    }
    BaselineResult result{canonicalize(Assignment(k, labels)), {}};
    for (int v = 0; v < n; ++v) {
        if (!visited[static_cast<std::size_t>(v)]) result.unreached.push_back(v);
    }
    return result;
}

void save_recovery(const RecoveryResult& r, AnchorMode mode, std::ostream& out) {
    const Assignment& a = r.assignment;
    out << a.k() << ' ' << a.n() << ' ' << to_string(mode) << '\n';
    for (int i = 0; i < a.n(); ++i) out << i << ' ' << a.label(i) << '\n';
    out << "diagnostics\n";
    out << "unresolved " << r.diagnostics.unresolved << '\n';
    out << "ties " << r.diagnostics.ties << '\n';
    out << "consistency_violations " << r.diagnostics.consistency_violations << '\n';
}

void save_recovery(const RecoveryResult& r, AnchorMode mode, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_recovery: cannot open " + path);
    save_recovery(r, mode, out);
}

}  // namespace jalign
