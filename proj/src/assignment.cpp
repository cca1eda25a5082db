#include "jalign/assignment.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "jalign/rng.hpp"

namespace jalign {

Assignment::Assignment(int k, std::vector<int> labels)
    : k_(k), labels_(std::move(labels)) {
    if (k_ < 2) throw std::invalid_argument("Assignment: k must be >= 2");
    if (labels_.size() < 2) throw std::invalid_argument("Assignment: need n >= 2 items");
    for (int v : labels_) {
        if (v < 0 || v >= k_) throw std::invalid_argument("Assignment: label out of [0, k)");
    }
}

Assignment Assignment::uniform_random(int n, int k, std::uint64_t seed) {
    if (n < 2 || k < 2) throw std::invalid_argument("uniform_random: need n >= 2 and k >= 2");
    Rng rng(seed);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k)));
    return Assignment(k, std::move(labels));
}

Assignment canonicalize(const Assignment& a) {
    const int k = a.k();
    const int shift = a.label(0);
    std::vector<int> labels(a.labels());
    for (auto& l : labels) l = (l - shift + k) % k;
    return Assignment(k, std::move(labels));
}

double offset_error_rate(const Assignment& estimate, const Assignment& truth) {
    if (estimate.n() != truth.n() || estimate.k() != truth.k())
        throw std::invalid_argument("offset_error_rate: dimension mismatch");
    const int k = truth.k();
    const int n = truth.n();
    // Histogram of per-item shifts; the best offset is the most common shift.
    std::vector<long long> hist(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < n; ++i) {
        ++hist[static_cast<std::size_t>((estimate.label(i) - truth.label(i) + k) % k)];
    }
    const long long best = *std::max_element(hist.begin(), hist.end());
    return static_cast<double>(n - best) / static_cast<double>(n);
}

void save_assignment(const Assignment& a, std::ostream& out) {
    out << a.k() << ' ' << a.n() << '\n';
    for (int i = 0; i < a.n(); ++i) out << a.label(i) << '\n';
}

void save_assignment(const Assignment& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_assignment: cannot open " + path);
    save_assignment(a, out);
}

Assignment load_assignment(std::istream& in) {
    int k = 0, n = 0;
    if (!(in >> k >> n)) throw std::runtime_error("load_assignment: bad header");
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) {
        if (!(in >> l)) throw std::runtime_error("load_assignment: truncated label list");
    }
    return Assignment(k, std::move(labels));
}

Assignment load_assignment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_assignment: cannot open " + path);
    return load_assignment(in);
}

}  // namespace jalign
