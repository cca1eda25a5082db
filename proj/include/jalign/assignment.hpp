#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jalign {

// Hidden (or recovered) labeling g: items -> {0..k-1}. Two assignments that
// differ by a constant additive shift mod k are indistinguishable from
// pairwise differences, so comparisons go through offset_error_rate() and
// files store the canonicalized form where convenient.
class Assignment {
public:
    Assignment(int k, std::vector<int> labels);

    int k() const { return k_; }
    int n() const { return static_cast<int>(labels_.size()); }
    int label(int item) const { return labels_[static_cast<std::size_t>(item)]; }
    const std::vector<int>& labels() const { return labels_; }

    bool operator==(const Assignment& other) const = default;

    // Uniform labels, deterministic in the seed.
    static Assignment uniform_random(int n, int k, std::uint64_t seed);

private:
    int k_;
    std::vector<int> labels_;
};

// Shifts all labels so that item 0 gets label 0. Idempotent.
Assignment canonicalize(const Assignment& a);

// min over offsets c of the fraction of items with estimate(i) != truth(i)+c
// mod k. Zero iff the assignments agree up to a global offset. Throws on
// n or k mismatch.
double offset_error_rate(const Assignment& estimate, const Assignment& truth);

// Text format: header "k n", then one label per line.
void save_assignment(const Assignment& a, std::ostream& out);
void save_assignment(const Assignment& a, const std::string& path);
Assignment load_assignment(std::istream& in);
Assignment load_assignment(const std::string& path);

}  // namespace jalign
