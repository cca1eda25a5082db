#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jalign/noise_model.hpp"
#include "jalign/recovery_params.hpp"

namespace jalign {

// Query budget recipe: either an absolute count or a multiple of n ln n,
// capped at n(n-1)/2.
struct QueryBudget {
    std::optional<long long> count;
    std::optional<double> scale;  // m = ceil(scale * n * ln n)

    long long resolve(int n) const;
};

// Recovery knobs before they are bound to a concrete n (paper mode needs n).
struct ParamSpec {
    ParamMode mode = ParamMode::Tuned;
    // tuned fields
    int L = 3;
    double epsilon = 0.25;
    int b1 = 16;
    int b = 8;
    // paper mode field
    double delta = 0.5;
    AnchorMode anchor = AnchorMode::SingleAnchor;

    RecoveryParams bind(int n, long long num_queries) const;
};

// One Monte Carlo campaign: scalar fields, optionally overridden by sweep
// axes (cartesian product, n outer, k middle, q inner; q applies to the
// simple model only).
struct ExperimentSpec {
    int n = 100;
    int k = 2;
    NoiseModel noise = SimplePlusMinus{0.1};
    QueryBudget queries{.count = std::nullopt, .scale = 8.0};
    ParamSpec params;
    int trials = 1;
    std::uint64_t seed = 1;

    std::vector<int> sweep_n;
    std::vector<int> sweep_k;
    std::vector<double> sweep_q;

    static ExperimentSpec from_json_file(const std::string& path);
    std::string resolved_json() const;  // config echo embedded in outputs
};

// A fully resolved sweep point.
struct SweepPoint {
    int index = 0;
    int n = 0;
    int k = 0;
    NoiseModel noise;
    long long num_queries = 0;
    RecoveryParams params;
};

struct TrialResult {
    int point_index = 0;
    int trial = 0;
    int n = 0;
    int k = 0;
    std::string noise_desc;
    long long num_queries = 0;
    RecoveryParams params;
    std::uint64_t trial_seed = 0;
    double error_rate = 0.0;
    bool exact_recovery = false;  // always equal to (error_rate == 0)
    long long unresolved = 0;
    long long ties = 0;
    long long queries_used = 0;
    double wall_ms = 0.0;
};

struct PointAggregate {
    int point_index = 0;
    int trials = 0;
    double mean_error = 0.0;
    double stddev_error = 0.0;
    int exact_count = 0;
    double mean_unresolved = 0.0;
    double mean_wall_ms = 0.0;
};

std::vector<SweepPoint> expand_sweep(const ExperimentSpec& spec);

// Runs every (sweep point, trial) pair: generate truth, build the query
// graph, recover, score. Rows are emitted through the callback in
// (point, trial) order as they finish. Seed discipline:
//   trial_seed = derive(derive(master, point_index), trial)
// and within a trial the truth/graph/recovery streams are children 0/1/2
// of trial_seed.
std::vector<PointAggregate> run_experiment(const ExperimentSpec& spec,
                                           const std::function<void(const TrialResult&)>& emit);

// Aggregation used by run_experiment, exposed so callers can recompute it
// from collected rows and compare exactly.
std::vector<PointAggregate> aggregate_trials(const std::vector<TrialResult>& rows);

// Fraction of `trials` fresh L-edge paths carrying an even number of
// corrupted edges under flip probability q; the analytical value is
// (1 + (1-2q)^L) / 2.
double even_corruption_monte_carlo(double q, int path_length, long long trials,
                                   std::uint64_t seed);

// CSV emission: comment header with the resolved config, then one row per
// trial. Doubles are printed with enough digits to round-trip.
void write_csv_header(std::ostream& out, const ExperimentSpec& spec);
void write_csv_row(std::ostream& out, const TrialResult& row);
std::string summary_json(const ExperimentSpec& spec, const std::vector<PointAggregate>& aggregates);

}  // namespace jalign
