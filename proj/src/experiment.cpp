#include "jalign/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "jalign/assignment.hpp"
#include "jalign/query_graph.hpp"
#include "jalign/recovery.hpp"
#include "jalign/rng.hpp"

namespace jalign {

namespace {

using nlohmann::json;

constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kRecoveryStream = 2;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

NoiseModel noise_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "simple") return SimplePlusMinus{j.at("q").get<double>()};
    if (type == "biased") return BiasedTowardZero{j.at("delta").get<double>()};
    if (type == "general") return GeneralIID{j.at("q_vec").get<std::vector<double>>()};
    throw std::invalid_argument("unknown noise type: " + type);
}

json noise_to_json(const NoiseModel& model) {
    if (const auto* s = std::get_if<SimplePlusMinus>(&model)) return {{"type", "simple"}, {"q", s->q}};
    if (const auto* b = std::get_if<BiasedTowardZero>(&model))
        return {{"type", "biased"}, {"delta", b->delta}};
    return {{"type", "general"}, {"q_vec", std::get<GeneralIID>(model).q_vec}};
}

}  // namespace

long long QueryBudget::resolve(int n) const {
    const long long max_pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (count.has_value() == scale.has_value())
        throw std::invalid_argument("QueryBudget: set exactly one of count and scale");
    if (count) return *count;
    const auto m = static_cast<long long>(std::ceil(*scale * n * std::log(static_cast<double>(n))));
    return std::min(m, max_pairs);
}

RecoveryParams ParamSpec::bind(int n, long long num_queries) const {
    if (mode == ParamMode::Paper) {
        RecoveryParams p = RecoveryParams::paper(n, delta, anchor);
        return p;
    }
    return RecoveryParams::tuned(L, epsilon, b1, b, num_queries, anchor);
}

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j = json::parse(in);

    ExperimentSpec spec;
    spec.n = j.value("n", spec.n);
    spec.k = j.value("k", spec.k);
    if (j.contains("noise")) spec.noise = noise_from_json(j.at("noise"));
    if (j.contains("queries")) {
        const json& q = j.at("queries");
        spec.queries = {};
        if (q.contains("count")) spec.queries.count = q.at("count").get<long long>();
        if (q.contains("scale")) spec.queries.scale = q.at("scale").get<double>();
    }
    if (j.contains("params")) {
        const json& p = j.at("params");
        const std::string mode = p.value("mode", "tuned");
        spec.params.mode = mode == "paper" ? ParamMode::Paper : ParamMode::Tuned;
        spec.params.L = p.value("L", spec.params.L);
        spec.params.epsilon = p.value("epsilon", spec.params.epsilon);
        spec.params.b1 = p.value("b1", spec.params.b1);
        spec.params.b = p.value("b", spec.params.b);
        spec.params.delta = p.value("delta", spec.params.delta);
        spec.params.anchor = anchor_mode_from_string(p.value("anchor", std::string("single-anchor")));
    }
    spec.trials = j.value("trials", spec.trials);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        if (s.contains("n")) spec.sweep_n = s.at("n").get<std::vector<int>>();
        if (s.contains("k")) spec.sweep_k = s.at("k").get<std::vector<int>>();
        if (s.contains("q")) spec.sweep_q = s.at("q").get<std::vector<double>>();
        for (const char* axis : {"n", "k", "q"}) {
            if (s.contains(axis) && s.at(axis).empty())
                throw std::invalid_argument(std::string("ExperimentSpec: sweep axis '") + axis +
                                            "' must be non-empty when present");
        }
    }
    if (spec.trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    return spec;
}

std::string ExperimentSpec::resolved_json() const {
    json j;
    j["n"] = n;
    j["k"] = k;
    j["noise"] = noise_to_json(noise);
    json q;
    if (queries.count) q["count"] = *queries.count;
    if (queries.scale) q["scale"] = *queries.scale;
    j["queries"] = q;
    json p;
    p["mode"] = params.mode == ParamMode::Paper ? "paper" : "tuned";
    if (params.mode == ParamMode::Paper) {
        p["delta"] = params.delta;
    } else {
        p["L"] = params.L;
        p["epsilon"] = params.epsilon;
        p["b1"] = params.b1;
        p["b"] = params.b;
    }
    p["anchor"] = to_string(params.anchor);
    j["params"] = p;
    j["trials"] = trials;
    j["seed"] = seed;
    if (!sweep_n.empty()) j["sweep"]["n"] = sweep_n;
    if (!sweep_k.empty()) j["sweep"]["k"] = sweep_k;
    if (!sweep_q.empty()) j["sweep"]["q"] = sweep_q;
    return j.dump();
}

std::vector<SweepPoint> expand_sweep(const ExperimentSpec& spec) {
    const std::vector<int> ns = spec.sweep_n.empty() ? std::vector<int>{spec.n} : spec.sweep_n;
    const std::vector<int> ks = spec.sweep_k.empty() ? std::vector<int>{spec.k} : spec.sweep_k;
    std::vector<NoiseModel> noises;
    if (spec.sweep_q.empty()) {
        noises.push_back(spec.noise);
    } else {
        if (!std::holds_alternative<SimplePlusMinus>(spec.noise))
            throw std::invalid_argument("sweep over q requires the simple noise model");
        for (double q : spec.sweep_q) noises.push_back(SimplePlusMinus{q});
    }

    std::vector<SweepPoint> points;
    int index = 0;
    for (int n : ns) {
        for (int k : ks) {
            for (const NoiseModel& noise : noises) {
                SweepPoint pt;
                pt.index = index++;
                pt.n = n;
                pt.k = k;
                pt.noise = noise;
                pt.num_queries = spec.queries.resolve(n);
                pt.params = spec.params.bind(n, pt.num_queries);
                pt.num_queries = pt.params.num_queries;  // paper mode computes its own budget
                points.push_back(std::move(pt));
            }
        }
    }
    return points;
}

std::vector<PointAggregate> run_experiment(const ExperimentSpec& spec,
                                           const std::function<void(const TrialResult&)>& emit) {
    const std::vector<SweepPoint> points = expand_sweep(spec);
    std::vector<TrialResult> rows;
    rows.reserve(points.size() * static_cast<std::size_t>(spec.trials));

    for (const SweepPoint& pt : points) {
        const std::uint64_t point_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(pt.index));
        for (int trial = 0; trial < spec.trials; ++trial) {
            const std::uint64_t trial_seed = derive_seed(point_seed, static_cast<std::uint64_t>(trial));
            const auto start = std::chrono::steady_clock::now();

            const Assignment truth =
                Assignment::uniform_random(pt.n, pt.k, derive_seed(trial_seed, kTruthStream));
            const QueryGraph graph =
                build_query_graph(truth, pt.noise, pt.num_queries, derive_seed(trial_seed, kGraphStream));
            const RecoveryResult rec =
                recover_assignment(graph, pt.params, derive_seed(trial_seed, kRecoveryStream));

            const auto stop = std::chrono::steady_clock::now();

            TrialResult row;
            row.point_index = pt.index;
            row.trial = trial;
            row.n = pt.n;
            row.k = pt.k;
            row.noise_desc = describe(pt.noise);
            row.num_queries = pt.num_queries;
            row.params = pt.params;
            row.trial_seed = trial_seed;
            row.error_rate = offset_error_rate(rec.assignment, truth);
            row.exact_recovery = row.error_rate == 0.0;
            row.unresolved = rec.diagnostics.unresolved;
            row.ties = rec.diagnostics.ties;
            row.queries_used = graph.queries_used();
            row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            emit(row);
            rows.push_back(std::move(row));
        }
    }
    return aggregate_trials(rows);
}

std::vector<PointAggregate> aggregate_trials(const std::vector<TrialResult>& rows) {
    std::vector<PointAggregate> aggs;
    for (const TrialResult& row : rows) {
        if (aggs.empty() || aggs.back().point_index != row.point_index) {
            aggs.push_back({});
            aggs.back().point_index = row.point_index;
        }
        PointAggregate& a = aggs.back();
        ++a.trials;
        a.mean_error += row.error_rate;
        a.exact_count += row.exact_recovery ? 1 : 0;
        a.mean_unresolved += static_cast<double>(row.unresolved);
        a.mean_wall_ms += row.wall_ms;
    }
    for (PointAggregate& a : aggs) {
        a.mean_error /= a.trials;
        a.mean_unresolved /= a.trials;
        a.mean_wall_ms /= a.trials;
    }
    // second pass for the standard deviation, same arithmetic order every time
    std::size_t row_idx = 0;
    for (PointAggregate& a : aggs) {
        double ss = 0.0;
        for (int t = 0; t < a.trials; ++t, ++row_idx) {
            const double d = rows[row_idx].error_rate - a.mean_error;
            ss += d * d;
        }
        a.stddev_error = a.trials > 1 ? std::sqrt(ss / (a.trials - 1)) : 0.0;
    }
    return aggs;
}

double even_corruption_monte_carlo(double q, int path_length, long long trials, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 0.5)) throw std::invalid_argument("even_corruption_monte_carlo: q must lie in [0, 1/2]");
    if (path_length < 1) throw std::invalid_argument("even_corruption_monte_carlo: path length must be >= 1");
    Rng rng(seed);
    long long even = 0;
    for (long long t = 0; t < trials; ++t) {
        int flips = 0;
        for (int e = 0; e < path_length; ++e) {
            if (rng.uniform_double() < q) ++flips;
        }
        if (flips % 2 == 0) ++even;
    }
    return static_cast<double>(even) / static_cast<double>(trials);
}

void write_csv_header(std::ostream& out, const ExperimentSpec& spec) {
    out << "# config " << spec.resolved_json() << '\n';
    out << "# seed " << spec.seed << '\n';
    out << "point,trial,n,k,noise,m,L,epsilon,b1,b,anchor,trial_seed,error_rate,exact,"
           "unresolved,ties,queries_used,wall_ms\n";
}

void write_csv_row(std::ostream& out, const TrialResult& r) {
    out << r.point_index << ',' << r.trial << ',' << r.n << ',' << r.k << ',' << r.noise_desc << ','
        << r.num_queries << ',' << r.params.path_length_scale << ',' << fmt_double(r.params.epsilon)
        << ',' << r.params.first_level_branching << ',' << r.params.branching << ','
        << to_string(r.params.anchor) << ',' << r.trial_seed << ',' << fmt_double(r.error_rate) << ','
        << (r.exact_recovery ? 1 : 0) << ',' << r.unresolved << ',' << r.ties << ',' << r.queries_used
        << ',' << fmt_double(r.wall_ms) << '\n';
}

std::string summary_json(const ExperimentSpec& spec, const std::vector<PointAggregate>& aggregates) {
    json j;
    j["config"] = json::parse(spec.resolved_json());
    json pts = json::array();
    for (const PointAggregate& a : aggregates) {
        pts.push_back({{"point", a.point_index},
                       {"trials", a.trials},
                       {"mean_error", a.mean_error},
                       {"stddev_error", a.stddev_error},
                       {"exact_count", a.exact_count},
                       {"mean_unresolved", a.mean_unresolved},
                       {"mean_wall_ms", a.mean_wall_ms}});
    }
    j["points"] = pts;
    return j.dump(2);
}

}  // namespace jalign
