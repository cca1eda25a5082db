// Command-line front end: generate ground truth and query graphs, recover
// assignments from graph files, run Monte Carlo experiment sweeps, dump the
// error-walk tables, and re-check the structural invariants of saved files.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jalign/assignment.hpp"
#include "jalign/experiment.hpp"
#include "jalign/noise_model.hpp"
#include "jalign/path_family.hpp"
#include "jalign/query_graph.hpp"
#include "jalign/recovery.hpp"
#include "jalign/rng.hpp"
#include "jalign/walk.hpp"

namespace {

using namespace jalign;

// Streams for deriving the independent sub-seeds of a generate run.
constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kGraphStream = 1;

struct NoiseFlags {
    double q = -1.0;
    double delta = -1.0;
    std::vector<double> q_vec;

    NoiseModel resolve() const {
        const int set = (q >= 0.0) + (delta >= 0.0) + !q_vec.empty();
        if (set > 1) throw CLI::ValidationError("use only one of --q, --delta, --qvec");
        if (delta >= 0.0) return BiasedTowardZero{delta};
        if (!q_vec.empty()) return GeneralIID{q_vec};
        return SimplePlusMinus{q >= 0.0 ? q : 0.0};
    }
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& flags) {
    cmd->add_option("--q", flags.q, "simple +-1 noise level in [0, 1/2]");
    cmd->add_option("--delta", flags.delta, "bias of the biased-toward-zero model");
    cmd->add_option("--qvec", flags.q_vec, "general iid error probabilities (k values)")
        ->delimiter(',');
}

struct ParamFlags {
    std::string mode = "tuned";
    int L = 3;
    double epsilon = 0.25;
    int b1 = 16;
    int b = 8;
    double delta = 0.5;
    bool all_pairs = false;

    ParamSpec resolve() const {
        ParamSpec p;
        p.mode = mode == "paper" ? ParamMode::Paper : ParamMode::Tuned;
        p.L = L;
        p.epsilon = epsilon;
        p.b1 = b1;
        p.b = b;
        p.delta = delta;
        p.anchor = all_pairs ? AnchorMode::AllPairs : AnchorMode::SingleAnchor;
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--mode", flags.mode, "parameter mode: paper or tuned")
        ->check(CLI::IsMember({"paper", "tuned"}));
    cmd->add_option("--L", flags.L, "path length scale");
    cmd->add_option("--epsilon", flags.epsilon, "depth split in (0, 1/2)");
    cmd->add_option("--b1", flags.b1, "first-level branching");
    cmd->add_option("--b", flags.b, "branching");
    cmd->add_option("--pdelta", flags.delta, "bias used by paper-mode formulas");
    cmd->add_flag("--all-pairs", flags.all_pairs, "evaluate every pair, not just the anchor column");
    cmd->add_flag("--anchor", [](std::int64_t) {}, "single-anchor mode (default)");
}

int cmd_generate(int n, int k, const NoiseFlags& noise, std::optional<long long> queries,
                 double query_scale, std::uint64_t seed, const std::string& out) {
    QueryBudget budget;
    if (queries) budget.count = *queries;
    else budget.scale = query_scale;
    const long long m = budget.resolve(n);

    const NoiseModel model = noise.resolve();
    const Assignment truth = Assignment::uniform_random(n, k, derive_seed(seed, kTruthStream));
    const QueryGraph graph = build_query_graph(truth, model, m, derive_seed(seed, kGraphStream));

    save_assignment(truth, out + ".truth.txt");
    save_query_graph(graph, out + ".graph.txt");
    std::cout << "wrote " << out << ".truth.txt and " << out << ".graph.txt (n=" << n << " k=" << k
              << " m=" << m << " noise=" << describe(model) << " seed=" << seed << ")\n";
    return 0;
}

int cmd_recover(const std::string& graph_path, const ParamFlags& params, std::uint64_t seed,
                const std::string& out, const std::string& truth_path) {
    const QueryGraph graph = load_query_graph(graph_path);
    const ParamSpec spec = params.resolve();
    const RecoveryParams rp = spec.bind(graph.n(), graph.queries_used());
    const RecoveryResult result = recover_assignment(graph, rp, seed);
    save_recovery(result, rp.anchor, out);
    std::cout << "wrote " << out << " (unresolved=" << result.diagnostics.unresolved
              << " ties=" << result.diagnostics.ties
              << " violations=" << result.diagnostics.consistency_violations << ")\n";
    if (!truth_path.empty()) {
        const Assignment truth = load_assignment(truth_path);
        std::cout << "offset_error_rate=" << offset_error_rate(result.assignment, truth) << '\n';
    }
    return 0;
}

int cmd_experiment(const ExperimentSpec& spec, const std::string& out) {
    std::ofstream csv(out + ".csv");
    if (!csv) throw std::runtime_error("cannot open " + out + ".csv");
    write_csv_header(csv, spec);
    const auto aggregates = run_experiment(spec, [&csv](const TrialResult& row) {
        write_csv_row(csv, row);
        csv.flush();
    });
    std::ofstream js(out + ".summary.json");
    if (!js) throw std::runtime_error("cannot open " + out + ".summary.json");
    js << summary_json(spec, aggregates) << '\n';
    std::cout << "wrote " << out << ".csv and " << out << ".summary.json\n";
    return 0;
}

int cmd_walk(int k, const NoiseFlags& noise, int tmax, const std::string& out) {
    const NoiseModel model = noise.resolve();
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open " + out);
        os = &file;
    }
    const auto* simple = std::get_if<SimplePlusMinus>(&model);
    const double q_col = simple ? simple->q : std::numeric_limits<double>::quiet_NaN();
    *os << "k,q,t,p00,gap,bound\n";
    for (int t = 1; t <= tmax; ++t) {
        const auto p = t_step_closed_form(k, model, t);
        const PluralityGap g = plurality_gap(k, model, t);
        *os << k << ',' << q_col << ',' << t << ',' << p[0] << ',' << g.gap << ',' << g.bound
            << '\n';
    }
    return 0;
}

int cmd_check(const std::string& graph_path, const std::string& truth_path, int threshold,
              int pairs, const ParamFlags& params, std::uint64_t seed) {
    int failures = 0;
    const auto report = [&failures](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << '\n';
        if (!pass) ++failures;
    };

    const QueryGraph graph = load_query_graph(graph_path);

    {  // serialization round-trip
        std::ostringstream first;
        save_query_graph(graph, first);
        std::istringstream back(first.str());
        const QueryGraph reloaded = load_query_graph(back);
        std::ostringstream second;
        save_query_graph(reloaded, second);
        report("round-trip", first.str() == second.str(), "");
    }
    {  // antisymmetry of oriented reads over every stored edge
        bool ok = true;
        for (const QueryEdge& e : graph.edges()) {
            if ((graph.answer_oriented(e.u, e.v) + graph.answer_oriented(e.v, e.u)) % graph.k() != 0) {
                ok = false;
                break;
            }
        }
        report("antisymmetry", ok, "");
    }
    {
        report("queries-used", graph.queries_used() == static_cast<long long>(graph.edges().size()),
               "");
    }
    if (threshold > 0) {
        const DegreeReport dr = min_degree_check(graph, threshold);
        std::ostringstream detail;
        detail << dr.failing.size() << " vertices below degree " << threshold;
        report("min-degree", dr.pass, detail.str());
    }
    if (!truth_path.empty()) {
        const Assignment truth = load_assignment(truth_path);
        long long mismatches = 0;
        for (const QueryEdge& e : graph.edges()) {
            const int clean = ((truth.label(e.u) - truth.label(e.v)) % graph.k() + graph.k()) % graph.k();
            if (clean != e.answer) ++mismatches;
        }
        std::ostringstream detail;
        detail << mismatches << " of " << graph.queries_used() << " answers differ from the clean value";
        report("noise-rate", true, detail.str());
    }
    {  // path family invariants on sampled pairs
        const ParamSpec spec = params.resolve();
        const RecoveryParams rp = spec.bind(graph.n(), graph.queries_used());
        Rng rng(seed);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < pairs && ok; ++i) {
            const int x = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(graph.n())));
            int y = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(graph.n() - 1)));
            if (y >= x) ++y;
            const PathFamily fam =
                almost_edge_disjoint_paths(x, y, graph, rp, derive_seed(seed, static_cast<std::uint64_t>(i)));
            const FamilyReport fr = validate_family(fam, graph);
            if (!fr.pass) {
                ok = false;
                for (const FamilyCheck& c : fr.checks)
                    if (!c.pass) detail = c.name + " on pair (" + std::to_string(x) + "," +
                                          std::to_string(y) + "): " + c.detail;
            }
        }
        report("path-families", ok, detail);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noisy modulo-k alignment: simulation, recovery, and walk analytics"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write ground truth and a query graph");
    int n = 100, k = 2;
    NoiseFlags gen_noise;
    std::optional<long long> queries;
    double query_scale = 8.0;
    std::uint64_t seed = 1;
    std::string out = "run";
    gen->add_option("--n", n, "number of items")->required();
    gen->add_option("--k", k, "number of groups")->required();
    add_noise_flags(gen, gen_noise);
    gen->add_option("--queries", queries, "absolute query budget");
    gen->add_option("--query-scale", query_scale, "budget = ceil(scale * n * ln n), capped");
    gen->add_option("--seed", seed, "master seed");
    gen->add_option("--out", out, "output prefix")->required();

    // recover
    auto* rec = app.add_subcommand("recover", "recover an assignment from a graph file");
    std::string graph_path, truth_path, rec_out = "recovered.txt";
    ParamFlags rec_params;
    std::uint64_t rec_seed = 1;
    rec->add_option("--graph", graph_path, "query graph file")->required();
    add_param_flags(rec, rec_params);
    rec->add_option("--seed", rec_seed, "recovery seed");
    rec->add_option("--out", rec_out, "output assignment file");
    rec->add_option("--truth", truth_path, "optional truth file; prints the error rate");

    // experiment: JSON config, flag overrides, or both
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo sweep (config file + flag overrides)");
    std::string config, exp_out = "experiment";
    int exp_n = 100, exp_k = 2, exp_trials = 1;
    std::uint64_t exp_seed = 1;
    NoiseFlags exp_noise;
    std::optional<long long> exp_queries;
    double exp_query_scale = 8.0;
    ParamFlags exp_params;
    exp->add_option("--config", config, "JSON experiment config");
    auto* opt_n = exp->add_option("--n", exp_n, "number of items");
    auto* opt_k = exp->add_option("--k", exp_k, "number of groups");
    add_noise_flags(exp, exp_noise);
    auto* opt_queries = exp->add_option("--queries", exp_queries, "absolute query budget");
    auto* opt_scale = exp->add_option("--query-scale", exp_query_scale, "budget = ceil(scale * n * ln n)");
    auto* opt_trials = exp->add_option("--trials", exp_trials, "trials per sweep point");
    auto* opt_seed = exp->add_option("--seed", exp_seed, "master seed");
    add_param_flags(exp, exp_params);
    exp->add_option("--out", exp_out, "output prefix for .csv and .summary.json");

    // walk
    auto* walk = app.add_subcommand("walk", "emit error-walk tables (k, q, t, p00, gap, bound)");
    int walk_k = 3, tmax = 20;
    NoiseFlags walk_noise;
    std::string walk_out;
    walk->add_option("--k", walk_k, "number of groups")->required();
    add_noise_flags(walk, walk_noise);
    walk->add_option("--tmax", tmax, "largest step count");
    walk->add_option("--out", walk_out, "CSV output path (stdout when omitted)");

    // check
    auto* chk = app.add_subcommand("check", "validate a saved graph and its path families");
    std::string chk_graph, chk_truth;
    int threshold = 0, chk_pairs = 20;
    ParamFlags chk_params;
    std::uint64_t chk_seed = 1;
    chk->add_option("--graph", chk_graph, "query graph file")->required();
    chk->add_option("--truth", chk_truth, "optional truth file");
    chk->add_option("--threshold", threshold, "min-degree threshold (0 disables)");
    chk->add_option("--pairs", chk_pairs, "number of sampled pairs to validate");
    add_param_flags(chk, chk_params);
    chk->add_option("--seed", chk_seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(n, k, gen_noise, queries, query_scale, seed, out);
        if (rec->parsed()) return cmd_recover(graph_path, rec_params, rec_seed, rec_out, truth_path);
        if (exp->parsed()) {
            ExperimentSpec spec;
            if (!config.empty()) spec = ExperimentSpec::from_json_file(config);
            if (opt_n->count()) spec.n = exp_n;
            if (opt_k->count()) spec.k = exp_k;
            if (exp_noise.q >= 0.0 || exp_noise.delta >= 0.0 || !exp_noise.q_vec.empty())
                spec.noise = exp_noise.resolve();
            if (opt_queries->count()) spec.queries = {.count = exp_queries, .scale = std::nullopt};
            if (opt_scale->count()) spec.queries = {.count = std::nullopt, .scale = exp_query_scale};
            if (opt_trials->count()) spec.trials = exp_trials;
            if (opt_seed->count()) spec.seed = exp_seed;
            if (exp->count("--mode"))
                spec.params.mode = exp_params.mode == "paper" ? ParamMode::Paper : ParamMode::Tuned;
            if (exp->count("--L")) spec.params.L = exp_params.L;
            if (exp->count("--epsilon")) spec.params.epsilon = exp_params.epsilon;
            if (exp->count("--b1")) spec.params.b1 = exp_params.b1;
            if (exp->count("--b")) spec.params.b = exp_params.b;
            if (exp->count("--pdelta")) spec.params.delta = exp_params.delta;
            if (exp->count("--all-pairs")) spec.params.anchor = AnchorMode::AllPairs;
            if (exp->count("--anchor")) spec.params.anchor = AnchorMode::SingleAnchor;
            return cmd_experiment(spec, exp_out);
        }
        if (walk->parsed()) return cmd_walk(walk_k, walk_noise, tmax, walk_out);
        if (chk->parsed())
            return cmd_check(chk_graph, chk_truth, threshold, chk_pairs, chk_params, chk_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
