// decaycent: decay, degree and closeness centrality on small graphs, and the
// Monte-Carlo maximizer study on connected G(n,p) graphs.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "decaycent/centrality.hpp"
#include "decaycent/check.hpp"
#include "decaycent/delta_grid.hpp"
#include "decaycent/graph.hpp"
#include "decaycent/graph_io.hpp"
#include "decaycent/ordering.hpp"
#include "decaycent/report.hpp"
#include "decaycent/simulation.hpp"

namespace fs = std::filesystem;
using namespace decaycent;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kCheckFailed = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key=value lines become "--key value" arguments placed right after the
// subcommand, so flags given on the command line (which come later) win.
std::vector<std::string> config_file_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file " + path);
    }
    std::vector<std::string> args;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ": line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (auto& c : key) {
            if (c == '_') {
                c = '-';
            }
        }
        if (key == "config") {
            throw UsageError(path + ": line " + std::to_string(lineno) + ": nested config files are not supported");
        }
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> config;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) {
            config = args[k + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k) + 2);
            break;
        }
        if (args[k].rfind("--config=", 0) == 0) {
            config = args[k].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        }
    }
    if (!config) {
        return args;
    }
    auto extra = config_file_args(*config);
    std::size_t at = 0;
    while (at < args.size() && args[at].rfind("-", 0) == 0) {
        ++at;
    }
    if (at == args.size()) {
        throw UsageError("--config must follow a subcommand");
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at) + 1, extra.begin(), extra.end());
    return args;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw DataError("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

Graph load_graph(const std::string& path) {
    try {
        return read_graph_file(path);
    } catch (const GraphError& e) {
        throw DataError(path + ": " + e.what());
    }
}

DeltaGrid make_grid(const std::vector<double>& deltas, std::size_t points) {
    try {
        return deltas.empty() ? DeltaGrid::uniform(points) : DeltaGrid(deltas);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

CentralityTable table_for(const Graph& g, const std::string& path) {
    if (g.node_count() < 2) {
        throw DataError(path + ": graph needs at least 2 nodes");
    }
    if (!is_connected(g)) {
        throw DataError(path + ": graph is disconnected");
    }
    return centrality_table(g);
}

struct ComputeArgs {
    std::string graph;
    std::vector<double> deltas;
    std::size_t grid_points = 99;
    std::string format = "csv";
    bool full = false;
    std::string out;
};

int cmd_compute(const ComputeArgs& a) {
    const auto grid = make_grid(a.deltas, a.grid_points);
    const Graph g = load_graph(a.graph);
    const auto table = table_for(g, a.graph);
    std::vector<DistanceProfile> profiles;
    for (const auto& nc : table.nodes) {
        profiles.push_back(nc.profile);
    }
    const auto sets = maximizer_sets(profiles, grid);
    nlohmann::json config = {{"command", "compute"}, {"graph", a.graph}, {"format", a.format}, {"full", a.full}};
    if (a.deltas.empty()) {
        config["grid_points"] = a.grid_points;
    } else {
        std::vector<std::string> ds;
        for (double d : a.deltas) {
            ds.push_back(report::format_real(d));
        }
        config["delta"] = ds;
    }
    Output out(a.out);
    if (a.format == "json") {
        out.stream() << report::table_json(table, grid, sets, a.full, config).dump(2) << '\n';
    } else {
        report::write_table_csv(out.stream(), table, grid, sets, config);
    }
    return kOk;
}

struct CompareArgs {
    std::string graph;
    NodeId i = 0;
    NodeId j = 0;
    std::size_t grid_points = 99;
    std::string out;
};

int cmd_compare(const CompareArgs& a) {
    if (a.i == a.j) {
        throw UsageError("--i and --j must name distinct nodes");
    }
    const auto grid = make_grid({}, a.grid_points);
    const Graph g = load_graph(a.graph);
    for (NodeId v : {a.i, a.j}) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.node_count()) {
            throw DataError("unknown node id " + std::to_string(v) + " (graph has " +
                            std::to_string(g.node_count()) + " nodes)");
        }
    }
    const auto table = table_for(g, a.graph);
    const nlohmann::json config = {
        {"command", "compare"}, {"graph", a.graph}, {"i", a.i}, {"j", a.j}, {"grid_points", a.grid_points}};
    Output out(a.out);
    out.stream() << report::compare_json(table, a.i, a.j, grid, config).dump(2) << '\n';
    return kOk;
}

struct SimulateArgs {
    ExperimentConfig config;
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateArgs& a) {
    try {
        a.config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const fs::path dir(a.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw DataError("cannot create " + a.out_dir + ": " + ec.message());
    }
    const auto grid = DeltaGrid::uniform(a.config.grid_points);
    auto result_config = report::result_config_json(a.config);

    std::ofstream records(dir / "records.csv");
    if (!records) {
        throw DataError("cannot write " + (dir / "records.csv").string());
    }
    report::write_comment_block(records, result_config);
    report::write_records_header(records);
    const auto result = run_experiment(a.config, [&](const TrialRecord& r) {
        report::write_record_rows(records, r, grid);
    });
    records.close();

    std::ofstream aggregate(dir / "aggregate.csv");
    if (!aggregate) {
        throw DataError("cannot write " + (dir / "aggregate.csv").string());
    }
    report::write_comment_block(aggregate, result_config);
    report::write_aggregate_csv(aggregate, result.stats);

    auto run_config = report::experiment_config_json(a.config);
    run_config["command"] = "simulate";
    run_config["out_dir"] = a.out_dir;
    std::ofstream summary(dir / "summary.json");
    if (!summary) {
        throw DataError("cannot write " + (dir / "summary.json").string());
    }
    summary << report::summary_json(a.config, result, run_config).dump(2) << '\n';

    const auto& s = result.stats;
    std::cout << "trials " << s.trials << " failed " << s.failed_trials << " intersect " << s.count_intersect
              << " intersect_escape " << s.count_intersect_escape << '\n';
    return kOk;
}

struct CheckArgs {
    CheckOptions options;
    std::string mutant = "none";
    std::string format = "text";
    std::string out;
};

int cmd_check(CheckArgs a) {
    if (a.mutant == "flip-binomial-sign") {
        a.options.mutant = Mutant::flip_binomial_sign;
    }
    try {
        a.options.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rep = run_checks(a.options);
    Output out(a.out);
    if (a.format == "json") {
        auto doc = to_json(rep);
        doc["config"] = {{"command", "check"}, {"n_min", a.options.n_min}, {"n_max", a.options.n_max},
                         {"graphs", a.options.graphs}, {"seed", a.options.seed},
                         {"soundness_points", a.options.soundness_points}, {"mutant", a.mutant}};
        doc["meta"] = report::meta();
        out.stream() << doc.dump(2) << '\n';
    } else {
        auto& os = out.stream();
        os << "graphs " << rep.graphs << " skipped " << rep.skipped_graphs << '\n';
        for (const auto& p : rep.properties) {
            os << (p.passed() ? "PASS " : (p.advisory ? "WARN " : "FAIL ")) << p.name << " cases=" << p.cases
               << " failures=" << p.failures << '\n';
            if (p.counterexample) {
                os << "  counterexample " << p.counterexample->dump() << '\n';
            }
        }
    }
    return rep.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decay, degree and closeness centrality; maximizer study on random graphs"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", report::version());
    const std::string config_help = "key=value file of option defaults; flags on the command line win";

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "Centrality table and maximizer sets for one graph");
    c->add_option("--config", config_help);
    c->add_option("--graph", compute.graph, "Edge list (\"n m\" header, one \"u v\" per line) or JSON graph")
        ->required();
    c->add_option("--delta", compute.deltas, "Decay parameter(s) in (0,1); overrides --grid-points")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');
    c->add_option("--grid-points", compute.grid_points, "Uniform grid k/(points+1)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c->add_option("--format", compute.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_flag("--full", compute.full, "JSON: include distance profiles and higher-order vectors");
    c->add_option("--out", compute.out, "Output file (default stdout)");

    CompareArgs compare;
    auto* cm = app.add_subcommand("compare", "Every ordering verdict and sufficient condition for a node pair");
    cm->add_option("--config", config_help);
    cm->add_option("--graph", compare.graph, "Edge list or JSON graph")->required();
    cm->add_option("--i", compare.i, "First node id")->required();
    cm->add_option("--j", compare.j, "Second node id")->required();
    cm->add_option("--grid-points", compare.grid_points, "Points of the sampled DC difference curve")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cm->add_option("--out", compare.out, "Output file (default stdout)");

    SimulateArgs simulate;
    auto* s = app.add_subcommand("simulate", "Monte-Carlo maximizer study on connected G(n,p) graphs");
    s->add_option("--config", config_help);
    s->add_option("--n", simulate.config.n, "Nodes per graph")->capture_default_str();
    s->add_option("--p", simulate.config.p, "Edge probability")->capture_default_str();
    s->add_option("--trials", simulate.config.trials, "Number of connected graphs")->capture_default_str();
    s->add_option("--seed", simulate.config.seed, "Master seed (required)")->required();
    s->add_option("--grid-points", simulate.config.grid_points, "Uniform delta grid k/(points+1)")
        ->capture_default_str();
    s->add_option("--out-dir", simulate.out_dir, "Directory for records.csv, aggregate.csv, summary.json")
        ->capture_default_str();
    s->add_option("--workers", simulate.config.workers, "Worker threads; output does not depend on it")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    s->add_option("--max-rejects", simulate.config.max_rejects,
                  "Disconnected draws tolerated per trial before the trial is recorded as failed")
        ->capture_default_str();

    CheckArgs check;
    auto* k = app.add_subcommand("check", "Randomized self-test on small connected graphs");
    k->add_option("--config", config_help);
    k->add_option("--n-min", check.options.n_min, "Smallest graph size")->capture_default_str();
    k->add_option("--n-max", check.options.n_max, "Largest graph size (14 or less keeps it quick)")
        ->capture_default_str();
    k->add_option("--graphs", check.options.graphs, "Number of random graphs")->capture_default_str();
    k->add_option("--seed", check.options.seed, "Seed")->capture_default_str();
    k->add_option("--soundness-points", check.options.soundness_points, "Fine delta grid size")
        ->capture_default_str();
    k->add_option("--mutant", check.mutant, "Inject a known bug to exercise the suite")
        ->capture_default_str()
        ->check(CLI::IsMember({"none", "flip-binomial-sign"}));
    k->add_option("--format", check.format, "Report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "json"}));
    k->add_option("--out", check.out, "Output file (default stdout)");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*c) return cmd_compute(compute);
        if (*cm) return cmd_compare(compare);
        if (*s) return cmd_simulate(simulate);
        if (*k) return cmd_check(check);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
