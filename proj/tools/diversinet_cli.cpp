// diversinet: command-line front end for the simulator.
//
//   diversinet run    --config c.json --seed 7 --out raw.csv
//   diversinet sweep  --config c.json --axis rho --values -1,-0.6,0 --out raw.csv --agg agg.csv
//   diversinet gen-er --n 1000 --p 0.025 --out g.txt
//   diversinet derive --in email-Enron.txt --lo 501 --hi 1500 --out enron.txt
//   diversinet schemes

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "diversinet/experiment.hpp"

using namespace diversinet;

namespace {

// Invalid input detected after parsing (bad config values, bad axis...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    bool timing = false;
    std::string out;

    std::optional<std::string> scheme;
    std::optional<std::string> network_file;
    std::optional<std::size_t> n;
    std::optional<double> p;
    std::optional<std::size_t> ns;
    std::optional<double> pa;
    std::optional<double> gamma;
    std::optional<std::size_t> k;
    std::optional<std::size_t> l;
    std::optional<double> rho;
    std::optional<std::size_t> runs;
    std::optional<std::string> fp_mode;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "base seed (default: $DIVERSINET_SEED, then config, then 42)");
    cmd->add_option("--jobs", f.jobs, "parallel runs")->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", f.timing, "record per-run wall time in the ms column");
    cmd->add_option("--out", f.out, "raw CSV output (default: stdout)");
    cmd->add_option("--scheme", f.scheme, "no-a | random-a | random-graph-c | sda");
    cmd->add_option("--network-file", f.network_file, "edge list to use instead of an ER graph");
    cmd->add_option("--n", f.n, "ER node count");
    cmd->add_option("--p", f.p, "ER edge probability");
    cmd->add_option("--ns", f.ns, "number of software packages");
    cmd->add_option("--pa", f.pa, "initial attacker fraction");
    cmd->add_option("--gamma", f.gamma, "IDS detection probability");
    cmd->add_option("--k", f.k, "attack path hop distance");
    cmd->add_option("--l", f.l, "attack paths per node");
    cmd->add_option("--rho", f.rho, "edge adaptation fraction in [-1, 1]");
    cmd->add_option("--runs", f.runs, "simulation runs per config point");
    cmd->add_option("--fp-mode", f.fp_mode, "on | off");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig resolve_config(const ExperimentFlags& f) {
    ExperimentConfig cfg;
    try {
        if (!f.config_path.empty()) cfg = config_from_json(nlohmann::json::parse(read_file(f.config_path)));
        // Seed precedence: --seed, then the environment, then the config file.
        if (const char* env = std::getenv(kSeedEnvVar); env && *env) cfg.base_seed = std::stoull(env);
        if (f.seed) cfg.base_seed = *f.seed;
        if (f.scheme) cfg.scheme = parse_scheme(*f.scheme);
        if (f.network_file) {
            cfg.network.kind = NetworkSource::Kind::File;
            cfg.network.path = *f.network_file;
        }
        if (f.n) cfg.network.n = *f.n;
        if (f.p) cfg.network.p = *f.p;
        if (f.ns) cfg.ns = *f.ns;
        if (f.pa) cfg.pa = *f.pa;
        if (f.gamma) cfg.gamma = *f.gamma;
        if (f.k) cfg.k = *f.k;
        if (f.l) cfg.l = *f.l;
        if (f.rho) cfg.rho = *f.rho;
        if (f.runs) cfg.n_r = *f.runs;
        if (f.fp_mode) {
            if (*f.fp_mode == "on") cfg.fp_mode = FalsePositiveMode::On;
            else if (*f.fp_mode == "off") cfg.fp_mode = FalsePositiveMode::Off;
            else throw std::invalid_argument("--fp-mode must be 'on' or 'off'");
        }
        cfg.validate();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
        throw UsageError(std::string("seed: ") + e.what());
    }
    return cfg;
}

// Writes through `fn` to a file, or to stdout when path is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    fn(out);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--values: '" + item + "' is not a number");
        }
        if (used != item.size()) throw UsageError("--values: '" + item + "' is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw UsageError("--values needs at least one value");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Software-diversity network adaptation simulator"};
    app.require_subcommand(1);

    ExperimentFlags run_flags;
    auto* run = app.add_subcommand("run", "Run one configuration n_r times and emit the raw CSV");
    add_experiment_flags(run, run_flags);
    std::string run_agg;
    run->add_option("--agg", run_agg, "aggregate CSV output");

    ExperimentFlags sweep_flags;
    std::string axis, values, sweep_agg;
    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter across values");
    add_experiment_flags(sweep, sweep_flags);
    sweep->add_option("--axis", axis, "rho | pa | ns | p | k | l | gamma")->required();
    sweep->add_option("--values", values, "comma-separated axis values")->required();
    sweep->add_option("--agg", sweep_agg, "aggregate CSV output");

    std::size_t er_n = 1000;
    double er_p = 0.025;
    std::optional<std::uint64_t> er_seed;
    std::string er_out;
    auto* gen = app.add_subcommand("gen-er", "Generate an Erdos-Renyi edge list");
    gen->add_option("--n", er_n, "node count");
    gen->add_option("--p", er_p, "edge probability")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", er_seed, "seed (default: $DIVERSINET_SEED, then 42)");
    gen->add_option("--out", er_out, "output file (default: stdout)");

    std::string derive_in, derive_out;
    std::size_t lo = 0, hi = 0;
    auto* derive = app.add_subcommand("derive", "Extract a degree-rank subgraph and keep its largest component");
    derive->add_option("--in", derive_in, "source edge list")->required();
    derive->add_option("--lo", lo, "first degree rank (1-based)")->required();
    derive->add_option("--hi", hi, "last degree rank (inclusive)")->required();
    derive->add_option("--out", derive_out, "output file (default: stdout)");

    auto* schemes = app.add_subcommand("schemes", "List scheme tokens");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*run) {
            const auto cfg = resolve_config(run_flags);
            const auto rows = run_batch(cfg, {run_flags.jobs, run_flags.timing});
            emit(run_flags.out, [&](std::ostream& o) { write_raw_csv(o, rows); });
            if (!run_agg.empty()) emit(run_agg, [&](std::ostream& o) { write_aggregate_csv(o, aggregate(rows)); });
        } else if (*sweep) {
            const auto cfg = resolve_config(sweep_flags);
            SweepAxis parsed_axis;
            try {
                parsed_axis = parse_axis(axis);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto parsed_values = parse_values(values);
            for (double v : parsed_values) {
                try {
                    with_axis_value(cfg, parsed_axis, v).validate();
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            const auto result = run_sweep(cfg, parsed_axis, parsed_values, {sweep_flags.jobs, sweep_flags.timing});
            emit(sweep_flags.out, [&](std::ostream& o) { write_raw_csv(o, result.rows); });
            if (!sweep_agg.empty()) {
                emit(sweep_agg, [&](std::ostream& o) { write_aggregate_csv(o, result.aggregates); });
            }
        } else if (*gen) {
            std::uint64_t seed = kDefaultSeed;
            if (const char* env = std::getenv(kSeedEnvVar); env && *env) seed = std::stoull(env);
            if (er_seed) seed = *er_seed;
            Rng rng(stream_seed(seed, Stream::Topology));
            const Graph g = generate_er(er_n, er_p, rng);
            emit(er_out, [&](std::ostream& o) { o << write_edge_list(g); });
        } else if (*derive) {
            const auto loaded = load_edge_list_file(derive_in);
            Subgraph sub;
            try {
                sub = derive_degree_rank_subgraph(loaded.graph, lo, hi);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            std::cerr << sub.graph.node_count() << " nodes, " << sub.graph.edge_count() << " edges\n";
            emit(derive_out, [&](std::ostream& o) { o << write_edge_list(sub.graph); });
        } else if (*schemes) {
            for (Scheme s : all_schemes()) std::cout << scheme_token(s) << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
