#include "diversinet/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace diversinet {

using nlohmann::json;

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

template <typename Enum>
struct TokenTable {
    Enum value;
    const char* token;
};

constexpr TokenTable<FalsePositiveMode> kFpTokens[] = {{FalsePositiveMode::On, "on"},
                                                       {FalsePositiveMode::Off, "off"}};
constexpr TokenTable<PvK1Mode> kPvTokens[] = {{PvK1Mode::Override, "override"}, {PvK1Mode::Literal, "literal"}};
constexpr TokenTable<EabBase> kEabTokens[] = {{EabBase::Prose, "prose"}, {EabBase::Literal, "literal"}};
constexpr TokenTable<NetworkSource::Kind> kNetworkTokens[] = {{NetworkSource::Kind::Er, "er"},
                                                              {NetworkSource::Kind::File, "file"},
                                                              {NetworkSource::Kind::Derived, "derived"}};

template <typename Enum, std::size_t N>
Enum enum_from_token(const TokenTable<Enum> (&table)[N], const std::string& token, const char* what) {
    for (const auto& entry : table) {
        if (token == entry.token) return entry.value;
    }
    throw std::invalid_argument(std::string("invalid ") + what + " '" + token + "'");
}

template <typename Enum, std::size_t N>
const char* enum_to_token(const TokenTable<Enum> (&table)[N], Enum value) {
    for (const auto& entry : table) {
        if (entry.value == value) return entry.token;
    }
    return "?";
}

NetworkSource network_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("'network' must be an object");
    NetworkSource src;
    for (const auto& [key, value] : j.items()) {
        if (key == "type") src.kind = enum_from_token(kNetworkTokens, value.get<std::string>(), "network type");
        else if (key == "n") src.n = value.get<std::size_t>();
        else if (key == "p") src.p = value.get<double>();
        else if (key == "path") src.path = value.get<std::string>();
        else if (key == "lo") src.lo = value.get<std::size_t>();
        else if (key == "hi") src.hi = value.get<std::size_t>();
        else throw std::invalid_argument("unknown network key '" + key + "'");
    }
    return src;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

double stddev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct Task {
    std::size_t point;
    std::size_t run;
};

// Executes tasks (possibly concurrently) and returns rows in task order.
std::vector<ResultRow> execute(const std::vector<ExperimentConfig>& configs, const std::vector<Graph>& networks,
                               const std::vector<Task>& tasks, const RunOptions& options) {
    std::vector<ResultRow> rows(tasks.size());
    std::exception_ptr failure;
    const int jobs = std::max(1, options.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
        try {
            const Task& task = tasks[t];
            rows[t] = run_once(configs[task.point], task.run, networks[task.point], options);
        } catch (...) {
#pragma omp critical(diversinet_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace

void ExperimentConfig::validate() const {
    switch (network.kind) {
        case NetworkSource::Kind::Er:
            if (network.n < 1) throw std::invalid_argument("network.n must be >= 1");
            if (!in_unit(network.p)) throw std::invalid_argument("network.p must lie in [0, 1]");
            break;
        case NetworkSource::Kind::Derived:
            if (network.lo < 1 || network.lo > network.hi) {
                throw std::invalid_argument("network ranks must satisfy 1 <= lo <= hi");
            }
            [[fallthrough]];
        case NetworkSource::Kind::File:
            if (network.path.empty()) throw std::invalid_argument("network.path is required");
            break;
    }
    if (ns < 1) throw std::invalid_argument("ns must be >= 1");
    if (sv.size() < ns) throw std::invalid_argument("sv must hold at least ns values");
    if (!in_unit(pa)) throw std::invalid_argument("pa must lie in [0, 1]");
    if (!in_unit(gamma)) throw std::invalid_argument("gamma must lie in [0, 1]");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    if (n_r < 1) throw std::invalid_argument("n_r must be >= 1");
    (void)catalog();
}

SoftwareCatalog ExperimentConfig::catalog() const {
    if (sv.size() < ns) throw std::invalid_argument("sv must hold at least ns values");
    return SoftwareCatalog({sv.begin(), sv.begin() + static_cast<std::ptrdiff_t>(ns)});
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig cfg) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "network") cfg.network = network_from_json(value);
            else if (key == "ns") cfg.ns = value.get<std::size_t>();
            else if (key == "sv") cfg.sv = value.get<std::vector<double>>();
            else if (key == "pa") cfg.pa = value.get<double>();
            else if (key == "gamma") cfg.gamma = value.get<double>();
            else if (key == "k") cfg.k = value.get<std::size_t>();
            else if (key == "l") cfg.l = value.get<std::size_t>();
            else if (key == "rho") cfg.rho = value.get<double>();
            else if (key == "scheme") cfg.scheme = parse_scheme(value.get<std::string>());
            else if (key == "n_r") cfg.n_r = value.get<std::size_t>();
            else if (key == "base_seed") cfg.base_seed = value.get<std::uint64_t>();
            else if (key == "fp_mode") cfg.fp_mode = enum_from_token(kFpTokens, value.get<std::string>(), "fp_mode");
            else if (key == "pv_k1_mode") cfg.pv_k1_mode = enum_from_token(kPvTokens, value.get<std::string>(), "pv_k1_mode");
            else if (key == "eab_base") cfg.eab_base = enum_from_token(kEabTokens, value.get<std::string>(), "eab_base");
            else if (key == "inherit_learned") cfg.inherit_learned = value.get<bool>();
            else throw std::invalid_argument("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json network{{"type", enum_to_token(kNetworkTokens, cfg.network.kind)}};
    switch (cfg.network.kind) {
        case NetworkSource::Kind::Er:
            network["n"] = cfg.network.n;
            network["p"] = cfg.network.p;
            break;
        case NetworkSource::Kind::Derived:
            network["lo"] = cfg.network.lo;
            network["hi"] = cfg.network.hi;
            [[fallthrough]];
        case NetworkSource::Kind::File:
            network["path"] = cfg.network.path;
            break;
    }
    return json{{"network", network},
                {"ns", cfg.ns},
                {"sv", cfg.sv},
                {"pa", cfg.pa},
                {"gamma", cfg.gamma},
                {"k", cfg.k},
                {"l", cfg.l},
                {"rho", cfg.rho},
                {"scheme", std::string(scheme_token(cfg.scheme))},
                {"n_r", cfg.n_r},
                {"base_seed", cfg.base_seed},
                {"fp_mode", enum_to_token(kFpTokens, cfg.fp_mode)},
                {"pv_k1_mode", enum_to_token(kPvTokens, cfg.pv_k1_mode)},
                {"eab_base", enum_to_token(kEabTokens, cfg.eab_base)},
                {"inherit_learned", cfg.inherit_learned}};
}

Graph build_network(const ExperimentConfig& cfg) {
    switch (cfg.network.kind) {
        case NetworkSource::Kind::Er: {
            Rng rng(stream_seed(cfg.base_seed, Stream::Topology));
            return generate_er(cfg.network.n, cfg.network.p, rng);
        }
        case NetworkSource::Kind::File:
            return load_edge_list_file(cfg.network.path).graph;
        case NetworkSource::Kind::Derived: {
            const Graph source = load_edge_list_file(cfg.network.path).graph;
            return derive_degree_rank_subgraph(source, cfg.network.lo, cfg.network.hi).graph;
        }
    }
    throw std::logic_error("unhandled network kind");
}

ResultRow run_once(const ExperimentConfig& cfg, std::size_t run_index, const Graph& network,
                   const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const SoftwareCatalog cat = cfg.catalog();
    const std::size_t n = network.node_count();
    if (n == 0) throw std::invalid_argument("network has no nodes");

    Rng assign_rng = Rng::for_stream(cfg.base_seed, run_index, Stream::Assignment);
    Rng scheme_rng = Rng::for_stream(cfg.base_seed, run_index, Stream::Scheme);
    Rng seeding_rng = Rng::for_stream(cfg.base_seed, run_index, Stream::Seeding);
    Rng epidemic_rng = Rng::for_stream(cfg.base_seed, run_index, Stream::Epidemic);

    PackageAssignment pkgs = assign_packages(n, cat, assign_rng);
    Graph adapted;
    std::size_t n_sf = 0;
    switch (cfg.scheme) {
        case Scheme::NoA:
            adapted = no_a(network);
            break;
        case Scheme::RandomA:
            adapted = random_a(network, pkgs, scheme_rng);
            break;
        case Scheme::RandomGraphC: {
            auto shuffled = random_graph_c(pkgs, network, cat);
            pkgs = std::move(shuffled.packages);
            n_sf = shuffled.shuffle_count;
            adapted = network;
            break;
        }
        case Scheme::Sda:
            adapted = sda(network, pkgs, cat, {cfg.k, cfg.l, cfg.rho, cfg.pv_k1_mode, cfg.eab_base});
            break;
    }

    auto states = seed_attackers(make_states(pkgs), cfg.pa, seeding_rng);
    auto outcome = run_epidemic(std::move(adapted), std::move(states), cat,
                                {cfg.gamma, cfg.fp_mode, cfg.inherit_learned}, epidemic_rng);

    const auto sd = software_diversity_all(outcome.final_graph, cfg.k, cfg.l, pkgs, cat);
    for (std::size_t i = 0; i < n; ++i) outcome.final_states[i].diversity = sd[i];

    ResultRow row;
    row.scheme = std::string(scheme_token(cfg.scheme));
    row.run = run_index;
    row.seed = run_seed(cfg.base_seed, run_index);
    row.pc = metric_pc(outcome.final_states);
    row.sg = metric_sg(outcome.final_graph, outcome.final_states);
    row.sd = mean_software_diversity(sd);
    row.dc = metric_dc(network, outcome.final_graph, n_sf);
    if (options.timing) {
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return row;
}

ResultRow run_once(const ExperimentConfig& cfg, std::size_t run_index) {
    cfg.validate();
    return run_once(cfg, run_index, build_network(cfg));
}

std::vector<ResultRow> run_batch(const ExperimentConfig& cfg, const RunOptions& options) {
    cfg.validate();
    std::vector<Task> tasks;
    for (std::size_t r = 0; r < cfg.n_r; ++r) tasks.push_back({0, r});
    return execute({cfg}, {build_network(cfg)}, tasks, options);
}

SweepAxis parse_axis(std::string_view token) {
    for (SweepAxis a : {SweepAxis::Rho, SweepAxis::Pa, SweepAxis::Ns, SweepAxis::P, SweepAxis::K, SweepAxis::L,
                        SweepAxis::Gamma}) {
        if (axis_token(a) == token) return a;
    }
    throw std::invalid_argument("invalid sweep axis '" + std::string(token) + "'");
}

std::string_view axis_token(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Rho: return "rho";
        case SweepAxis::Pa: return "pa";
        case SweepAxis::Ns: return "ns";
        case SweepAxis::P: return "p";
        case SweepAxis::K: return "k";
        case SweepAxis::L: return "l";
        case SweepAxis::Gamma: return "gamma";
    }
    return "?";
}

ExperimentConfig with_axis_value(ExperimentConfig cfg, SweepAxis axis, double value) {
    const auto as_count = [&](const char* name) {
        if (!(value >= 1.0) || value != std::floor(value)) {
            throw std::invalid_argument(std::string(name) + " values must be positive integers");
        }
        return static_cast<std::size_t>(value);
    };
    switch (axis) {
        case SweepAxis::Rho: cfg.rho = value; break;
        case SweepAxis::Pa: cfg.pa = value; break;
        case SweepAxis::Ns: cfg.ns = as_count("ns"); break;
        case SweepAxis::P:
            if (cfg.network.kind != NetworkSource::Kind::Er) {
                throw std::invalid_argument("axis p requires an ER network source");
            }
            cfg.network.p = value;
            break;
        case SweepAxis::K: cfg.k = as_count("k"); break;
        case SweepAxis::L: cfg.l = as_count("l"); break;
        case SweepAxis::Gamma: cfg.gamma = value; break;
    }
    return cfg;
}

SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                      const RunOptions& options) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<ExperimentConfig> configs;
    for (double v : values) {
        configs.push_back(with_axis_value(cfg, axis, v));
        configs.back().validate();
    }
    std::vector<Graph> networks;
    if (axis == SweepAxis::P) {
        for (const auto& c : configs) networks.push_back(build_network(c));
    } else {
        networks.assign(configs.size(), build_network(configs.front()));
    }

    std::vector<Task> tasks;
    for (std::size_t point = 0; point < configs.size(); ++point) {
        for (std::size_t r = 0; r < configs[point].n_r; ++r) tasks.push_back({point, r});
    }
    SweepResult result;
    result.rows = execute(configs, networks, tasks, options);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        result.rows[t].axis = std::string(axis_token(axis));
        result.rows[t].axis_value = values[tasks[t].point];
    }
    result.aggregates = aggregate(result.rows);
    return result;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
    struct Group {
        AggregateRow head;
        std::vector<double> pc, sg, sd, dc;
    };
    std::vector<Group> groups;
    std::map<std::tuple<std::string, std::string, double>, std::size_t> index;
    for (const auto& r : rows) {
        auto [it, inserted] = index.try_emplace({r.scheme, r.axis, r.axis_value}, groups.size());
        if (inserted) {
            Group g;
            g.head.scheme = r.scheme;
            g.head.axis = r.axis;
            g.head.axis_value = r.axis_value;
            groups.push_back(std::move(g));
        }
        auto& g = groups[it->second];
        g.pc.push_back(r.pc);
        g.sg.push_back(r.sg);
        g.sd.push_back(r.sd);
        g.dc.push_back(r.dc);
    }
    const auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    std::vector<AggregateRow> out;
    for (auto& g : groups) {
        AggregateRow a = g.head;
        a.n = g.pc.size();
        a.pc_mean = mean(g.pc);
        a.pc_sd = stddev(g.pc, a.pc_mean);
        a.sg_mean = mean(g.sg);
        a.sg_sd = stddev(g.sg, a.sg_mean);
        a.sd_mean = mean(g.sd);
        a.sd_sd = stddev(g.sd, a.sd_mean);
        a.dc_mean = mean(g.dc);
        a.dc_sd = stddev(g.dc, a.dc_mean);
        out.push_back(std::move(a));
    }
    return out;
}

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kRawCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.axis << ',' << format_number(r.axis_value) << ',' << r.run << ',' << r.seed << ','
            << format_number(r.pc) << ',' << format_number(r.sg) << ',' << format_number(r.sd) << ','
            << format_number(r.dc) << ',' << format_number(r.ms) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
    out << kAggregateCsvHeader << '\n';
    for (const auto& a : rows) {
        out << a.scheme << ',' << a.axis << ',' << format_number(a.axis_value) << ',' << a.n << ','
            << format_number(a.pc_mean) << ',' << format_number(a.pc_sd) << ',' << format_number(a.sg_mean) << ','
            << format_number(a.sg_sd) << ',' << format_number(a.sd_mean) << ',' << format_number(a.sd_sd) << ','
            << format_number(a.dc_mean) << ',' << format_number(a.dc_sd) << '\n';
    }
}

}  // namespace diversinet
