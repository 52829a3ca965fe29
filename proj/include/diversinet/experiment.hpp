#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "diversinet/adaptation.hpp"
#include "diversinet/attack_paths.hpp"
#include "diversinet/epidemic.hpp"
#include "diversinet/graph.hpp"
#include "diversinet/metrics.hpp"

namespace diversinet {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnvVar = "DIVERSINET_SEED";

struct NetworkSource {
    enum class Kind { Er, File, Derived };
    Kind kind = Kind::Er;
    std::size_t n = 1000;
    double p = 0.025;
    std::string path;
    std::size_t lo = 1;
    std::size_t hi = 1;
};

struct ExperimentConfig {
    NetworkSource network;
    std::size_t ns = 5;
    std::vector<double> sv{kDefaultVulnerabilities.begin(), kDefaultVulnerabilities.end()};
    double pa = 0.1;
    double gamma = 0.95;
    std::size_t k = 1;
    std::size_t l = 1;
    double rho = 0.0;
    Scheme scheme = Scheme::NoA;
    std::size_t n_r = 100;
    std::uint64_t base_seed = kDefaultSeed;
    FalsePositiveMode fp_mode = FalsePositiveMode::On;
    PvK1Mode pv_k1_mode = PvK1Mode::Override;
    EabBase eab_base = EabBase::Prose;
    bool inherit_learned = true;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    SoftwareCatalog catalog() const;
};

/// Strict: unknown keys and ill-typed values throw std::invalid_argument.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ResultRow {
    std::string scheme;
    std::string axis = "none";
    double axis_value = 0.0;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double pc = 0.0;
    double sg = 0.0;
    double sd = 0.0;
    double dc = 0.0;
    double ms = 0.0;
};

struct AggregateRow {
    std::string scheme;
    std::string axis;
    double axis_value = 0.0;
    std::size_t n = 0;
    double pc_mean = 0, pc_sd = 0;
    double sg_mean = 0, sg_sd = 0;
    double sd_mean = 0, sd_sd = 0;
    double dc_mean = 0, dc_sd = 0;
};

struct RunOptions {
    int jobs = 1;
    // Wall time is only recorded on request; it would break byte-identical output.
    bool timing = false;
};

/// Builds or loads the topology. ER graphs come from the config's topology
/// stream, so every run (and every scheme) of one config point shares a graph.
Graph build_network(const ExperimentConfig& cfg);

/// One pipeline execution on a prebuilt network.
ResultRow run_once(const ExperimentConfig& cfg, std::size_t run_index, const Graph& network,
                   const RunOptions& options = {});
ResultRow run_once(const ExperimentConfig& cfg, std::size_t run_index);

/// n_r runs of one config, ordered by run index regardless of `jobs`.
std::vector<ResultRow> run_batch(const ExperimentConfig& cfg, const RunOptions& options = {});

enum class SweepAxis { Rho, Pa, Ns, P, K, L, Gamma };
SweepAxis parse_axis(std::string_view token);
std::string_view axis_token(SweepAxis axis);
/// Copy of cfg with the axis parameter set to value.
ExperimentConfig with_axis_value(ExperimentConfig cfg, SweepAxis axis, double value);

struct SweepResult {
    std::vector<ResultRow> rows;
    std::vector<AggregateRow> aggregates;
};

SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const std::vector<double>& values,
                      const RunOptions& options = {});

/// Mean and sample standard deviation of rows sharing (scheme, axis, value),
/// in first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

inline constexpr const char* kRawCsvHeader = "scheme,axis,axis_value,run,seed,pc,sg,sd,dc,ms";
inline constexpr const char* kAggregateCsvHeader =
    "scheme,axis,axis_value,n,pc_mean,pc_sd,sg_mean,sg_sd,sd_mean,sd_sd,dc_mean,dc_sd";

void write_raw_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace diversinet
