#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diversinet/attack_paths.hpp"
#include "diversinet/graph.hpp"
#include "diversinet/node_model.hpp"
#include "diversinet/rng.hpp"

namespace diversinet {

/// Per-node count of edges removed by the same-package pass.
struct RemovedEdgeLedger {
    std::vector<std::size_t> dn;
    std::size_t total() const;
};

struct SdbaResult {
    Graph graph;
    RemovedEdgeLedger ledger;
};

/// Removes every edge whose endpoints run the same package.
SdbaResult sdba(const Graph& g, std::span<const PackageId> pkgs);

/// Base that a negative rho is applied to.
enum class EabBase {
    Prose,    // rho < 0 scales the edge count left after the same-package pass
    Literal,  // both signs scale the number of removed edges
};

struct AdaptBudget {
    std::size_t t_global = 0;
    std::vector<std::size_t> t_local;
};

/// Global and per-node adaptation budgets. Per-node budgets steer degrees
/// toward the expected mean degree after adaptation; their total is trimmed
/// round-robin until it no longer exceeds t_global.
/// Throws std::invalid_argument if rho is outside [-1, 1].
AdaptBudget set_eab(const RemovedEdgeLedger& ledger, const Graph& g, double rho,
                    EabBase base = EabBase::Prose);

struct EdgeCandidate {
    NodeId i;
    NodeId j;
    double sd_diff_sum;
};

/// Edge-addition candidates: absent, package-differing pairs inside the reach
/// mask, scored by the expected diversity loss and ranked ascending.
std::vector<EdgeCandidate> geac(const Graph& g, const ReachMask& mask, std::span<const double> sd,
                                std::span<const double> pv, std::span<const PackageId> pkgs,
                                const SoftwareCatalog& cat);

/// Edge-removal candidates: existing edges scored by the expected diversity
/// gain and ranked descending.
std::vector<EdgeCandidate> gerc(const Graph& g, std::span<const double> sd, std::span<const double> pv,
                                std::span<const PackageId> pkgs, const SoftwareCatalog& cat);

inline constexpr double kRemovalGuard = 1e-9;

/// Gain of one endpoint when an edge is removed; guarded against a vanishing
/// denominator.
double removal_gain(double sd, double sv, double pv);

struct AdaptNtResult {
    Graph graph;
    std::size_t pass1_actions = 0;
    std::size_t pass2_actions = 0;
};

/// Applies candidates in rank order: first where both endpoints still have a
/// per-node budget, then ignoring per-node budgets until t_global is spent.
/// Adds edges when rho > 0, removes them when rho < 0.
AdaptNtResult adapt_nt(Graph g, std::span<const EdgeCandidate> candidates, AdaptBudget budget, double rho);

struct SdaOptions {
    std::size_t k = 1;
    std::size_t l = 1;
    double rho = 0.0;
    PvK1Mode pv_mode = PvK1Mode::Override;
    EabBase eab_base = EabBase::Prose;
};

/// Same-package edge removal followed by budgeted, diversity-ranked edge
/// addition (rho > 0) or removal (rho < 0).
Graph sda(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
          const SdaOptions& options);

/// Same-package edge removal followed by restoring as many edges at random
/// between package-differing nodes that lost edges.
Graph random_a(const Graph& g, std::span<const PackageId> pkgs, Rng& rng);

struct ShuffleResult {
    PackageAssignment packages;
    std::size_t shuffle_count = 0;
};

/// Every node adopts the package least common among its neighbors (computed
/// from a snapshot); isolated nodes take the globally least common package.
ShuffleResult random_graph_c(std::span<const PackageId> pkgs, const Graph& g, const SoftwareCatalog& cat);

inline Graph no_a(const Graph& g) { return g; }

enum class Scheme { NoA, RandomA, RandomGraphC, Sda };

std::string_view scheme_token(Scheme s);
/// Throws std::invalid_argument for unknown tokens.
Scheme parse_scheme(std::string_view token);
std::vector<Scheme> all_schemes();

}  // namespace diversinet
