#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "diversinet/graph.hpp"
#include "diversinet/node_model.hpp"
#include "diversinet/rng.hpp"

namespace diversinet {

/// Whether the IDS may also deactivate healthy nodes (false positives).
enum class FalsePositiveMode { On, Off };

struct EpidemicOptions {
    double gamma = 0.95;  // detection probability
    FalsePositiveMode fp_mode = FalsePositiveMode::On;
    // A newly compromised node starts with its infector's learned packages in
    // addition to its own.
    bool inherit_learned = true;
};

struct EpidemicOutcome {
    std::vector<NodeState> final_states;
    Graph final_graph;  // after IDS disconnections
    std::size_t rounds = 0;
    std::vector<std::uint8_t> spread_counts;
};

/// Maximum number of spreading attempts per compromised node.
inline constexpr std::uint8_t kSpreadChances = 2;

/// SIR-style epidemic with attacker learning and IDS responses.
///
/// Each round scans active nodes in index order and draws r1 ~ U(0, 1]. A
/// compromised node spreads when r1 > gamma and it has spreading chances
/// left, attacking every active, healthy neighbor (certain success for known
/// packages, sv otherwise, learning the package on success); otherwise it is
/// detected, deactivated and disconnected. With false positives on, a healthy
/// node with r1 > gamma is deactivated and disconnected. Rounds repeat (at
/// least once) until no active compromised node has chances left. State
/// changes are visible to the rest of the scan immediately.
EpidemicOutcome run_epidemic(Graph g, std::vector<NodeState> states, const SoftwareCatalog& cat,
                             const EpidemicOptions& options, Rng& rng);

}  // namespace diversinet
