#include "diversinet/epidemic.hpp"

#include <algorithm>
#include <stdexcept>

namespace diversinet {

namespace {

bool spreading_remains(const std::vector<NodeState>& states, const std::vector<std::uint8_t>& spread) {
    for (std::size_t v = 0; v < states.size(); ++v) {
        if (states[v].active && states[v].compromised && spread[v] < kSpreadChances) return true;
    }
    return false;
}

}  // namespace

EpidemicOutcome run_epidemic(Graph g, std::vector<NodeState> states, const SoftwareCatalog& cat,
                             const EpidemicOptions& options, Rng& rng) {
    if (!(options.gamma >= 0.0 && options.gamma <= 1.0)) {
        throw std::invalid_argument("detection probability gamma must lie in [0, 1]");
    }
    const std::size_t n = g.node_count();
    if (states.size() != n) throw std::invalid_argument("run_epidemic: state vector length mismatch");

    std::vector<std::uint8_t> spread(n, 0);
    std::size_t rounds = 0;
    do {
        ++rounds;
        for (NodeId i = 0; i < n; ++i) {
            if (!states[i].active) continue;
            const double r1 = rng.uniform_open_closed();
            if (states[i].compromised) {
                if (r1 > options.gamma && spread[i] < kSpreadChances) {
                    ++spread[i];
                    for (NodeId j : g.neighbors(i)) {
                        NodeState& target = states[j];
                        if (!target.active || target.compromised) continue;
                        bool success = states[i].learned.contains(target.package);
                        if (!success && rng.uniform01() < cat.vulnerability(target.package)) {
                            success = true;
                            states[i].learned.insert(target.package);
                        }
                        if (success) {
                            target.compromised = true;
                            target.learned.insert(target.package);
                            if (options.inherit_learned) target.learned.merge(states[i].learned);
                        }
                    }
                } else {
                    states[i].active = false;
                    g.isolate(i);
                }
            } else if (options.fp_mode == FalsePositiveMode::On && r1 > options.gamma) {
                states[i].active = false;
                g.isolate(i);
            }
        }
    } while (spreading_remains(states, spread));

    return {std::move(states), std::move(g), rounds, std::move(spread)};
}

}  // namespace diversinet
