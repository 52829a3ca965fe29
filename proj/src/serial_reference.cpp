#include "diversinet/serial_reference.hpp"

#include <algorithm>
#include <stdexcept>

namespace diversinet::serial {

ReachMask reach_mask(const Graph& g, std::size_t k) {
    if (k < 1) throw std::invalid_argument("reach_mask: k must be >= 1");
    const std::size_t n = g.node_count();
    // reach[i][j] after p steps <=> ((A + I)^p)_ij > 0.
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (NodeId i = 0; i < n; ++i) reach[i][i] = 1;
    for (std::size_t step = 0; step < 2 * k; ++step) {
        auto next = reach;
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId m = 0; m < n; ++m) {
                if (!reach[i][m]) continue;
                for (NodeId j : g.neighbors(m)) next[i][j] = 1;
            }
        }
        reach = std::move(next);
    }
    ReachMask mask(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (reach[i][j]) mask.set(i, j);
        }
    }
    return mask;
}

std::vector<double> software_diversity_all(const Graph& g, std::size_t k, std::size_t l,
                                           std::span<const PackageId> pkgs, const SoftwareCatalog& cat) {
    std::vector<double> sd(g.node_count());
    for (NodeId i = 0; i < sd.size(); ++i) sd[i] = software_diversity(g, i, k, l, pkgs, cat);
    return sd;
}

std::vector<double> gen_pv(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                           std::size_t k, PvK1Mode mode) {
    std::vector<double> pv(g.node_count());
    for (NodeId i = 0; i < pv.size(); ++i) pv[i] = detail::pv_for_node(g, i, pkgs, cat, k, mode);
    return pv;
}

std::vector<EdgeCandidate> geac(const Graph& g, const ReachMask& mask, std::span<const double> sd,
                                std::span<const double> pv, std::span<const PackageId> pkgs,
                                const SoftwareCatalog& cat) {
    std::vector<EdgeCandidate> out;
    const std::size_t n = g.node_count();
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (mask.reaches(i, j) && !g.has_edge(i, j) && pkgs[i] != pkgs[j]) {
                const double sv_i = cat.vulnerability(pkgs[i]);
                const double sv_j = cat.vulnerability(pkgs[j]);
                const double loss = (sd[i] - sd[i] * (1.0 - sv_i * pv[j])) + (sd[j] - sd[j] * (1.0 - sv_j * pv[i]));
                out.push_back({i, j, loss});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const EdgeCandidate& a, const EdgeCandidate& b) {
        return a.sd_diff_sum < b.sd_diff_sum;
    });
    return out;
}

}  // namespace diversinet::serial
