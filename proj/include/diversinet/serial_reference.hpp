#pragma once

// Single-threaded reference versions of the OpenMP kernels. They are kept for
// testing and benchmarking; results must match the parallel kernels exactly.

#include <span>
#include <vector>

#include "diversinet/adaptation.hpp"
#include "diversinet/attack_paths.hpp"
#include "diversinet/graph.hpp"

namespace diversinet::serial {

/// Literal boolean powering of (A + I), 2k times.
ReachMask reach_mask(const Graph& g, std::size_t k);

std::vector<double> software_diversity_all(const Graph& g, std::size_t k, std::size_t l,
                                           std::span<const PackageId> pkgs, const SoftwareCatalog& cat);

std::vector<double> gen_pv(const Graph& g, std::span<const PackageId> pkgs, const SoftwareCatalog& cat,
                           std::size_t k, PvK1Mode mode = PvK1Mode::Override);

std::vector<EdgeCandidate> geac(const Graph& g, const ReachMask& mask, std::span<const double> sd,
                                std::span<const double> pv, std::span<const PackageId> pkgs,
                                const SoftwareCatalog& cat);

}  // namespace diversinet::serial
