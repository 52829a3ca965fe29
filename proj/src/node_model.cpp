#include "diversinet/node_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diversinet {

SoftwareCatalog::SoftwareCatalog(std::vector<double> vulnerabilities) : sv_(std::move(vulnerabilities)) {
    if (sv_.empty() || sv_.size() > PackageSet::kCapacity) {
        throw std::invalid_argument("catalog must hold between 1 and 64 packages");
    }
    for (double v : sv_) {
        if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("package vulnerability must lie in (0, 1]");
    }
}

SoftwareCatalog SoftwareCatalog::defaults(std::size_t ns) {
    if (ns < 1 || ns > kDefaultVulnerabilities.size()) {
        throw std::invalid_argument("default catalog supports 1..7 packages");
    }
    return SoftwareCatalog({kDefaultVulnerabilities.begin(),
                            kDefaultVulnerabilities.begin() + static_cast<std::ptrdiff_t>(ns)});
}

double SoftwareCatalog::vulnerability(PackageId p) const {
    if (p < 1 || p > sv_.size()) throw std::out_of_range("package id out of range");
    return sv_[p - 1];
}

std::string SoftwareCatalog::serialize() const {
    std::ostringstream out;
    out.precision(17);
    out << sv_.size();
    for (double v : sv_) out << ' ' << v;
    return out.str();
}

SoftwareCatalog SoftwareCatalog::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t ns = 0;
    if (!(in >> ns)) throw std::invalid_argument("catalog: missing package count");
    std::vector<double> sv(ns);
    for (auto& v : sv) {
        if (!(in >> v)) throw std::invalid_argument("catalog: expected " + std::to_string(ns) + " values");
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("catalog: trailing data");
    return SoftwareCatalog(std::move(sv));
}

PackageAssignment assign_packages(std::size_t n, const SoftwareCatalog& cat, Rng& rng) {
    PackageAssignment pkgs(n);
    for (auto& p : pkgs) p = static_cast<PackageId>(1 + rng.below(cat.ns()));
    return pkgs;
}

std::vector<NodeState> make_states(std::span<const PackageId> packages) {
    std::vector<NodeState> states(packages.size());
    for (std::size_t i = 0; i < packages.size(); ++i) states[i].package = packages[i];
    return states;
}

double hop_vulnerability(PackageId attacker_pkg, PackageId target_pkg, const SoftwareCatalog& cat,
                         const std::optional<PackageSet>& learned) {
    if (attacker_pkg == target_pkg) return 1.0;
    if (learned && learned->contains(target_pkg)) return 1.0;
    return cat.vulnerability(target_pkg);
}

std::size_t seed_count(std::size_t n, double pa) {
    if (!(pa >= 0.0 && pa <= 1.0)) throw std::invalid_argument("attacker fraction must lie in [0, 1]");
    const auto count = static_cast<std::size_t>(std::floor(pa * static_cast<double>(n) + 0.5));
    return std::min(count, n);
}

std::vector<NodeState> seed_attackers(std::vector<NodeState> states, double pa, Rng& rng) {
    const std::size_t n = states.size();
    const std::size_t count = seed_count(n, pa);
    // Partial Fisher-Yates: the first `count` slots become the seed set.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(order[i], order[i + rng.below(n - i)]);
        auto& s = states[order[i]];
        s.compromised = true;
        s.active = true;
        s.learned.insert(s.package);
    }
    return states;
}

std::string serialize_assignment(std::span<const PackageId> packages) {
    std::ostringstream out;
    out << packages.size();
    for (PackageId p : packages) out << ' ' << p;
    return out.str();
}

PackageAssignment parse_assignment(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("assignment: missing node count");
    PackageAssignment pkgs(n);
    for (auto& p : pkgs) {
        unsigned v = 0;
        if (!(in >> v) || v < 1 || v > PackageSet::kCapacity) throw std::invalid_argument("assignment: bad package id");
        p = static_cast<PackageId>(v);
    }
    return pkgs;
}

}  // namespace diversinet
