#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diversinet/rng.hpp"

namespace diversinet {

/// 1-based software package id.
using PackageId = std::uint16_t;
using PackageAssignment = std::vector<PackageId>;

/// Per-package vulnerabilities from the default parameter table.
inline constexpr std::array<double, 7> kDefaultVulnerabilities{0.41, 0.35, 0.48, 0.22,
                                                               0.16, 0.19, 0.12};

/// Set of packages whose vulnerability an attacker knows.
class PackageSet {
public:
    static constexpr std::size_t kCapacity = 64;

    constexpr PackageSet() = default;
    static constexpr PackageSet all(std::size_t ns) {
        PackageSet s;
        s.bits_ = ns >= kCapacity ? ~std::uint64_t{0} : (std::uint64_t{1} << ns) - 1;
        return s;
    }

    constexpr bool contains(PackageId p) const { return (bits_ >> (p - 1)) & 1U; }
    constexpr void insert(PackageId p) { bits_ |= std::uint64_t{1} << (p - 1); }
    constexpr void merge(const PackageSet& other) { bits_ |= other.bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    int count() const { return __builtin_popcountll(bits_); }

    constexpr bool operator==(const PackageSet&) const = default;

private:
    std::uint64_t bits_ = 0;
};

class SoftwareCatalog {
public:
    /// Throws std::invalid_argument unless 1 <= size <= 64 and every value is
    /// in (0, 1].
    explicit SoftwareCatalog(std::vector<double> vulnerabilities);

    /// The default table truncated to its first ns entries (1 <= ns <= 7).
    static SoftwareCatalog defaults(std::size_t ns);

    std::size_t ns() const { return sv_.size(); }
    /// Throws std::out_of_range for ids outside 1..ns.
    double vulnerability(PackageId p) const;
    std::span<const double> values() const { return sv_; }

    /// "<ns> v1 v2 ... vns"
    std::string serialize() const;
    static SoftwareCatalog parse(std::string_view text);

    bool operator==(const SoftwareCatalog&) const = default;

private:
    std::vector<double> sv_;
};

struct NodeState {
    bool active = true;
    bool compromised = false;
    PackageId package = 1;
    double diversity = 1.0;
    PackageSet learned;
};

inline double node_vulnerability(const NodeState& s, const SoftwareCatalog& cat) {
    return cat.vulnerability(s.package);
}

PackageAssignment assign_packages(std::size_t n, const SoftwareCatalog& cat, Rng& rng);

/// Fresh, active, uncompromised states holding the given packages.
std::vector<NodeState> make_states(std::span<const PackageId> packages);

/// Probability that an attacker running attacker_pkg compromises a node with
/// target_pkg in one attempt. Without a learned set only a shared package
/// grants certainty.
double hop_vulnerability(PackageId attacker_pkg, PackageId target_pkg, const SoftwareCatalog& cat,
                         const std::optional<PackageSet>& learned = std::nullopt);

inline double hop_vulnerability(PackageId attacker_pkg, const NodeState& target,
                                const SoftwareCatalog& cat,
                                const std::optional<PackageSet>& learned = std::nullopt) {
    return hop_vulnerability(attacker_pkg, target.package, cat, learned);
}

/// round(pa * n), halves rounded up.
std::size_t seed_count(std::size_t n, double pa);

/// Compromises exactly seed_count(n, pa) distinct nodes chosen uniformly; each
/// seed starts active and knows its own package.
std::vector<NodeState> seed_attackers(std::vector<NodeState> states, double pa, Rng& rng);

std::string serialize_assignment(std::span<const PackageId> packages);
PackageAssignment parse_assignment(std::string_view text);

}  // namespace diversinet
