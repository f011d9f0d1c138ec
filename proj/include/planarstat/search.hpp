#pragma once

#include <cstdint>
#include <vector>

#include "planarstat/stats.hpp"

namespace planarstat {

/// Unordered pair of non-congruent subsets with equal planar statistics,
/// both in canonical form, x < y.
struct HomometricPair {
    VertexMask x = 0;
    VertexMask y = 0;
    auto operator<=>(const HomometricPair&) const = default;
};

struct PairReport {
    SolidId solid;
    int size = 0;
    std::uint64_t orbit_count = 0;       // orbit representatives of this size
    std::vector<HomometricPair> pairs;   // sorted; every pair re-verified
    double seconds = 0;
};

/// Exactly one representative per group orbit of r-subsets: the canonical
/// (minimal) mask of each orbit, ascending.
std::vector<VertexMask> orbit_representatives(const SolidModel& model, int r);

/// All homometric non-congruent pairs among r-subsets. Buckets orbit
/// representatives by statistic fingerprint, confirms bucket collisions by
/// full multiset comparison, and re-verifies every reported pair.
PairReport find_homometric_pairs(const SolidModel& model,
                                 const std::vector<VertexPlane>& planes, int r);

/// find_homometric_pairs for every size 0..|V| in one pass.
std::vector<PairReport> full_sweep(const SolidModel& model,
                                   const std::vector<VertexPlane>& planes);
std::vector<PairReport> full_sweep(const SolidModel& model);

}  // namespace planarstat
