#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "planarstat/planes.hpp"

namespace planarstat {

/// Congruence class of a vertex-plane relative to a subset X: the
/// lexicographic minimum over the group of the pair
/// (g(incidence), g(incidence ∩ X)), compared plane set first.
struct PlanarClassKey {
    VertexMask plane_set;    // P*, canonical image of the incidence set
    VertexMask subset_part;  // Z*, matching image of incidence ∩ X

    auto operator<=>(const PlanarClassKey&) const = default;
};

/// 128-bit stable content hash (FNV-1a); equality of fingerprints is used as
/// a fast pre-filter and always confirmed by full multiset comparison.
struct Fingerprint {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    auto operator<=>(const Fingerprint&) const = default;
};

/// The planar statistic PS(X): multiset of class keys over all vertex-planes.
struct PlanarStatistic {
    SolidId solid;
    VertexMask subset = 0;
    std::map<PlanarClassKey, int> classes;

    int total() const;
    int class_count() const { return static_cast<int>(classes.size()); }
    /// Counts aggregated by (|plane_set|, |subset_part|).
    std::map<std::pair<int, int>, int> stratum_marginals() const;
};

/// Precomputed per-plane canonicalization data: for each plane, its canonical
/// incidence image and the group elements realizing it. Keying a subset then
/// costs |stabilizer| shuffle applications per plane instead of |G|.
class StatisticEngine {
public:
    StatisticEngine(const SolidModel& model, const std::vector<VertexPlane>& planes);

    const SolidModel& model() const { return *model_; }
    const std::vector<VertexPlane>& planes() const { return *planes_; }

    PlanarClassKey class_key(int plane_index, VertexMask subset) const;
    PlanarStatistic statistic(VertexMask subset) const;

    /// Packed (plane_set << 32 | subset_part) keys over all planes, unsorted;
    /// reuses the caller's buffer.
    void packed_keys(VertexMask subset, std::vector<std::uint64_t>& out) const;

    Fingerprint fingerprint(VertexMask subset) const;

private:
    const SolidModel* model_;
    const std::vector<VertexPlane>* planes_;
    struct PlaneCanon {
        VertexMask canon;          // canonical incidence image
        std::vector<int> coset;    // group indices g with g(incidence) = canon
    };
    std::vector<PlaneCanon> per_plane_;
};

PlanarClassKey class_key(const SolidModel& model, const VertexPlane& plane, VertexMask subset);

PlanarStatistic planar_statistic(const SolidModel& model, const std::vector<VertexPlane>& planes,
                                 VertexMask subset);

/// Exact multiset equality. Throws std::invalid_argument when the statistics
/// were built over different solids or plane counts.
bool statistics_equal(const PlanarStatistic& a, const PlanarStatistic& b);

/// Stable 128-bit hash of the sorted (key, count) list.
Fingerprint fingerprint(const PlanarStatistic& ps);

/// Coarser statistic that records the inclusion (incidence ∩ X) ⊆ incidence
/// only up to isometry of the point pair itself: classes of the main
/// statistic whose configurations are congruent as labelled point sets are
/// merged, keyed by the smallest member. Strictly coarser exactly when some
/// configuration embeds into the vertex set in two inequivalent ways.
PlanarStatistic restricted_statistic_variant(const SolidModel& model,
                                             const std::vector<VertexPlane>& planes,
                                             VertexMask subset);

/// The key the main class maps to inside the variant statistic; exposed for
/// refinement checks.
std::map<PlanarClassKey, PlanarClassKey> variant_merge_map(
    const SolidModel& model, const std::vector<VertexPlane>& planes, VertexMask subset);

}  // namespace planarstat
