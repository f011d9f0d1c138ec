#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "planarstat/geometry.hpp"

namespace planarstat {

/// Affine plane through at least three solid vertices, with its exact
/// canonical equation {x : normal.x = offset} and incidence set.
///
/// Canonical scaling divides normal and offset by the first nonzero normal
/// coordinate, which makes the representation unique per geometric plane.
struct VertexPlane {
    FieldVec3 normal;
    FieldElement offset;
    VertexMask incidence;

    int cardinality() const { return std::popcount(incidence); }
};

/// Canonical plane through three vertices, or nullopt when collinear.
/// Incidence is computed against the full vertex set.
std::optional<VertexPlane> plane_through(const SolidModel& model, int i, int j, int k);

/// All distinct vertex-planes, one per incidence set, sorted by incidence
/// mask. Iterates every 3-subset of the vertices and deduplicates.
std::vector<VertexPlane> enumerate_planes(const SolidModel& model);

/// Planes grouped by the group orbit of their incidence set.
struct PlaneTypeCensus {
    struct TypeInfo {
        VertexMask key;        // canonical (minimal) incidence mask of the orbit
        int cardinality;       // |incidence| shared by the whole orbit
        int frequency;         // number of planes of this type
    };
    std::vector<TypeInfo> types;              // sorted by key
    std::map<VertexMask, int> key_to_index;   // canonical key -> index in types

    std::vector<int> frequency_multiset() const;         // sorted frequencies
    std::map<int, int> cardinality_histogram() const;    // |incidence| -> plane count
};

PlaneTypeCensus classify_plane_types(const SolidModel& model,
                                     const std::vector<VertexPlane>& planes);

/// Canonical orbit key of one plane's incidence set.
VertexMask plane_type_key(const SolidModel& model, const VertexPlane& plane);

/// Sorted multiset of exact squared distances over unordered vertex pairs in
/// the incidence set; an isometry invariant of the plane section.
std::vector<FieldElement> plane_metric_signature(const SolidModel& model,
                                                 const VertexPlane& plane);

/// Sum over planes of C(|incidence|, 3) against C(|V|, 3). Equality certifies
/// that no three vertices are collinear.
struct TripleCountIdentity {
    std::uint64_t sum = 0;
    std::uint64_t binomial = 0;
    bool holds() const { return sum == binomial; }
};

TripleCountIdentity triple_count_identity(const SolidModel& model,
                                          const std::vector<VertexPlane>& planes);

/// Indices of planes that support the solid (all non-incident vertices
/// strictly on one side); these are the facets.
std::vector<int> supporting_plane_indices(const SolidModel& model,
                                          const std::vector<VertexPlane>& planes);

}  // namespace planarstat
