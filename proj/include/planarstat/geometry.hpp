#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "planarstat/field.hpp"

namespace planarstat {

enum class SolidId { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

constexpr std::array<SolidId, 5> kAllSolids = {SolidId::Tetrahedron, SolidId::Cube,
                                               SolidId::Octahedron, SolidId::Dodecahedron,
                                               SolidId::Icosahedron};

std::string solid_name(SolidId id);
std::optional<SolidId> parse_solid(std::string_view name);

/// Subset of vertices as a bitmask over vertex indices.
using VertexMask = std::uint32_t;

/// Vertex permutation: perm[i] is the image of vertex i.
using Permutation = std::vector<int>;

Permutation compose(const Permutation& f, const Permutation& g);  // (f∘g)(i) = f[g[i]]
Permutation inverse_permutation(const Permutation& p);
std::vector<int> permutation_cycle_lengths(const Permutation& p);

/// Applies a fixed vertex permutation to subset bitmasks in two table lookups.
class MaskShuffle {
public:
    MaskShuffle() = default;
    explicit MaskShuffle(const Permutation& perm);

    VertexMask operator()(VertexMask m) const {
        return lo_[m & lo_mask_] | hi_[m >> lo_bits_];
    }

private:
    std::vector<VertexMask> lo_, hi_;
    unsigned lo_bits_ = 0;
    VertexMask lo_mask_ = 0;
};

/// A Platonic solid: exact vertex coordinates, the full isometry group as
/// vertex permutations, and the edge graph (pairs at minimal nonzero
/// distance). Immutable after construction.
struct SolidModel {
    SolidId id;
    std::vector<FieldVec3> vertices;
    std::vector<Permutation> group;        // lexicographically sorted, identity first
    std::vector<MaskShuffle> group_shuffles;
    std::vector<std::pair<int, int>> edges;  // i < j
    std::vector<std::vector<int>> adjacency;
    FieldElement edge_length_sq;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    VertexMask full_mask() const { return (VertexMask{1} << vertices.size()) - 1; }
};

SolidModel build_solid(SolidId id);

/// Assembles a model from an explicit vertex list (group, shuffles, edge
/// graph). The list must be origin-centered and span R^3.
SolidModel build_model_from_vertices(SolidId id, std::vector<FieldVec3> vertices);

/// Exact symmetry detection: all vertex permutations preserving the Gram
/// matrix of pairwise dot products. For an origin-centered, fully spanning
/// vertex set these are precisely the permutations induced by orthogonal
/// maps fixing the vertex set.
///
/// Throws std::invalid_argument if the centroid is not the origin or the
/// points do not span R^3.
std::vector<Permutation> compute_group(const std::vector<FieldVec3>& vertices);

/// Minimum of the subset's orbit under the group, in bitmask integer order.
/// Two subsets are congruent iff their canonical forms are equal.
VertexMask canonical_subset(const SolidModel& model, VertexMask subset);

bool are_congruent(const SolidModel& model, VertexMask x, VertexMask y);

/// Reconstructs the exact orthogonal matrix realizing a group permutation
/// from three linearly independent vertices.
FieldMat3 isometry_matrix(const SolidModel& model, const Permutation& perm);

/// Checks that the reconstructed matrix maps every vertex correctly and is
/// exactly orthogonal.
bool verify_isometry(const SolidModel& model, const Permutation& perm);

/// Human-readable non-congruence witness built from the induced edge graph:
/// the simple paths on four subset vertices, and for each path endpoint
/// whether some subset member off the path sits within edge-graph distance
/// two of it in the full solid graph.
struct PathCertificate {
    struct Path {
        std::array<int, 4> vertices;      // path sequence, first < last
        bool first_has_near_member;
        bool last_has_near_member;
    };
    std::vector<Path> paths;

    /// Congruence-invariant part: the multiset of unordered endpoint flag
    /// pairs, sorted. Equal subsets up to isometry give equal summaries.
    std::vector<std::pair<bool, bool>> invariant() const;
};

PathCertificate path_certificate(const SolidModel& model, VertexMask subset);

/// Number of subset orbits of each size under the group, from the cycle
/// index: (1/|G|) * sum_g prod_cycles (1 + x^len). Exact integers.
std::vector<std::uint64_t> subset_orbit_counts_by_size(const SolidModel& model);

/// Total number of subset orbits: (1/|G|) * sum_g 2^(#cycles of g).
std::uint64_t subset_orbit_count(const SolidModel& model);

}  // namespace planarstat
