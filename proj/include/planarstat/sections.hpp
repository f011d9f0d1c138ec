#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "planarstat/geometry.hpp"

namespace planarstat {

struct Vec3d {
    double x = 0, y = 0, z = 0;
};

double dot(const Vec3d& a, const Vec3d& b);
Vec3d cross(const Vec3d& a, const Vec3d& b);
Vec3d normalized(const Vec3d& a);

using Vec2d = std::array<double, 2>;

/// One half-space {x : normal.x <= offset}. cap_vertex is the truncated
/// vertex index, or -1 for a facet of the solid.
struct HalfSpace {
    Vec3d normal;  // unit
    double offset = 0;
    int cap_vertex = -1;
};

/// Convex polytope as a half-space intersection: the solid's facets plus one
/// truncation cap per selected vertex.
struct Polytope {
    std::vector<HalfSpace> half_spaces;
    double circumradius = 0;
    int face_count = 0;
    int cap_count = 0;
};

/// Truncates every subset vertex by the plane through the three points at
/// distance cut_epsilon from it along its edges. Requires
/// 0 < cut_epsilon < edge/2; throws std::invalid_argument otherwise.
Polytope build_truncated(const SolidModel& model, VertexMask subset, double cut_epsilon);

/// Plane {x : direction.x = offset}.
struct PlaneSample {
    Vec3d direction;  // unit
    double offset = 0;
};

/// Deterministic uniform/Gaussian source; the raw engine is the standard
/// mt19937_64 sequence and all real-valued mappings are done here so the
/// stream is reproducible.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
    double uniform01();  // [0, 1)
    double uniform(double lo, double hi);
    Vec3d gaussian3();

private:
    std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Direction uniform on the sphere, offset uniform in [-R, R].
PlaneSample sample_plane(SampleRng& rng, double sampling_radius);

/// Number of vertices closer than ball_epsilon to the plane.
int stratum_of(const PlaneSample& plane, const std::vector<Vec3d>& vertices,
               double ball_epsilon);

std::vector<Vec3d> vertices_as_double(const SolidModel& model);

struct SectionConfig {
    double cut_epsilon = 0;     // cap cut distance; 0 -> 5% of edge length
    double ball_epsilon = 0;    // stratum ball radius; 0 -> cut_epsilon
    double sampling_radius = 2.0;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;

    double clip_tolerance = 1e-9;
    double degenerate_area = 1e-12;
    double quantum = 1e-4;  // signature quantization

    // histogram binning of signatures
    double notch_length = 0;  // edges shorter than this are truncation notches; 0 -> derived
    double perimeter_bin = 0.25;
    double area_bin = 0.25;
    double gap_bin = 0.25;

    std::uint64_t chunk_samples = 1 << 14;

    /// Fills the derived defaults from the model (edge length, notch size).
    void finalize(const SolidModel& model);
};

/// Section polygon in an orthonormal in-plane frame, vertices in
/// counter-clockwise order; empty when the plane misses the polytope.
std::vector<Vec2d> section(const Polytope& polytope, const PlaneSample& plane,
                           const SectionConfig& cfg);

/// Isometry-invariant descriptor of a convex section polygon.
struct SectionSignature {
    int vertex_count = 0;
    double perimeter = 0;
    double area = 0;
    std::vector<double> sorted_edges;
    /// Canonical cyclic (edge length, exterior angle) code, quantized and
    /// minimized over rotations and reflections.
    std::vector<std::pair<std::int64_t, std::int64_t>> code;
};

SectionSignature signature(const std::vector<Vec2d>& polygon, double quantum);

/// Histogram bin of a section: a coarse isometry-invariant signature made of
/// vertex count, truncation-notch count, perimeter and area buckets, then
/// the sorted quantized arc gaps between notches. Unused slots hold -1.
using BinKey = std::array<std::int32_t, 12>;

BinKey bin_of(const std::vector<Vec2d>& polygon, const SectionConfig& cfg);

struct StratumHistogram {
    std::uint64_t planes = 0;          // samples whose plane fell in this stratum
    std::uint64_t empty_sections = 0;  // of those, how many missed the polytope
    std::map<BinKey, std::uint64_t> bins;
};

struct SectionDistribution {
    SolidId solid;
    VertexMask subset = 0;
    std::uint64_t samples = 0;
    std::uint64_t misses = 0;
    std::map<BinKey, std::uint64_t> histogram;
    std::map<int, StratumHistogram> strata;
    SectionConfig config;
};

/// Monte Carlo sampling of the section-signature distribution of the
/// truncated polytope. Deterministic for a given config, independent of the
/// worker count (fixed RNG chunking).
SectionDistribution sample_section_distribution(const SolidModel& model, VertexMask subset,
                                                const SectionConfig& cfg);

struct StratumTest {
    int stratum = 0;
    double chi_square = 0;
    int dof = 0;
    double p_value = 1;
    bool reject = false;
};

struct ComparisonReport {
    double chi_square = 0;
    int dof = 0;
    double p_value = 1;
    bool reject = false;
    double total_variation = 0;
    std::vector<StratumTest> per_stratum;
};

/// Two-sample chi-square over pooled signature bins (pooled count < 10
/// merged into one overflow bin), overall and per stratum, plus the raw
/// total-variation distance. Requires equal sample counts and identical
/// binning parameters; throws std::invalid_argument otherwise.
ComparisonReport compare_distributions(const SectionDistribution& a,
                                       const SectionDistribution& b, double alpha);

/// Survival function of the chi-square distribution (upper tail).
double chi_square_p_value(double statistic, int dof);

struct PairedZeroStratumResult {
    std::uint64_t compared = 0;
    double max_deviation = 0;
};

/// Replays one plane stream against both polytopes and compares the section
/// polygons of every stratum-0 plane pointwise.
PairedZeroStratumResult paired_zero_stratum_check(const SolidModel& model, const Polytope& a,
                                                  const Polytope& b, const SectionConfig& cfg,
                                                  std::uint64_t n_samples);

/// Sampler calibration: how many of n planes hit the origin ball of each
/// radius. The expected fraction is r / sampling_radius.
std::vector<std::uint64_t> ball_hit_counts(std::uint64_t seed, double sampling_radius,
                                           const std::vector<double>& radii, std::uint64_t n);

}  // namespace planarstat
