#include "planarstat/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "planarstat/parallel.hpp"
#include "planarstat/planes.hpp"

namespace planarstat {

double dot(const Vec3d& a, const Vec3d& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3d cross(const Vec3d& a, const Vec3d& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec3d normalized(const Vec3d& a) {
    const double len = std::sqrt(dot(a, a));
    return {a.x / len, a.y / len, a.z / len};
}

namespace {

Vec3d operator*(double s, const Vec3d& v) { return {s * v.x, s * v.y, s * v.z}; }
Vec3d operator+(const Vec3d& a, const Vec3d& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3d operator-(const Vec3d& a, const Vec3d& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

Vec3d to_double(const FieldVec3& v) {
    return {v.x.to_double(), v.y.to_double(), v.z.to_double()};
}

}  // namespace

std::vector<Vec3d> vertices_as_double(const SolidModel& model) {
    std::vector<Vec3d> out;
    out.reserve(model.vertices.size());
    for (const auto& v : model.vertices) out.push_back(to_double(v));
    return out;
}

Polytope build_truncated(const SolidModel& model, VertexMask subset, double cut_epsilon) {
    const double edge = std::sqrt(model.edge_length_sq.to_double());
    if (!(cut_epsilon > 0) || !(cut_epsilon < edge / 2))
        throw std::invalid_argument("cut epsilon must lie in (0, edge/2)");

    Polytope poly;
    const auto planes = enumerate_planes(model);
    for (int idx : supporting_plane_indices(model, planes)) {
        const auto& plane = planes[idx];
        Vec3d n = to_double(plane.normal);
        double d = plane.offset.to_double();
        if (d < 0) {  // orient so the interior (origin) satisfies n.x <= d
            n = -1.0 * n;
            d = -d;
        }
        const double len = std::sqrt(dot(n, n));
        poly.half_spaces.push_back({{n.x / len, n.y / len, n.z / len}, d / len, -1});
        ++poly.face_count;
    }

    const auto verts = vertices_as_double(model);
    for (int v = 0; v < model.vertex_count(); ++v) {
        if (!(subset >> v & 1)) continue;
        const Vec3d axis = normalized(verts[v]);
        double offset = 0;
        int count = 0;
        for (int w : model.adjacency[v]) {
            const Vec3d dir = normalized(verts[w] - verts[v]);
            const Vec3d cut = verts[v] + cut_epsilon * dir;
            offset += dot(axis, cut);
            ++count;
        }
        poly.half_spaces.push_back({axis, offset / count, v});
        ++poly.cap_count;
    }

    for (const auto& p : verts)
        poly.circumradius = std::max(poly.circumradius, std::sqrt(dot(p, p)));
    return poly;
}

double SampleRng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

Vec3d SampleRng::gaussian3() {
    // Box-Muller; four uniforms per call so the stream layout is fixed
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double u3 = 1.0 - uniform01();
    const double u4 = uniform01();
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    constexpr double tau = 2.0 * std::numbers::pi;
    return {r1 * std::cos(tau * u2), r1 * std::sin(tau * u2), r2 * std::cos(tau * u4)};
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    std::uint64_t z = root + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

PlaneSample sample_plane(SampleRng& rng, double sampling_radius) {
    Vec3d g = rng.gaussian3();
    while (dot(g, g) < 1e-24) g = rng.gaussian3();
    return {normalized(g), rng.uniform(-sampling_radius, sampling_radius)};
}

int stratum_of(const PlaneSample& plane, const std::vector<Vec3d>& vertices,
               double ball_epsilon) {
    int m = 0;
    for (const auto& v : vertices)
        if (std::abs(dot(plane.direction, v) - plane.offset) < ball_epsilon) ++m;
    return m;
}

void SectionConfig::finalize(const SolidModel& model) {
    const double edge = std::sqrt(model.edge_length_sq.to_double());
    if (cut_epsilon == 0) cut_epsilon = 0.05 * edge;
    if (ball_epsilon == 0) ball_epsilon = cut_epsilon;
    if (notch_length == 0) notch_length = 2.0 * cut_epsilon;
}

namespace {

struct ClipScratch {
    std::vector<Vec2d> poly, next;
};

// clip polygon against {a s + b t <= c}; returns false when it vanishes
bool clip_halfplane(std::vector<Vec2d>& poly, std::vector<Vec2d>& next, double a, double b,
                    double c, double tol) {
    const size_t n = poly.size();
    next.clear();
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& p = poly[i];
        const Vec2d& q = poly[(i + 1) % n];
        const double fp = a * p[0] + b * p[1] - c;
        const double fq = a * q[0] + b * q[1] - c;
        const bool in_p = fp <= tol;
        const bool in_q = fq <= tol;
        if (in_p) next.push_back(p);
        if (in_p != in_q) {
            const double t = fp / (fp - fq);
            next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    poly.swap(next);
    return poly.size() >= 3;
}

double polygon_area(const std::vector<Vec2d>& poly) {
    double twice = 0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& p = poly[i];
        const Vec2d& q = poly[(i + 1) % n];
        twice += p[0] * q[1] - p[1] * q[0];
    }
    return twice / 2;
}

void section_into(const Polytope& polytope, const PlaneSample& plane, const SectionConfig& cfg,
                  ClipScratch& scratch) {
    const Vec3d& n = plane.direction;
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3d seed{1, 0, 0};
    if (ay <= ax && ay <= az) seed = {0, 1, 0};
    else if (az <= ax && az <= ay) seed = {0, 0, 1};
    const Vec3d e1 = normalized(cross(seed, n));
    const Vec3d e2 = cross(n, e1);
    const Vec3d origin = plane.offset * n;

    const double half = 2.0 * cfg.sampling_radius;
    scratch.poly.assign({{-half, -half}, {half, -half}, {half, half}, {-half, half}});

    for (const auto& hs : polytope.half_spaces) {
        const double a = dot(hs.normal, e1);
        const double b = dot(hs.normal, e2);
        const double c = hs.offset - dot(hs.normal, origin);
        if (std::abs(a) < 1e-14 && std::abs(b) < 1e-14) {
            if (c < -cfg.clip_tolerance) {
                scratch.poly.clear();
                return;
            }
            continue;  // whole section plane inside this half-space
        }
        if (!clip_halfplane(scratch.poly, scratch.next, a, b, c, cfg.clip_tolerance)) {
            scratch.poly.clear();
            return;
        }
    }

    // drop near-duplicate consecutive vertices
    auto& poly = scratch.poly;
    auto& out = scratch.next;
    out.clear();
    for (const auto& p : poly) {
        if (!out.empty()) {
            const double dx = p[0] - out.back()[0], dy = p[1] - out.back()[1];
            if (dx * dx + dy * dy < 1e-18) continue;
        }
        out.push_back(p);
    }
    while (out.size() > 1) {
        const double dx = out.front()[0] - out.back()[0], dy = out.front()[1] - out.back()[1];
        if (dx * dx + dy * dy < 1e-18) out.pop_back();
        else break;
    }
    poly.swap(out);
    if (poly.size() < 3 || std::abs(polygon_area(poly)) < cfg.degenerate_area) poly.clear();
}

}  // namespace

std::vector<Vec2d> section(const Polytope& polytope, const PlaneSample& plane,
                           const SectionConfig& cfg) {
    ClipScratch scratch;
    section_into(polytope, plane, cfg, scratch);
    return scratch.poly;
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> cyclic_code(const std::vector<Vec2d>& poly,
                                                               double quantum) {
    const size_t n = poly.size();
    std::vector<double> len(n), ang(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& p = poly[i];
        const Vec2d& q = poly[(i + 1) % n];
        const Vec2d& r = poly[(i + 2) % n];
        const double e1x = q[0] - p[0], e1y = q[1] - p[1];
        const double e2x = r[0] - q[0], e2y = r[1] - q[1];
        len[i] = std::hypot(e1x, e1y);
        ang[i] = std::atan2(e1x * e2y - e1y * e2x, e1x * e2x + e1y * e2y);
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> code(n);
    for (size_t i = 0; i < n; ++i)
        code[i] = {std::llround(len[i] / quantum), std::llround(ang[i] / quantum)};
    return code;
}

void min_rotation(const std::vector<std::pair<std::int64_t, std::int64_t>>& code,
                  std::vector<std::pair<std::int64_t, std::int64_t>>& best) {
    const size_t n = code.size();
    for (size_t s = 0; s < n; ++s) {
        bool smaller = best.empty();
        for (size_t i = 0; i < n && !smaller; ++i) {
            const auto& cand = code[(s + i) % n];
            if (cand < best[i]) smaller = true;
            else if (best[i] < cand) break;
        }
        if (smaller) {
            best.resize(n);
            for (size_t i = 0; i < n; ++i) best[i] = code[(s + i) % n];
        }
    }
}

}  // namespace

SectionSignature signature(const std::vector<Vec2d>& polygon, double quantum) {
    SectionSignature sig;
    sig.vertex_count = static_cast<int>(polygon.size());
    if (polygon.size() < 3) return sig;
    const size_t n = polygon.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& p = polygon[i];
        const Vec2d& q = polygon[(i + 1) % n];
        sig.sorted_edges.push_back(std::hypot(q[0] - p[0], q[1] - p[1]));
    }
    for (double e : sig.sorted_edges) sig.perimeter += e;
    std::sort(sig.sorted_edges.begin(), sig.sorted_edges.end());
    sig.area = std::abs(polygon_area(polygon));

    // canonical cyclic code: minimum over rotations of the polygon and of
    // its mirror image
    const auto forward = cyclic_code(polygon, quantum);
    std::vector<Vec2d> mirrored(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& v = polygon[n - 1 - i];
        mirrored[i] = {-v[0], v[1]};
    }
    const auto reflected = cyclic_code(mirrored, quantum);
    min_rotation(forward, sig.code);
    min_rotation(reflected, sig.code);
    return sig;
}

namespace {

constexpr std::int32_t kUnusedSlot = -1;
constexpr size_t kMaxGapSlots = 8;

BinKey compute_bin(const std::vector<Vec2d>& poly, const SectionConfig& cfg) {
    BinKey key;
    key.fill(kUnusedSlot);
    const size_t n = poly.size();
    double perimeter = 0, area = std::abs(polygon_area(poly));
    double mid[64];
    int notches = 0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2d& p = poly[i];
        const Vec2d& q = poly[(i + 1) % n];
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        if (len < cfg.notch_length && notches < 64) mid[notches++] = perimeter + len / 2;
        perimeter += len;
    }
    key[0] = static_cast<std::int32_t>(n);
    key[1] = notches;
    key[2] = static_cast<std::int32_t>(std::floor(perimeter / cfg.perimeter_bin));
    key[3] = static_cast<std::int32_t>(std::floor(area / cfg.area_bin));
    if (notches >= 2) {
        double gaps[64];
        for (int i = 0; i + 1 < notches; ++i) gaps[i] = mid[i + 1] - mid[i];
        gaps[notches - 1] = perimeter - mid[notches - 1] + mid[0];
        std::sort(gaps, gaps + notches);
        const int stored = std::min<int>(notches, kMaxGapSlots);
        for (int i = 0; i < stored; ++i)
            key[4 + i] = static_cast<std::int32_t>(std::floor(gaps[i] / cfg.gap_bin));
    }
    return key;
}

}  // namespace

BinKey bin_of(const std::vector<Vec2d>& polygon, const SectionConfig& cfg) {
    return compute_bin(polygon, cfg);
}

SectionDistribution sample_section_distribution(const SolidModel& model, VertexMask subset,
                                                const SectionConfig& config) {
    SectionConfig cfg = config;
    cfg.finalize(model);
    const Polytope polytope = build_truncated(model, subset, cfg.cut_epsilon);
    if (!(cfg.sampling_radius > polytope.circumradius))
        throw std::invalid_argument("sampling radius must exceed the circumradius");
    const auto verts = vertices_as_double(model);

    struct ChunkResult {
        std::uint64_t misses = 0;
        std::map<BinKey, std::uint64_t> bins;
        std::map<int, StratumHistogram> strata;
    };
    const std::uint64_t chunk_size = std::max<std::uint64_t>(1, cfg.chunk_samples);
    const std::uint64_t chunks = (cfg.samples + chunk_size - 1) / chunk_size;
    std::vector<ChunkResult> results(chunks);

    parallel_chunks(chunks, [&](std::uint64_t c) {
        SampleRng rng(derive_seed(cfg.seed, c));
        const std::uint64_t count = std::min(chunk_size, cfg.samples - c * chunk_size);
        ChunkResult& res = results[c];
        ClipScratch scratch;
        for (std::uint64_t s = 0; s < count; ++s) {
            const PlaneSample plane = sample_plane(rng, cfg.sampling_radius);
            const int m = stratum_of(plane, verts, cfg.ball_epsilon);
            StratumHistogram& stratum = res.strata[m];
            ++stratum.planes;
            section_into(polytope, plane, cfg, scratch);
            if (scratch.poly.empty()) {
                ++res.misses;
                ++stratum.empty_sections;
                continue;
            }
            const BinKey key = compute_bin(scratch.poly, cfg);
            ++res.bins[key];
            ++stratum.bins[key];
        }
    });

    SectionDistribution dist;
    dist.solid = model.id;
    dist.subset = subset;
    dist.samples = cfg.samples;
    dist.config = cfg;
    for (const auto& res : results) {
        dist.misses += res.misses;
        for (const auto& [key, count] : res.bins) dist.histogram[key] += count;
        for (const auto& [m, sh] : res.strata) {
            StratumHistogram& target = dist.strata[m];
            target.planes += sh.planes;
            target.empty_sections += sh.empty_sections;
            for (const auto& [key, count] : sh.bins) target.bins[key] += count;
        }
    }
    return dist;
}

double chi_square_p_value(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0) return 1.0;
    const double s = dof / 2.0;
    const double x = statistic / 2.0;
    // regularized upper incomplete gamma Q(s, x)
    if (x < s + 1) {
        // series for P(s, x)
        double term = 1.0 / s;
        double sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (s + n);
            sum += term;
            if (term < sum * 1e-16) break;
        }
        const double p = sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    // Lentz continued fraction for Q(s, x)
    constexpr double tiny = 1e-300;
    double b = x + 1 - s;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
    return std::clamp(q, 0.0, 1.0);
}

namespace {

BinKey empty_section_key() {
    BinKey key;
    key.fill(-2);
    return key;
}

struct TwoSampleTest {
    double chi_square = 0;
    int dof = 0;
    double p_value = 1;
};

// general two-sample chi-square; bins whose smaller expected count is below 5
// are pooled into one overflow bin
TwoSampleTest two_sample_chi_square(const std::map<BinKey, std::pair<std::uint64_t, std::uint64_t>>& bins,
                                    std::uint64_t n1, std::uint64_t n2) {
    TwoSampleTest test;
    if (n1 == 0 || n2 == 0) return test;
    const double w1 = static_cast<double>(n1) / (n1 + n2);
    const double w2 = static_cast<double>(n2) / (n1 + n2);
    const double wmin = std::min(w1, w2);

    double overflow1 = 0, overflow2 = 0;
    int kept = 0;
    double chi = 0;
    const auto add_bin = [&](double o1, double o2) {
        const double pooled = o1 + o2;
        if (pooled <= 0) return;
        const double e1 = pooled * w1;
        const double e2 = pooled * w2;
        chi += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
        ++kept;
    };
    for (const auto& [key, counts] : bins) {
        const double o1 = static_cast<double>(counts.first);
        const double o2 = static_cast<double>(counts.second);
        if ((o1 + o2) * wmin < 5.0) {
            overflow1 += o1;
            overflow2 += o2;
        } else {
            add_bin(o1, o2);
        }
    }
    add_bin(overflow1, overflow2);
    test.chi_square = chi;
    test.dof = kept - 1;
    test.p_value = chi_square_p_value(chi, test.dof);
    return test;
}

void require_same_binning(const SectionConfig& a, const SectionConfig& b) {
    const bool same = a.sampling_radius == b.sampling_radius &&
                      a.ball_epsilon == b.ball_epsilon && a.quantum == b.quantum &&
                      a.notch_length == b.notch_length && a.perimeter_bin == b.perimeter_bin &&
                      a.area_bin == b.area_bin && a.gap_bin == b.gap_bin;
    if (!same) throw std::invalid_argument("section distributions use different binning");
}

}  // namespace

ComparisonReport compare_distributions(const SectionDistribution& a,
                                       const SectionDistribution& b, double alpha) {
    if (a.samples != b.samples)
        throw std::invalid_argument("section distributions have different sample counts");
    require_same_binning(a.config, b.config);

    ComparisonReport report;

    // overall test over signature bins plus the empty-section bin
    std::map<BinKey, std::pair<std::uint64_t, std::uint64_t>> bins;
    for (const auto& [key, count] : a.histogram) bins[key].first += count;
    for (const auto& [key, count] : b.histogram) bins[key].second += count;
    bins[empty_section_key()] = {a.misses, b.misses};
    const TwoSampleTest overall = two_sample_chi_square(bins, a.samples, b.samples);
    report.chi_square = overall.chi_square;
    report.dof = overall.dof;
    report.p_value = overall.p_value;
    report.reject = overall.p_value < alpha;

    double tv = 0;
    for (const auto& [key, counts] : bins)
        tv += std::abs(static_cast<double>(counts.first) / a.samples -
                       static_cast<double>(counts.second) / b.samples);
    report.total_variation = tv / 2;

    std::vector<int> strata;
    for (const auto& [m, sh] : a.strata) strata.push_back(m);
    for (const auto& [m, sh] : b.strata)
        if (!a.strata.count(m)) strata.push_back(m);
    std::sort(strata.begin(), strata.end());
    for (int m : strata) {
        std::map<BinKey, std::pair<std::uint64_t, std::uint64_t>> sbins;
        std::uint64_t n1 = 0, n2 = 0;
        if (auto it = a.strata.find(m); it != a.strata.end()) {
            n1 = it->second.planes;
            for (const auto& [key, count] : it->second.bins) sbins[key].first += count;
            sbins[empty_section_key()].first = it->second.empty_sections;
        }
        if (auto it = b.strata.find(m); it != b.strata.end()) {
            n2 = it->second.planes;
            for (const auto& [key, count] : it->second.bins) sbins[key].second += count;
            sbins[empty_section_key()].second = it->second.empty_sections;
        }
        const TwoSampleTest t = two_sample_chi_square(sbins, n1, n2);
        report.per_stratum.push_back({m, t.chi_square, t.dof, t.p_value, t.p_value < alpha});
    }
    return report;
}

PairedZeroStratumResult paired_zero_stratum_check(const SolidModel& model, const Polytope& a,
                                                  const Polytope& b, const SectionConfig& config,
                                                  std::uint64_t n_samples) {
    SectionConfig cfg = config;
    cfg.finalize(model);
    const auto verts = vertices_as_double(model);
    SampleRng rng(cfg.seed);
    PairedZeroStratumResult result;
    ClipScratch sa, sb;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const PlaneSample plane = sample_plane(rng, cfg.sampling_radius);
        if (stratum_of(plane, verts, cfg.ball_epsilon) != 0) continue;
        section_into(a, plane, cfg, sa);
        section_into(b, plane, cfg, sb);
        ++result.compared;
        if (sa.poly.empty() != sb.poly.empty()) {
            result.max_deviation = std::numeric_limits<double>::infinity();
            continue;
        }
        if (sa.poly.empty()) continue;
        if (sa.poly.size() != sb.poly.size()) {
            result.max_deviation = std::numeric_limits<double>::infinity();
            continue;
        }
        const size_t n = sa.poly.size();
        double best = std::numeric_limits<double>::infinity();
        for (size_t shift = 0; shift < n; ++shift) {
            double worst = 0;
            for (size_t i2 = 0; i2 < n && worst < best; ++i2) {
                const Vec2d& p = sa.poly[i2];
                const Vec2d& q = sb.poly[(i2 + shift) % n];
                worst = std::max(worst, std::hypot(p[0] - q[0], p[1] - q[1]));
            }
            best = std::min(best, worst);
        }
        result.max_deviation = std::max(result.max_deviation, best);
    }
    return result;
}

std::vector<std::uint64_t> ball_hit_counts(std::uint64_t seed, double sampling_radius,
                                           const std::vector<double>& radii, std::uint64_t n) {
    SampleRng rng(seed);
    std::vector<std::uint64_t> hits(radii.size(), 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        const PlaneSample plane = sample_plane(rng, sampling_radius);
        for (size_t r = 0; r < radii.size(); ++r)
            if (std::abs(plane.offset) <= radii[r]) ++hits[r];
    }
    return hits;
}

}  // namespace planarstat
