#include "planarstat/planes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace planarstat {

namespace {

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

void canonical_scale(FieldVec3& normal, FieldElement& offset) {
    const FieldElement* pivot = nullptr;
    if (!normal.x.is_zero()) pivot = &normal.x;
    else if (!normal.y.is_zero()) pivot = &normal.y;
    else pivot = &normal.z;
    const FieldElement p = *pivot;  // copy; scaling mutates the components
    normal = {normal.x / p, normal.y / p, normal.z / p};
    offset = offset / p;
}

}  // namespace

std::optional<VertexPlane> plane_through(const SolidModel& model, int i, int j, int k) {
    const auto& v = model.vertices;
    FieldVec3 normal = cross(v[j] - v[i], v[k] - v[i]);
    if (normal.is_zero()) return std::nullopt;
    FieldElement offset = dot(normal, v[i]);
    canonical_scale(normal, offset);
    VertexMask incidence = 0;
    for (int t = 0; t < model.vertex_count(); ++t)
        if (dot(normal, v[t]) == offset) incidence |= VertexMask{1} << t;
    return VertexPlane{normal, offset, incidence};
}

std::vector<VertexPlane> enumerate_planes(const SolidModel& model) {
    const int n = model.vertex_count();
    std::map<VertexMask, VertexPlane> dedup;  // incidence set is the identity of a plane
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto plane = plane_through(model, i, j, k);
                if (plane) dedup.try_emplace(plane->incidence, *plane);
            }
    std::vector<VertexPlane> out;
    out.reserve(dedup.size());
    for (auto& [inc, plane] : dedup) out.push_back(plane);
    return out;
}

VertexMask plane_type_key(const SolidModel& model, const VertexPlane& plane) {
    return canonical_subset(model, plane.incidence);
}

PlaneTypeCensus classify_plane_types(const SolidModel& model,
                                     const std::vector<VertexPlane>& planes) {
    std::map<VertexMask, PlaneTypeCensus::TypeInfo> grouped;
    for (const auto& plane : planes) {
        const VertexMask key = plane_type_key(model, plane);
        auto [it, inserted] = grouped.try_emplace(
            key, PlaneTypeCensus::TypeInfo{key, plane.cardinality(), 0});
        ++it->second.frequency;
    }
    PlaneTypeCensus census;
    for (auto& [key, info] : grouped) {
        census.key_to_index.emplace(key, static_cast<int>(census.types.size()));
        census.types.push_back(info);
    }
    return census;
}

std::vector<int> PlaneTypeCensus::frequency_multiset() const {
    std::vector<int> freqs;
    freqs.reserve(types.size());
    for (const auto& t : types) freqs.push_back(t.frequency);
    std::sort(freqs.begin(), freqs.end());
    return freqs;
}

std::map<int, int> PlaneTypeCensus::cardinality_histogram() const {
    std::map<int, int> hist;
    for (const auto& t : types) hist[t.cardinality] += t.frequency;
    return hist;
}

std::vector<FieldElement> plane_metric_signature(const SolidModel& model,
                                                 const VertexPlane& plane) {
    std::vector<int> idx;
    for (int i = 0; i < model.vertex_count(); ++i)
        if (plane.incidence >> i & 1) idx.push_back(i);
    std::vector<FieldElement> sig;
    sig.reserve(idx.size() * (idx.size() - 1) / 2);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            sig.push_back(squared_distance(model.vertices[idx[i]], model.vertices[idx[j]]));
    std::sort(sig.begin(), sig.end(), lex_less);
    return sig;
}

TripleCountIdentity triple_count_identity(const SolidModel& model,
                                          const std::vector<VertexPlane>& planes) {
    TripleCountIdentity id;
    for (const auto& plane : planes) id.sum += choose3(plane.cardinality());
    id.binomial = choose3(model.vertex_count());
    return id;
}

std::vector<int> supporting_plane_indices(const SolidModel& model,
                                          const std::vector<VertexPlane>& planes) {
    std::vector<int> out;
    for (size_t p = 0; p < planes.size(); ++p) {
        const auto& plane = planes[p];
        int side = 0;
        bool supporting = true;
        for (int i = 0; i < model.vertex_count() && supporting; ++i) {
            if (plane.incidence >> i & 1) continue;
            const int s = (dot(plane.normal, model.vertices[i]) - plane.offset).sign();
            if (s == 0) throw std::logic_error("incidence mask misses a vertex on the plane");
            if (side == 0) side = s;
            supporting = (s == side);
        }
        if (supporting) out.push_back(static_cast<int>(p));
    }
    return out;
}

}  // namespace planarstat
