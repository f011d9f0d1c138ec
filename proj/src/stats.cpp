#include "planarstat/stats.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace planarstat {

namespace {

constexpr unsigned kPackShift = 32;

std::uint64_t pack(VertexMask plane_set, VertexMask subset_part) {
    return (std::uint64_t{plane_set} << kPackShift) | subset_part;
}

PlanarClassKey unpack(std::uint64_t packed) {
    return {static_cast<VertexMask>(packed >> kPackShift),
            static_cast<VertexMask>(packed & 0xffffffffu)};
}

// 128-bit FNV-1a over a byte stream
struct Fnv128 {
    unsigned __int128 state;

    Fnv128() {
        state = (static_cast<unsigned __int128>(0x6c62272e07bb0142ULL) << 64) |
                0x62b821756295c58dULL;
    }
    void feed(const void* data, size_t len) {
        constexpr unsigned __int128 prime =
            (static_cast<unsigned __int128>(0x0000000001000000ULL) << 64) | 0x000000000000013bULL;
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= prime;
        }
    }
    Fingerprint digest() const {
        return {static_cast<std::uint64_t>(state >> 64), static_cast<std::uint64_t>(state)};
    }
};

Fingerprint hash_sorted_keys(const std::vector<std::uint64_t>& sorted) {
    Fnv128 h;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const std::uint64_t key = sorted[i];
        const std::uint64_t count = j - i;
        h.feed(&key, sizeof key);
        h.feed(&count, sizeof count);
        i = j;
    }
    return h.digest();
}

}  // namespace

int PlanarStatistic::total() const {
    int t = 0;
    for (const auto& [key, count] : classes) t += count;
    return t;
}

std::map<std::pair<int, int>, int> PlanarStatistic::stratum_marginals() const {
    std::map<std::pair<int, int>, int> out;
    for (const auto& [key, count] : classes)
        out[{std::popcount(key.plane_set), std::popcount(key.subset_part)}] += count;
    return out;
}

StatisticEngine::StatisticEngine(const SolidModel& model, const std::vector<VertexPlane>& planes)
    : model_(&model), planes_(&planes) {
    per_plane_.reserve(planes.size());
    for (const auto& plane : planes) {
        PlaneCanon pc;
        pc.canon = ~VertexMask{0};
        for (size_t g = 0; g < model.group_shuffles.size(); ++g)
            pc.canon = std::min(pc.canon, model.group_shuffles[g](plane.incidence));
        for (size_t g = 0; g < model.group_shuffles.size(); ++g)
            if (model.group_shuffles[g](plane.incidence) == pc.canon)
                pc.coset.push_back(static_cast<int>(g));
        per_plane_.push_back(std::move(pc));
    }
}

PlanarClassKey StatisticEngine::class_key(int plane_index, VertexMask subset) const {
    const auto& pc = per_plane_[plane_index];
    const VertexMask z = (*planes_)[plane_index].incidence & subset;
    VertexMask best = ~VertexMask{0};
    for (int g : pc.coset) best = std::min(best, model_->group_shuffles[g](z));
    return {pc.canon, best};
}

void StatisticEngine::packed_keys(VertexMask subset, std::vector<std::uint64_t>& out) const {
    out.clear();
    out.reserve(per_plane_.size());
    for (size_t p = 0; p < per_plane_.size(); ++p) {
        const auto key = class_key(static_cast<int>(p), subset);
        out.push_back(pack(key.plane_set, key.subset_part));
    }
}

PlanarStatistic StatisticEngine::statistic(VertexMask subset) const {
    PlanarStatistic ps;
    ps.solid = model_->id;
    ps.subset = subset;
    std::vector<std::uint64_t> keys;
    packed_keys(subset, keys);
    for (std::uint64_t k : keys) ++ps.classes[unpack(k)];
    return ps;
}

Fingerprint StatisticEngine::fingerprint(VertexMask subset) const {
    std::vector<std::uint64_t> keys;
    packed_keys(subset, keys);
    std::sort(keys.begin(), keys.end());
    return hash_sorted_keys(keys);
}

PlanarClassKey class_key(const SolidModel& model, const VertexPlane& plane, VertexMask subset) {
    const VertexMask z = plane.incidence & subset;
    std::uint64_t best = ~std::uint64_t{0};
    for (const auto& shuffle : model.group_shuffles)
        best = std::min(best, pack(shuffle(plane.incidence), shuffle(z)));
    return unpack(best);
}

PlanarStatistic planar_statistic(const SolidModel& model, const std::vector<VertexPlane>& planes,
                                 VertexMask subset) {
    return StatisticEngine(model, planes).statistic(subset);
}

bool statistics_equal(const PlanarStatistic& a, const PlanarStatistic& b) {
    if (a.solid != b.solid || a.total() != b.total())
        throw std::invalid_argument("planar statistics built over different models");
    return a.classes == b.classes;
}

Fingerprint fingerprint(const PlanarStatistic& ps) {
    std::vector<std::uint64_t> keys;
    keys.reserve(ps.classes.size() * 2);
    for (const auto& [key, count] : ps.classes)
        for (int c = 0; c < count; ++c) keys.push_back(pack(key.plane_set, key.subset_part));
    return hash_sorted_keys(keys);  // map iteration is already sorted
}

namespace {

// Is there a bijection between the two configurations that preserves exact
// pairwise squared distances and subset membership? Such a bijection always
// extends to an isometry of R^3.
bool configurations_congruent(const SolidModel& model, const PlanarClassKey& k1,
                              const PlanarClassKey& k2) {
    if (std::popcount(k1.plane_set) != std::popcount(k2.plane_set) ||
        std::popcount(k1.subset_part) != std::popcount(k2.subset_part))
        return false;
    std::vector<int> a, b;
    std::vector<bool> za, zb;
    for (int i = 0; i < model.vertex_count(); ++i) {
        if (k1.plane_set >> i & 1) {
            a.push_back(i);
            za.push_back((k1.subset_part >> i & 1) != 0);
        }
        if (k2.plane_set >> i & 1) {
            b.push_back(i);
            zb.push_back((k2.subset_part >> i & 1) != 0);
        }
    }
    const int n = static_cast<int>(a.size());
    std::vector<int> mp(n, -1);
    std::vector<bool> used(n, false);

    const auto matches = [&](int i, int c) {
        if (za[i] != zb[c]) return false;
        for (int j = 0; j < i; ++j) {
            const FieldElement d1 =
                squared_distance(model.vertices[a[i]], model.vertices[a[j]]);
            const FieldElement d2 =
                squared_distance(model.vertices[b[c]], model.vertices[b[mp[j]]]);
            if (d1 != d2) return false;
        }
        return true;
    };
    const auto backtrack = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        for (int c = 0; c < n; ++c) {
            if (used[c] || !matches(i, c)) continue;
            used[c] = true;
            mp[i] = c;
            if (self(self, i + 1)) return true;
            used[c] = false;
            mp[i] = -1;
        }
        return false;
    };
    return backtrack(backtrack, 0);
}

}  // namespace

std::map<PlanarClassKey, PlanarClassKey> variant_merge_map(
    const SolidModel& model, const std::vector<VertexPlane>& planes, VertexMask subset) {
    const PlanarStatistic main = planar_statistic(model, planes, subset);
    std::vector<PlanarClassKey> reps;
    std::map<PlanarClassKey, PlanarClassKey> merge;
    for (const auto& [key, count] : main.classes) {  // ascending: first hit is smallest
        bool found = false;
        for (const auto& rep : reps)
            if (configurations_congruent(model, key, rep)) {
                merge.emplace(key, rep);
                found = true;
                break;
            }
        if (!found) {
            reps.push_back(key);
            merge.emplace(key, key);
        }
    }
    return merge;
}

PlanarStatistic restricted_statistic_variant(const SolidModel& model,
                                             const std::vector<VertexPlane>& planes,
                                             VertexMask subset) {
    const PlanarStatistic main = planar_statistic(model, planes, subset);
    const auto merge = variant_merge_map(model, planes, subset);
    PlanarStatistic variant;
    variant.solid = main.solid;
    variant.subset = main.subset;
    for (const auto& [key, count] : main.classes) variant.classes[merge.at(key)] += count;
    return variant;
}

}  // namespace planarstat
