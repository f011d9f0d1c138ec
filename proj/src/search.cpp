#include "planarstat/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <stdexcept>

#include "planarstat/parallel.hpp"

namespace planarstat {

namespace {

// canonical orbit minima in ascending order, via orbit marking
std::vector<VertexMask> all_orbit_representatives(const SolidModel& model) {
    const std::uint64_t space = std::uint64_t{1} << model.vertex_count();
    std::vector<bool> visited(space, false);
    std::vector<VertexMask> reps;
    for (std::uint64_t m = 0; m < space; ++m) {
        if (visited[m]) continue;
        reps.push_back(static_cast<VertexMask>(m));
        for (const auto& shuffle : model.group_shuffles)
            visited[shuffle(static_cast<VertexMask>(m))] = true;
    }
    return reps;
}

struct SweepData {
    std::vector<VertexMask> reps;
    std::vector<Fingerprint> prints;
};

SweepData sweep_fingerprints(const StatisticEngine& engine,
                             const std::vector<VertexMask>& reps) {
    SweepData data;
    data.reps = reps;
    data.prints.resize(reps.size());
    constexpr std::uint64_t kChunk = 512;
    const std::uint64_t chunks = (reps.size() + kChunk - 1) / kChunk;
    parallel_chunks(chunks, [&](std::uint64_t c) {
        const size_t begin = c * kChunk;
        const size_t end = std::min(reps.size(), begin + kChunk);
        for (size_t i = begin; i < end; ++i) data.prints[i] = engine.fingerprint(reps[i]);
    });
    return data;
}

std::vector<HomometricPair> pairs_for_size(const StatisticEngine& engine,
                                           const SweepData& data, int r,
                                           std::uint64_t* orbit_count) {
    const SolidModel& model = engine.model();
    std::map<Fingerprint, std::vector<VertexMask>> buckets;
    std::uint64_t count = 0;
    for (size_t i = 0; i < data.reps.size(); ++i) {
        if (std::popcount(data.reps[i]) != r) continue;
        ++count;
        buckets[data.prints[i]].push_back(data.reps[i]);
    }
    if (orbit_count) *orbit_count = count;

    std::vector<HomometricPair> pairs;
    std::vector<std::uint64_t> keys_a, keys_b;
    for (const auto& [print, members] : buckets) {
        if (members.size() < 2) continue;
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j) {
                engine.packed_keys(members[i], keys_a);
                engine.packed_keys(members[j], keys_b);
                std::sort(keys_a.begin(), keys_a.end());
                std::sort(keys_b.begin(), keys_b.end());
                if (keys_a != keys_b) continue;  // fingerprint collision
                // soundness: re-verify with the public predicates
                if (!statistics_equal(engine.statistic(members[i]),
                                      engine.statistic(members[j])))
                    throw std::logic_error("statistic comparison disagrees with key stream");
                if (are_congruent(model, members[i], members[j]))
                    throw std::logic_error("congruent orbit representatives are not unique");
                pairs.push_back({std::min(members[i], members[j]),
                                 std::max(members[i], members[j])});
            }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

std::vector<VertexMask> orbit_representatives(const SolidModel& model, int r) {
    if (r < 0 || r > model.vertex_count())
        throw std::invalid_argument("subset size out of range");
    std::vector<VertexMask> out;
    for (VertexMask rep : all_orbit_representatives(model))
        if (std::popcount(rep) == r) out.push_back(rep);
    return out;
}

PairReport find_homometric_pairs(const SolidModel& model,
                                 const std::vector<VertexPlane>& planes, int r) {
    if (r < 0 || r > model.vertex_count())
        throw std::invalid_argument("subset size out of range");
    const auto start = std::chrono::steady_clock::now();
    const StatisticEngine engine(model, planes);
    const auto reps = orbit_representatives(model, r);
    const SweepData data = sweep_fingerprints(engine, reps);
    PairReport report;
    report.solid = model.id;
    report.size = r;
    report.pairs = pairs_for_size(engine, data, r, &report.orbit_count);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<PairReport> full_sweep(const SolidModel& model,
                                   const std::vector<VertexPlane>& planes) {
    const StatisticEngine engine(model, planes);
    const SweepData data = sweep_fingerprints(engine, all_orbit_representatives(model));
    std::vector<PairReport> reports;
    for (int r = 0; r <= model.vertex_count(); ++r) {
        const auto size_start = std::chrono::steady_clock::now();
        PairReport report;
        report.solid = model.id;
        report.size = r;
        report.pairs = pairs_for_size(engine, data, r, &report.orbit_count);
        report.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - size_start).count();
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<PairReport> full_sweep(const SolidModel& model) {
    return full_sweep(model, enumerate_planes(model));
}

}  // namespace planarstat
