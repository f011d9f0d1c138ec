#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "planarstat/io.hpp"
#include "planarstat/stats.hpp"

using namespace planarstat;

namespace {

struct Fixture {
    SolidModel model = build_solid(SolidId::Dodecahedron);
    std::vector<VertexPlane> planes = enumerate_planes(model);
    StatisticEngine engine{model, planes};
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

std::vector<int> count_multiset(const PlanarStatistic& ps) {
    std::vector<int> counts;
    for (const auto& [key, count] : ps.classes) counts.push_back(count);
    std::sort(counts.begin(), counts.end());
    return counts;
}

}  // namespace

TEST_CASE("class keys for the empty and full subsets") {
    const auto& f = fixture();
    for (size_t p = 0; p < f.planes.size(); ++p) {
        const PlanarClassKey empty_key = f.engine.class_key(static_cast<int>(p), 0);
        CHECK(empty_key.subset_part == 0);
        CHECK(empty_key.plane_set == plane_type_key(f.model, f.planes[p]));
        const PlanarClassKey full_key =
            f.engine.class_key(static_cast<int>(p), f.model.full_mask());
        CHECK(full_key.subset_part == full_key.plane_set);
    }
}

TEST_CASE("engine keys match the direct group minimization") {
    const auto& f = fixture();
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<size_t> pick_p(0, f.planes.size() - 1);
    for (int i = 0; i < 300; ++i) {
        const size_t p = pick_p(rng);
        const VertexMask x = static_cast<VertexMask>(rng()) & f.model.full_mask();
        CHECK(f.engine.class_key(static_cast<int>(p), x) == class_key(f.model, f.planes[p], x));
    }
}

TEST_CASE("a square with an adjacent marked pair splits into two classes") {
    const auto& f = fixture();
    // metric squares: cardinality four, signature {4,4,4,4,8,8}
    const std::vector<FieldElement> square_sig{FieldElement(4), FieldElement(4), FieldElement(4),
                                               FieldElement(4), FieldElement(8), FieldElement(8)};
    std::set<PlanarClassKey> keys;
    int squares = 0;
    for (const auto& plane : f.planes) {
        if (plane.cardinality() != 4) continue;
        if (plane_metric_signature(f.model, plane) != square_sig) continue;
        ++squares;
        std::vector<int> idx;
        for (int i = 0; i < 20; ++i)
            if (plane.incidence >> i & 1) idx.push_back(i);
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b) {
                if (squared_distance(f.model.vertices[idx[a]], f.model.vertices[idx[b]]) !=
                    FieldElement(4))
                    continue;  // only the sides, not the diagonals
                const VertexMask pair = (VertexMask{1} << idx[a]) | (VertexMask{1} << idx[b]);
                keys.insert(class_key(f.model, plane, pair));
            }
    }
    CHECK(squares == 30);
    CHECK(keys.size() == 2);  // two inequivalent embeddings
}

TEST_CASE("planar statistic of the empty set reproduces the plane census") {
    const auto& f = fixture();
    const PlanarStatistic ps = f.engine.statistic(0);
    CHECK(ps.class_count() == 10);
    CHECK(ps.total() == 319);
    CHECK(count_multiset(ps) == std::vector<int>{12, 12, 15, 20, 20, 30, 30, 60, 60, 60});
}

TEST_CASE("witness subsets have identical statistics with 63 classes") {
    const auto& f = fixture();
    const PlanarStatistic ps_s = f.engine.statistic(kWitnessS);
    const PlanarStatistic ps_t = f.engine.statistic(kWitnessT);
    CHECK(ps_s.class_count() == 63);
    CHECK(ps_t.class_count() == 63);
    CHECK(statistics_equal(ps_s, ps_t));
    CHECK(fingerprint(ps_s) == fingerprint(ps_t));
    CHECK(f.engine.fingerprint(kWitnessS) == f.engine.fingerprint(kWitnessT));

    const std::map<std::pair<int, int>, int> expected_marginals{
        {{3, 0}, 52}, {{3, 1}, 92}, {{3, 2}, 50}, {{3, 3}, 6},  {{4, 0}, 9},
        {{4, 1}, 37}, {{4, 2}, 20}, {{4, 3}, 8},  {{4, 4}, 1},  {{5, 0}, 2},
        {{5, 1}, 8},  {{5, 2}, 8},  {{5, 3}, 6},  {{6, 0}, 1},  {{6, 1}, 5},
        {{6, 2}, 6},  {{6, 3}, 7},  {{6, 4}, 1}};
    CHECK(ps_s.stratum_marginals() == expected_marginals);
    CHECK(ps_t.stratum_marginals() == expected_marginals);

    // the 63 per-class counts as a multiset
    const std::vector<int> expected_counts{1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,
                                           1,  1,  1,  1,  2,  2,  2,  2,  2,  2,  2,  2,  2,
                                           2,  2,  2,  3,  3,  3,  3,  3,  3,  3,  4,  4,  4,
                                           4,  4,  4,  5,  5,  5,  6,  7,  7,  9,  9,  9,  9,
                                           10, 10, 10, 11, 15, 15, 16, 17, 18, 20, 20};
    CHECK(count_multiset(ps_s) == expected_counts);
}

TEST_CASE("statistic totals and marginals are consistent for random subsets") {
    const auto& f = fixture();
    std::mt19937_64 rng(53);
    const std::map<int, int> per_cardinality{{3, 200}, {4, 75}, {5, 24}, {6, 20}};
    for (int i = 0; i < 25; ++i) {
        const VertexMask x = static_cast<VertexMask>(rng()) & f.model.full_mask();
        const PlanarStatistic ps = f.engine.statistic(x);
        CHECK(ps.total() == 319);
        std::map<int, int> by_p;
        for (const auto& [pz, count] : ps.stratum_marginals()) by_p[pz.first] += count;
        CHECK(by_p == per_cardinality);
    }
}

TEST_CASE("statistic is invariant under the group") {
    const auto& f = fixture();
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<size_t> pick(0, f.model.group.size() - 1);
    for (int i = 0; i < 20; ++i) {
        const VertexMask x = static_cast<VertexMask>(rng()) & f.model.full_mask();
        const VertexMask image = f.model.group_shuffles[pick(rng)](x);
        CHECK(statistics_equal(f.engine.statistic(x), f.engine.statistic(image)));
    }
}

TEST_CASE("distinct statistics are detected") {
    const auto& f = fixture();
    const PlanarStatistic ps_empty = f.engine.statistic(0);
    const PlanarStatistic ps_full = f.engine.statistic(f.model.full_mask());
    CHECK(!statistics_equal(ps_empty, ps_full));
    CHECK(fingerprint(ps_empty) != fingerprint(ps_full));

    const VertexMask control = (1u << 0) | (1u << 1) | (1u << 2) | (1u << 3) | (1u << 4) |
                               (1u << 5) | (1u << 6);
    CHECK(!statistics_equal(f.engine.statistic(kWitnessS), f.engine.statistic(control)));
    CHECK(f.engine.fingerprint(kWitnessS) != f.engine.fingerprint(control));
}

TEST_CASE("statistics over different models cannot be compared") {
    const auto& f = fixture();
    const SolidModel tetra = build_solid(SolidId::Tetrahedron);
    const auto tetra_planes = enumerate_planes(tetra);
    const PlanarStatistic a = planar_statistic(tetra, tetra_planes, 0b0111);
    const PlanarStatistic b = f.engine.statistic(kWitnessS);
    CHECK_THROWS_AS(statistics_equal(a, b), std::invalid_argument);
}

TEST_CASE("restricted variant merges exactly the square ambiguity for the witness") {
    const auto& f = fixture();
    const PlanarStatistic variant_s =
        restricted_statistic_variant(f.model, f.planes, kWitnessS);
    CHECK(variant_s.class_count() == 62);  // one merge: the two square embeddings
    CHECK(variant_s.total() == 319);

    const PlanarStatistic variant_empty = restricted_statistic_variant(f.model, f.planes, 0);
    CHECK(variant_empty.class_count() == 10);
}

TEST_CASE("variant equals the main statistic for a subset avoiding all squares") {
    const auto& f = fixture();
    const VertexMask singleton = 1u << 0;
    const PlanarStatistic main = f.engine.statistic(singleton);
    const PlanarStatistic variant = restricted_statistic_variant(f.model, f.planes, singleton);
    CHECK(main.class_count() == 23);
    CHECK(variant.class_count() == 23);
}

TEST_CASE("main statistic refines the variant") {
    const auto& f = fixture();
    for (VertexMask x : {kWitnessS, VertexMask{(1u << 2) | (1u << 5) | (1u << 8)}}) {
        const PlanarStatistic main = f.engine.statistic(x);
        const auto merge = variant_merge_map(f.model, f.planes, x);
        const PlanarStatistic variant = restricted_statistic_variant(f.model, f.planes, x);
        // every main class maps into a variant class; counts are preserved
        std::map<PlanarClassKey, int> folded;
        for (const auto& [key, count] : main.classes) {
            REQUIRE(merge.count(key) == 1);
            folded[merge.at(key)] += count;
        }
        CHECK(folded == variant.classes);
        // surjectivity: every variant key is some main key's image
        for (const auto& [key, count] : variant.classes) CHECK(main.classes.count(key) == 1);
    }
}

TEST_CASE("fingerprint is stable across recomputation") {
    const auto& f = fixture();
    const Fingerprint fp1 = f.engine.fingerprint(kWitnessS);
    const StatisticEngine fresh(f.model, f.planes);
    const Fingerprint fp2 = fresh.fingerprint(kWitnessS);
    CHECK(fp1 == fp2);
    CHECK(fp1 == fingerprint(f.engine.statistic(kWitnessS)));
}
