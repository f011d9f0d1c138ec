// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "planarstat/io.hpp"
#include "planarstat/search.hpp"
#include "planarstat/sections.hpp"

using namespace planarstat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Outcome> g_results;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void record(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    g_results.push_back({id, name, pass, detail, seconds});
    std::printf("%s criterion %2d (%s): %s  [%.2f s]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
}

std::string run_cli_capture(const std::string& args, int* exit_code) {
    const std::string cmd = std::string(PLANARSTAT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return {};
    }
    std::string output;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return output;
}

const VertexMask kControl = (1u << 0) | (1u << 1) | (1u << 2) | (1u << 3) | (1u << 4) |
                            (1u << 5) | (1u << 6);

// shared heavyweight state
struct Shared {
    SolidModel dodeca = build_solid(SolidId::Dodecahedron);
    std::vector<VertexPlane> planes = enumerate_planes(dodeca);
    StatisticEngine engine{dodeca, planes};
    std::vector<PairReport> sweep;  // filled by criterion 6
};

void criterion1_plane_census(Shared& shared) {
    const auto start = Clock::now();
    int exit_code = -1;
    const std::string out =
        run_cli_capture("planes --solid dodecahedron --out acceptance_out", &exit_code);
    const bool cli_ok =
        exit_code == 0 && out.find("319 planes, 10 types") != std::string::npos;

    const auto census = classify_plane_types(shared.dodeca, shared.planes);
    const bool counts_ok =
        shared.planes.size() == 319 && census.types.size() == 10 &&
        census.frequency_multiset() == std::vector<int>{12, 12, 15, 20, 20, 30, 30, 60, 60, 60} &&
        census.cardinality_histogram() ==
            std::map<int, int>{{3, 200}, {4, 75}, {5, 24}, {6, 20}};
    const double t = seconds_since(start);
    std::ostringstream detail;
    detail << shared.planes.size() << " planes, " << census.types.size()
           << " types, frequencies and cardinalities exact";
    record(1, "plane census", cli_ok && counts_ok && t < 5.0, detail.str(), t);
}

void criterion2_triple_identity(Shared& shared) {
    const auto start = Clock::now();
    const auto identity = triple_count_identity(shared.dodeca, shared.planes);
    std::ostringstream detail;
    detail << "sum C(|incidence|,3) = " << identity.sum << " = C(20,3) = " << identity.binomial;
    record(2, "counting identity", identity.holds() && identity.sum == 1140, detail.str(),
           seconds_since(start));
}

void criterion3_group_orders() {
    const auto start = Clock::now();
    const std::map<SolidId, size_t> expected{{SolidId::Tetrahedron, 24},
                                             {SolidId::Cube, 48},
                                             {SolidId::Octahedron, 48},
                                             {SolidId::Dodecahedron, 120},
                                             {SolidId::Icosahedron, 120}};
    bool pass = true;
    std::ostringstream detail;
    for (SolidId id : kAllSolids) {
        const SolidModel model = build_solid(id);
        bool orthogonal = true;
        for (const auto& g : model.group) orthogonal = orthogonal && verify_isometry(model, g);
        pass = pass && model.group.size() == expected.at(id) && orthogonal;
        detail << solid_name(id) << "=" << model.group.size() << " ";
    }
    const double t = seconds_since(start);
    detail << "(all matrices exactly orthogonal)";
    record(3, "symmetry groups", pass && t < 10.0, detail.str(), t);
}

void criterion4_witness_certificate(Shared& shared) {
    // timed from precomputed planes, per the stated budget
    const auto start = Clock::now();
    const bool equal = statistics_equal(shared.engine.statistic(kWitnessS),
                                        shared.engine.statistic(kWitnessT));
    const bool congruent = are_congruent(shared.dodeca, kWitnessS, kWitnessT);
    const double t = seconds_since(start);
    std::ostringstream detail;
    detail << "PS(S) " << (equal ? "=" : "!=") << " PS(T), subsets "
           << (congruent ? "congruent" : "not congruent");
    record(4, "witness pair certificate", equal && !congruent && t < 1.0, detail.str(), t);
}

void criterion5_class_table(Shared& shared) {
    const auto start = Clock::now();
    const PlanarStatistic ps = shared.engine.statistic(kWitnessS);
    const std::map<std::pair<int, int>, int> expected{
        {{3, 0}, 52}, {{3, 1}, 92}, {{3, 2}, 50}, {{3, 3}, 6},  {{4, 0}, 9},
        {{4, 1}, 37}, {{4, 2}, 20}, {{4, 3}, 8},  {{4, 4}, 1},  {{5, 0}, 2},
        {{5, 1}, 8},  {{5, 2}, 8},  {{5, 3}, 6},  {{6, 0}, 1},  {{6, 1}, 5},
        {{6, 2}, 6},  {{6, 3}, 7},  {{6, 4}, 1}};
    const auto marginals = ps.stratum_marginals();
    std::map<int, int> sums;
    for (const auto& [pz, count] : marginals) sums[pz.first] += count;
    const bool pass = ps.class_count() == 63 && marginals == expected &&
                      sums == std::map<int, int>{{3, 200}, {4, 75}, {5, 24}, {6, 20}};
    std::ostringstream detail;
    detail << ps.class_count() << " classes, all 18 stratum marginals exact, sums 200/75/24/20";
    record(5, "class table reproduction", pass, detail.str(), seconds_since(start));
}

void criterion6_dodecahedron_sweep(Shared& shared) {
    const auto start = Clock::now();
    shared.sweep = full_sweep(shared.dodeca, shared.planes);
    bool pass = shared.sweep.size() == 21;
    for (int r = 0; r <= 6; ++r) pass = pass && shared.sweep[r].pairs.empty();
    const HomometricPair witness{
        std::min(canonical_subset(shared.dodeca, kWitnessS),
                 canonical_subset(shared.dodeca, kWitnessT)),
        std::max(canonical_subset(shared.dodeca, kWitnessS),
                 canonical_subset(shared.dodeca, kWitnessT))};
    pass = pass && shared.sweep[7].pairs.size() == 1 &&
           shared.sweep[7].pairs.front() == witness;
    std::ostringstream detail;
    detail << "pairs per size:";
    for (int r = 8; r <= 13; ++r) {
        pass = pass && !shared.sweep[r].pairs.empty();
    }
    for (const auto& report : shared.sweep) detail << " " << report.pairs.size();
    const double t = seconds_since(start);
    record(6, "uniqueness and existence", pass && t < 600.0, detail.str(), t);
}

void criterion7_injectivity_elsewhere() {
    const auto start = Clock::now();
    bool pass = true;
    std::ostringstream detail;
    for (SolidId id : {SolidId::Tetrahedron, SolidId::Cube, SolidId::Octahedron,
                       SolidId::Icosahedron}) {
        std::uint64_t pairs = 0;
        for (const auto& report : full_sweep(build_solid(id))) pairs += report.pairs.size();
        pass = pass && pairs == 0;
        detail << solid_name(id) << "=" << pairs << " ";
    }
    const double t = seconds_since(start);
    detail << "pairs";
    record(7, "injectivity elsewhere", pass && t < 120.0, detail.str(), t);
}

void criterion8_burnside(Shared& shared) {
    const auto start = Clock::now();
    const auto expected = subset_orbit_counts_by_size(shared.dodeca);
    bool pass = shared.sweep.size() == expected.size();
    std::uint64_t total = 0;
    for (size_t r = 0; pass && r < expected.size(); ++r) {
        pass = shared.sweep[r].orbit_count == expected[r];
        total += shared.sweep[r].orbit_count;
    }
    pass = pass && total == subset_orbit_count(shared.dodeca);
    std::ostringstream detail;
    detail << "orbit counts per size match the cycle index; total = " << total;
    record(8, "Burnside cross-check", pass, detail.str(), seconds_since(start));
}

void criterion9_section_distributions(Shared& shared) {
    const auto start = Clock::now();
    SectionConfig cfg;
    cfg.finalize(shared.dodeca);
    cfg.samples = 1'000'000;
    const double alpha = 0.01;

    const auto run = [&](VertexMask subset, std::uint64_t root, std::uint64_t stream) {
        SectionConfig c = cfg;
        c.seed = derive_seed(root, stream);
        return sample_section_distribution(shared.dodeca, subset, c);
    };

    // headline null comparison, seed 42
    const auto ds = run(kWitnessS, 42, 1);
    const auto dt = run(kWitnessT, 42, 2);
    const ComparisonReport null_report = compare_distributions(ds, dt, alpha);
    const bool null_ok = !null_report.reject;

    // control: exact effect confirmation first, then the rejection
    const bool ps_differ = !statistics_equal(shared.engine.statistic(kWitnessS),
                                             shared.engine.statistic(kControl));
    std::map<VertexMask, int> pair_types_s, pair_types_c;
    for (int i = 0; i < 20; ++i)
        for (int j = i + 1; j < 20; ++j) {
            const VertexMask pair = (VertexMask{1} << i) | (VertexMask{1} << j);
            const VertexMask key = canonical_subset(shared.dodeca, pair);
            if ((kWitnessS >> i & 1) && (kWitnessS >> j & 1)) ++pair_types_s[key];
            if ((kControl >> i & 1) && (kControl >> j & 1)) ++pair_types_c[key];
        }
    const bool effect_confirmed = ps_differ && pair_types_s != pair_types_c;

    const auto dc = run(kControl, 42, 2);
    const ComparisonReport control_report = compare_distributions(ds, dc, alpha);
    const bool control_ok = control_report.reject;

    // twenty-seed repetition of the null comparison
    int rejections = 0;
    for (std::uint64_t seed = 101; seed <= 120; ++seed) {
        const auto a = run(kWitnessS, seed, 1);
        const auto b = run(kWitnessT, seed, 2);
        if (compare_distributions(a, b, alpha).reject) ++rejections;
    }
    const double t = seconds_since(start);
    std::ostringstream detail;
    detail << "null p = " << null_report.p_value << ", control p = " << control_report.p_value
           << " (exact effect confirmed), rejections over 20 seeds = " << rejections;
    record(9, "section distributions",
           null_ok && effect_confirmed && control_ok && rejections <= 1 && t < 900.0,
           detail.str(), t);
}

void criterion10_sampler_calibration(Shared& shared) {
    const auto start = Clock::now();
    const double R = 2.0;
    const std::vector<double> radii{0.5, 1.0, std::sqrt(3.0)};
    const std::uint64_t n = 1'000'000;
    const auto hits = ball_hit_counts(42, R, radii, n);
    bool calibration = true;
    std::ostringstream detail;
    detail << "ball hits:";
    for (size_t i = 0; i < radii.size(); ++i) {
        const double p = radii[i] / R;
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
        const double freq = static_cast<double>(hits[i]) / static_cast<double>(n);
        calibration = calibration && std::abs(freq - p) < 3 * se;
        detail << " " << freq << "/" << p;
    }

    SectionConfig cfg;
    cfg.finalize(shared.dodeca);
    cfg.seed = 42;
    const Polytope ps = build_truncated(shared.dodeca, kWitnessS, cfg.cut_epsilon);
    const Polytope pt = build_truncated(shared.dodeca, kWitnessT, cfg.cut_epsilon);
    const auto paired = paired_zero_stratum_check(shared.dodeca, ps, pt, cfg, 20000);
    const bool paired_ok = paired.compared > 1000 && paired.max_deviation <= 1e-9;
    detail << "; zero-stratum max deviation = " << paired.max_deviation << " over "
           << paired.compared << " planes";
    const double t = seconds_since(start);
    record(10, "sampler calibration", calibration && paired_ok && t < 60.0, detail.str(), t);
}

}  // namespace

int main() {
    Shared shared;
    criterion1_plane_census(shared);
    criterion2_triple_identity(shared);
    criterion3_group_orders();
    criterion4_witness_certificate(shared);
    criterion5_class_table(shared);
    criterion6_dodecahedron_sweep(shared);
    criterion7_injectivity_elsewhere();
    criterion8_burnside(shared);
    criterion9_section_distributions(shared);
    criterion10_sampler_calibration(shared);

    int failed = 0;
    for (const auto& outcome : g_results)
        if (!outcome.pass) ++failed;
    if (failed == 0) std::printf("ALL %zu CRITERIA PASSED\n", g_results.size());
    else std::printf("%d of %zu criteria FAILED\n", failed, g_results.size());
    return failed == 0 ? 0 : 1;
}
