#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "planarstat/io.hpp"
#include "planarstat/search.hpp"
#include "planarstat/sections.hpp"
#include "planarstat/svg.hpp"

namespace {

using namespace planarstat;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    std::string out = "out";
    std::string format;  // "", "json" or "csv"

    bool want_json() const { return format.empty() || format == "json"; }
    bool want_csv() const { return format.empty() || format == "csv"; }
    std::filesystem::path dir() const { return out; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "output directory")->capture_default_str();
    cmd->add_option("--format", opts.format, "restrict file outputs to json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

std::optional<SolidId> solid_or_usage(const std::string& name) {
    const auto id = parse_solid(name);
    if (!id) std::cerr << "error: unknown solid '" << name << "'\n";
    return id;
}

int cmd_planes(const std::string& solid, const CommonOpts& common) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    const auto planes = enumerate_planes(model);
    const auto census = classify_plane_types(model, planes);
    const auto identity = triple_count_identity(model, planes);

    std::printf("%zu plane%s, %zu type%s\n", planes.size(), planes.size() == 1 ? "" : "s",
                census.types.size(), census.types.size() == 1 ? "" : "s");
    std::printf("triple identity: sum C(|incidence|,3) = %llu, C(%d,3) = %llu -> %s\n",
                static_cast<unsigned long long>(identity.sum), model.vertex_count(),
                static_cast<unsigned long long>(identity.binomial),
                identity.holds() ? "holds" : "VIOLATED");

    if (common.want_json())
        write_file(common.dir() / "planes.json", planes_json(model, planes, census).dump(2) + "\n");
    if (common.want_csv())
        write_file(common.dir() / "plane_types.csv", plane_types_csv(model, census));
    return identity.holds() ? kExitOk : kExitVerificationFailed;
}

int cmd_stats(const std::string& solid, const std::string& subset_text,
              const CommonOpts& common) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    const auto subset = parse_subset(subset_text, model.vertex_count());
    if (!subset) return usage_error("invalid subset '" + subset_text + "'");
    const auto planes = enumerate_planes(model);
    const PlanarStatistic ps = planar_statistic(model, planes, *subset);

    std::printf("%d classes, total %d over %zu planes\n", ps.class_count(), ps.total(),
                planes.size());
    if (common.want_json())
        write_file(common.dir() / "stats.json",
                   stats_json(ps, static_cast<int>(planes.size())).dump(2) + "\n");
    if (common.want_csv())
        write_file(common.dir() / "stats_strata.csv", stats_strata_csv(ps));
    return kExitOk;
}

int cmd_verify(const std::string& solid, const std::string& s_text, const std::string& t_text,
               const CommonOpts&) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    const auto s = parse_subset(s_text, model.vertex_count());
    if (!s) return usage_error("invalid subset '" + s_text + "'");
    const auto t = parse_subset(t_text, model.vertex_count());
    if (!t) return usage_error("invalid subset '" + t_text + "'");

    const auto planes = enumerate_planes(model);
    const StatisticEngine engine(model, planes);
    const bool equal = statistics_equal(engine.statistic(*s), engine.statistic(*t));
    const bool congruent = are_congruent(model, *s, *t);
    const auto cert_s = path_certificate(model, *s);
    const auto cert_t = path_certificate(model, *t);
    const bool cert_distinguishes = cert_s.invariant() != cert_t.invariant();

    std::printf("%s statistics equal\n", equal ? "PASS" : "FAIL");
    std::printf("%s subsets not congruent\n", !congruent ? "PASS" : "FAIL");
    std::printf("%s path certificates distinguish the subsets\n",
                cert_distinguishes ? "PASS" : "FAIL");
    for (const auto& cert : {std::make_pair('S', &cert_s), std::make_pair('T', &cert_t)})
        for (const auto& path : cert.second->paths)
            std::printf("  %c path: %d-%d-%d-%d near-member flags: %d %d\n", cert.first,
                        path.vertices[0], path.vertices[1], path.vertices[2], path.vertices[3],
                        path.first_has_near_member ? 1 : 0, path.last_has_near_member ? 1 : 0);
    return (equal && !congruent && cert_distinguishes) ? kExitOk : kExitVerificationFailed;
}

int cmd_search(const std::string& solid, int size, bool all_sizes, const CommonOpts& common) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    if (!all_sizes && (size < 0 || size > model.vertex_count()))
        return usage_error("subset size out of range; pass --size 0.." +
                           std::to_string(model.vertex_count()) + " or --all-sizes");
    const auto planes = enumerate_planes(model);

    std::vector<PairReport> reports;
    if (all_sizes) reports = full_sweep(model, planes);
    else reports.push_back(find_homometric_pairs(model, planes, size));

    std::uint64_t total = 0;
    double seconds = 0;
    for (const auto& report : reports) {
        total += report.pairs.size();
        seconds += report.seconds;
        std::printf("size %2d: %llu orbit representatives, %zu homometric pairs\n", report.size,
                    static_cast<unsigned long long>(report.orbit_count), report.pairs.size());
    }
    std::printf("total pairs: %llu (%.2f s)\n", static_cast<unsigned long long>(total), seconds);

    if (common.want_json())
        write_file(common.dir() / "pairs.json", pairs_json(model.id, reports).dump(2) + "\n");
    if (common.want_csv()) write_file(common.dir() / "pairs.csv", pairs_csv(reports));
    return kExitOk;
}

int cmd_sections(const std::string& solid, const std::string& x_text, const std::string& y_text,
                 std::uint64_t samples, std::uint64_t seed, double cut_eps, double ball_eps,
                 double radius, double alpha, const CommonOpts& common) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    const auto x = parse_subset(x_text, model.vertex_count());
    if (!x) return usage_error("invalid subset '" + x_text + "'");
    const auto y = parse_subset(y_text, model.vertex_count());
    if (!y) return usage_error("invalid subset '" + y_text + "'");
    if (samples < 10'000) return usage_error("need at least 10000 samples");
    if (!(alpha > 0 && alpha < 1)) return usage_error("alpha must lie in (0, 1)");

    SectionConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.cut_epsilon = cut_eps;
    cfg.ball_epsilon = ball_eps;
    cfg.sampling_radius = radius;
    cfg.finalize(model);

    SectionDistribution dx, dy;
    try {
        SectionConfig cx = cfg;
        cx.seed = derive_seed(seed, 1);
        SectionConfig cy = cfg;
        cy.seed = derive_seed(seed, 2);
        dx = sample_section_distribution(model, *x, cx);
        dy = sample_section_distribution(model, *y, cy);
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    }
    const ComparisonReport report = compare_distributions(dx, dy, alpha);
    dx.config.seed = seed;  // report the root seed, not the derived stream

    std::printf("chi2 = %.4f, dof = %d, p = %.6f -> %s at alpha = %g\n", report.chi_square,
                report.dof, report.p_value,
                report.reject ? "equality REJECTED" : "equality not rejected", alpha);
    std::printf("total variation estimate: %.6f\n", report.total_variation);

    if (common.want_json())
        write_file(common.dir() / "sections_report.json",
                   sections_report_json(dx, dy, report, alpha).dump(2) + "\n");
    if (common.want_csv())
        write_file(common.dir() / "sections_histogram.csv", sections_histogram_csv(dx, dy));
    return report.reject ? kExitVerificationFailed : kExitOk;
}

int cmd_figures(const std::string& solid, const std::string& subset_text, bool subset_given,
                const CommonOpts& common) {
    const auto id = solid_or_usage(solid);
    if (!id) return kExitUsage;
    const SolidModel model = build_solid(*id);
    const auto planes = enumerate_planes(model);
    const auto dir = common.dir();

    write_schlegel_svg(dir / "schlegel.svg", model, 0, true);
    if (subset_given) {
        const auto subset = parse_subset(subset_text, model.vertex_count());
        if (!subset) return usage_error("invalid subset '" + subset_text + "'");
        write_schlegel_svg(dir / "schlegel_subset.svg", model, *subset, true);
        write_class_thumbnails_svg(dir / "classes_subset.svg", model, planes,
                                   planar_statistic(model, planes, *subset));
    } else if (*id == SolidId::Dodecahedron) {
        write_schlegel_svg(dir / "schlegel_s.svg", model, kWitnessS, true);
        write_schlegel_svg(dir / "schlegel_t.svg", model, kWitnessT, true);
        write_class_thumbnails_svg(dir / "classes_s.svg", model, planes,
                                   planar_statistic(model, planes, kWitnessS));
    }
    std::printf("figures written to %s\n", dir.string().c_str());
    return kExitOk;
}

std::string default_subset_text(VertexMask mask) {
    std::string text;
    for (int i : mask_to_indices(mask)) {
        if (!text.empty()) text += ',';
        text += std::to_string(i);
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact planar-section statistics of Platonic solid vertex subsets"};
    app.require_subcommand(1);

    std::string solid = "dodecahedron";

    auto* planes_cmd = app.add_subcommand("planes", "enumerate vertex-planes and their types");
    CommonOpts planes_common;
    std::string planes_solid = solid;
    planes_cmd->add_option("--solid", planes_solid, "solid name")->capture_default_str();
    add_common(planes_cmd, planes_common);

    auto* stats_cmd = app.add_subcommand("stats", "planar statistic of a vertex subset");
    CommonOpts stats_common;
    std::string stats_solid = solid, stats_subset;
    stats_cmd->add_option("--solid", stats_solid, "solid name")->capture_default_str();
    stats_cmd->add_option("--subset", stats_subset, "vertex list, e.g. 0,1,2 or 0..19")
        ->required();
    add_common(stats_cmd, stats_common);

    auto* verify_cmd =
        app.add_subcommand("verify", "check the witness pair: equal statistics, non-congruence");
    CommonOpts verify_common;
    std::string verify_solid = solid;
    std::string s_text = default_subset_text(kWitnessS);
    std::string t_text = default_subset_text(kWitnessT);
    verify_cmd->add_option("--solid", verify_solid, "solid name")->capture_default_str();
    verify_cmd->add_option("--s-subset", s_text, "first subset")->capture_default_str();
    verify_cmd->add_option("--t-subset", t_text, "second subset")->capture_default_str();
    add_common(verify_cmd, verify_common);

    auto* search_cmd =
        app.add_subcommand("search", "exhaustive search for homometric non-congruent pairs");
    CommonOpts search_common;
    std::string search_solid = solid;
    int search_size = -1;
    bool all_sizes = false;
    search_cmd->add_option("--solid", search_solid, "solid name")->capture_default_str();
    auto* size_opt = search_cmd->add_option("--size", search_size, "subset size to search");
    search_cmd->add_flag("--all-sizes", all_sizes, "sweep every subset size")->excludes(size_opt);
    add_common(search_cmd, search_common);

    auto* sections_cmd =
        app.add_subcommand("sections", "Monte Carlo comparison of plane-section distributions");
    CommonOpts sections_common;
    std::string sections_solid = solid;
    std::string x_text = default_subset_text(kWitnessS);
    std::string y_text = default_subset_text(kWitnessT);
    std::uint64_t samples = 1'000'000, seed = 42;
    double cut_eps = 0, ball_eps = 0, radius = 2.0, alpha = 0.01;
    sections_cmd->add_option("--solid", sections_solid, "solid name")->capture_default_str();
    sections_cmd->add_option("--x-subset", x_text, "first truncation subset")
        ->capture_default_str();
    sections_cmd->add_option("--y-subset", y_text, "second truncation subset")
        ->capture_default_str();
    sections_cmd->add_option("--n", samples, "sample count (min 10000)")->capture_default_str();
    sections_cmd->add_option("--seed", seed, "root seed")->capture_default_str();
    sections_cmd->add_option("--cut-eps", cut_eps, "cap cut distance (default 5% of edge)");
    sections_cmd->add_option("--ball-eps", ball_eps, "stratum ball radius (default cut-eps)");
    sections_cmd->add_option("--radius", radius, "plane sampling radius")->capture_default_str();
    sections_cmd->add_option("--alpha", alpha, "test significance level")->capture_default_str();
    add_common(sections_cmd, sections_common);

    auto* figures_cmd = app.add_subcommand("figures", "emit SVG diagrams");
    CommonOpts figures_common;
    std::string figures_solid = solid, figures_subset;
    figures_cmd->add_option("--solid", figures_solid, "solid name")->capture_default_str();
    auto* figures_subset_opt =
        figures_cmd->add_option("--subset", figures_subset, "subset to highlight");
    add_common(figures_cmd, figures_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (planes_cmd->parsed()) return cmd_planes(planes_solid, planes_common);
        if (stats_cmd->parsed()) return cmd_stats(stats_solid, stats_subset, stats_common);
        if (verify_cmd->parsed())
            return cmd_verify(verify_solid, s_text, t_text, verify_common);
        if (search_cmd->parsed())
            return cmd_search(search_solid, search_size, all_sizes, search_common);
        if (sections_cmd->parsed())
            return cmd_sections(sections_solid, x_text, y_text, samples, seed, cut_eps, ball_eps,
                                radius, alpha, sections_common);
        if (figures_cmd->parsed())
            return cmd_figures(figures_solid, figures_subset,
                               figures_subset_opt->count() > 0, figures_common);
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}
