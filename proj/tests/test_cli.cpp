#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PLANARSTAT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("planarstat_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    return std::string(std::istreambuf_iterator<char>(file), {});
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("planes subcommand") {
    const fs::path dir = fresh_dir("planes");
    const CliResult r = run_cli("planes --solid dodecahedron --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("319 planes, 10 types") != std::string::npos);
    CHECK(r.output.find("1140") != std::string::npos);

    const Json doc = Json::parse(slurp(dir / "planes.json"));
    CHECK(doc["plane_count"] == 319);
    CHECK(doc["type_count"] == 10);
    CHECK(doc["triple_identity"]["holds"] == true);
    CHECK(doc["planes"].size() == 319);
    CHECK(fs::exists(dir / "plane_types.csv"));

    const CliResult tetra = run_cli("planes --solid tetrahedron --out " + dir.string());
    CHECK(tetra.exit_code == 0);
    CHECK(tetra.output.find("4 planes, 1 type") != std::string::npos);
}

TEST_CASE("invalid arguments give usage exits") {
    CHECK(run_cli("planes --solid trapezohedron").exit_code == 2);
    CHECK(run_cli("stats --solid dodecahedron --subset 25").exit_code == 2);
    CHECK(run_cli("stats --solid dodecahedron --subset 1,frog").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("sections --n 100").exit_code == 2);
    CHECK(run_cli("sections --n 20000 --radius 1.0").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("stats subcommand") {
    const fs::path dir = fresh_dir("stats");
    const CliResult empty =
        run_cli("stats --solid dodecahedron --subset \"\" --out " + dir.string());
    CHECK(empty.exit_code == 0);
    CHECK(empty.output.find("10 classes") != std::string::npos);

    const CliResult full = run_cli("stats --subset 0..19 --out " + dir.string());
    CHECK(full.exit_code == 0);
    CHECK(full.output.find("total 319") != std::string::npos);

    const CliResult witness =
        run_cli("stats --subset 0,1,2,3,4,11,17 --out " + dir.string());
    CHECK(witness.exit_code == 0);
    CHECK(witness.output.find("63 classes") != std::string::npos);

    const Json doc = Json::parse(slurp(dir / "stats.json"));
    CHECK(doc["class_count"] == 63);
    CHECK(doc["total"] == 319);
    CHECK(doc["subset"] == Json::array({0, 1, 2, 3, 4, 11, 17}));
    CHECK(doc["classes"].size() == 63);
    CHECK(doc["classes"][0].contains("class"));
    CHECK(doc["classes"][0]["class"].contains("P"));
    CHECK(doc["classes"][0]["class"].contains("Z"));
    int class_total = 0;
    for (const auto& entry : doc["classes"]) class_total += entry["count"].get<int>();
    CHECK(class_total == 319);

    const std::string csv = slurp(dir / "stats_strata.csv");
    CHECK(csv.find("3,0,52") != std::string::npos);
    CHECK(csv.find("6,4,1") != std::string::npos);
}

TEST_CASE("verify subcommand") {
    const CliResult ok = run_cli("verify");
    CHECK(ok.exit_code == 0);
    CHECK(count_occurrences(ok.output, "PASS") == 3);
    CHECK(count_occurrences(ok.output, "FAIL") == 0);
    CHECK(ok.output.find("0-11-4-17") != std::string::npos);

    // T := S is congruent, so the non-congruence check must fail
    const CliResult same = run_cli("verify --t-subset 0,1,2,3,4,11,17");
    CHECK(same.exit_code == 1);
    CHECK(same.output.find("FAIL subsets not congruent") != std::string::npos);
    CHECK(same.output.find("PASS statistics equal") != std::string::npos);

    // two single vertices are congruent by vertex-transitivity
    const CliResult singles = run_cli("verify --s-subset 0 --t-subset 1");
    CHECK(singles.exit_code == 1);
    CHECK(singles.output.find("PASS statistics equal") != std::string::npos);
    CHECK(singles.output.find("FAIL subsets not congruent") != std::string::npos);
}

TEST_CASE("search subcommand") {
    const fs::path dir = fresh_dir("search");
    const CliResult seven =
        run_cli("search --solid dodecahedron --size 7 --out " + dir.string());
    CHECK(seven.exit_code == 0);
    const Json doc = Json::parse(slurp(dir / "pairs.json"));
    CHECK(doc["total_pairs"] == 1);
    CHECK(doc["sizes"][0]["size"] == 7);
    CHECK(doc["sizes"][0]["pairs"].size() == 1);

    const CliResult three =
        run_cli("search --solid dodecahedron --size 3 --out " + dir.string());
    CHECK(three.exit_code == 0);
    CHECK(Json::parse(slurp(dir / "pairs.json"))["total_pairs"] == 0);

    const CliResult icosa =
        run_cli("search --solid icosahedron --all-sizes --out " + dir.string());
    CHECK(icosa.exit_code == 0);
    CHECK(icosa.output.find("total pairs: 0") != std::string::npos);

    CHECK(run_cli("search --solid cube --size 9").exit_code == 2);
    CHECK(run_cli("search --solid cube --size 2 --all-sizes").exit_code == 2);
}

TEST_CASE("sections subcommand") {
    const fs::path dir = fresh_dir("sections");
    const CliResult r =
        run_cli("sections --n 20000 --seed 7 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("equality not rejected") != std::string::npos);
    const Json doc = Json::parse(slurp(dir / "sections_report.json"));
    CHECK(doc["config"]["samples"] == 20000);
    CHECK(doc["config"]["seed"] == 7);
    CHECK(doc["test"].contains("p_value"));
    CHECK(doc["x"]["samples"] == 20000);
    CHECK(fs::exists(dir / "sections_histogram.csv"));
}

TEST_CASE("figures subcommand") {
    const fs::path dir = fresh_dir("figures");
    const CliResult r = run_cli("figures --out " + dir.string());
    CHECK(r.exit_code == 0);
    const std::string schlegel = slurp(dir / "schlegel.svg");
    CHECK(count_occurrences(schlegel, "<circle") == 20);
    CHECK(count_occurrences(schlegel, "<line") == 30);
    CHECK(count_occurrences(schlegel, "<text") == 20);

    const std::string highlighted = slurp(dir / "schlegel_s.svg");
    CHECK(count_occurrences(highlighted, "#d04040") == 7);
    CHECK(fs::exists(dir / "schlegel_t.svg"));

    const std::string classes = slurp(dir / "classes_s.svg");
    CHECK(count_occurrences(classes, "<polygon") == 63);
    CHECK(count_occurrences(classes, "stroke-dasharray") > 0);

    const fs::path dir2 = fresh_dir("figures2");
    const CliResult subset = run_cli("figures --subset 0,1,2 --out " + dir2.string());
    CHECK(subset.exit_code == 0);
    CHECK(fs::exists(dir2 / "schlegel_subset.svg"));
    CHECK(fs::exists(dir2 / "classes_subset.svg"));
}

TEST_CASE("outputs are byte-identical across runs") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    REQUIRE(run_cli("planes --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("planes --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "planes.json") == slurp(b / "planes.json"));
    CHECK(slurp(a / "plane_types.csv") == slurp(b / "plane_types.csv"));

    REQUIRE(run_cli("sections --n 20000 --seed 11 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("sections --n 20000 --seed 11 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "sections_report.json") == slurp(b / "sections_report.json"));

    REQUIRE(run_cli("search --size 8 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("search --size 8 --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "pairs.json") == slurp(b / "pairs.json"));

    REQUIRE(run_cli("figures --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("figures --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "schlegel.svg") == slurp(b / "schlegel.svg"));
    CHECK(slurp(a / "classes_s.svg") == slurp(b / "classes_s.svg"));
}

TEST_CASE("format flag restricts outputs") {
    const fs::path dir = fresh_dir("format");
    REQUIRE(run_cli("planes --format csv --out " + dir.string()).exit_code == 0);
    CHECK(!fs::exists(dir / "planes.json"));
    CHECK(fs::exists(dir / "plane_types.csv"));

    const fs::path dir2 = fresh_dir("format2");
    REQUIRE(run_cli("planes --format json --out " + dir2.string()).exit_code == 0);
    CHECK(fs::exists(dir2 / "planes.json"));
    CHECK(!fs::exists(dir2 / "plane_types.csv"));
}
