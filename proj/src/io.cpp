#include "planarstat/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace planarstat {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::optional<int> parse_index(const std::string& token, int vertex_count) {
    if (token.empty()) return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    if (value < 0 || value >= vertex_count) return std::nullopt;
    return value;
}

}  // namespace

std::optional<VertexMask> parse_subset(std::string_view text, int vertex_count) {
    VertexMask mask = 0;
    const std::string trimmed = trim(text);
    if (trimmed.empty()) return mask;
    std::stringstream ss(trimmed);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        const size_t dots = token.find("..");
        if (dots != std::string::npos) {
            const auto lo = parse_index(trim(token.substr(0, dots)), vertex_count);
            const auto hi = parse_index(trim(token.substr(dots + 2)), vertex_count);
            if (!lo || !hi || *lo > *hi) return std::nullopt;
            for (int i = *lo; i <= *hi; ++i) mask |= VertexMask{1} << i;
        } else {
            const auto idx = parse_index(token, vertex_count);
            if (!idx) return std::nullopt;
            mask |= VertexMask{1} << *idx;
        }
    }
    return mask;
}

std::vector<int> mask_to_indices(VertexMask mask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask >> i & 1) out.push_back(i);
    return out;
}

Json indices_json(VertexMask mask) {
    Json arr = Json::array();
    for (int i : mask_to_indices(mask)) arr.push_back(i);
    return arr;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << content;
}

namespace {

Json vec_json(const FieldVec3& v) {
    return Json::array({v.x.str(), v.y.str(), v.z.str()});
}

std::string indices_field(VertexMask mask) {
    std::string s;
    for (int i : mask_to_indices(mask)) {
        if (!s.empty()) s += ',';
        s += std::to_string(i);
    }
    return s;
}

}  // namespace

Json planes_json(const SolidModel& model, const std::vector<VertexPlane>& planes,
                 const PlaneTypeCensus& census) {
    const auto identity = triple_count_identity(model, planes);
    Json doc;
    doc["solid"] = solid_name(model.id);
    doc["plane_count"] = planes.size();
    doc["type_count"] = census.types.size();
    doc["triple_identity"] = {{"sum", identity.sum},
                              {"binomial", identity.binomial},
                              {"holds", identity.holds()}};
    Json list = Json::array();
    for (const auto& plane : planes) {
        const VertexMask key = plane_type_key(model, plane);
        const auto& type = census.types[census.key_to_index.at(key)];
        Json entry;
        entry["normal"] = vec_json(plane.normal);
        entry["offset"] = plane.offset.str();
        entry["incidence"] = indices_json(plane.incidence);
        entry["type_key"] = indices_json(key);
        entry["type_frequency"] = type.frequency;
        list.push_back(std::move(entry));
    }
    doc["planes"] = std::move(list);
    return doc;
}

std::string plane_types_csv(const SolidModel& model, const PlaneTypeCensus& census) {
    (void)model;
    std::string csv = "type_index,cardinality,frequency,exemplar_vertices\n";
    for (size_t i = 0; i < census.types.size(); ++i) {
        const auto& t = census.types[i];
        csv += std::to_string(i) + "," + std::to_string(t.cardinality) + "," +
               std::to_string(t.frequency) + "," + csv_field(indices_field(t.key)) + "\n";
    }
    return csv;
}

Json stats_json(const PlanarStatistic& statistic, int plane_count) {
    Json doc;
    doc["solid"] = solid_name(statistic.solid);
    doc["subset"] = indices_json(statistic.subset);
    doc["plane_count"] = plane_count;
    doc["total"] = statistic.total();
    doc["class_count"] = statistic.class_count();
    Json classes = Json::array();
    for (const auto& [key, count] : statistic.classes) {
        Json entry;
        entry["class"] = {{"P", indices_json(key.plane_set)},
                          {"Z", indices_json(key.subset_part)}};
        entry["count"] = count;
        classes.push_back(std::move(entry));
    }
    doc["classes"] = std::move(classes);
    Json strata = Json::array();
    for (const auto& [pz, count] : statistic.stratum_marginals()) {
        Json entry;
        entry["plane_cardinality"] = pz.first;
        entry["subset_cardinality"] = pz.second;
        entry["count"] = count;
        strata.push_back(std::move(entry));
    }
    doc["strata"] = std::move(strata);
    return doc;
}

std::string stats_strata_csv(const PlanarStatistic& statistic) {
    std::string csv = "plane_cardinality,subset_cardinality,count\n";
    for (const auto& [pz, count] : statistic.stratum_marginals())
        csv += std::to_string(pz.first) + "," + std::to_string(pz.second) + "," +
               std::to_string(count) + "\n";
    return csv;
}

Json pairs_json(SolidId solid, const std::vector<PairReport>& reports) {
    Json doc;
    doc["solid"] = solid_name(solid);
    std::uint64_t total = 0;
    Json sizes = Json::array();
    for (const auto& report : reports) {
        Json entry;
        entry["size"] = report.size;
        entry["orbit_count"] = report.orbit_count;
        entry["pair_count"] = report.pairs.size();
        Json pairs = Json::array();
        for (const auto& pair : report.pairs) {
            Json p;
            p["x"] = indices_json(pair.x);
            p["y"] = indices_json(pair.y);
            pairs.push_back(std::move(p));
        }
        entry["pairs"] = std::move(pairs);
        sizes.push_back(std::move(entry));
        total += report.pairs.size();
    }
    doc["sizes"] = std::move(sizes);
    doc["total_pairs"] = total;
    return doc;
}

std::string pairs_csv(const std::vector<PairReport>& reports) {
    std::string csv = "size,orbit_count,pair_count,x,y\n";
    for (const auto& report : reports) {
        if (report.pairs.empty()) {
            csv += std::to_string(report.size) + "," + std::to_string(report.orbit_count) +
                   ",0,,\n";
            continue;
        }
        for (const auto& pair : report.pairs)
            csv += std::to_string(report.size) + "," + std::to_string(report.orbit_count) + "," +
                   std::to_string(report.pairs.size()) + "," + csv_field(indices_field(pair.x)) +
                   "," + csv_field(indices_field(pair.y)) + "\n";
    }
    return csv;
}

namespace {

Json bin_json(const BinKey& key) {
    Json arr = Json::array();
    for (std::int32_t v : key) {
        if (v == -1) break;  // padding
        arr.push_back(v);
    }
    return arr;
}

std::string bin_field(const BinKey& key) {
    std::string s;
    for (std::int32_t v : key) {
        if (v == -1) break;
        if (!s.empty()) s += ' ';
        s += std::to_string(v);
    }
    return s;
}

Json distribution_json(const SectionDistribution& d) {
    Json doc;
    doc["subset"] = indices_json(d.subset);
    doc["samples"] = d.samples;
    doc["misses"] = d.misses;
    doc["bin_count"] = d.histogram.size();
    Json strata = Json::array();
    for (const auto& [m, sh] : d.strata) {
        Json entry;
        entry["m"] = m;
        entry["planes"] = sh.planes;
        entry["empty_sections"] = sh.empty_sections;
        entry["bin_count"] = sh.bins.size();
        strata.push_back(std::move(entry));
    }
    doc["strata"] = std::move(strata);
    return doc;
}

}  // namespace

Json sections_report_json(const SectionDistribution& x, const SectionDistribution& y,
                          const ComparisonReport& report, double alpha) {
    Json doc;
    doc["solid"] = solid_name(x.solid);
    const auto& cfg = x.config;
    doc["config"] = {{"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"cut_epsilon", cfg.cut_epsilon},
                     {"ball_epsilon", cfg.ball_epsilon},
                     {"sampling_radius", cfg.sampling_radius},
                     {"quantum", cfg.quantum},
                     {"notch_length", cfg.notch_length},
                     {"perimeter_bin", cfg.perimeter_bin},
                     {"area_bin", cfg.area_bin},
                     {"gap_bin", cfg.gap_bin},
                     {"alpha", alpha}};
    doc["x"] = distribution_json(x);
    doc["y"] = distribution_json(y);

    Json test;
    test["chi_square"] = report.chi_square;
    test["dof"] = report.dof;
    test["p_value"] = report.p_value;
    test["reject"] = report.reject;
    test["total_variation"] = report.total_variation;
    Json strata = Json::array();
    for (const auto& st : report.per_stratum) {
        Json entry;
        entry["m"] = st.stratum;
        entry["chi_square"] = st.chi_square;
        entry["dof"] = st.dof;
        entry["p_value"] = st.p_value;
        entry["reject"] = st.reject;
        strata.push_back(std::move(entry));
    }
    test["per_stratum"] = std::move(strata);
    doc["test"] = std::move(test);

    Json bins = Json::array();
    std::map<BinKey, std::pair<std::uint64_t, std::uint64_t>> merged;
    for (const auto& [key, count] : x.histogram) merged[key].first = count;
    for (const auto& [key, count] : y.histogram) merged[key].second = count;
    for (const auto& [key, counts] : merged) {
        Json entry;
        entry["bin"] = bin_json(key);
        entry["x_count"] = counts.first;
        entry["y_count"] = counts.second;
        bins.push_back(std::move(entry));
    }
    doc["histogram"] = std::move(bins);
    return doc;
}

std::string sections_histogram_csv(const SectionDistribution& x, const SectionDistribution& y) {
    std::map<BinKey, std::pair<std::uint64_t, std::uint64_t>> merged;
    for (const auto& [key, count] : x.histogram) merged[key].first = count;
    for (const auto& [key, count] : y.histogram) merged[key].second = count;
    std::string csv = "bin,x_count,y_count\n";
    for (const auto& [key, counts] : merged)
        csv += csv_field(bin_field(key)) + "," + std::to_string(counts.first) + "," +
               std::to_string(counts.second) + "\n";
    return csv;
}

}  // namespace planarstat
