#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "planarstat/search.hpp"
#include "planarstat/sections.hpp"
#include "planarstat/stats.hpp"

namespace planarstat {

/// The known non-congruent 7-element dodecahedron subsets with identical
/// planar statistics, in the model's fixed vertex numbering.
inline constexpr VertexMask kWitnessS = (1u << 0) | (1u << 1) | (1u << 2) | (1u << 3) |
                                        (1u << 4) | (1u << 11) | (1u << 17);
inline constexpr VertexMask kWitnessT = (1u << 0) | (1u << 1) | (1u << 3) | (1u << 4) |
                                        (1u << 5) | (1u << 11) | (1u << 17);

using Json = nlohmann::ordered_json;

/// Parses "1,3,5" / "0..19" / "" style vertex lists. Returns nullopt on any
/// malformed token or out-of-range index.
std::optional<VertexMask> parse_subset(std::string_view text, int vertex_count);

std::vector<int> mask_to_indices(VertexMask mask);
Json indices_json(VertexMask mask);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// RFC 4180 field quoting (only when needed).
std::string csv_field(const std::string& value);

void write_file(const std::filesystem::path& path, const std::string& content);

Json planes_json(const SolidModel& model, const std::vector<VertexPlane>& planes,
                 const PlaneTypeCensus& census);
std::string plane_types_csv(const SolidModel& model, const PlaneTypeCensus& census);

Json stats_json(const PlanarStatistic& statistic, int plane_count);
std::string stats_strata_csv(const PlanarStatistic& statistic);

Json pairs_json(SolidId solid, const std::vector<PairReport>& reports);
std::string pairs_csv(const std::vector<PairReport>& reports);

Json sections_report_json(const SectionDistribution& x, const SectionDistribution& y,
                          const ComparisonReport& report, double alpha);
std::string sections_histogram_csv(const SectionDistribution& x, const SectionDistribution& y);

}  // namespace planarstat
