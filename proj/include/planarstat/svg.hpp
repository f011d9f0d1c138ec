#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "planarstat/stats.hpp"

namespace planarstat {

/// 2D vertex layout: central projection through the facet whose outward unit
/// normal is closest to +z (ties broken on the y then x components), from a
/// viewpoint a fixed quarter-height outside that facet.
std::vector<std::array<double, 2>> schlegel_layout(const SolidModel& model);

/// Vertex-edge diagram with labeled vertices and an optional highlighted
/// subset.
void write_schlegel_svg(const std::filesystem::path& path, const SolidModel& model,
                        VertexMask highlighted, bool labels);

/// One thumbnail per statistic class: the convex hull of the plane's
/// incidence set with the subset part filled in, plus dashed ridge edges of
/// any off-plane vertex pair flanking the configuration (this is what tells
/// the two square-with-adjacent-pair embeddings apart).
void write_class_thumbnails_svg(const std::filesystem::path& path, const SolidModel& model,
                                const std::vector<VertexPlane>& planes,
                                const PlanarStatistic& statistic);

}  // namespace planarstat
