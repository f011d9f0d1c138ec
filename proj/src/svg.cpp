#include "planarstat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "planarstat/io.hpp"
#include "planarstat/sections.hpp"

namespace planarstat {

namespace {

using Pt = std::array<double, 2>;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string num(double v) { return format_double(round6(v)); }

struct SvgDoc {
    std::ostringstream body;
    double width, height;

    SvgDoc(double w, double h) : width(w), height(h) {}

    void line(Pt a, Pt b, const std::string& stroke, double stroke_width, bool dashed = false) {
        body << "<line x1=\"" << num(a[0]) << "\" y1=\"" << num(a[1]) << "\" x2=\"" << num(b[0])
             << "\" y2=\"" << num(b[1]) << "\" stroke=\"" << stroke << "\" stroke-width=\""
             << num(stroke_width) << "\"";
        if (dashed) body << " stroke-dasharray=\"4 3\"";
        body << "/>\n";
    }
    void circle(Pt c, double r, const std::string& fill, const std::string& stroke) {
        body << "<circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\"" << num(r)
             << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void polygon(const std::vector<Pt>& pts, const std::string& fill, const std::string& stroke) {
        body << "<polygon points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) body << ' ';
            body << num(pts[i][0]) << ',' << num(pts[i][1]);
        }
        body << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void text(Pt at, const std::string& content, double size,
              const std::string& anchor = "middle") {
        body << "<text x=\"" << num(at[0]) << "\" y=\"" << num(at[1]) << "\" font-size=\""
             << num(size) << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor
             << "\" dominant-baseline=\"middle\">" << content << "</text>\n";
    }
    std::string str() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
            << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
            << num(height) << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

Vec3d to_double(const FieldVec3& v) {
    return {v.x.to_double(), v.y.to_double(), v.z.to_double()};
}

// orthonormal frame with e3 = n
void plane_frame(const Vec3d& n, Vec3d& e1, Vec3d& e2) {
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    Vec3d seed{1, 0, 0};
    if (ay <= ax && ay <= az) seed = {0, 1, 0};
    else if (az <= ax && az <= ay) seed = {0, 0, 1};
    e1 = normalized(cross(seed, n));
    e2 = cross(n, e1);
}

struct Frame2d {
    Vec3d origin, e1, e2;
    Pt project(const Vec3d& p) const {
        const Vec3d d{p.x - origin.x, p.y - origin.y, p.z - origin.z};
        return {dot(d, e1), dot(d, e2)};
    }
};

// maps a point cloud into a box with uniform scale
struct Fit {
    double scale = 1, ox = 0, oy = 0, cx = 0, cy = 0;

    Fit(const std::vector<Pt>& pts, double box, double margin, double box_cx, double box_cy) {
        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (const auto& p : pts) {
            lo_x = std::min(lo_x, p[0]);
            hi_x = std::max(hi_x, p[0]);
            lo_y = std::min(lo_y, p[1]);
            hi_y = std::max(hi_y, p[1]);
        }
        const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
        scale = (box - 2 * margin) / span;
        ox = (lo_x + hi_x) / 2;
        oy = (lo_y + hi_y) / 2;
        cx = box_cx;
        cy = box_cy;
    }
    Pt map(Pt p) const {
        // flip y so +y points up on the canvas
        return {cx + (p[0] - ox) * scale, cy - (p[1] - oy) * scale};
    }
};

}  // namespace

std::vector<std::array<double, 2>> schlegel_layout(const SolidModel& model) {
    const auto planes = enumerate_planes(model);
    const auto faces = supporting_plane_indices(model, planes);
    if (faces.empty()) throw std::logic_error("solid has no supporting planes");

    // outward unit normal maximizing (z, y, x)
    int best = -1;
    std::array<double, 3> best_key{-2, -2, -2};
    double best_offset = 0;
    Vec3d best_normal{};
    for (int idx : faces) {
        const auto& plane = planes[idx];
        Vec3d n = to_double(plane.normal);
        double d = plane.offset.to_double();
        if (d < 0) {
            n = {-n.x, -n.y, -n.z};
            d = -d;
        }
        const double len = std::sqrt(dot(n, n));
        n = {n.x / len, n.y / len, n.z / len};
        d /= len;
        const std::array<double, 3> key{n.z, n.y, n.x};
        if (best < 0 || key > best_key) {
            best = idx;
            best_key = key;
            best_normal = n;
            best_offset = d;
        }
    }

    const auto& face = planes[best];
    Vec3d centroid{0, 0, 0};
    int count = 0;
    for (int i = 0; i < model.vertex_count(); ++i) {
        if (!(face.incidence >> i & 1)) continue;
        const Vec3d p = to_double(model.vertices[i]);
        centroid = {centroid.x + p.x, centroid.y + p.y, centroid.z + p.z};
        ++count;
    }
    centroid = {centroid.x / count, centroid.y / count, centroid.z / count};
    const Vec3d viewpoint{1.25 * centroid.x, 1.25 * centroid.y, 1.25 * centroid.z};

    Frame2d frame;
    frame.origin = {best_offset * best_normal.x, best_offset * best_normal.y,
                    best_offset * best_normal.z};
    plane_frame(best_normal, frame.e1, frame.e2);

    std::vector<Pt> layout;
    layout.reserve(model.vertices.size());
    const double vp_height = dot(best_normal, viewpoint);  // > best_offset
    for (const auto& vertex : model.vertices) {
        const Vec3d p = to_double(vertex);
        const double t =
            (best_offset - vp_height) / (dot(best_normal, p) - vp_height);
        const Vec3d proj{viewpoint.x + t * (p.x - viewpoint.x),
                         viewpoint.y + t * (p.y - viewpoint.y),
                         viewpoint.z + t * (p.z - viewpoint.z)};
        layout.push_back(frame.project(proj));
    }
    return layout;
}

void write_schlegel_svg(const std::filesystem::path& path, const SolidModel& model,
                        VertexMask highlighted, bool labels) {
    const auto layout = schlegel_layout(model);
    const double size = 640, margin = 48;
    SvgDoc doc(size, size);
    const Fit fit(layout, size, margin, size / 2, size / 2);

    for (auto [i, j] : model.edges)
        doc.line(fit.map(layout[i]), fit.map(layout[j]), "#888888", 1.5);
    for (int i = 0; i < model.vertex_count(); ++i) {
        const bool on = (highlighted >> i & 1) != 0;
        doc.circle(fit.map(layout[i]), 11, on ? "#d04040" : "#f2f2f2", "#333333");
        if (labels) doc.text(fit.map(layout[i]), std::to_string(i), 11);
    }
    write_file(path, doc.str());
}

void write_class_thumbnails_svg(const std::filesystem::path& path, const SolidModel& model,
                                const std::vector<VertexPlane>& planes,
                                const PlanarStatistic& statistic) {
    std::map<VertexMask, const VertexPlane*> by_incidence;
    for (const auto& plane : planes) by_incidence.emplace(plane.incidence, &plane);

    const int cells = statistic.class_count();
    const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(double(cells)))));
    const int rows = (cells + cols - 1) / cols;
    const double cell = 150, pad = 14;
    SvgDoc doc(cols * cell, rows * cell);

    int index = 0;
    for (const auto& [key, count] : statistic.classes) {
        const auto it = by_incidence.find(key.plane_set);
        if (it == by_incidence.end())
            throw std::logic_error("canonical plane set is not an incidence set");
        const VertexPlane& plane = *it->second;

        Vec3d n = to_double(plane.normal);
        const double len = std::sqrt(dot(n, n));
        n = {n.x / len, n.y / len, n.z / len};
        const double d = plane.offset.to_double() / len;
        Frame2d frame;
        frame.origin = {d * n.x, d * n.y, d * n.z};
        plane_frame(n, frame.e1, frame.e2);

        std::vector<int> members = mask_to_indices(key.plane_set);
        std::vector<Pt> pts;
        for (int v : members) pts.push_back(frame.project(to_double(model.vertices[v])));

        // convex hull order: sort by angle around the centroid
        Pt c{0, 0};
        for (const auto& p : pts) {
            c[0] += p[0] / pts.size();
            c[1] += p[1] / pts.size();
        }
        std::vector<size_t> order(pts.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return std::atan2(pts[a][1] - c[1], pts[a][0] - c[0]) <
                   std::atan2(pts[b][1] - c[1], pts[b][0] - c[0]);
        });

        // ridge pairs: adjacent off-plane vertices, each with two or more
        // neighbors in the configuration
        std::vector<std::pair<int, int>> ridges;
        std::vector<int> flank;
        for (auto [u, w] : model.edges) {
            if ((key.plane_set >> u & 1) || (key.plane_set >> w & 1)) continue;
            const auto in_plane_neighbors = [&](int x) {
                int k = 0;
                for (int nb : model.adjacency[x])
                    if (key.plane_set >> nb & 1) ++k;
                return k;
            };
            if (in_plane_neighbors(u) >= 2 && in_plane_neighbors(w) >= 2) {
                ridges.emplace_back(u, w);
                flank.push_back(u);
                flank.push_back(w);
            }
        }
        std::vector<Pt> all = pts;
        std::map<int, Pt> flank_pts;
        for (int v : flank) {
            const Pt p = frame.project(to_double(model.vertices[v]));
            flank_pts[v] = p;
            all.push_back(p);
        }

        const int col = index % cols, row = index / cols;
        const Fit fit(all, cell, pad + 8, col * cell + cell / 2, row * cell + cell / 2 - 8);

        std::vector<Pt> hull;
        for (size_t i : order) hull.push_back(fit.map(pts[i]));
        doc.polygon(hull, "none", "#555555");

        for (auto [u, w] : ridges) {
            doc.line(fit.map(flank_pts[u]), fit.map(flank_pts[w]), "#999999", 1.0, true);
            for (int nb : model.adjacency[u])
                if (key.plane_set >> nb & 1) {
                    const size_t at = std::find(members.begin(), members.end(), nb) -
                                      members.begin();
                    doc.line(fit.map(flank_pts[u]), fit.map(pts[at]), "#999999", 1.0, true);
                }
            for (int nb : model.adjacency[w])
                if (key.plane_set >> nb & 1) {
                    const size_t at = std::find(members.begin(), members.end(), nb) -
                                      members.begin();
                    doc.line(fit.map(flank_pts[w]), fit.map(pts[at]), "#999999", 1.0, true);
                }
        }

        for (size_t i = 0; i < members.size(); ++i) {
            const bool marked = (key.subset_part >> members[i] & 1) != 0;
            doc.circle(fit.map(pts[i]), 5, marked ? "#d04040" : "white", "#333333");
        }

        std::ostringstream label;
        label << '(' << std::popcount(key.plane_set) << ',' << std::popcount(key.subset_part)
              << ") x" << count;
        doc.text({col * cell + cell / 2, row * cell + cell - pad}, label.str(), 12);
        ++index;
    }
    write_file(path, doc.str());
}

}  // namespace planarstat
