#include "planarstat/geometry.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <stdexcept>

namespace planarstat {

std::string solid_name(SolidId id) {
    switch (id) {
        case SolidId::Tetrahedron: return "tetrahedron";
        case SolidId::Cube: return "cube";
        case SolidId::Octahedron: return "octahedron";
        case SolidId::Dodecahedron: return "dodecahedron";
        case SolidId::Icosahedron: return "icosahedron";
    }
    return "unknown";
}

std::optional<SolidId> parse_solid(std::string_view name) {
    for (SolidId id : kAllSolids)
        if (name == solid_name(id)) return id;
    return std::nullopt;
}

Permutation compose(const Permutation& f, const Permutation& g) {
    Permutation r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

Permutation inverse_permutation(const Permutation& p) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

std::vector<int> permutation_cycle_lengths(const Permutation& p) {
    std::vector<int> lengths;
    std::vector<bool> seen(p.size(), false);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    return lengths;
}

MaskShuffle::MaskShuffle(const Permutation& perm) {
    const unsigned n = static_cast<unsigned>(perm.size());
    lo_bits_ = (n + 1) / 2;
    const unsigned hi_bits = n - lo_bits_;
    lo_mask_ = (VertexMask{1} << lo_bits_) - 1;
    lo_.assign(VertexMask{1} << lo_bits_, 0);
    hi_.assign(VertexMask{1} << hi_bits, 0);
    for (VertexMask m = 0; m < lo_.size(); ++m) {
        VertexMask out = 0;
        for (unsigned i = 0; i < lo_bits_; ++i)
            if (m >> i & 1) out |= VertexMask{1} << perm[i];
        lo_[m] = out;
    }
    for (VertexMask m = 0; m < hi_.size(); ++m) {
        VertexMask out = 0;
        for (unsigned i = 0; i < hi_bits; ++i)
            if (m >> i & 1) out |= VertexMask{1} << perm[lo_bits_ + i];
        hi_[m] = out;
    }
}

namespace {

std::vector<FieldVec3> solid_vertices(SolidId id) {
    const FieldElement one(1), zero(0);
    const FieldElement phi = FieldElement::phi();
    const FieldElement phi_inv = FieldElement::phi_inv();
    std::vector<FieldVec3> v;
    switch (id) {
        case SolidId::Tetrahedron:
            v = {{one, one, one}, {one, -one, -one}, {-one, one, -one}, {-one, -one, one}};
            break;
        case SolidId::Cube:
            for (int x : {-1, 1})
                for (int y : {-1, 1})
                    for (int z : {-1, 1})
                        v.push_back({FieldElement(x), FieldElement(y), FieldElement(z)});
            break;
        case SolidId::Octahedron:
            v = {{one, zero, zero},  {-one, zero, zero}, {zero, one, zero},
                 {zero, -one, zero}, {zero, zero, one},  {zero, zero, -one}};
            break;
        case SolidId::Dodecahedron:
            // cube corners 0-7, then the three golden rectangles; this index
            // order is fixed and load-bearing for all reported subsets
            for (int x : {-1, 1})
                for (int y : {-1, 1})
                    for (int z : {-1, 1})
                        v.push_back({FieldElement(x), FieldElement(y), FieldElement(z)});
            v.push_back({zero, phi_inv, phi});    // 8
            v.push_back({zero, phi_inv, -phi});   // 9
            v.push_back({zero, -phi_inv, phi});   // 10
            v.push_back({zero, -phi_inv, -phi});  // 11
            v.push_back({phi_inv, phi, zero});    // 12
            v.push_back({-phi_inv, phi, zero});   // 13
            v.push_back({phi_inv, -phi, zero});   // 14
            v.push_back({-phi_inv, -phi, zero});  // 15
            v.push_back({phi, zero, phi_inv});    // 16
            v.push_back({phi, zero, -phi_inv});   // 17
            v.push_back({-phi, zero, phi_inv});   // 18
            v.push_back({-phi, zero, -phi_inv});  // 19
            break;
        case SolidId::Icosahedron:
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    const FieldElement o = s1 > 0 ? one : -one;
                    const FieldElement p = s2 > 0 ? phi : -phi;
                    v.push_back({zero, o, p});
                    v.push_back({o, p, zero});
                    v.push_back({p, zero, o});
                }
            break;
    }
    return v;
}

// Gram matrix with entries replaced by small ids of the distinct values
std::vector<std::vector<int>> gram_codes(const std::vector<FieldVec3>& vertices) {
    const int n = static_cast<int>(vertices.size());
    std::map<FieldElement, int, bool (*)(const FieldElement&, const FieldElement&)> ids(lex_less);
    std::vector<std::vector<int>> code(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const FieldElement d = dot(vertices[i], vertices[j]);
            auto [it, inserted] = ids.try_emplace(d, static_cast<int>(ids.size()));
            code[i][j] = code[j][i] = it->second;
        }
    return code;
}

void group_backtrack(const std::vector<std::vector<int>>& code, int pos, Permutation& perm,
                     std::vector<bool>& used, std::vector<Permutation>& out) {
    const int n = static_cast<int>(code.size());
    if (pos == n) {
        out.push_back(perm);
        return;
    }
    for (int c = 0; c < n; ++c) {
        if (used[c] || code[c][c] != code[pos][pos]) continue;
        bool ok = true;
        for (int j = 0; j < pos && ok; ++j) ok = code[c][perm[j]] == code[pos][j];
        if (!ok) continue;
        used[c] = true;
        perm[pos] = c;
        group_backtrack(code, pos + 1, perm, used, out);
        used[c] = false;
    }
}

}  // namespace

std::vector<Permutation> compute_group(const std::vector<FieldVec3>& vertices) {
    if (vertices.size() < 4) throw std::invalid_argument("need at least four vertices");
    FieldVec3 centroid{FieldElement(0), FieldElement(0), FieldElement(0)};
    for (const auto& v : vertices) centroid = centroid + v;
    if (!centroid.is_zero())
        throw std::invalid_argument("vertex centroid must be the origin");
    bool spans = false;
    const size_t n = vertices.size();
    for (size_t i = 0; i < n && !spans; ++i)
        for (size_t j = i + 1; j < n && !spans; ++j)
            for (size_t k = j + 1; k < n && !spans; ++k)
                spans = !FieldMat3::from_columns(vertices[i], vertices[j], vertices[k])
                             .determinant()
                             .is_zero();
    if (!spans) throw std::invalid_argument("vertices must span R^3");

    const auto code = gram_codes(vertices);
    std::vector<Permutation> out;
    Permutation perm(n, -1);
    std::vector<bool> used(n, false);
    group_backtrack(code, 0, perm, used, out);
    return out;  // backtracking order is lexicographic
}

SolidModel build_solid(SolidId id) { return build_model_from_vertices(id, solid_vertices(id)); }

SolidModel build_model_from_vertices(SolidId id, std::vector<FieldVec3> vertices) {
    SolidModel model;
    model.id = id;
    model.vertices = std::move(vertices);
    model.group = compute_group(model.vertices);
    model.group_shuffles.reserve(model.group.size());
    for (const auto& g : model.group) model.group_shuffles.emplace_back(g);

    const int n = model.vertex_count();
    bool have_min = false;
    FieldElement min_sq;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const FieldElement d = squared_distance(model.vertices[i], model.vertices[j]);
            if (!have_min || d < min_sq) {
                min_sq = d;
                have_min = true;
            }
        }
    model.edge_length_sq = min_sq;
    model.adjacency.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (squared_distance(model.vertices[i], model.vertices[j]) == min_sq) {
                model.edges.emplace_back(i, j);
                model.adjacency[i].push_back(j);
                model.adjacency[j].push_back(i);
            }
    return model;
}

VertexMask canonical_subset(const SolidModel& model, VertexMask subset) {
    VertexMask best = ~VertexMask{0};
    for (const auto& shuffle : model.group_shuffles) best = std::min(best, shuffle(subset));
    return best;
}

bool are_congruent(const SolidModel& model, VertexMask x, VertexMask y) {
    return canonical_subset(model, x) == canonical_subset(model, y);
}

FieldMat3 isometry_matrix(const SolidModel& model, const Permutation& perm) {
    const auto& v = model.vertices;
    const int n = model.vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const FieldMat3 basis = FieldMat3::from_columns(v[i], v[j], v[k]);
                if (basis.determinant().is_zero()) continue;
                const FieldMat3 image =
                    FieldMat3::from_columns(v[perm[i]], v[perm[j]], v[perm[k]]);
                return image * basis.inverse();
            }
    throw std::invalid_argument("vertices do not span R^3");
}

bool verify_isometry(const SolidModel& model, const Permutation& perm) {
    const FieldMat3 m = isometry_matrix(model, perm);
    for (int i = 0; i < model.vertex_count(); ++i)
        if (m.apply(model.vertices[i]) != model.vertices[perm[i]]) return false;
    return m.transposed() * m == FieldMat3::identity();
}

namespace {

// all-pairs BFS distances over the solid's edge graph
std::vector<std::vector<int>> graph_distances(const SolidModel& model) {
    const int n = model.vertex_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        q.push(s);
        dist[s][s] = 0;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int w : model.adjacency[u])
                if (dist[s][w] < 0) {
                    dist[s][w] = dist[s][u] + 1;
                    q.push(w);
                }
        }
    }
    return dist;
}

}  // namespace

PathCertificate path_certificate(const SolidModel& model, VertexMask subset) {
    const int n = model.vertex_count();
    const auto in_subset = [&](int i) { return (subset >> i & 1) != 0; };
    std::vector<std::vector<int>> induced(n);
    for (auto [i, j] : model.edges)
        if (in_subset(i) && in_subset(j)) {
            induced[i].push_back(j);
            induced[j].push_back(i);
        }

    const auto dist = graph_distances(model);
    PathCertificate cert;
    for (int a = 0; a < n; ++a) {
        if (!in_subset(a)) continue;
        for (int b : induced[a])
            for (int c : induced[b]) {
                if (c == a) continue;
                for (int d : induced[c]) {
                    if (d == a || d == b || d <= a) continue;  // d <= a dedups reversals
                    const auto on_path = [&](int x) {
                        return x == a || x == b || x == c || x == d;
                    };
                    const auto has_near = [&](int endpoint) {
                        for (int x = 0; x < n; ++x)
                            if (in_subset(x) && !on_path(x) && dist[endpoint][x] <= 2)
                                return true;
                        return false;
                    };
                    cert.paths.push_back(
                        {{a, b, c, d}, has_near(a), has_near(d)});
                }
            }
    }
    return cert;
}

std::vector<std::pair<bool, bool>> PathCertificate::invariant() const {
    std::vector<std::pair<bool, bool>> flags;
    flags.reserve(paths.size());
    for (const auto& p : paths) {
        const bool lo = std::min(p.first_has_near_member, p.last_has_near_member);
        const bool hi = std::max(p.first_has_near_member, p.last_has_near_member);
        flags.emplace_back(lo, hi);
    }
    std::sort(flags.begin(), flags.end());
    return flags;
}

std::vector<std::uint64_t> subset_orbit_counts_by_size(const SolidModel& model) {
    const int n = model.vertex_count();
    std::vector<std::uint64_t> total(n + 1, 0);
    for (const auto& g : model.group) {
        std::vector<std::uint64_t> poly{1};  // prod over cycles of (1 + x^len)
        for (int len : permutation_cycle_lengths(g)) {
            std::vector<std::uint64_t> next(poly.size() + len, 0);
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i] += poly[i];
                next[i + len] += poly[i];
            }
            poly = std::move(next);
        }
        for (size_t i = 0; i < poly.size(); ++i) total[i] += poly[i];
    }
    const std::uint64_t order = model.group.size();
    for (auto& t : total) {
        if (t % order != 0) throw std::logic_error("cycle index sum not divisible by group order");
        t /= order;
    }
    return total;
}

std::uint64_t subset_orbit_count(const SolidModel& model) {
    std::uint64_t sum = 0;
    for (const auto& g : model.group)
        sum += std::uint64_t{1} << permutation_cycle_lengths(g).size();
    return sum / model.group.size();
}

}  // namespace planarstat
