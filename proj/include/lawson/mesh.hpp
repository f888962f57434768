#pragma once

// Triangle meshes with vertices on S^3.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "s3.hpp"
#include "symmetry.hpp"

namespace lawson {

using Face = std::array<int, 3>;

/// Vertex correspondence under a group: image[e][v] is the vertex at
/// elements[e] applied to vertex v.
struct OrbitMap {
    std::vector<Isometry> elements;
    std::vector<std::vector<int>> image;
};

struct TriMesh {
    std::vector<Vec4> vertices;
    std::vector<Face> faces;
    std::vector<char> boundary; // per-vertex flag
    std::optional<OrbitMap> orbit_map;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_faces() const { return faces.size(); }
};

// ---------------------------------------------------------------------------
// Edge bookkeeping

using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(int a, int b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

inline std::pair<int, int> edge_vertices(EdgeKey e) { return {static_cast<int>(e >> 32), static_cast<int>(e & 0xffffffffu)}; }

/// Undirected edge -> incident faces.
inline std::unordered_map<EdgeKey, std::vector<int>> edge_faces(const TriMesh& mesh)
{
    std::unordered_map<EdgeKey, std::vector<int>> out;
    out.reserve(mesh.faces.size() * 2);
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const auto& t = mesh.faces[f];
        for (int i = 0; i < 3; ++i) out[edge_key(t[i], t[(i + 1) % 3])].push_back(f);
    }
    return out;
}

inline std::size_t edge_count(const TriMesh& mesh) { return edge_faces(mesh).size(); }

/// Throws if the invariants of TriMesh are violated.
inline void validate(const TriMesh& mesh)
{
    const int n = static_cast<int>(mesh.vertices.size());
    for (const auto& f : mesh.faces) {
        for (int v : f)
            if (v < 0 || v >= n) throw topology_error("face references invalid vertex " + std::to_string(v));
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) throw topology_error("degenerate face with repeated vertex");
    }
    for (const auto& x : mesh.vertices)
        if (std::abs(x.norm() - 1.0) > 1e-10) throw precondition_error("mesh vertex is not on the unit sphere");
    for (const auto& [e, fs] : edge_faces(mesh)) {
        if (fs.size() > 2) {
            auto [a, b] = edge_vertices(e);
            throw topology_error("non-manifold edge (" + std::to_string(a) + "," + std::to_string(b) + ") with " +
                                 std::to_string(fs.size()) + " faces");
        }
    }
}

inline std::vector<char> compute_boundary_flags(const TriMesh& mesh)
{
    std::vector<char> flags(mesh.vertices.size(), 0);
    for (const auto& [e, fs] : edge_faces(mesh)) {
        if (fs.size() == 1) {
            auto [a, b] = edge_vertices(e);
            flags[a] = flags[b] = 1;
        }
    }
    return flags;
}

inline bool is_closed(const TriMesh& mesh)
{
    for (const auto& [e, fs] : edge_faces(mesh))
        if (fs.size() != 2) return false;
    return true;
}

inline int euler_characteristic(const TriMesh& mesh)
{
    std::vector<char> used(mesh.vertices.size(), 0);
    for (const auto& f : mesh.faces)
        for (int v : f) used[v] = 1;
    const long nv = std::count(used.begin(), used.end(), 1);
    return static_cast<int>(nv - static_cast<long>(edge_count(mesh)) + static_cast<long>(mesh.faces.size()));
}

/// Connected components over faces (edge adjacency).
inline int face_components(const TriMesh& mesh)
{
    const auto ef = edge_faces(mesh);
    std::vector<int> comp(mesh.faces.size(), -1);
    int nc = 0;
    for (int s = 0; s < static_cast<int>(mesh.faces.size()); ++s) {
        if (comp[s] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        comp[s] = nc;
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            const auto& t = mesh.faces[f];
            for (int i = 0; i < 3; ++i) {
                for (int g : ef.at(edge_key(t[i], t[(i + 1) % 3]))) {
                    if (comp[g] < 0) {
                        comp[g] = nc;
                        q.push(g);
                    }
                }
            }
        }
        ++nc;
    }
    return nc;
}

namespace detail {

inline bool face_has_directed_edge(const Face& f, int a, int b)
{
    for (int i = 0; i < 3; ++i)
        if (f[i] == a && f[(i + 1) % 3] == b) return true;
    return false;
}

} // namespace detail

/// Breadth-first orientation propagation. Returns false if some component
/// cannot be oriented consistently; faces are flipped in place otherwise.
inline bool orient_consistently(TriMesh& mesh)
{
    const auto ef = edge_faces(mesh);
    std::vector<char> seen(mesh.faces.size(), 0);
    for (int s = 0; s < static_cast<int>(mesh.faces.size()); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (int i = 0; i < 3; ++i) {
                const int a = mesh.faces[f][i], b = mesh.faces[f][(i + 1) % 3];
                for (int g : ef.at(edge_key(a, b))) {
                    if (g == f) continue;
                    // Consistent neighbour traverses the shared edge as b -> a.
                    const bool consistent = detail::face_has_directed_edge(mesh.faces[g], b, a);
                    if (!seen[g]) {
                        if (!consistent) std::swap(mesh.faces[g][1], mesh.faces[g][2]);
                        seen[g] = 1;
                        q.push(g);
                    } else if (!consistent) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

inline bool is_orientable(const TriMesh& mesh)
{
    TriMesh copy{mesh.vertices, mesh.faces, {}, std::nullopt};
    return orient_consistently(copy);
}

/// Genus of a closed, connected, orientable mesh.
inline int genus(const TriMesh& mesh)
{
    if (!is_closed(mesh)) throw topology_error("genus: mesh has boundary");
    if (face_components(mesh) != 1) throw topology_error("genus: mesh is disconnected");
    if (!is_orientable(mesh)) throw topology_error("genus: mesh is non-orientable");
    const int chi = euler_characteristic(mesh);
    return (2 - chi) / 2;
}

// ---------------------------------------------------------------------------
// Spatial hash over R^4 used for welding and correspondence lookup.

class PointIndex {
public:
    explicit PointIndex(double cell = 1e-6) : cell_(cell) {}

    void insert(const Vec4& x, int id)
    {
        cells_[key(cell_of(x))].push_back({x, id});
    }

    /// Nearest stored point within tol, if any.
    std::optional<int> find(const Vec4& x, double tol) const
    {
        const auto c = cell_of(x);
        std::optional<int> best;
        double bestd = tol;
        std::array<std::int64_t, 4> n{};
        for (int o = 0; o < 81; ++o) {
            int r = o;
            for (int i = 0; i < 4; ++i) {
                n[i] = c[i] + (r % 3) - 1;
                r /= 3;
            }
            auto it = cells_.find(key(n));
            if (it == cells_.end()) continue;
            for (const auto& [p, id] : it->second) {
                const double d = (p - x).norm();
                if (d <= bestd) {
                    bestd = d;
                    best = id;
                }
            }
        }
        return best;
    }

private:
    std::array<std::int64_t, 4> cell_of(const Vec4& x) const
    {
        return {static_cast<std::int64_t>(std::floor(x[0] / cell_)), static_cast<std::int64_t>(std::floor(x[1] / cell_)),
                static_cast<std::int64_t>(std::floor(x[2] / cell_)), static_cast<std::int64_t>(std::floor(x[3] / cell_))};
    }

    static std::uint64_t key(const std::array<std::int64_t, 4>& c)
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
        return h;
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<Vec4, int>>> cells_;
};

inline constexpr double default_weld_tol = 1e-8;

inline TriMesh transformed(const TriMesh& mesh, const Isometry& g)
{
    TriMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const auto& x : mesh.vertices) out.vertices.push_back(g(x));
    out.faces = mesh.faces;
    out.boundary = mesh.boundary;
    return out;
}

/// For each group element and vertex, the vertex at the transformed position.
inline OrbitMap compute_orbit_map(const TriMesh& mesh, const SymmetryGroup& group, double tol = default_weld_tol)
{
    PointIndex idx(std::max(tol * 100, 1e-7));
    for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) idx.insert(mesh.vertices[v], v);
    OrbitMap om;
    om.elements = group.elements();
    om.image.assign(group.order(), std::vector<int>(mesh.vertices.size()));
    for (std::size_t e = 0; e < group.order(); ++e) {
        for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
            auto hit = idx.find(group[e](mesh.vertices[v]), tol);
            if (!hit) {
                std::ostringstream os;
                os << "compute_orbit_map: mesh not invariant, vertex " << v << " has no image under element " << e;
                throw topology_error(os.str());
            }
            om.image[e][v] = *hit;
        }
    }
    return om;
}

/// Union of g(patch) over the group with coincident vertices welded.
inline TriMesh orbit_mesh(const TriMesh& patch, const SymmetryGroup& group, double weld_tol = default_weld_tol)
{
    TriMesh out;
    PointIndex idx(std::max(weld_tol * 100, 1e-7));
    std::set<std::array<int, 3>> face_set;
    for (const auto& g : group.elements()) {
        std::vector<int> remap(patch.vertices.size());
        for (std::size_t v = 0; v < patch.vertices.size(); ++v) {
            const Vec4 y = g(patch.vertices[v]);
            if (auto hit = idx.find(y, weld_tol)) {
                remap[v] = *hit;
            } else {
                const int id = static_cast<int>(out.vertices.size());
                out.vertices.push_back(y);
                idx.insert(y, id);
                remap[v] = id;
            }
        }
        for (const auto& f : patch.faces) {
            Face nf{remap[f[0]], remap[f[1]], remap[f[2]]};
            if (nf[0] == nf[1] || nf[1] == nf[2] || nf[0] == nf[2])
                throw topology_error("orbit_mesh: welding collapsed a face");
            Face sorted = nf;
            std::sort(sorted.begin(), sorted.end());
            if (!face_set.insert(sorted).second) continue;
            out.faces.push_back(nf);
        }
    }
    for (const auto& [e, fs] : edge_faces(out)) {
        if (fs.size() > 2) {
            auto [a, b] = edge_vertices(e);
            std::ostringstream os;
            os << "orbit_mesh: welding produced non-manifold edge (" << a << "," << b << ") with " << fs.size() << " faces";
            throw topology_error(os.str());
        }
    }
    if (!orient_consistently(out)) throw topology_error("orbit_mesh: welded surface is not orientable");
    out.boundary = compute_boundary_flags(out);
    out.orbit_map = compute_orbit_map(out, group, weld_tol);
    return out;
}

/// Largest distance between g(x_v) and x_{image(g,v)} over the orbit map.
inline double symmetry_deviation(const TriMesh& mesh)
{
    if (!mesh.orbit_map) throw precondition_error("symmetry_deviation: mesh has no orbit map");
    const auto& om = *mesh.orbit_map;
    double dev = 0;
    for (std::size_t e = 0; e < om.elements.size(); ++e)
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
            dev = std::max(dev, (om.elements[e](mesh.vertices[v]) - mesh.vertices[om.image[e][v]]).norm());
    return dev;
}

/// Largest |g(x) - nearest vertex| over the given isometries; for meshes
/// without an orbit map.
inline double invariance_deviation(const TriMesh& mesh, const std::vector<Isometry>& gens)
{
    PointIndex idx(1e-4);
    for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) idx.insert(mesh.vertices[v], v);
    double dev = 0;
    for (const auto& g : gens) {
        for (const auto& x : mesh.vertices) {
            const Vec4 y = g(x);
            auto hit = idx.find(y, 1e-4);
            dev = std::max(dev, hit ? (mesh.vertices[*hit] - y).norm() : std::numeric_limits<double>::infinity());
        }
    }
    return dev;
}

/// Replace each vertex by the projected orbit average of g^{-1} x_{image(g,v)}.
inline TriMesh symmetrize(const TriMesh& mesh)
{
    if (!mesh.orbit_map) throw precondition_error("symmetrize: mesh has no orbit map");
    const auto& om = *mesh.orbit_map;
    TriMesh out = mesh;
    std::vector<Mat4> inv;
    for (const auto& g : om.elements) inv.push_back(g.matrix().transpose());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        Vec4 acc = Vec4::Zero();
        for (std::size_t e = 0; e < om.elements.size(); ++e) acc += inv[e] * mesh.vertices[om.image[e][v]];
        out.vertices[v] = project_to_sphere(acc);
    }
    return out;
}

/// Attach the group's orbit map, then symmetrize.
inline TriMesh symmetrize(TriMesh mesh, const SymmetryGroup& group, double tol = default_weld_tol)
{
    mesh.orbit_map = compute_orbit_map(mesh, group, tol);
    return symmetrize(mesh);
}

/// 1-to-4 midpoint subdivision with midpoints projected to S^3. Geodesic
/// boundary arcs stay on their great circles under this projection.
inline TriMesh refine(const TriMesh& mesh)
{
    TriMesh out;
    out.vertices = mesh.vertices;
    out.boundary = mesh.boundary.empty() ? compute_boundary_flags(mesh) : mesh.boundary;
    const auto ef = edge_faces(mesh);
    std::unordered_map<EdgeKey, int> mid;
    mid.reserve(ef.size());
    // Deterministic midpoint numbering: first-seen order over faces.
    for (const auto& f : mesh.faces) {
        for (int i = 0; i < 3; ++i) {
            const int a = f[i], b = f[(i + 1) % 3];
            const EdgeKey e = edge_key(a, b);
            if (mid.contains(e)) continue;
            mid[e] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(project_to_sphere(mesh.vertices[a] + mesh.vertices[b]));
            out.boundary.push_back(ef.at(e).size() == 1 ? 1 : 0);
        }
    }
    for (const auto& f : mesh.faces) {
        const int a = f[0], b = f[1], c = f[2];
        const int ab = mid[edge_key(a, b)], bc = mid[edge_key(b, c)], ca = mid[edge_key(c, a)];
        out.faces.push_back({a, ab, ca});
        out.faces.push_back({ab, b, bc});
        out.faces.push_back({ca, bc, c});
        out.faces.push_back({ab, bc, ca});
    }
    return out;
}

inline double mean_edge_length(const TriMesh& mesh)
{
    const auto ef = edge_faces(mesh);
    if (ef.empty()) return 0;
    double s = 0;
    for (const auto& [e, fs] : ef) {
        auto [a, b] = edge_vertices(e);
        s += (mesh.vertices[a] - mesh.vertices[b]).norm();
    }
    return s / static_cast<double>(ef.size());
}

inline double min_edge_length(const TriMesh& mesh)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& f : mesh.faces)
        for (int i = 0; i < 3; ++i) m = std::min(m, (mesh.vertices[f[i]] - mesh.vertices[f[(i + 1) % 3]]).norm());
    return m;
}

/// Smallest interior angle over all triangles, in radians.
inline double min_triangle_angle(const TriMesh& mesh)
{
    double m = pi;
    for (const auto& f : mesh.faces) {
        for (int i = 0; i < 3; ++i) {
            const Vec4 u = mesh.vertices[f[(i + 1) % 3]] - mesh.vertices[f[i]];
            const Vec4 w = mesh.vertices[f[(i + 2) % 3]] - mesh.vertices[f[i]];
            m = std::min(m, clamped_acos(u.dot(w) / (u.norm() * w.norm())));
        }
    }
    return m;
}

/// Vertex adjacency lists, sorted.
inline std::vector<std::vector<int>> vertex_neighbors(const TriMesh& mesh)
{
    std::vector<std::vector<int>> nb(mesh.vertices.size());
    for (const auto& [e, fs] : edge_faces(mesh)) {
        auto [a, b] = edge_vertices(e);
        nb[a].push_back(b);
        nb[b].push_back(a);
    }
    for (auto& l : nb) std::sort(l.begin(), l.end());
    return nb;
}

// ---------------------------------------------------------------------------
// Reference meshes

/// Octahedron on the great sphere {x_4 = 0}, refined `level` times.
inline TriMesh octahedron_sphere(int level)
{
    TriMesh m;
    m.vertices = {Vec4(1, 0, 0, 0), Vec4(-1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, -1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, -1, 0)};
    m.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    m.boundary.assign(6, 0);
    for (int i = 0; i < level; ++i) m = refine(m);
    return m;
}

/// Geodesic sphere of radius r about (0,0,0,1): {(sin r u, cos r) : u in S^2}.
inline TriMesh geodesic_sphere(double r, int level)
{
    TriMesh m = octahedron_sphere(level);
    for (auto& x : m.vertices) {
        const Eigen::Vector3d u = x.head<3>().normalized();
        x = Vec4(std::sin(r) * u[0], std::sin(r) * u[1], std::sin(r) * u[2], std::cos(r));
    }
    return m;
}

/// Torus {(cos a e^{iu}, sin a e^{iv})} on a regular nu x nv grid; a = pi/4
/// gives the Clifford torus.
inline TriMesh flat_torus(int nu, int nv, double a = pi / 4)
{
    if (nu < 3 || nv < 3) throw precondition_error("flat_torus: grid needs at least 3x3 cells");
    TriMesh m;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double u = 2 * pi * i / nu, v = 2 * pi * j / nv;
            m.vertices.emplace_back(std::cos(a) * std::cos(u), std::cos(a) * std::sin(u), std::sin(a) * std::cos(v),
                                    std::sin(a) * std::sin(v));
        }
    }
    auto id = [&](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    m.boundary.assign(m.vertices.size(), 0);
    return m;
}

/// Random tangent perturbation of every vertex, |displacement| <= amplitude.
inline TriMesh perturb(const TriMesh& mesh, double amplitude, std::uint64_t seed)
{
    if (amplitude < 0) throw precondition_error("perturb: amplitude must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TriMesh out = mesh;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!mesh.boundary.empty() && mesh.boundary[v]) continue;
        const Vec4& x = mesh.vertices[v];
        Vec4 d(u(rng), u(rng), u(rng), u(rng));
        d -= d.dot(x) * x;
        const double n = d.norm();
        if (n < 1e-12) continue;
        const double mag = amplitude * std::abs(u(rng));
        out.vertices[v] = project_to_sphere(x + d * (mag / n));
    }
    return out;
}

/// Disjoint union of two meshes.
inline TriMesh mesh_union(const TriMesh& a, const TriMesh& b)
{
    TriMesh out = a;
    out.orbit_map.reset();
    const int off = static_cast<int>(a.vertices.size());
    out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto f : b.faces) out.faces.push_back({f[0] + off, f[1] + off, f[2] + off});
    out.boundary = compute_boundary_flags(out);
    return out;
}

// ---------------------------------------------------------------------------
// Geometric distance helpers in R^4 (dot-product formulations, valid in any
// dimension).

/// Closest point on triangle abc to p.
inline Vec4 closest_point_on_triangle(const Vec4& p, const Vec4& a, const Vec4& b, const Vec4& c)
{
    const Vec4 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;
    const Vec4 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
    const Vec4 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

inline double segment_segment_distance(const Vec4& p1, const Vec4& q1, const Vec4& p2, const Vec4& q2)
{
    const Vec4 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    double s = 0, t = 0;
    if (a <= 1e-30 && e <= 1e-30) return r.norm();
    if (a <= 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2), denom = a * e - b * b;
            s = denom > 1e-30 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return ((p1 + d1 * s) - (p2 + d2 * t)).norm();
}

/// Minimum distance between two triangles (vertex-face and edge-edge pairs).
inline double triangle_distance(const std::array<Vec4, 3>& t1, const std::array<Vec4, 3>& t2)
{
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        d = std::min(d, (t1[i] - closest_point_on_triangle(t1[i], t2[0], t2[1], t2[2])).norm());
        d = std::min(d, (t2[i] - closest_point_on_triangle(t2[i], t1[0], t1[1], t1[2])).norm());
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            d = std::min(d, segment_segment_distance(t1[i], t1[(i + 1) % 3], t2[j], t2[(j + 1) % 3]));
    return d;
}

struct SeparationReport {
    double min_distance = std::numeric_limits<double>::infinity();
    std::size_t pairs_checked = 0;
    bool budget_exhausted = false;
};

/// Approximate minimum R^4 distance between triangles whose vertex sets are
/// more than `exclusion_hops` edges apart (0: triangles sharing no vertex).
/// Candidate pairs come from a uniform grid whose cell size doubles until a
/// pair closer than one cell is found. Diagnostic only.
inline SeparationReport min_separation_diagnostic(const TriMesh& mesh, std::size_t sample_budget = 50'000'000,
                                                  int exclusion_hops = 2)
{
    SeparationReport rep;
    const std::size_t nf = mesh.faces.size();
    if (nf < 2) return rep;

    // Vertices within exclusion_hops of each vertex.
    const auto nb = vertex_neighbors(mesh);
    std::vector<std::vector<int>> near(mesh.vertices.size());
    for (int v = 0; v < static_cast<int>(mesh.vertices.size()); ++v) {
        std::vector<int> frontier{v}, all{v};
        for (int h = 0; h < exclusion_hops; ++h) {
            std::vector<int> next;
            for (int u : frontier)
                for (int w : nb[u])
                    if (std::find(all.begin(), all.end(), w) == all.end()) {
                        all.push_back(w);
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
        std::sort(all.begin(), all.end());
        near[v] = std::move(all);
    }
    auto excluded = [&](const Face& a, const Face& b) {
        for (int u : a)
            for (int w : b)
                if (std::binary_search(near[u].begin(), near[u].end(), w)) return true;
        return false;
    };

    double max_edge = 0;
    for (const auto& f : mesh.faces)
        for (int i = 0; i < 3; ++i)
            max_edge = std::max(max_edge, (mesh.vertices[f[i]] - mesh.vertices[f[(i + 1) % 3]]).norm());
    double cell = std::max(2 * max_edge, 1e-6);

    while (true) {
        std::unordered_map<std::uint64_t, std::vector<int>> grid;
        auto cell_key = [&](const std::array<std::int64_t, 4>& c) {
            std::uint64_t h = 1469598103934665603ull;
            for (auto v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
            return h;
        };
        std::vector<std::array<std::int64_t, 4>> fcell(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            const Vec4 c = (mesh.vertices[mesh.faces[f][0]] + mesh.vertices[mesh.faces[f][1]] + mesh.vertices[mesh.faces[f][2]]) / 3.0;
            for (int i = 0; i < 4; ++i) fcell[f][i] = static_cast<std::int64_t>(std::floor(c[i] / cell));
            grid[cell_key(fcell[f])].push_back(static_cast<int>(f));
        }
        double best = std::numeric_limits<double>::infinity();
        std::array<std::int64_t, 4> n{};
        for (std::size_t f = 0; f < nf && !rep.budget_exhausted; ++f) {
            const std::array<Vec4, 3> t1{mesh.vertices[mesh.faces[f][0]], mesh.vertices[mesh.faces[f][1]], mesh.vertices[mesh.faces[f][2]]};
            for (int o = 0; o < 81; ++o) {
                int r = o;
                for (int i = 0; i < 4; ++i) {
                    n[i] = fcell[f][i] + (r % 3) - 1;
                    r /= 3;
                }
                auto it = grid.find(cell_key(n));
                if (it == grid.end()) continue;
                for (int g : it->second) {
                    if (g <= static_cast<int>(f)) continue;
                    if (excluded(mesh.faces[f], mesh.faces[g])) continue;
                    const std::array<Vec4, 3> t2{mesh.vertices[mesh.faces[g][0]], mesh.vertices[mesh.faces[g][1]], mesh.vertices[mesh.faces[g][2]]};
                    best = std::min(best, triangle_distance(t1, t2));
                    if (++rep.pairs_checked >= sample_budget) {
                        rep.budget_exhausted = true;
                        break;
                    }
                }
                if (rep.budget_exhausted) break;
            }
        }
        rep.min_distance = std::min(rep.min_distance, best);
        // Centroids of a pair at distance d are at most d + (4/3) max_edge
        // apart, and every pair with centroids closer than one cell is visited.
        if (rep.min_distance + 1.5 * max_edge < cell || rep.budget_exhausted || cell > 4.0) return rep;
        cell *= 2;
    }
}

} // namespace lawson
