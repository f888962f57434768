#pragma once

// Lawson surfaces xi_{m,k}: one Plateau disk in T_{0,0} replicated by G_{m,k}.

#include <Eigen/LU>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "energy.hpp"
#include "mesh.hpp"
#include "plateau.hpp"
#include "symmetry.hpp"
#include "tiling.hpp"

namespace lawson {

enum class Variant { standard, odd, dual, dual_odd };

inline std::string_view to_string(Variant v)
{
    switch (v) {
    case Variant::standard: return "standard";
    case Variant::odd: return "odd";
    case Variant::dual: return "dual";
    case Variant::dual_odd: return "dual_odd";
    }
    return "?";
}

inline Variant variant_from_string(std::string_view s)
{
    for (auto v : {Variant::standard, Variant::odd, Variant::dual, Variant::dual_odd})
        if (to_string(v) == s) return v;
    throw precondition_error("unknown variant '" + std::string(s) + "' (standard, odd, dual, dual_odd)");
}

/// Isometry taking xi_{m,k} to the requested variant.
inline Isometry variant_map(Variant v, int m, int k)
{
    const Isometry to_dual = rotation_to_dual(m, k).inverse();
    switch (v) {
    case Variant::standard: return Isometry();
    case Variant::odd: return reflection_sigma_P(0, k);
    case Variant::dual: return to_dual;
    case Variant::dual_odd: return reflection_sigma_Pstar(0, k) * to_dual;
    }
    return Isometry();
}

/// h G h^{-1}, closed from the conjugated generators.
inline SymmetryGroup conjugate_group(const SymmetryGroup& g, const Isometry& h)
{
    std::vector<Isometry> gens;
    for (const auto& x : g.generators()) gens.push_back(h * x * h.inverse());
    return generate_group(gens, g.order(), GroupName::Custom, g.m(), g.k());
}

/// Full symmetry group Ghat_{m,k} carried to the variant's position.
inline SymmetryGroup variant_symmetry_group(Variant v, int m, int k)
{
    const auto ghat = build_named_group(GroupName::Ghat, m, k);
    if (v == Variant::standard) return ghat;
    return conjugate_group(ghat, variant_map(v, m, k));
}

/// Stabilizer of T_{0,0} in Ghat: {id, Sigma_{P*_0}, Sigma_{Q*_0}, gamma*_{0,0}}.
inline SymmetryGroup disk_stabilizer(int m, int k)
{
    return generate_group({reflection_sigma_Pstar(0, k), reflection_sigma_Qstar(0, m)}, 4, GroupName::Custom, m, k);
}

struct LawsonSurface {
    int m = 1;
    int k = 1;
    int n = 16;
    Variant variant = Variant::standard;
    TriMesh mesh;
    double area = 0;
    // Richardson extrapolation over (n/2, n); absent for single-level builds.
    std::optional<double> area_extrapolated;
    double area_error = 0;
    std::vector<std::pair<int, double>> area_levels;
    PlateauResult disk;
    Vec4 disk_center = Vec4::Zero(); // centre vertex of delta_{0,0} (before the variant map)

    double best_area() const { return area_extrapolated.value_or(area); }
};

struct BuildOptions {
    double tolerance = 1e-6;
    int max_iters = 200000;
};

inline LawsonSurface build(int m, int k, int n, Variant variant = Variant::standard, const BuildOptions& opt = {})
{
    check_mk_ordered(m, k);
    if (n < 8) throw precondition_error("build: n must be >= 8");
    if (n % 2) throw precondition_error("build: n must be even");
    auto prob = make_plateau_problem(m, k, 0, 0, n);
    prob.tolerance = opt.tolerance;
    prob.max_iters = opt.max_iters;
    prob.symmetry = disk_stabilizer(m, k);
    PlateauResult disk = solve_report(prob);
    TriMesh patch = symmetrize(disk.mesh, disk_stabilizer(m, k));
    patch.orbit_map.reset();

    LawsonSurface s;
    s.m = m;
    s.k = k;
    s.n = n;
    s.variant = variant;
    s.disk_center = patch.vertices[detail::grid_index(n / 2, n / 2, n)];
    TriMesh closed = orbit_mesh(patch, build_named_group(GroupName::G, m, k));
    if (!is_closed(closed)) throw topology_error("build: welded surface has boundary");
    const Isometry h = variant_map(variant, m, k);
    if (variant != Variant::standard) closed = transformed(closed, h);
    closed.boundary.assign(closed.vertices.size(), 0);
    closed.orbit_map = compute_orbit_map(closed, variant_symmetry_group(variant, m, k));
    s.mesh = std::move(closed);
    s.area = area(s.mesh);
    s.area_levels.push_back({n, s.area});
    s.disk = std::move(disk);
    s.disk.mesh = patch;
    return s;
}

/// A_ext = A_n + (A_n - A_{n/2}) / (2^p - 1); error bar |A_ext - A_n|.
inline double richardson(double coarse, double fine, int order = 2)
{
    return fine + (fine - coarse) / (std::pow(2.0, order) - 1);
}

/// Build at n and n/2 and extrapolate the area.
inline LawsonSurface build_extrapolated(int m, int k, int n, Variant variant = Variant::standard,
                                        const BuildOptions& opt = {})
{
    if (n < 16) throw precondition_error("build_extrapolated: n must be >= 16");
    const LawsonSurface coarse = build(m, k, n / 2, variant, opt);
    LawsonSurface fine = build(m, k, n, variant, opt);
    fine.area_levels.insert(fine.area_levels.begin(), coarse.area_levels.front());
    fine.area_extrapolated = richardson(coarse.area, fine.area);
    fine.area_error = std::abs(*fine.area_extrapolated - fine.area);
    return fine;
}

struct BoundCheck {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;    // rhs - lhs for "<"
    double error_bar = 0;
    bool holds = false;   // margin > error_bar
};

struct LawsonReport {
    int genus = -1;
    int expected_genus = 0;
    bool genus_ok = false;
    bool closed = false;
    double invariance_deviation = 0; // max over generators of the variant's full group
    double residual = 0;             // max |H| on the closed surface
    double area = 0;
    double area_error = 0;
    std::size_t faces_in_wrong_parity = 0;
    std::vector<BoundCheck> bounds;
};

inline BoundCheck less_than(std::string name, double lhs, double rhs, double err)
{
    BoundCheck b{std::move(name), lhs, rhs, rhs - lhs, err, false};
    b.holds = b.margin > err;
    return b;
}

/// Faces whose centroid lies in no closed tile of the expected parity, with
/// an O(h^2) angular slack. Standard and dual variants sit in even tiles of
/// their own tiling, odd companions in odd tiles.
inline std::size_t faces_in_wrong_parity(const LawsonSurface& s)
{
    const double eps = 0.1 * std::pow(mean_edge_length(s.mesh), 2);
    const bool want_even = s.variant == Variant::standard || s.variant == Variant::dual;
    const Isometry back = s.variant == Variant::dual || s.variant == Variant::dual_odd
                              ? rotation_to_dual(s.m, s.k)
                              : Isometry();
    std::vector<Tile> wanted;
    for (const auto& t : all_tiles(s.m, s.k))
        if (t.even() == want_even) wanted.push_back(t);
    std::size_t bad = 0;
    for (const auto& f : s.mesh.faces) {
        const Vec4 c = back((s.mesh.vertices[f[0]] + s.mesh.vertices[f[1]] + s.mesh.vertices[f[2]]).normalized());
        bool inside = false;
        for (const auto& t : wanted)
            if ((inside = tile_contains(t, c, s.m, s.k, eps))) break;
        if (!inside) ++bad;
    }
    return bad;
}

inline LawsonReport verify(const LawsonSurface& s)
{
    LawsonReport r;
    r.closed = is_closed(s.mesh);
    r.expected_genus = s.m * s.k;
    r.genus = genus(s.mesh);
    r.genus_ok = r.genus == r.expected_genus;
    r.invariance_deviation = invariance_deviation(s.mesh, variant_symmetry_group(s.variant, s.m, s.k).generators());
    r.residual = residual(s.mesh);
    r.area = s.best_area();
    r.area_error = s.area_error;
    r.faces_in_wrong_parity = faces_in_wrong_parity(s);
    r.bounds.push_back(less_than("area < 4pi(k+1)", r.area, 4 * pi * (s.k + 1), r.area_error));
    if (s.k == 1) r.bounds.push_back(less_than("area < 8pi", r.area, 8 * pi, r.area_error));
    return r;
}

// Intersections with great circles.

struct CircleReport {
    std::string name;
    double max_distance = 0;  // max over samples of distance to the mesh
    double min_distance = 0;
    bool contained = false;   // max_distance below a quarter of the longest edge
    int crossings = 0;        // clustered circle/surface intersection points (not meaningful if contained)
};

struct IntersectionReport {
    double edge_length = 0;
    std::vector<CircleReport> circles;
    Vec4 center_plus = Vec4::Zero();  // disk centres of the even tiles of D
    Vec4 center_minus = Vec4::Zero();
};

namespace detail {

/// Brute-force point-to-mesh distance: nearest vertex, then faces incident to
/// vertices within (nearest + max edge).
class MeshDistance {
public:
    explicit MeshDistance(const TriMesh& mesh) : mesh_(mesh), vf_(mesh.vertices.size())
    {
        for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f)
            for (int v : mesh.faces[f]) vf_[v].push_back(f);
        for (const auto& f : mesh.faces)
            for (int i = 0; i < 3; ++i)
                max_edge_ = std::max(max_edge_, (mesh.vertices[f[i]] - mesh.vertices[f[(i + 1) % 3]]).norm());
    }

    double operator()(const Vec4& p) const
    {
        double dn = std::numeric_limits<double>::infinity();
        for (const auto& x : mesh_.vertices) dn = std::min(dn, (x - p).norm());
        const double r = dn + max_edge_;
        double best = dn;
        for (std::size_t v = 0; v < mesh_.vertices.size(); ++v) {
            if ((mesh_.vertices[v] - p).norm() > r) continue;
            for (int f : vf_[v]) {
                const auto& t = mesh_.faces[f];
                const Vec4 q = closest_point_on_triangle(p, mesh_.vertices[t[0]], mesh_.vertices[t[1]], mesh_.vertices[t[2]]);
                best = std::min(best, (q - p).norm());
            }
        }
        return best;
    }

    double max_edge() const { return max_edge_; }

private:
    const TriMesh& mesh_;
    std::vector<std::vector<int>> vf_;
    double max_edge_ = 0;
};

} // namespace detail

/// Points where the great circle through orthonormal a, b meets the cones over
/// the mesh triangles, clustered to 1e-6.
inline std::vector<Vec4> circle_crossings(const TriMesh& mesh, const Vec4& a, const Vec4& b)
{
    std::vector<Vec4> hits;
    Eigen::Matrix<double, 4, 5> M;
    for (const auto& f : mesh.faces) {
        M.col(0) = a;
        M.col(1) = b;
        for (int i = 0; i < 3; ++i) M.col(2 + i) = -mesh.vertices[f[i]];
        Eigen::FullPivLU<Eigen::Matrix<double, 4, 5>> lu(M);
        lu.setThreshold(1e-12);
        if (lu.dimensionOfKernel() != 1) continue;
        Eigen::Matrix<double, 5, 1> z = lu.kernel().col(0);
        z /= z.norm();
        const double s = z.tail<3>().sum() >= 0 ? 1.0 : -1.0;
        z *= s;
        if (z.tail<3>().minCoeff() < -1e-12) continue;
        const Vec4 x = z[0] * a + z[1] * b;
        if (x.norm() < 1e-14) continue;
        const Vec4 p = x.normalized();
        bool dup = false;
        for (const auto& h : hits)
            if ((h - p).norm() < 1e-6) {
                dup = true;
                break;
            }
        if (!dup) hits.push_back(p);
    }
    return hits;
}

inline CircleReport circle_report(const TriMesh& mesh, const detail::MeshDistance& dist, std::string name,
                                  const Vec4& a, const Vec4& b, int samples = 64)
{
    CircleReport c;
    c.name = std::move(name);
    c.min_distance = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = 2 * pi * i / samples;
        const double d = dist(std::cos(t) * a + std::sin(t) * b);
        c.max_distance = std::max(c.max_distance, d);
        c.min_distance = std::min(c.min_distance, d);
    }
    c.contained = c.max_distance < 0.25 * dist.max_edge();
    c.crossings = c.contained ? 0 : static_cast<int>(circle_crossings(mesh, a, b).size());
    return c;
}

/// Distances and crossing counts against gamma, gamma-perp, every gamma_{j,l}
/// and every gamma*_{j,l} with j in [0, k], l in [0, m] (the rest repeat them).
inline IntersectionReport intersection_diagnostics(const LawsonSurface& s, int samples = 64)
{
    const int m = s.m, k = s.k;
    IntersectionReport r;
    detail::MeshDistance dist(s.mesh);
    r.edge_length = dist.max_edge();
    r.circles.push_back(circle_report(s.mesh, dist, "gamma", Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1), samples));
    r.circles.push_back(circle_report(s.mesh, dist, "gamma_perp", Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), samples));
    for (int j = 0; j <= k; ++j) {
        for (int l = 0; l <= m; ++l) {
            r.circles.push_back(circle_report(s.mesh, dist, "gamma_" + std::to_string(j) + "_" + std::to_string(l),
                                              point_P(j, k).vec(), point_Q(l, m).vec(), samples));
            const Vec4 ps = S3Point::on_gamma((2 * j + 1) * pi / (2 * (k + 1))).vec();
            const Vec4 qs = S3Point::on_gamma_perp((2 * l + 1) * pi / (2 * (m + 1))).vec();
            r.circles.push_back(circle_report(s.mesh, dist, "gamma*_" + std::to_string(j) + "_" + std::to_string(l), ps,
                                              qs, samples));
        }
    }
    const Isometry h = variant_map(s.variant, m, k);
    r.center_plus = h(s.disk_center);
    r.center_minus = h(halfturn_gamma(1, 1, m, k)(s.disk_center));
    return r;
}

} // namespace lawson
