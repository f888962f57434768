#pragma once

// Discrete Plateau problem for a geodesic quadrilateral: least-area disk with
// pinned boundary, by projected gradient descent.

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "energy.hpp"
#include "error.hpp"
#include "mesh.hpp"
#include "tiling.hpp"

namespace lawson {

struct LineSearchConfig {
    double armijo = 1e-4;
    double initial_step_factor = 0.5; // times (mean edge)^2
    double growth = 1.2;
    int growth_after = 5;             // accepted steps between growths
    int max_failures = 50;
};

struct RelaxConfig {
    int rounds = 2000;     // 0 disables tangential relaxation
    int stage_iters = 10;  // descent iterations between relaxation sweeps
    double weight = 0.5;
    double settle = 1e-3;  // stop once the largest move is below settle * mean edge
};

struct PlateauProblem {
    Quadrilateral quad;
    Tile tile;
    int m = 1;
    int k = 1;
    int n = 16; // segments per side; (n+1)^2 vertices
    double tolerance = 1e-6;
    int max_iters = 200000;
    LineSearchConfig line_search;
    RelaxConfig relax;
    // Optional group preserving the quad; iterates are symmetrized under it.
    std::optional<SymmetryGroup> symmetry;
};

inline PlateauProblem make_plateau_problem(int m, int k, int j, int l, int n)
{
    check_mk_ordered(m, k);
    if (n < 2) throw precondition_error("plateau: n must be >= 2");
    PlateauProblem p{quadrilateral(j, l, m, k), Tile{wrap(j, 2 * k + 2), wrap(l, 2 * m + 2)}, m, k, n};
    return p;
}

namespace detail {

inline int grid_index(int i, int j, int n) { return j * (n + 1) + i; }

// Split along the (0,0)-(1,1) diagonal of every cell so the triangulation is
// preserved by both diagonal reflections of the unit square.
inline std::vector<Face> grid_faces(int n)
{
    std::vector<Face> faces;
    faces.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int a = grid_index(i, j, n), b = grid_index(i + 1, j, n);
            const int c = grid_index(i + 1, j + 1, n), d = grid_index(i, j + 1, n);
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    }
    return faces;
}

} // namespace detail

/// Coons blend of the four boundary arcs, projected to S^3.
/// Corners: (0,0) -> v0, (1,0) -> v1, (1,1) -> v2, (0,1) -> v3.
inline TriMesh init_disk(const PlateauProblem& p)
{
    const int n = p.n;
    if (n < 2) throw precondition_error("plateau: n must be >= 2");
    const auto& q = p.quad;
    auto bottom = [&](double u) { return q.arcs[0].at(u); };
    auto right = [&](double v) { return q.arcs[1].at(v); };
    auto top = [&](double u) { return q.arcs[2].at(1 - u); };
    auto left = [&](double v) { return q.arcs[3].at(1 - v); };
    const Vec4 c00 = q.vertices[0].vec(), c10 = q.vertices[1].vec();
    const Vec4 c11 = q.vertices[2].vec(), c01 = q.vertices[3].vec();

    TriMesh mesh;
    mesh.vertices.resize((n + 1) * (n + 1));
    mesh.boundary.assign(mesh.vertices.size(), 0);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const double u = static_cast<double>(i) / n, v = static_cast<double>(j) / n;
            const int idx = detail::grid_index(i, j, n);
            Vec4 x;
            if (j == 0) {
                x = bottom(u);
            } else if (i == n) {
                x = right(v);
            } else if (j == n) {
                x = top(u);
            } else if (i == 0) {
                x = left(v);
            } else {
                const Vec4 s = (1 - v) * bottom(u) + v * top(u) + (1 - u) * left(v) + u * right(v) -
                               ((1 - u) * (1 - v) * c00 + u * (1 - v) * c10 + u * v * c11 + (1 - u) * v * c01);
                x = project_to_sphere(s);
            }
            mesh.vertices[idx] = x;
            mesh.boundary[idx] = (i == 0 || j == 0 || i == n || j == n) ? 1 : 0;
        }
    }
    mesh.faces = detail::grid_faces(n);
    return mesh;
}

/// Coons blend followed by barycentric (uniform Laplacian) relaxation of the
/// interior vertices, each sweep projected back to S^3.
inline TriMesh init_disk_barycentric(const PlateauProblem& p, int sweeps = 200)
{
    TriMesh mesh = init_disk(p);
    const auto nbrs = vertex_neighbors(mesh);
    for (int s = 0; s < sweeps; ++s) {
        std::vector<Vec4> next = mesh.vertices;
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            if (mesh.boundary[v]) continue;
            Vec4 acc = Vec4::Zero();
            for (int u : nbrs[v]) acc += mesh.vertices[u];
            next[v] = project_to_sphere(acc);
        }
        mesh.vertices = std::move(next);
    }
    return mesh;
}

struct PlateauResult {
    TriMesh mesh;
    double initial_area = 0;
    double area = 0;
    double gradient_norm = 0;
    double residual = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> area_history; // accepted iterates, starting with the initial mesh
    std::vector<std::size_t> relax_marks; // history indices produced by relaxation sweeps
};

/// Max |H| over interior vertices.
inline double residual(const TriMesh& mesh)
{
    const auto h = mean_curvature(mesh);
    double r = 0;
    for (double x : h) r = std::max(r, std::abs(x));
    return r;
}

namespace detail {

inline double interior_norm(const std::vector<Vec4>& g, const std::vector<char>& boundary)
{
    double s = 0;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!boundary[v]) s += g[v].squaredNorm();
    return std::sqrt(s);
}

} // namespace detail

/// Projected gradient descent on the area with boundary pinned. The descent
/// direction is the normal part of the area gradient; the tangential part only
/// slides vertices along the surface and collapses triangles. Descent stages
/// alternate with tangential barycentric relaxation until the vertex
/// distribution settles, then a final stage runs to the tolerance.
inline PlateauResult solve_from(const PlateauProblem& p, TriMesh mesh)
{
    if (mesh.boundary.size() != mesh.vertices.size()) mesh.boundary = compute_boundary_flags(mesh);
    const EnergyEvaluator ev(mesh);
    const auto& ls = p.line_search;
    const auto nbrs = vertex_neighbors(mesh);
    if (p.symmetry) mesh = symmetrize(mesh, *p.symmetry);
    auto enforce = [&](std::vector<Vec4>& y) {
        if (!mesh.orbit_map) return;
        const auto& om = *mesh.orbit_map;
        std::vector<Vec4> z(y.size());
        for (std::size_t v = 0; v < y.size(); ++v) {
            if (mesh.boundary[v]) {
                z[v] = y[v];
                continue;
            }
            Vec4 acc = Vec4::Zero();
            for (std::size_t e = 0; e < om.elements.size(); ++e)
                acc += om.elements[e].matrix().transpose() * y[om.image[e][v]];
            z[v] = acc.normalized();
        }
        y.swap(z);
    };
    std::vector<Vec4> x = mesh.vertices;
    double a = ev.area(x);
    double step = ls.initial_step_factor * std::pow(mean_edge_length(mesh), 2);

    PlateauResult r;
    r.initial_area = a;
    r.area_history.push_back(a);
    int accepted_run = 0;
    int it = 0;
    std::vector<Vec4> g;
    double gn = 0;
    auto gradient = [&] {
        g = ev.area_gradient(x);
        ev.project_normal(x, g);
        gn = detail::interior_norm(g, mesh.boundary);
    };

    auto descend = [&](int budget) {
        gradient();
        for (int local = 0; local < budget && it < p.max_iters && gn >= p.tolerance; ++it, ++local) {
            int failures = 0;
            std::vector<Vec4> y(x.size());
            double ay = 0;
            for (;;) {
                for (std::size_t v = 0; v < x.size(); ++v)
                    y[v] = mesh.boundary[v] ? x[v] : Vec4((x[v] - step * g[v]).normalized());
                enforce(y);
                ay = ev.area(y);
                if (ay <= a - ls.armijo * step * gn * gn) break;
                step *= 0.5;
                if (++failures >= ls.max_failures) {
                    std::ostringstream os;
                    os << "plateau: line search stagnated at iteration " << it << " (area " << a
                       << ", gradient norm " << gn << ", step " << step << ")";
                    throw numerical_error(os.str());
                }
                accepted_run = 0;
            }
            x.swap(y);
            a = ay;
            r.area_history.push_back(a);
            if (++accepted_run >= ls.growth_after) {
                step *= ls.growth;
                accepted_run = 0;
            }
            gradient();
        }
    };

    // One Jacobi sweep moving interior vertices toward their neighbour average
    // within the surface tangent plane. Returns the largest move.
    auto relax = [&] {
        const auto nrm = ev.vertex_normals(x);
        std::vector<Vec4> y = x;
        double moved = 0;
        for (std::size_t v = 0; v < x.size(); ++v) {
            if (mesh.boundary[v]) continue;
            Vec4 c = Vec4::Zero();
            for (int u : nbrs[v]) c += x[u];
            Vec4 d = c / static_cast<double>(nbrs[v].size()) - x[v];
            d -= d.dot(x[v]) * x[v];
            d -= d.dot(nrm[v]) * nrm[v];
            d *= p.relax.weight;
            moved = std::max(moved, d.norm());
            y[v] = (x[v] + d).normalized();
        }
        enforce(y);
        x.swap(y);
        a = ev.area(x);
        r.relax_marks.push_back(r.area_history.size());
        r.area_history.push_back(a);
        return moved;
    };

    const double h = mean_edge_length(mesh);
    for (int round = 0; round < p.relax.rounds; ++round) {
        descend(p.relax.stage_iters);
        if (relax() < p.relax.settle * h) break;
    }
    descend(p.max_iters);

    mesh.vertices = std::move(x);
    r.mesh = std::move(mesh);
    r.area = a;
    r.gradient_norm = gn;
    r.iterations = it;
    r.converged = gn < p.tolerance;
    r.residual = residual(r.mesh);
    return r;
}

inline PlateauResult solve_report(const PlateauProblem& p) { return solve_from(p, init_disk(p)); }

inline TriMesh solve(const PlateauProblem& p) { return solve_report(p).mesh; }

} // namespace lawson
