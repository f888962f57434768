#pragma once

// Discrete area, mean curvature and Willmore energy of S^3-meshes.
//
// The R^4 mean-curvature vector at a vertex is the cotangent Laplacian of the
// position over the mixed Voronoi cell. For a surface in S^3 its radial part
// is exactly -x, so only the component along the surface normal inside
// T_x S^3 is kept as H; then W = area + sum_i A_i H_i^2.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dual.hpp"
#include "error.hpp"
#include "mesh.hpp"

namespace lawson {

template <class T>
using V4 = std::array<T, 4>;

namespace detail {

template <class T>
V4<T> load(const Vec4& x)
{
    return {T(x[0]), T(x[1]), T(x[2]), T(x[3])};
}

template <class T>
T dot(const V4<T>& a, const V4<T>& b)
{
    T s = a[0] * b[0];
    s += a[1] * b[1];
    s += a[2] * b[2];
    s += a[3] * b[3];
    return s;
}

template <class T>
V4<T> sub(const V4<T>& a, const V4<T>& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

template <class T>
void axpy(V4<T>& acc, const T& s, const V4<T>& v)
{
    for (int i = 0; i < 4; ++i) acc[i] += s * v[i];
}

template <class T>
T det3(const T& a00, const T& a01, const T& a02, const T& a10, const T& a11, const T& a12, const T& a20, const T& a21,
       const T& a22)
{
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) + a02 * (a10 * a21 - a11 * a20);
}

/// Vector orthogonal to a, b, c (generalized cross product).
template <class T>
V4<T> cross4(const V4<T>& a, const V4<T>& b, const V4<T>& c)
{
    return {det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]),
            -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]),
            det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]),
            -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2])};
}

template <class T>
struct VertexCurvature {
    T cell_area; // mixed Voronoi area
    T H;         // normal mean curvature inside T_x S^3
};

/// Curvature at a vertex from its incident oriented faces (x, a_f, b_f).
template <class T>
VertexCurvature<T> vertex_curvature(const V4<T>& x, const std::vector<std::pair<V4<T>, V4<T>>>& fan)
{
    using std::sqrt;
    T area(0.0);
    V4<T> hvec{T(0.0), T(0.0), T(0.0), T(0.0)};
    V4<T> normal{T(0.0), T(0.0), T(0.0), T(0.0)};
    for (const auto& [xa, xb] : fan) {
        const V4<T> ea = sub(xa, x), eb = sub(xb, x), eab = sub(xb, xa);
        const T la = dot(ea, ea), lb = dot(eb, eb);
        const T dx = dot(ea, eb);
        const T da = -dot(ea, eab); // (x - a).(b - a)
        const T db = dot(eb, eab);  // (x - b).(a - b)
        const T twice_area = sqrt(la * lb - dx * dx);
        const T cot_a = da / twice_area;
        const T cot_b = db / twice_area;
        // Edge x-a is opposite the angle at b and vice versa.
        axpy(hvec, cot_b, ea);
        axpy(hvec, cot_a, eb);
        const T tri = twice_area * T(0.5);
        if (value_of(dx) < 0) {
            area += tri * T(0.5);
        } else if (value_of(da) < 0 || value_of(db) < 0) {
            area += tri * T(0.25);
        } else {
            area += (la * cot_b + lb * cot_a) * T(0.125);
        }
        const V4<T> n = cross4(x, xa, xb);
        for (int i = 0; i < 4; ++i) normal[i] += n[i];
    }
    if (!(value_of(area) > 1e-300)) throw numerical_error("mean_curvature: zero-area vertex cell");
    const T nn = sqrt(dot(normal, normal));
    if (!(value_of(nn) > 1e-300)) throw numerical_error("mean_curvature: degenerate vertex normal");
    const T h = dot(hvec, normal) / (T(4.0) * area * nn);
    return {area, h};
}

} // namespace detail

struct EnergyReport {
    double area = 0;
    double willmore = 0;
    std::vector<double> H; // per vertex; 0 on boundary vertices
    double gradient_norm = 0;
};

/// Fixed-connectivity energy evaluator; positions are supplied per call.
class EnergyEvaluator {
public:
    explicit EnergyEvaluator(const TriMesh& mesh) : faces_(mesh.faces), nv_(mesh.vertices.size())
    {
        fans_.resize(nv_);
        rings_.resize(nv_);
        for (const auto& f : faces_) {
            for (int i = 0; i < 3; ++i) {
                fans_[f[i]].push_back({f[(i + 1) % 3], f[(i + 2) % 3]});
                rings_[f[i]].push_back(f[(i + 1) % 3]);
                rings_[f[i]].push_back(f[(i + 2) % 3]);
            }
        }
        for (auto& r : rings_) {
            std::sort(r.begin(), r.end());
            r.erase(std::unique(r.begin(), r.end()), r.end());
        }
        interior_.assign(nv_, 1);
        const auto flags = mesh.boundary.size() == nv_ ? mesh.boundary : compute_boundary_flags(mesh);
        const auto computed = compute_boundary_flags(mesh);
        for (std::size_t v = 0; v < nv_; ++v)
            if (flags[v] || computed[v] || fans_[v].empty()) interior_[v] = 0;
    }

    std::size_t num_vertices() const { return nv_; }
    bool interior(std::size_t v) const { return interior_[v] != 0; }
    const std::vector<int>& ring(std::size_t v) const { return rings_[v]; }

    double area(const std::vector<Vec4>& x) const
    {
        double s = 0;
        for (const auto& f : faces_) s += triangle_area(x[f[0]], x[f[1]], x[f[2]]);
        return s;
    }

    static double triangle_area(const Vec4& a, const Vec4& b, const Vec4& c)
    {
        const Vec4 u = b - a, v = c - a;
        return 0.5 * std::sqrt(std::max(0.0, u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2)));
    }

    /// Curvature of one interior vertex.
    detail::VertexCurvature<double> vertex_curvature(const std::vector<Vec4>& x, std::size_t v) const
    {
        std::vector<std::pair<V4<double>, V4<double>>> fan;
        fan.reserve(fans_[v].size());
        for (const auto& [a, b] : fans_[v]) fan.emplace_back(detail::load<double>(x[a]), detail::load<double>(x[b]));
        return detail::vertex_curvature(detail::load<double>(x[v]), fan);
    }

    std::vector<double> mean_curvature(const std::vector<Vec4>& x) const
    {
        std::vector<double> h(nv_, 0.0);
        for (std::size_t v = 0; v < nv_; ++v)
            if (interior_[v]) h[v] = vertex_curvature(x, v).H;
        return h;
    }

    double willmore_value(const std::vector<Vec4>& x) const
    {
        double w = area(x);
        for (std::size_t v = 0; v < nv_; ++v) {
            if (!interior_[v]) continue;
            const auto c = vertex_curvature(x, v);
            w += c.cell_area * c.H * c.H;
        }
        return w;
    }

    EnergyReport willmore(const std::vector<Vec4>& x) const
    {
        EnergyReport r;
        r.area = area(x);
        r.H.assign(nv_, 0.0);
        double bending = 0;
        for (std::size_t v = 0; v < nv_; ++v) {
            if (!interior_[v]) continue;
            const auto c = vertex_curvature(x, v);
            r.H[v] = c.H;
            bending += c.cell_area * c.H * c.H;
        }
        r.willmore = r.area + bending;
        return r;
    }

    /// Analytic area gradient, tangent to S^3 at each vertex.
    std::vector<Vec4> area_gradient(const std::vector<Vec4>& x, bool project = true) const
    {
        std::vector<Vec4> g(nv_, Vec4::Zero());
        for (const auto& f : faces_) {
            const Vec4 u = x[f[1]] - x[f[0]], v = x[f[2]] - x[f[0]];
            const double uu = u.squaredNorm(), vv = v.squaredNorm(), uv = u.dot(v);
            const double root = std::sqrt(std::max(1e-300, uu * vv - uv * uv));
            const Vec4 gu = (vv * u - uv * v) / (2 * root);
            const Vec4 gv = (uu * v - uv * u) / (2 * root);
            g[f[1]] += gu;
            g[f[2]] += gv;
            g[f[0]] -= gu + gv;
        }
        if (project) project_tangent(x, g);
        return g;
    }

    /// Exact gradient of the discrete Willmore energy, tangent to S^3.
    std::vector<Vec4> willmore_gradient(const std::vector<Vec4>& x, bool project = true) const
    {
        std::vector<Vec4> g = area_gradient(x, false);
        for (std::size_t v = 0; v < nv_; ++v) {
            if (!interior_[v]) continue;
            const std::size_t width = 4 * (rings_[v].size() + 1);
            if (width <= 32) {
                accumulate_bending<32>(x, v, g);
            } else if (width <= 64) {
                accumulate_bending<64>(x, v, g);
            } else if (width <= 128) {
                accumulate_bending<128>(x, v, g);
            } else if (width <= 256) {
                accumulate_bending<256>(x, v, g);
            } else {
                accumulate_bending_fd(x, v, g, 1e-6);
            }
        }
        if (project) project_tangent(x, g);
        return g;
    }

    /// Centered differences of the local energies, h = h_rel * mean edge.
    std::vector<Vec4> willmore_gradient_fd(const std::vector<Vec4>& x, double h_rel = 1e-5, bool project = true) const
    {
        double mean_edge = 0;
        std::size_t ne = 0;
        for (const auto& f : faces_)
            for (int i = 0; i < 3; ++i, ++ne) mean_edge += (x[f[i]] - x[f[(i + 1) % 3]]).norm();
        const double h = h_rel * (ne ? mean_edge / ne : 1.0);
        std::vector<Vec4> g = area_gradient(x, false);
        for (std::size_t v = 0; v < nv_; ++v)
            if (interior_[v]) accumulate_bending_fd(x, v, g, h);
        if (project) project_tangent(x, g);
        return g;
    }

    static void project_tangent(const std::vector<Vec4>& x, std::vector<Vec4>& g)
    {
        for (std::size_t v = 0; v < g.size(); ++v) g[v] -= g[v].dot(x[v]) * x[v];
    }

    /// Unit surface normals inside T_x S^3 (fan sum of 4D cross products).
    std::vector<Vec4> vertex_normals(const std::vector<Vec4>& x) const
    {
        std::vector<Vec4> n(nv_, Vec4::Zero());
        for (std::size_t v = 0; v < nv_; ++v) {
            V4<double> acc{};
            const auto xv = detail::load<double>(x[v]);
            for (const auto& [a, b] : fans_[v]) {
                const auto c = detail::cross4(xv, detail::load<double>(x[a]), detail::load<double>(x[b]));
                for (int i = 0; i < 4; ++i) acc[i] += c[i];
            }
            const Vec4 w(acc[0], acc[1], acc[2], acc[3]);
            if (w.norm() > 1e-300) n[v] = w.normalized();
        }
        return n;
    }

    /// Keep only the normal component of each vector.
    void project_normal(const std::vector<Vec4>& x, std::vector<Vec4>& g) const
    {
        const auto n = vertex_normals(x);
        for (std::size_t v = 0; v < g.size(); ++v) g[v] = g[v].dot(n[v]) * n[v];
    }

private:
    template <int Cap>
    void accumulate_bending(const std::vector<Vec4>& x, std::size_t v, std::vector<Vec4>& g) const
    {
        using D = Dual<Cap>;
        const auto& ring = rings_[v];
        auto slot_of = [&](int u) -> int {
            if (u == static_cast<int>(v)) return 0;
            auto it = std::lower_bound(ring.begin(), ring.end(), u);
            return 4 * (1 + static_cast<int>(it - ring.begin()));
        };
        auto var = [&](int u) {
            const int s = slot_of(u);
            V4<D> r;
            for (int i = 0; i < 4; ++i) r[i] = D::variable(x[u][i], s + i);
            return r;
        };
        std::vector<std::pair<V4<D>, V4<D>>> fan;
        fan.reserve(fans_[v].size());
        for (const auto& [a, b] : fans_[v]) fan.emplace_back(var(a), var(b));
        const auto c = detail::vertex_curvature(var(static_cast<int>(v)), fan);
        const D w = c.cell_area * c.H * c.H;
        for (int i = 0; i < 4; ++i) g[v][i] += w.d[i];
        for (std::size_t r = 0; r < ring.size(); ++r)
            for (int i = 0; i < 4; ++i) g[ring[r]][i] += w.d[4 * (r + 1) + i];
    }

    double bending_term(const std::vector<Vec4>& x, std::size_t v) const
    {
        const auto c = vertex_curvature(x, v);
        return c.cell_area * c.H * c.H;
    }

    // d/dy of the bending term at v for each y in {v} + ring(v).
    void accumulate_bending_fd(const std::vector<Vec4>& x, std::size_t v, std::vector<Vec4>& g, double h) const
    {
        std::vector<Vec4> y = x;
        std::vector<int> vars{static_cast<int>(v)};
        vars.insert(vars.end(), rings_[v].begin(), rings_[v].end());
        for (int u : vars) {
            for (int i = 0; i < 4; ++i) {
                const double orig = y[u][i];
                y[u][i] = orig + h;
                const double ep = bending_term(y, v);
                y[u][i] = orig - h;
                const double em = bending_term(y, v);
                y[u][i] = orig;
                g[u][i] += (ep - em) / (2 * h);
            }
        }
    }

    std::vector<Face> faces_;
    std::size_t nv_;
    std::vector<std::vector<std::pair<int, int>>> fans_;
    std::vector<std::vector<int>> rings_;
    std::vector<char> interior_;
};

// Free-function forms.

inline double area(const TriMesh& mesh) { return EnergyEvaluator(mesh).area(mesh.vertices); }

inline std::vector<double> mean_curvature(const TriMesh& mesh) { return EnergyEvaluator(mesh).mean_curvature(mesh.vertices); }

inline EnergyReport willmore(const TriMesh& mesh)
{
    EnergyEvaluator ev(mesh);
    EnergyReport r = ev.willmore(mesh.vertices);
    double gn = 0;
    for (const auto& g : ev.willmore_gradient(mesh.vertices)) gn += g.squaredNorm();
    r.gradient_norm = std::sqrt(gn);
    return r;
}

inline std::vector<Vec4> area_gradient(const TriMesh& mesh) { return EnergyEvaluator(mesh).area_gradient(mesh.vertices); }

inline std::vector<Vec4> willmore_gradient(const TriMesh& mesh)
{
    return EnergyEvaluator(mesh).willmore_gradient(mesh.vertices);
}

inline double gradient_norm(const std::vector<Vec4>& g)
{
    double s = 0;
    for (const auto& v : g) s += v.squaredNorm();
    return std::sqrt(s);
}

} // namespace lawson
