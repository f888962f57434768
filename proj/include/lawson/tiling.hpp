#pragma once

// Marked points on gamma / gamma-perp and the tetrahedral tiling they induce.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "s3.hpp"
#include "symmetry.hpp"

namespace lawson {

struct MarkedPoints {
    int m = 1;
    int k = 1;
    std::vector<S3Point> P;     // 2k+2 points on gamma
    std::vector<S3Point> Q;     // 2m+2 points on gamma-perp
    std::vector<S3Point> Pstar; // arc midpoints
    std::vector<S3Point> Qstar;
};

inline void check_mk_ordered(int m, int k)
{
    if (!(m >= k && k >= 1)) throw precondition_error("require m >= k >= 1");
}

inline MarkedPoints marked_points(int m, int k)
{
    check_mk_ordered(m, k);
    MarkedPoints mp;
    mp.m = m;
    mp.k = k;
    for (int j = 0; j < 2 * k + 2; ++j) {
        mp.P.push_back(S3Point::on_gamma(j * pi / (k + 1)));
        mp.Pstar.push_back(S3Point::on_gamma((2 * j + 1) * pi / (2 * (k + 1))));
    }
    for (int l = 0; l < 2 * m + 2; ++l) {
        mp.Q.push_back(S3Point::on_gamma_perp(l * pi / (m + 1)));
        mp.Qstar.push_back(S3Point::on_gamma_perp((2 * l + 1) * pi / (2 * (m + 1))));
    }
    return mp;
}

inline S3Point point_P(int j, int k) { return S3Point::on_gamma(j * pi / (k + 1)); }
inline S3Point point_Q(int l, int m) { return S3Point::on_gamma_perp(l * pi / (m + 1)); }

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

/// Join of arc(P_j, P_{j+1}) with arc(Q_l, Q_{l+1}).
struct Tile {
    int j = 0;
    int l = 0;
    bool even() const { return (j + l) % 2 == 0; }
    auto operator<=>(const Tile&) const = default;
};

namespace detail {

// Position of angle a inside the sector [lo, lo + width] modulo 2 pi, as a
// signed slack: >= 0 inside, negative outside.
inline double sector_slack(double a, double lo, double width)
{
    double d = std::remainder(a - lo - width / 2, 2 * pi);
    return width / 2 - std::abs(d);
}

inline constexpr double tile_eps = 1e-12;
inline constexpr double axis_eps = 1e-12;

} // namespace detail

/// Closed-tile membership by angular sectors.
inline bool tile_contains(const Tile& t, const Vec4& x, int m, int k, double eps = detail::tile_eps)
{
    const cplx z1(x[0], x[1]);
    const cplx z2(x[2], x[3]);
    if (std::abs(z2) > detail::axis_eps) {
        const double w = pi / (k + 1);
        if (detail::sector_slack(std::arg(z2), t.j * w, w) < -eps) return false;
    }
    if (std::abs(z1) > detail::axis_eps) {
        const double w = pi / (m + 1);
        if (detail::sector_slack(std::arg(z1), t.l * w, w) < -eps) return false;
    }
    return true;
}

inline bool tile_contains(const Tile& t, const S3Point& x, int m, int k) { return tile_contains(t, x.vec(), m, k); }

/// Strict interior: both coordinates nonzero and strictly inside both sectors.
inline bool tile_interior_contains(const Tile& t, const Vec4& x, int m, int k, double margin)
{
    const cplx z1(x[0], x[1]);
    const cplx z2(x[2], x[3]);
    if (std::abs(z1) < margin || std::abs(z2) < margin) return false;
    return detail::sector_slack(std::arg(z2), t.j * pi / (k + 1), pi / (k + 1)) > margin &&
           detail::sector_slack(std::arg(z1), t.l * pi / (m + 1), pi / (m + 1)) > margin;
}

/// The tile containing an interior point (sector indices of its arguments).
inline Tile tile_of(const Vec4& x, int m, int k)
{
    const double a2 = std::arg(cplx(x[2], x[3]));
    const double a1 = std::arg(cplx(x[0], x[1]));
    auto idx = [](double a, double w, int n) {
        double t = a < 0 ? a + 2 * pi : a;
        return wrap(static_cast<int>(std::floor(t / w)), n);
    };
    return {idx(a2, pi / (k + 1), 2 * k + 2), idx(a1, pi / (m + 1), 2 * m + 2)};
}

/// Barycentre-like interior point: half-way join of the arc midpoints.
inline Vec4 tile_center(const Tile& t, int m, int k)
{
    const Vec4 p = S3Point::on_gamma((t.j + 0.5) * pi / (k + 1)).vec();
    const Vec4 q = S3Point::on_gamma_perp((t.l + 0.5) * pi / (m + 1)).vec();
    return (p + q) / std::sqrt(2.0);
}

inline int tile_count(int m, int k)
{
    check_mk_ordered(m, k);
    return 4 * (m + 1) * (k + 1);
}

inline std::vector<Tile> all_tiles(int m, int k)
{
    std::vector<Tile> out;
    for (int j = 0; j < 2 * k + 2; ++j)
        for (int l = 0; l < 2 * m + 2; ++l) out.push_back({j, l});
    return out;
}

/// Haar-uniform sample on S^3.
inline Vec4 uniform_s3(std::mt19937_64& rng)
{
    std::normal_distribution<double> n01;
    Vec4 v;
    do {
        v = Vec4(n01(rng), n01(rng), n01(rng), n01(rng));
    } while (v.norm() < 1e-8);
    return v.normalized();
}

struct CoverReport {
    std::size_t samples = 0;
    std::size_t covered = 0;
    std::size_t interior = 0;          // samples away from every tile face
    std::size_t interior_exactly_one = 0;
    int max_multiplicity = 0;
    bool ok() const { return covered == samples && interior_exactly_one == interior; }
};

inline CoverReport tiles_cover_check(int m, int k, std::size_t samples, std::uint64_t seed = 1)
{
    check_mk_ordered(m, k);
    std::mt19937_64 rng(seed);
    const auto tiles = all_tiles(m, k);
    CoverReport r;
    r.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        const Vec4 x = uniform_s3(rng);
        int hits = 0;
        bool interior = false;
        for (const auto& t : tiles) {
            if (tile_contains(t, x, m, k)) ++hits;
            if (tile_interior_contains(t, x, m, k, 1e-9)) interior = true;
        }
        if (hits >= 1) ++r.covered;
        if (interior) {
            ++r.interior;
            if (hits == 1) ++r.interior_exactly_one;
        }
        r.max_multiplicity = std::max(r.max_multiplicity, hits);
    }
    return r;
}

struct Quadrilateral {
    std::array<S3Point, 4> vertices; // P_j, Q_l, P_{j+1}, Q_{l+1}
    std::array<GeodesicArc, 4> arcs; // vertices[i] -> vertices[i+1 mod 4]

    double perimeter() const
    {
        double s = 0;
        for (const auto& a : arcs) s += a.angle();
        return s;
    }

    /// Arc-length parameterization of the closed polyline, s in [0, 1).
    Vec4 at(double s) const
    {
        s -= std::floor(s);
        const double L = perimeter();
        double t = s * L;
        for (const auto& a : arcs) {
            if (t <= a.angle()) return a.at(t / a.angle());
            t -= a.angle();
        }
        return arcs[0].at(0);
    }
};

/// Closed geodesic polyline a -> b -> c -> d -> a.
inline Quadrilateral make_quadrilateral(const S3Point& a, const S3Point& b, const S3Point& c, const S3Point& d)
{
    return Quadrilateral{{a, b, c, d}, {GeodesicArc(a, b), GeodesicArc(b, c), GeodesicArc(c, d), GeodesicArc(d, a)}};
}

/// Boundary polyline P_j Q_l P_{j+1} Q_{l+1}.
inline Quadrilateral quadrilateral(int j, int l, int m, int k)
{
    return make_quadrilateral(point_P(j, k), point_Q(l, m), point_P(j + 1, k), point_Q(l + 1, m));
}

inline std::vector<Tile> fundamental_domain(int m, int k)
{
    check_mk_ordered(m, k);
    return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
}

inline bool domain_contains(const std::vector<Tile>& d, const Vec4& x, int m, int k)
{
    for (const auto& t : d)
        if (tile_contains(t, x, m, k)) return true;
    return false;
}

inline bool domain_interior_contains(const std::vector<Tile>& d, const Vec4& x, int m, int k, double margin)
{
    // Interior of the union: inside one tile, or on a shared internal face.
    // Sampling never lands on a face, so tile interiors suffice.
    for (const auto& t : d)
        if (tile_interior_contains(t, x, m, k, margin)) return true;
    return false;
}

struct DomainReport {
    std::size_t samples = 0;
    std::size_t covered = 0;           // some g^{-1} x lies in D
    std::size_t overlap_violations = 0; // x in int D and g^{-1}x in int D for g != id
    bool ok() const { return covered == samples && overlap_violations == 0; }
};

/// Sampled check that the orbit of D under the group tiles S^3.
inline DomainReport fundamental_domain_check(const SymmetryGroup& g, int m, int k, std::size_t samples,
                                             std::uint64_t seed = 2)
{
    const auto d = fundamental_domain(m, k);
    std::mt19937_64 rng(seed);
    DomainReport r;
    r.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        const Vec4 x = uniform_s3(rng);
        bool cov = false;
        for (const auto& e : g.elements()) {
            if (domain_contains(d, e.inverse()(x), m, k)) {
                cov = true;
                break;
            }
        }
        if (cov) ++r.covered;
        if (domain_interior_contains(d, x, m, k, 1e-9)) {
            for (std::size_t i = 1; i < g.order(); ++i)
                if (domain_interior_contains(d, g[i].inverse()(x), m, k, 1e-9)) ++r.overlap_violations;
        }
    }
    return r;
}

/// Tile index permutation induced by an isometry preserving the tiling.
/// Returns an empty vector if the image of some tile centre is not a tile centre.
inline std::vector<int> tile_permutation(const Isometry& g, int m, int k)
{
    const auto tiles = all_tiles(m, k);
    const int nl = 2 * m + 2;
    std::vector<int> perm;
    for (const auto& t : tiles) {
        const Vec4 y = g(tile_center(t, m, k));
        const Tile img = tile_of(y, m, k);
        if ((tile_center(img, m, k) - y).norm() > 1e-9) return {};
        perm.push_back(img.j * nl + img.l);
    }
    return perm;
}

inline bool is_bijection(const std::vector<int>& perm, std::size_t n)
{
    if (perm.size() != n) return false;
    std::set<int> s(perm.begin(), perm.end());
    return s.size() == n && *s.begin() == 0 && *s.rbegin() == static_cast<int>(n) - 1;
}

} // namespace lawson
