#pragma once

// Points, arcs and joins on the unit 3-sphere in C^2 = R^4.
//
// Real coordinate convention: (Re z1, Im z1, Re z2, Im z2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Core>

#include "error.hpp"

namespace lawson {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

class S3Point {
public:
    S3Point() : z1_(0.0, 0.0), z2_(1.0, 0.0) {}

    /// Unit-norm check at 1e-12; use project() for unnormalized input.
    S3Point(cplx z1, cplx z2) : z1_(z1), z2_(z2)
    {
        const double n2 = std::norm(z1) + std::norm(z2);
        if (std::abs(n2 - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "S3Point: |z1|^2+|z2|^2 = " << n2 << " is not 1";
            throw precondition_error(os.str());
        }
    }

    static S3Point from_vec(const Vec4& x) { return S3Point(cplx(x[0], x[1]), cplx(x[2], x[3])); }

    /// x/|x|; rejects vectors shorter than 1e-14.
    static S3Point project(const Vec4& x)
    {
        const double n = x.norm();
        if (!(n > 1e-14)) throw precondition_error("project_to_sphere: vector norm below 1e-14");
        const Vec4 y = x / n;
        S3Point p;
        p.z1_ = cplx(y[0], y[1]);
        p.z2_ = cplx(y[2], y[3]);
        return p;
    }

    /// Point on gamma = {(0, e^{i theta})}.
    static S3Point on_gamma(double theta) { return {cplx(0.0, 0.0), std::polar(1.0, theta)}; }
    /// Point on gamma-perp = {(e^{i theta}, 0)}.
    static S3Point on_gamma_perp(double theta) { return {std::polar(1.0, theta), cplx(0.0, 0.0)}; }

    cplx z1() const { return z1_; }
    cplx z2() const { return z2_; }
    Vec4 vec() const { return {z1_.real(), z1_.imag(), z2_.real(), z2_.imag()}; }

private:
    cplx z1_;
    cplx z2_;
};

inline Vec4 project_to_sphere(const Vec4& x) { return S3Point::project(x).vec(); }

inline double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

inline double geodesic_distance(const Vec4& p, const Vec4& q) { return clamped_acos(p.dot(q)); }
inline double geodesic_distance(const S3Point& p, const S3Point& q) { return geodesic_distance(p.vec(), q.vec()); }

/// P cos t + Q sin t for orthogonal P, Q and t in [0, pi/2].
inline S3Point geodesic_join(const S3Point& p, const S3Point& q, double t)
{
    const double ip = p.vec().dot(q.vec());
    if (std::abs(ip) > 1e-10) {
        std::ostringstream os;
        os << "geodesic_join: endpoints not orthogonal, <P,Q> = " << ip;
        throw precondition_error(os.str());
    }
    if (t < -1e-15 || t > pi / 2 + 1e-15) throw precondition_error("geodesic_join: t outside [0, pi/2]");
    return S3Point::project(p.vec() * std::cos(t) + q.vec() * std::sin(t));
}

/// Shortest great-circle arc between two non-antipodal points.
class GeodesicArc {
public:
    GeodesicArc(const S3Point& a, const S3Point& b) : a_(a), b_(b), angle_(geodesic_distance(a, b))
    {
        if (!(angle_ < pi - 1e-12)) throw precondition_error("GeodesicArc: endpoints are antipodal");
    }

    const S3Point& start() const { return a_; }
    const S3Point& end() const { return b_; }
    double angle() const { return angle_; }

    /// Constant-speed point at s in [0,1] (slerp).
    Vec4 at(double s) const
    {
        if (s <= 0.0) return a_.vec();
        if (s >= 1.0) return b_.vec();
        if (angle_ < 1e-15) return a_.vec();
        const double w = std::sin(angle_);
        return (std::sin((1.0 - s) * angle_) / w) * a_.vec() + (std::sin(s * angle_) / w) * b_.vec();
    }

private:
    S3Point a_;
    S3Point b_;
    double angle_;
};

} // namespace lawson
