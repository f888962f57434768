#pragma once

// Forward-mode dual numbers with a fixed derivative capacity. Only the first
// `width` slots are ever non-zero; loops still run over the full capacity so
// the compiler can vectorize them.

#include <array>
#include <cmath>

namespace lawson {

template <int Cap>
struct Dual {
    double v = 0;
    std::array<double, Cap> d{};

    Dual() = default;
    Dual(double x) : v(x) {} // NOLINT: implicit promotion from constants

    static Dual variable(double x, int slot)
    {
        Dual r(x);
        r.d[slot] = 1.0;
        return r;
    }

    Dual& operator+=(const Dual& o)
    {
        v += o.v;
        for (int i = 0; i < Cap; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o)
    {
        v -= o.v;
        for (int i = 0; i < Cap; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o)
    {
        for (int i = 0; i < Cap; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o)
    {
        const double inv = 1.0 / o.v;
        const double q = v * inv;
        for (int i = 0; i < Cap; ++i) d[i] = (d[i] - q * o.d[i]) * inv;
        v = q;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a)
    {
        a.v = -a.v;
        for (auto& x : a.d) x = -x;
        return a;
    }

    friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
};

template <int Cap>
Dual<Cap> sqrt(const Dual<Cap>& a)
{
    Dual<Cap> r(std::sqrt(a.v));
    const double s = 0.5 / r.v;
    for (int i = 0; i < Cap; ++i) r.d[i] = a.d[i] * s;
    return r;
}

inline double value_of(double x) { return x; }
template <int Cap>
double value_of(const Dual<Cap>& x)
{
    return x.v;
}

} // namespace lawson
