#pragma once

// Orbifold Euler numbers and genus bookkeeping for surfaces in S^3/R_{m,k}.
// Everything here is exact rational arithmetic.

#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

#include "error.hpp"

namespace lawson {

using Rational = boost::rational<long long>;

enum class LRelation { contains_L, meets_L_twice };

inline std::string_view to_string(LRelation r)
{
    return r == LRelation::contains_L ? "contains_L" : "meets_L_twice";
}

/// Quotient surface pi(M): genus hat_g, v1 = #(pi(M) cap S_1), v2 = #(pi(M) cap S_2).
struct OrbifoldPattern {
    int m = 1;
    int k = 1;
    int hat_g = 0;
    int v1 = 0;
    int v2 = 0;
    LRelation l_relation = LRelation::contains_L;

    std::tuple<int, int, int> triple() const { return {hat_g, v1, v2}; }
    bool operator==(const OrbifoldPattern&) const = default;
};

inline void check_pattern(const OrbifoldPattern& p)
{
    if (p.m < 1 || p.k < 1) throw precondition_error("orbifold: m, k must be >= 1");
    if (p.hat_g < 0 || p.v1 < 0 || p.v2 < 0) throw precondition_error("orbifold: hat_g, v1, v2 must be >= 0");
}

inline std::string to_string(const OrbifoldPattern& p)
{
    std::ostringstream os;
    os << "(" << p.hat_g << "," << p.v1 << "," << p.v2 << ")";
    return os.str();
}

/// chi_o = 2 - 2 hat_g - v1 - v2 + v1/(m+1) + v2/(k+1).
inline Rational chi_orbifold(const OrbifoldPattern& p)
{
    check_pattern(p);
    return Rational(2 - 2 * p.hat_g - p.v1 - p.v2) + Rational(p.v1, p.m + 1) + Rational(p.v2, p.k + 1);
}

/// g = mk + (m+1)(k+1) hat_g - (m(k+1)(2-v1) + k(m+1)(2-v2)) / 2 as an exact rational.
inline Rational genus_rational(const OrbifoldPattern& p)
{
    check_pattern(p);
    const long long m = p.m, k = p.k;
    return Rational(m * k + (m + 1) * (k + 1) * p.hat_g) -
           Rational(m * (k + 1) * (2 - p.v1) + k * (m + 1) * (2 - p.v2), 2);
}

inline int genus_from_pattern(const OrbifoldPattern& p)
{
    const Rational g = genus_rational(p);
    if (g.denominator() != 1LL) {
        std::ostringstream os;
        os << "orbifold: inconsistent pattern " << to_string(p) << " gives non-integer genus " << g;
        throw precondition_error(os.str());
    }
    return static_cast<int>(g.numerator());
}

/// Genus when pi(M) has boundary S_2 (only possible for k = 1): g = 2 hat_g (m+1) + m (v1 - 1).
inline int boundary_case_genus(int m, int hat_g, int v1)
{
    if (m < 1 || hat_g < 0 || v1 < 0) throw precondition_error("orbifold: invalid boundary pattern");
    if (v1 % 2 == 0) throw precondition_error("orbifold: boundary case needs odd v1");
    return 2 * hat_g * (m + 1) + m * (v1 - 1);
}

struct HatGBound {
    Rational bound;   // m(2-v1)/(2m+2) + k(2-v2)/(2k+2) + k/((m+1)(k+1))
    Rational relaxed; // 2m/(2m+2) + k/((m+1)(k+1))
    bool below_one() const { return relaxed < Rational(1) && bound < Rational(1); }
};

/// Upper bound on hat_g when g <= mk + k.
inline HatGBound hat_g_bound(int m, int k, int v1, int v2)
{
    if (m < 1 || k < 1 || v1 < 0 || v2 < 0) throw precondition_error("orbifold: invalid bound arguments");
    const Rational tail(k, (m + 1) * (k + 1));
    HatGBound b;
    b.bound = Rational(m * (2 - v1), 2 * m + 2) + Rational(k * (2 - v2), 2 * k + 2) + tail;
    b.relaxed = Rational(2 * m, 2 * m + 2) + tail;
    return b;
}

/// All closed transversal patterns of genus g with 1 < g <= mk + k that
/// survive the constraints; each feasible (hat_g, v1, v2) appears once per
/// L-relation tag.
inline std::vector<OrbifoldPattern> classify(int m, int k, int g)
{
    if (m < 1 || k < 1) throw precondition_error("orbifold: m, k must be >= 1");
    if (!(1 < g && g <= m * k + k)) throw precondition_error("orbifold: classify needs 1 < g <= mk + k");
    std::vector<OrbifoldPattern> out;
    for (int hg = 0; hg <= g; ++hg) {
        for (int v1 = 0; v1 <= 2 * g + 2; v1 += 2) {
            for (int v2 = 0; v2 <= 2 * g + 2; v2 += 2) {
                OrbifoldPattern p{m, k, hg, v1, v2};
                if (genus_rational(p) != Rational(g)) continue;
                if (v1 == 0 && v2 == 0) continue;
                if (Rational(hg) > hat_g_bound(m, k, v1, v2).bound) continue;
                if (hg == 0 && (v1 < 2 || v2 < 2)) continue;
                for (auto r : {LRelation::contains_L, LRelation::meets_L_twice}) {
                    p.l_relation = r;
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

/// Distinct (hat_g, v1, v2) triples of a pattern list.
inline std::set<std::tuple<int, int, int>> distinct_triples(const std::vector<OrbifoldPattern>& ps)
{
    std::set<std::tuple<int, int, int>> s;
    for (const auto& p : ps) s.insert(p.triple());
    return s;
}

/// Feasible (hat_g, v1) for the boundary case (k = 1, boundary S_2) with
/// 1 < g <= m + 1.
inline std::vector<std::pair<int, int>> classify_boundary(int m, int g)
{
    if (m < 1) throw precondition_error("orbifold: m must be >= 1");
    if (!(1 < g && g <= m + 1)) throw precondition_error("orbifold: boundary case needs 1 < g <= m + 1");
    std::vector<std::pair<int, int>> out;
    for (int hg = 0; hg <= g; ++hg)
        for (int v1 = 1; v1 <= 2 * g + 2; v1 += 2)
            if (boundary_case_genus(m, hg, v1) == g) out.push_back({hg, v1});
    return out;
}

/// R_{m,k} is cyclic iff gcd(m+1, k+1) = 1.
inline bool has_full_order_element(int m, int k)
{
    if (m < 1 || k < 1) throw precondition_error("orbifold: m, k must be >= 1");
    return std::gcd(m + 1, k + 1) == 1;
}

struct TableRow {
    int m = 1;
    int k = 1;
    int g = 2;
    std::vector<OrbifoldPattern> patterns;
};

/// classify over 1 <= k <= m, m <= max_m, k <= max_k and every g in (1, mk + k].
inline std::vector<TableRow> table(int max_m, int max_k)
{
    if (max_m < 1 || max_k < 1) throw precondition_error("orbifold: table bounds must be >= 1");
    std::vector<TableRow> rows;
    for (int m = 1; m <= max_m; ++m)
        for (int k = 1; k <= std::min(m, max_k); ++k)
            for (int g = 2; g <= m * k + k; ++g) rows.push_back({m, k, g, classify(m, k, g)});
    return rows;
}

inline std::string triples_string(const std::vector<OrbifoldPattern>& ps)
{
    const auto t = distinct_triples(ps);
    if (t.empty()) return "none";
    std::string s;
    for (const auto& [a, b, c] : t) {
        if (!s.empty()) s += " ";
        s += "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
    return s;
}

inline std::string table_markdown(const std::vector<TableRow>& rows)
{
    std::ostringstream os;
    os << "| m | k | g | mk | patterns (hat_g,v1,v2) |\n|---|---|---|---|---|\n";
    for (const auto& r : rows)
        os << "| " << r.m << " | " << r.k << " | " << r.g << " | " << r.m * r.k << " | " << triples_string(r.patterns)
           << " |\n";
    return os.str();
}

inline std::string table_csv(const std::vector<TableRow>& rows)
{
    std::ostringstream os;
    os << "m,k,g,mk,patterns\n";
    for (const auto& r : rows)
        os << r.m << "," << r.k << "," << r.g << "," << r.m * r.k << "," << triples_string(r.patterns) << "\n";
    return os.str();
}

} // namespace lawson
