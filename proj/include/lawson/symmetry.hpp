#pragma once

// Finite subgroups of O(4) preserving the marked great circles gamma and
// gamma-perp, and the lattice of symmetry groups of the Lawson surfaces.

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "s3.hpp"

namespace lawson {

class Isometry {
public:
    Isometry() : m_(Mat4::Identity()), det_sign_(1) {}

    explicit Isometry(const Mat4& m) : m_(m)
    {
        const double orth = (m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff();
        if (orth > 1e-12) throw precondition_error("Isometry: matrix is not orthogonal (|M^T M - I| = " + std::to_string(orth) + ")");
        const double d = m.determinant();
        if (std::abs(std::abs(d) - 1.0) > 1e-10) throw precondition_error("Isometry: |det| != 1");
        det_sign_ = d > 0 ? 1 : -1;
    }

    const Mat4& matrix() const { return m_; }
    int det_sign() const { return det_sign_; }

    Vec4 operator()(const Vec4& x) const { return m_ * x; }
    S3Point operator()(const S3Point& p) const { return S3Point::project(m_ * p.vec()); }

    /// Composition: (a * b)(x) = a(b(x)).
    friend Isometry operator*(const Isometry& a, const Isometry& b)
    {
        Isometry r;
        r.m_ = a.m_ * b.m_;
        r.det_sign_ = a.det_sign_ * b.det_sign_;
        return r;
    }

    Isometry inverse() const
    {
        Isometry r;
        r.m_ = m_.transpose();
        r.det_sign_ = det_sign_;
        return r;
    }

private:
    Mat4 m_;
    int det_sign_;
};

namespace detail {

// 2x2 real blocks acting on one complex coordinate.
inline Eigen::Matrix2d rotate_block(double a)
{
    Eigen::Matrix2d b;
    b << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return b;
}

// z -> conj(z) e^{ia}
inline Eigen::Matrix2d conj_rotate_block(double a)
{
    Eigen::Matrix2d b;
    b << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
    return b;
}

inline Isometry block_diag(const Eigen::Matrix2d& b1, const Eigen::Matrix2d& b2)
{
    Mat4 m = Mat4::Zero();
    m.topLeftCorner<2, 2>() = b1;
    m.bottomRightCorner<2, 2>() = b2;
    return Isometry(m);
}

} // namespace detail

// Generators. Indices follow the marked points P_j = (0, e^{ij pi/(k+1)}) and
// Q_l = (e^{il pi/(m+1)}, 0).

/// (z1, z2) -> (z1 e^{2 pi i/(m+1)}, z2): rotation about gamma.
inline Isometry rotation_RP(int m)
{
    return detail::block_diag(detail::rotate_block(2 * pi / (m + 1)), Eigen::Matrix2d::Identity());
}

/// (z1, z2) -> (z1, z2 e^{2 pi i/(k+1)}): rotation about gamma-perp.
inline Isometry rotation_RQ(int k)
{
    return detail::block_diag(Eigen::Matrix2d::Identity(), detail::rotate_block(2 * pi / (k + 1)));
}

/// Rotation taking P_j, Q_l to the dual points P*_j, Q*_l.
inline Isometry rotation_to_dual(int m, int k)
{
    return detail::block_diag(detail::rotate_block(pi / (2 * (m + 1))), detail::rotate_block(pi / (2 * (k + 1))));
}

/// Reflection through the great sphere spanned by P_j and gamma-perp.
inline Isometry reflection_sigma_P(int j, int k)
{
    return detail::block_diag(Eigen::Matrix2d::Identity(), detail::conj_rotate_block(2.0 * j * pi / (k + 1)));
}

/// Reflection through the great sphere spanned by Q_l and gamma.
inline Isometry reflection_sigma_Q(int l, int m)
{
    return detail::block_diag(detail::conj_rotate_block(2.0 * l * pi / (m + 1)), Eigen::Matrix2d::Identity());
}

/// Reflection through the great sphere spanned by P*_j and gamma-perp.
inline Isometry reflection_sigma_Pstar(int j, int k)
{
    return detail::block_diag(Eigen::Matrix2d::Identity(), detail::conj_rotate_block((2.0 * j + 1) * pi / (k + 1)));
}

inline Isometry reflection_sigma_Qstar(int l, int m)
{
    return detail::block_diag(detail::conj_rotate_block((2.0 * l + 1) * pi / (m + 1)), Eigen::Matrix2d::Identity());
}

/// Halfturn about the great circle through P_j and Q_l.
inline Isometry halfturn_gamma(int j, int l, int m, int k)
{
    return reflection_sigma_Q(l, m) * reflection_sigma_P(j, k);
}

/// Halfturn about the great circle through P*_j and Q*_l.
inline Isometry halfturn_gamma_star(int j, int l, int m, int k)
{
    return reflection_sigma_Qstar(l, m) * reflection_sigma_Pstar(j, k);
}

/// (z1, z2) -> (z2, z1); a symmetry only when m = k.
inline Isometry swap_epsilon()
{
    Mat4 m = Mat4::Zero();
    m.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
    m.bottomLeftCorner<2, 2>() = Eigen::Matrix2d::Identity();
    return Isometry(m);
}

// ---------------------------------------------------------------------------
// Element identity by quantized matrix entries.

struct ElementKey {
    std::array<std::int64_t, 16> q{};
    bool operator==(const ElementKey&) const = default;
};

struct ElementKeyHash {
    std::size_t operator()(const ElementKey& k) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k.q) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline constexpr double element_grid = 1e-9;

inline ElementKey element_key(const Isometry& g)
{
    ElementKey k;
    for (int i = 0; i < 16; ++i) {
        k.q[i] = static_cast<std::int64_t>(std::llround(g.matrix()(i / 4, i % 4) / element_grid));
    }
    return k;
}

enum class GroupName { R, RP, RQ, Rhat, G, Gstar, Gcheck, Gtilde, GP, GQ, Ghat, Gbar, Custom };

inline std::string_view to_string(GroupName n)
{
    switch (n) {
    case GroupName::R: return "R";
    case GroupName::RP: return "R^P";
    case GroupName::RQ: return "R^Q";
    case GroupName::Rhat: return "Rhat";
    case GroupName::G: return "G";
    case GroupName::Gstar: return "G*";
    case GroupName::Gcheck: return "Gcheck";
    case GroupName::Gtilde: return "Gtilde";
    case GroupName::GP: return "G^P";
    case GroupName::GQ: return "G^Q";
    case GroupName::Ghat: return "Ghat";
    case GroupName::Gbar: return "Gbar";
    case GroupName::Custom: return "custom";
    }
    return "?";
}

inline std::optional<GroupName> group_name_from_string(std::string_view s)
{
    for (auto n : {GroupName::R, GroupName::RP, GroupName::RQ, GroupName::Rhat, GroupName::G, GroupName::Gstar,
                   GroupName::Gcheck, GroupName::Gtilde, GroupName::GP, GroupName::GQ, GroupName::Ghat, GroupName::Gbar,
                   GroupName::Custom}) {
        if (to_string(n) == s) return n;
    }
    if (s == "RP") return GroupName::RP;
    if (s == "RQ") return GroupName::RQ;
    if (s == "Gstar") return GroupName::Gstar;
    if (s == "GP") return GroupName::GP;
    if (s == "GQ") return GroupName::GQ;
    return std::nullopt;
}

/// A finite group of isometries. Element 0 is always the identity.
class SymmetryGroup {
public:
    SymmetryGroup() : SymmetryGroup(GroupName::Custom, 1, 1, {Isometry()}, {}) {}

    SymmetryGroup(GroupName name, int m, int k, std::vector<Isometry> elements, std::vector<Isometry> generators)
        : name_(name), m_(m), k_(k), elements_(std::move(elements)), generators_(std::move(generators))
    {
        for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(element_key(elements_[i]), i);
    }

    GroupName name() const { return name_; }
    int m() const { return m_; }
    int k() const { return k_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Isometry>& elements() const { return elements_; }
    const std::vector<Isometry>& generators() const { return generators_; }
    const Isometry& operator[](std::size_t i) const { return elements_[i]; }

    std::optional<std::size_t> find(const Isometry& g) const
    {
        auto it = index_.find(element_key(g));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const Isometry& g) const { return find(g).has_value(); }

    /// Index of g*h.
    std::size_t multiply(std::size_t a, std::size_t b) const
    {
        auto r = find(elements_[a] * elements_[b]);
        if (!r) throw numerical_error("SymmetryGroup::multiply: product left the group");
        return *r;
    }

    std::size_t inverse(std::size_t a) const
    {
        auto r = find(elements_[a].inverse());
        if (!r) throw numerical_error("SymmetryGroup::inverse: inverse missing");
        return *r;
    }

private:
    GroupName name_;
    int m_;
    int k_;
    std::vector<Isometry> elements_;
    std::vector<Isometry> generators_;
    std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index_;
};

/// Breadth-first closure of a generator list. Throws once more than
/// max_order distinct elements have been reached.
inline SymmetryGroup generate_group(const std::vector<Isometry>& generators, std::size_t max_order,
                                    GroupName name = GroupName::Custom, int m = 1, int k = 1)
{
    if (max_order < 1) throw precondition_error("generate_group: max_order must be >= 1");
    std::vector<Isometry> elems{Isometry()};
    std::unordered_map<ElementKey, std::size_t, ElementKeyHash> seen{{element_key(elems[0]), 0}};
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& gen : generators) {
            Isometry next = gen * elems[cur];
            auto key = element_key(next);
            if (seen.contains(key)) continue;
            if (elems.size() >= max_order) {
                throw numerical_error("generate_group: closure exceeded max_order " + std::to_string(max_order) +
                                      " (reached " + std::to_string(elems.size() + 1) + " elements)");
            }
            seen.emplace(key, elems.size());
            frontier.push_back(elems.size());
            elems.push_back(std::move(next));
        }
    }
    return SymmetryGroup(name, m, k, std::move(elems), generators);
}

inline void check_mk(int m, int k)
{
    if (m < 1 || k < 1) throw precondition_error("m and k must be >= 1");
    if (m > 32 || k > 32) throw precondition_error("m, k > 32 not supported (element quantization)");
}

/// Generator list of each named group.
inline std::vector<Isometry> named_generators(GroupName name, int m, int k)
{
    check_mk(m, k);
    const Isometry rp = rotation_RP(m);
    const Isometry rq = rotation_RQ(k);
    const Isometry sp0 = reflection_sigma_Pstar(0, k);
    const Isometry sq0 = reflection_sigma_Qstar(0, m);
    const Isometry g11 = halfturn_gamma(1, 1, m, k);
    const Isometry gs11 = halfturn_gamma_star(1, 1, m, k);
    switch (name) {
    case GroupName::R: return {rp, rq};
    case GroupName::RP: return {rp, rq, sp0};
    case GroupName::RQ: return {rp, rq, sq0};
    case GroupName::Rhat:
        return {sp0, reflection_sigma_Pstar(1, k), sq0, reflection_sigma_Qstar(1, m)};
    case GroupName::G: return {rp, rq, g11};
    case GroupName::Gstar: return {rp, rq, gs11};
    case GroupName::Gcheck: return {rp, rq, gs11, sp0};
    case GroupName::Gtilde: return {rp, rq, g11, gs11};
    case GroupName::GP: return {rp, rq, g11, sp0};
    case GroupName::GQ: return {rp, rq, g11, sq0};
    case GroupName::Ghat: return {rp, rq, g11, gs11, sp0};
    case GroupName::Gbar:
        if (m != k) throw precondition_error("Gbar requires m == k (got m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")");
        return {rp, rq, g11, gs11, sp0, swap_epsilon()};
    case GroupName::Custom: break;
    }
    throw precondition_error("named_generators: custom groups have no fixed generator list");
}

inline std::size_t default_max_order(int m, int k) { return 16 * static_cast<std::size_t>((m + 1) * (k + 1)); }

inline SymmetryGroup build_named_group(GroupName name, int m, int k)
{
    return generate_group(named_generators(name, m, k), default_max_order(m, k), name, m, k);
}

/// Predicted order of each named group.
inline std::size_t predicted_order(GroupName name, int m, int k)
{
    const std::size_t r = static_cast<std::size_t>((m + 1) * (k + 1));
    switch (name) {
    case GroupName::R: return r;
    case GroupName::RP:
    case GroupName::RQ:
    case GroupName::G:
    case GroupName::Gstar: return 2 * r;
    case GroupName::Rhat:
    case GroupName::Gcheck:
    case GroupName::Gtilde:
    case GroupName::GP:
    case GroupName::GQ: return 4 * r;
    case GroupName::Ghat: return 8 * r;
    case GroupName::Gbar: return 16 * r;
    case GroupName::Custom: break;
    }
    return 0;
}

inline bool is_subgroup(const SymmetryGroup& h, const SymmetryGroup& g)
{
    for (const auto& e : h.elements())
        if (!g.contains(e)) return false;
    return true;
}

inline bool is_normal(const SymmetryGroup& h, const SymmetryGroup& g)
{
    if (!is_subgroup(h, g)) return false;
    // Conjugating by generators of G suffices, but generators may be empty for
    // custom groups, so use every element.
    for (const auto& x : g.elements()) {
        const Isometry xi = x.inverse();
        for (const auto& e : h.elements())
            if (!h.contains(x * e * xi)) return false;
    }
    return true;
}

inline std::size_t index(const SymmetryGroup& h, const SymmetryGroup& g)
{
    if (!is_subgroup(h, g)) throw precondition_error("index: H is not a subgroup of G");
    return g.order() / h.order();
}

inline std::size_t element_order(const SymmetryGroup& g, std::size_t i)
{
    std::size_t ord = 1;
    Isometry p = g[i];
    const ElementKey id = element_key(Isometry());
    while (!(element_key(p) == id)) {
        p = g[i] * p;
        if (++ord > g.order()) throw numerical_error("element_order: element does not return to identity");
    }
    return ord;
}

inline std::size_t max_element_order(const SymmetryGroup& g)
{
    std::size_t best = 1;
    for (std::size_t i = 0; i < g.order(); ++i) best = std::max(best, element_order(g, i));
    return best;
}

/// Coset table of G/N; coset 0 is N itself.
struct QuotientTable {
    std::vector<std::size_t> representatives; // indices into G
    std::vector<std::vector<std::size_t>> table; // table[a][b] = coset of rep_a * rep_b
    std::vector<std::size_t> element_orders;

    std::size_t order() const { return representatives.size(); }

    bool is_abelian() const
    {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < order(); ++b)
                if (table[a][b] != table[b][a]) return false;
        return true;
    }

    std::size_t exponent() const
    {
        std::size_t e = 1;
        for (auto o : element_orders) e = std::lcm(e, o);
        return e;
    }
};

inline QuotientTable quotient_group(const SymmetryGroup& g, const SymmetryGroup& n)
{
    if (!is_normal(n, g)) throw precondition_error("quotient_group: N is not normal in G");
    std::vector<std::size_t> coset_of(g.order(), SIZE_MAX);
    QuotientTable q;
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (coset_of[i] != SIZE_MAX) continue;
        const std::size_t c = q.representatives.size();
        q.representatives.push_back(i);
        for (const auto& e : n.elements()) {
            auto j = g.find(g[i] * e);
            if (!j) throw numerical_error("quotient_group: coset element missing from G");
            coset_of[*j] = c;
        }
    }
    const std::size_t r = q.representatives.size();
    q.table.assign(r, std::vector<std::size_t>(r));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            q.table[a][b] = coset_of[g.multiply(q.representatives[a], q.representatives[b])];

    for (std::size_t a = 0; a < r; ++a) {
        std::size_t ord = 1, cur = a;
        while (cur != 0) {
            cur = q.table[cur][a];
            ++ord;
        }
        q.element_orders.push_back(ord);
    }
    return q;
}

/// Inclusions drawn in the subgroup lattice of the named groups.
struct LatticeEdge {
    GroupName sub;
    GroupName super;
    std::size_t stated_index;
};

inline const std::vector<LatticeEdge>& lattice_edges()
{
    static const std::vector<LatticeEdge> edges{
        {GroupName::R, GroupName::G, 2},       {GroupName::R, GroupName::Gstar, 2},
        {GroupName::R, GroupName::Gtilde, 4},  {GroupName::G, GroupName::GP, 2},
        {GroupName::G, GroupName::GQ, 2},      {GroupName::G, GroupName::Gtilde, 2},
        {GroupName::Gstar, GroupName::Gtilde, 2}, {GroupName::Gstar, GroupName::Gcheck, 2},
        {GroupName::GP, GroupName::Ghat, 2},   {GroupName::GQ, GroupName::Ghat, 2},
        {GroupName::Gtilde, GroupName::Ghat, 2}, {GroupName::Gcheck, GroupName::Ghat, 2},
    };
    return edges;
}

/// All groups of the standard family except Gbar.
inline std::vector<GroupName> standard_group_names()
{
    return {GroupName::R,     GroupName::RP,     GroupName::RQ, GroupName::Rhat, GroupName::G,   GroupName::Gstar,
            GroupName::Gcheck, GroupName::Gtilde, GroupName::GP, GroupName::GQ,   GroupName::Ghat};
}

} // namespace lawson
