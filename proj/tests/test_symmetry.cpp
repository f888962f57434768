#include <random>

#include <gtest/gtest.h>

#include <lawson/symmetry.hpp>

using namespace lawson;

namespace {

Vec4 z(cplx z1, cplx z2) { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }

bool same(const Isometry& a, const Isometry& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-12; }

std::vector<std::pair<int, int>> mk_range(int max_m)
{
    std::vector<std::pair<int, int>> out;
    for (int m = 1; m <= max_m; ++m)
        for (int k = 1; k <= m; ++k) out.push_back({m, k});
    return out;
}

} // namespace

TEST(Isometry, RejectsNonOrthogonal)
{
    Mat4 m = Mat4::Identity();
    m(0, 1) = 0.1;
    EXPECT_THROW(Isometry{m}, precondition_error);
}

TEST(Rotations, FixedSetsAndPeriods)
{
    for (int m = 1; m <= 5; ++m) {
        const Isometry rp = rotation_RP(m);
        EXPECT_LT((rp(z(0, 1)) - z(0, 1)).norm(), 1e-15);
        Isometry acc;
        for (int i = 0; i < m + 1; ++i) acc = rp * acc;
        EXPECT_TRUE(same(acc, Isometry()));
        EXPECT_EQ(rp.det_sign(), 1);
    }
    EXPECT_LT((rotation_RP(1)(z(1, 0)) - z(-1, 0)).norm(), 1e-15);
    const Isometry rq = rotation_RQ(2);
    EXPECT_LT((rq(z(0, 1)) - z(0, std::polar(1.0, 2 * pi / 3))).norm(), 1e-15);
}

TEST(Reflections, SigmaP0)
{
    const Isometry s = reflection_sigma_P(0, 1);
    const cplx a(0.3, 0.4), b(0.5, std::sqrt(1 - 0.25 - 0.25));
    EXPECT_LT((s(z(a, b)) - z(a, std::conj(b))).norm(), 1e-15);
    EXPECT_LT((s(z(0, 1)) - z(0, 1)).norm(), 1e-15);
    EXPECT_TRUE(same(s * s, Isometry()));
    EXPECT_EQ(s.det_sign(), -1);
}

TEST(Reflections, SigmaP1MapsP0ToP2)
{
    // k = 1: P_2 = (0, e^{i pi}).
    EXPECT_LT((reflection_sigma_P(1, 1)(z(0, 1)) - z(0, -1)).norm(), 1e-15);
}

TEST(Reflections, AllAreInvolutionsWithDetMinusOne)
{
    for (auto [m, k] : mk_range(4)) {
        for (int j = 0; j < 2 * k + 2; ++j)
            for (const auto& s : {reflection_sigma_P(j, k), reflection_sigma_Pstar(j, k)}) {
                EXPECT_EQ(s.det_sign(), -1);
                EXPECT_TRUE(same(s * s, Isometry()));
            }
        for (int l = 0; l < 2 * m + 2; ++l)
            for (const auto& s : {reflection_sigma_Q(l, m), reflection_sigma_Qstar(l, m)}) {
                EXPECT_EQ(s.det_sign(), -1);
                EXPECT_TRUE(same(s * s, Isometry()));
            }
    }
}

TEST(Halfturns, Gamma00IsComplexConjugation)
{
    const Isometry g = halfturn_gamma(0, 0, 2, 1);
    const cplx a(0.1, 0.7), b(0.5, 0.5);
    const Vec4 x = z(a, b).normalized();
    const Vec4 y = z(std::conj(cplx(x[0], x[1])), std::conj(cplx(x[2], x[3])));
    EXPECT_LT((g(x) - y).norm(), 1e-15);
    const double h = std::sqrt(2.0) / 2;
    EXPECT_LT((g(z(h, h)) - z(h, h)).norm(), 1e-15);
}

TEST(Halfturns, InvolutionsFixingTheirCircle)
{
    for (auto [m, k] : mk_range(4)) {
        for (int j = 0; j < 2 * k + 2; ++j) {
            for (int l = 0; l < 2 * m + 2; ++l) {
                const Isometry g = halfturn_gamma(j, l, m, k);
                EXPECT_EQ(g.det_sign(), 1);
                EXPECT_TRUE(same(g * g, Isometry()));
                const Vec4 p = z(0, std::polar(1.0, j * pi / (k + 1)));
                const Vec4 q = z(std::polar(1.0, l * pi / (m + 1)), 0);
                EXPECT_LT((g(p) - p).norm(), 1e-14);
                EXPECT_LT((g(q) - q).norm(), 1e-14);
                const Isometry gs = halfturn_gamma_star(j, l, m, k);
                EXPECT_TRUE(same(gs * gs, Isometry()));
            }
        }
    }
}

TEST(GenerateGroup, CyclicProduct)
{
    const auto g = generate_group({rotation_RP(2), rotation_RQ(1)}, 100);
    EXPECT_EQ(g.order(), 6u);
}

TEST(GenerateGroup, ThrowsPastMaxOrder)
{
    try {
        generate_group({rotation_RP(5)}, 3);
        FAIL();
    } catch (const numerical_error& e) {
        EXPECT_NE(std::string(e.what()).find("reached 4"), std::string::npos);
    }
}

TEST(NamedGroups, Examples)
{
    EXPECT_EQ(build_named_group(GroupName::R, 2, 1).order(), 6u);
    EXPECT_EQ(build_named_group(GroupName::G, 2, 1).order(), 12u);
    EXPECT_EQ(build_named_group(GroupName::Gtilde, 2, 1).order(), 24u);
    EXPECT_EQ(build_named_group(GroupName::Ghat, 2, 1).order(), 48u);
    EXPECT_EQ(build_named_group(GroupName::Gbar, 2, 2).order(), 144u);
    EXPECT_THROW(build_named_group(GroupName::Gbar, 2, 1), precondition_error);
}

TEST(NamedGroups, OrderTable)
{
    for (auto [m, k] : mk_range(4)) {
        for (auto n : standard_group_names())
            EXPECT_EQ(build_named_group(n, m, k).order(), predicted_order(n, m, k)) << to_string(n) << " " << m << k;
        if (m == k) EXPECT_EQ(build_named_group(GroupName::Gbar, m, k).order(), predicted_order(GroupName::Gbar, m, k));
    }
}

TEST(NamedGroups, GroupAxioms)
{
    std::mt19937_64 rng(5);
    for (auto [m, k] : mk_range(3)) {
        for (auto n : standard_group_names()) {
            const auto g = build_named_group(n, m, k);
            EXPECT_TRUE(same(g[0], Isometry()));
            std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
            for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.multiply(i, g.inverse(i)), 0u);
            for (int t = 0; t < 50; ++t) {
                const auto a = pick(rng), b = pick(rng), c = pick(rng);
                EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
            }
        }
    }
}

TEST(NamedGroups, DeterminantSigns)
{
    for (auto [m, k] : mk_range(3)) {
        for (const auto& e : build_named_group(GroupName::R, m, k).elements()) EXPECT_EQ(e.det_sign(), 1);
        for (auto n : {GroupName::RP, GroupName::RQ, GroupName::Rhat, GroupName::GP, GroupName::Ghat}) {
            const auto g = build_named_group(n, m, k);
            EXPECT_TRUE(std::any_of(g.elements().begin(), g.elements().end(),
                                    [](const Isometry& e) { return e.det_sign() == -1; }));
        }
    }
}

TEST(NamedGroups, GcheckEqualsRhat)
{
    for (auto [m, k] : mk_range(4)) {
        const auto a = build_named_group(GroupName::Gcheck, m, k);
        const auto b = build_named_group(GroupName::Rhat, m, k);
        EXPECT_TRUE(is_subgroup(a, b) && is_subgroup(b, a));
    }
}

TEST(Lattice, EdgesAreNormalWithStatedIndex)
{
    for (auto [m, k] : mk_range(4)) {
        for (const auto& e : lattice_edges()) {
            const auto h = build_named_group(e.sub, m, k);
            const auto g = build_named_group(e.super, m, k);
            EXPECT_TRUE(is_subgroup(h, g));
            EXPECT_EQ(index(h, g), e.stated_index);
            EXPECT_TRUE(is_normal(h, g)) << to_string(e.sub) << " in " << to_string(e.super);
        }
    }
}

TEST(Lattice, RIsNormalInGhatAndTrivialIsNormal)
{
    const auto r = build_named_group(GroupName::R, 3, 2);
    const auto gh = build_named_group(GroupName::Ghat, 3, 2);
    EXPECT_TRUE(is_normal(r, gh));
    EXPECT_EQ(index(r, build_named_group(GroupName::Gtilde, 3, 2)), 4u);
    EXPECT_TRUE(is_normal(SymmetryGroup(), gh));
}

TEST(Quotient, GtildeModRIsKleinFour)
{
    for (auto [m, k] : mk_range(4)) {
        const auto q = quotient_group(build_named_group(GroupName::Gtilde, m, k), build_named_group(GroupName::R, m, k));
        EXPECT_EQ(q.order(), 4u);
        EXPECT_TRUE(q.is_abelian());
        EXPECT_EQ(q.exponent(), 2u);
        for (std::size_t a = 1; a < 4; ++a) EXPECT_EQ(q.element_orders[a], 2u);
    }
}

TEST(Quotient, GhatModRHasOrderEight)
{
    const auto q = quotient_group(build_named_group(GroupName::Ghat, 2, 1), build_named_group(GroupName::R, 2, 1));
    EXPECT_EQ(q.order(), 8u);
}

TEST(Quotient, GModGIsTrivial)
{
    const auto g = build_named_group(GroupName::G, 2, 1);
    EXPECT_EQ(quotient_group(g, g).order(), 1u);
}

TEST(Quotient, RejectsNonNormal)
{
    // <gamma_{0,0}> is not normal in G_{2,1}.
    const auto g = build_named_group(GroupName::G, 2, 1);
    const auto h = generate_group({halfturn_gamma(0, 0, 2, 1)}, 2);
    ASSERT_TRUE(is_subgroup(h, g));
    EXPECT_FALSE(is_normal(h, g));
    EXPECT_THROW(quotient_group(g, h), precondition_error);
}

TEST(ElementOrder, Examples)
{
    EXPECT_EQ(max_element_order(build_named_group(GroupName::R, 2, 1)), 6u);
    EXPECT_EQ(max_element_order(build_named_group(GroupName::R, 1, 1)), 2u);
    EXPECT_EQ(max_element_order(SymmetryGroup()), 1u);
}

TEST(GroupNames, RoundTrip)
{
    for (auto n : standard_group_names()) EXPECT_EQ(group_name_from_string(to_string(n)), n);
    EXPECT_FALSE(group_name_from_string("nope").has_value());
}
