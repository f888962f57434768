#include <gtest/gtest.h>

#include <lawson/orbifold.hpp>
#include <lawson/symmetry.hpp>

using namespace lawson;

namespace {

OrbifoldPattern pat(int m, int k, int hg, int v1, int v2) { return {m, k, hg, v1, v2}; }

using Triple = std::tuple<int, int, int>;

} // namespace

TEST(ChiOrbifold, Examples)
{
    EXPECT_EQ(chi_orbifold(pat(2, 1, 0, 2, 2)), Rational(-1, 3));
    EXPECT_EQ(chi_orbifold(pat(3, 2, 0, 0, 0)), Rational(2));
    EXPECT_EQ(chi_orbifold(pat(1, 1, 0, 2, 2)), Rational(0));
}

TEST(ChiOrbifold, RejectsNegative)
{
    EXPECT_THROW(chi_orbifold(pat(2, 1, -1, 2, 2)), precondition_error);
    EXPECT_THROW(chi_orbifold(pat(0, 1, 0, 2, 2)), precondition_error);
}

TEST(GenusFromPattern, Examples)
{
    for (int m = 1; m <= 5; ++m)
        for (int k = 1; k <= m; ++k) EXPECT_EQ(genus_from_pattern(pat(m, k, 0, 2, 2)), m * k);
    EXPECT_EQ(genus_from_pattern(pat(2, 1, 0, 2, 2)), 2);
    for (int m = 1; m <= 5; ++m)
        for (int k = 1; k <= m; ++k) EXPECT_EQ(genus_from_pattern(pat(m, k, 1, 0, 0)), 1);
    EXPECT_EQ(genus_from_pattern(pat(2, 1, 0, 4, 2)), 6);
}

TEST(GenusFromPattern, NonIntegerIsAnError)
{
    // m = 2, k = 1, v1 = 1: the v1 correction is 2*2*1/2 = 2, v2 = 1 gives 1*3*1/2 = 3/2.
    EXPECT_EQ(genus_rational(pat(2, 1, 0, 1, 1)).denominator(), 2);
    EXPECT_THROW(genus_from_pattern(pat(2, 1, 0, 1, 1)), precondition_error);
}

TEST(GenusFromPattern, EulerIdentityOnAllPatterns)
{
    for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= m; ++k)
            for (int hg = 0; hg <= 4; ++hg)
                for (int v1 = 0; v1 <= 12; ++v1)
                    for (int v2 = 0; v2 <= 12; ++v2) {
                        const auto p = pat(m, k, hg, v1, v2);
                        EXPECT_EQ(Rational(2) - Rational(2) * genus_rational(p),
                                  Rational((m + 1) * (k + 1)) * chi_orbifold(p));
                    }
}

TEST(BoundaryCase, Examples)
{
    EXPECT_EQ(boundary_case_genus(4, 0, 1), 0);
    EXPECT_EQ(boundary_case_genus(3, 0, 3), 6);
    EXPECT_EQ(boundary_case_genus(2, 1, 1), 6);
    EXPECT_THROW(boundary_case_genus(2, 0, 2), precondition_error);
}

TEST(BoundaryCase, NoPatternInRange)
{
    // g = 2 hat_g (m+1) + m (v1 - 1) never lands in (1, m+1] except g = 2m when m = 1.
    for (int m = 1; m <= 6; ++m)
        for (int g = 2; g <= m + 1; ++g) {
            const auto r = classify_boundary(m, g);
            for (auto [hg, v1] : r) EXPECT_EQ(boundary_case_genus(m, hg, v1), g);
            if (m > 1) EXPECT_TRUE(r.empty()) << m << " " << g;
        }
    EXPECT_THROW(classify_boundary(2, 4), precondition_error);
}

TEST(HatGBound, Examples)
{
    for (int m = 1; m <= 5; ++m)
        for (int k = 1; k <= m; ++k) {
            const auto b = hat_g_bound(m, k, 2, 2);
            EXPECT_EQ(b.bound, Rational(k, (m + 1) * (k + 1)));
            EXPECT_LT(b.bound, Rational(1));
        }
    EXPECT_EQ(hat_g_bound(2, 1, 2, 2).bound, Rational(1, 6));
}

TEST(HatGBound, BelowOneExhaustive)
{
    for (int m = 1; m <= 10; ++m)
        for (int k = 1; k <= m; ++k)
            for (int v1 = 0; v1 <= 20; v1 += 2)
                for (int v2 = 0; v2 <= 20; v2 += 2) {
                    if (v1 == 0 && v2 == 0) continue;
                    const auto b = hat_g_bound(m, k, v1, v2);
                    EXPECT_TRUE(b.below_one()) << m << k << v1 << v2;
                    EXPECT_LE(b.bound, b.relaxed);
                }
}

TEST(Classify, Examples)
{
    EXPECT_EQ(distinct_triples(classify(2, 1, 2)), (std::set<Triple>{{0, 2, 2}}));
    EXPECT_TRUE(classify(3, 1, 4).empty());
    EXPECT_EQ(distinct_triples(classify(2, 2, 4)), (std::set<Triple>{{0, 2, 2}}));
}

TEST(Classify, BothLRelationTagsKept)
{
    const auto ps = classify(3, 2, 6);
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_EQ(ps[0].l_relation, LRelation::contains_L);
    EXPECT_EQ(ps[1].l_relation, LRelation::meets_L_twice);
    EXPECT_EQ(ps[0].triple(), ps[1].triple());
}

TEST(Classify, GenusConclusionExhaustive)
{
    for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= m; ++k)
            for (int g = 2; g <= m * k + k; ++g) {
                const auto t = distinct_triples(classify(m, k, g));
                if (g == m * k)
                    EXPECT_EQ(t, (std::set<Triple>{{0, 2, 2}})) << m << k << g;
                else
                    EXPECT_TRUE(t.empty()) << m << k << g;
            }
}

TEST(Classify, RejectsOutOfRange)
{
    EXPECT_THROW(classify(2, 1, 1), precondition_error);
    EXPECT_THROW(classify(2, 1, 4), precondition_error);
}

TEST(FullOrderElement, Examples)
{
    EXPECT_TRUE(has_full_order_element(2, 1));
    EXPECT_FALSE(has_full_order_element(1, 1));
    EXPECT_FALSE(has_full_order_element(3, 1));
}

TEST(FullOrderElement, AgreesWithGroup)
{
    for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= m; ++k) {
            const bool cyclic = max_element_order(build_named_group(GroupName::R, m, k)) ==
                                static_cast<std::size_t>((m + 1) * (k + 1));
            EXPECT_EQ(has_full_order_element(m, k), cyclic) << m << k;
        }
}

TEST(Table, Formats)
{
    const auto rows = table(3, 2);
    std::size_t expect = 0;
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; k <= std::min(m, 2); ++k) expect += m * k + k - 1;
    EXPECT_EQ(rows.size(), expect);
    const auto md = table_markdown(rows);
    EXPECT_EQ(md.rfind("| m | k | g | mk |", 0), 0u);
    EXPECT_NE(md.find("| 2 | 1 | 2 | 2 | (0,2,2) |"), std::string::npos);
    EXPECT_NE(md.find("| 3 | 1 | 4 | 3 | none |"), std::string::npos);
    const auto csv = table_csv(rows);
    EXPECT_EQ(csv.rfind("m,k,g,mk,patterns\n", 0), 0u);
    EXPECT_NE(csv.find("2,2,4,4,(0,2,2)\n"), std::string::npos);
    EXPECT_EQ(to_string(pat(1, 1, 0, 2, 2)), "(0,2,2)");
}
