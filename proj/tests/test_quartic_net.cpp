#include <gtest/gtest.h>

#include "k3rcr/quartic_net.hpp"

using namespace k3rcr;

namespace {

QuaternaryForm quartic(const PrimeField& F, std::vector<std::pair<std::array<int, 4>, std::int64_t>> terms) {
    auto f = QuaternaryForm::zero(4);
    for (const auto& [e, c] : terms) f.coeffs[quaternary_index(e)] = F.add(f.coeffs[quaternary_index(e)], F.from_int(c));
    return f;
}

TernaryForm ternary(const PrimeField& F, int d, std::vector<std::pair<std::array<int, 3>, std::int64_t>> terms) {
    auto f = TernaryForm::zero(d);
    for (const auto& [e, c] : terms) {
        auto i = ternary_index(d, e[0], e[1]);
        f.coeffs[i] = F.add(f.coeffs[i], F.from_int(c));
    }
    return f;
}

// y^2 z = x^2 (x + z), parametrized by (t^2 - 1, t (t^2 - 1), 1).
std::vector<GammaSample> nodal_cubic_samples(const PrimeField& F, int first, int count) {
    std::vector<GammaSample> out;
    for (int k = 0; k < count; ++k) {
        Residue t = F.from_int(first + k);
        Residue x = F.sub(F.mul(t, t), 1);
        out.push_back({{t, 1}, {x, F.mul(t, x), 1}});
    }
    return out;
}

}  // namespace

TEST(QuarticSmoothness, FermatIsSmooth) {
    PrimeField F;
    auto f = quartic(F, {{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{0, 0, 0, 4}, 1}});
    EXPECT_TRUE(macaulay_resultant_smooth(F, f));
}

TEST(QuarticSmoothness, SingularQuartics) {
    PrimeField F;
    EXPECT_FALSE(macaulay_resultant_smooth(F, quartic(F, {{{4, 0, 0, 0}, 1}})));
    // cone over a plane Fermat quartic: singular at (0:0:0:1)
    EXPECT_FALSE(macaulay_resultant_smooth(F, quartic(F, {{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}})));
    // x0^4 + x1^4 + x2^4 + x1 x2 x3^2: all partials vanish at (0:0:0:1)
    auto g = quartic(F, {{{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{4, 0, 0, 0}, 1}, {{0, 1, 1, 2}, 1}});
    SpacePoint P{0, 0, 0, 1};
    for (int v = 0; v < 4; ++v) ASSERT_EQ(evaluate(F, partial_derivative(F, g, v), P), 0u);
    EXPECT_FALSE(macaulay_resultant_smooth(F, g));
    EXPECT_THROW(macaulay_resultant_smooth(F, QuaternaryForm::zero(4)), Error);
}

TEST(QuarticSmoothness, MacaulayMatrixShape) {
    PrimeField F;
    auto f = quartic(F, {{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{0, 0, 0, 4}, 1}});
    std::vector<QuaternaryForm> partials;
    for (int v = 0; v < 4; ++v) partials.push_back(partial_derivative(F, f, v));
    auto M = macaulay_matrix(F, partials, 9);
    EXPECT_EQ(M.cols(), 220u);
}

TEST(Resultant, SylvesterMatchesRootProduct) {
    PrimeField F;
    FieldRng rng(F, 12);
    for (int t = 0; t < 10; ++t) {
        std::vector<Residue> a, b;
        UPoly f{1}, g{1};
        for (int i = 0; i < 3; ++i) {
            a.push_back(rng.uniform());
            f = upoly::mul(F, f, UPoly{F.neg(a.back()), 1});
        }
        for (int j = 0; j < 4; ++j) {
            b.push_back(rng.uniform());
            g = upoly::mul(F, g, UPoly{F.neg(b.back()), 1});
        }
        Residue want = 1;
        for (auto x : a)
            for (auto y : b) want = F.mul(want, F.sub(x, y));
        EXPECT_EQ(sylvester_resultant(F, f, 3, g, 4), want);
    }
}

TEST(Gamma, FitsNodalCubic) {
    PrimeField F;
    auto g = fit_gamma(F, nodal_cubic_samples(F, 2, 12), nodal_cubic_samples(F, 30, 4));
    auto want = ternary(F, 3, {{{0, 2, 1}, 1}, {{3, 0, 0}, -1}, {{2, 0, 1}, -1}});
    // proportional to y^2 z - x^3 - x^2 z
    Residue c = 0;
    for (std::size_t i = 0; i < want.coeffs.size(); ++i)
        if (want.coeffs[i]) {
            c = F.mul(g.cubic.coeffs[i], F.inv(want.coeffs[i]));
            break;
        }
    ASSERT_NE(c, 0u);
    for (std::size_t i = 0; i < want.coeffs.size(); ++i) EXPECT_EQ(g.cubic.coeffs[i], F.mul(c, want.coeffs[i]));

    auto s = gamma_singular_point(F, g);
    EXPECT_EQ(s.point, (PlanePoint{0, 0, 1}));
    EXPECT_TRUE(s.ordinary_node);
    EXPECT_EQ(s.geometric_genus, 0);
}

TEST(Gamma, RejectsFewSamplesAndOffCurveHoldouts) {
    PrimeField F;
    EXPECT_THROW(fit_gamma(F, nodal_cubic_samples(F, 2, 11)), Error);
    auto bad = nodal_cubic_samples(F, 30, 1);
    bad[0].point[2] = 2;
    EXPECT_THROW(fit_gamma(F, nodal_cubic_samples(F, 2, 12), bad), Error);
}

TEST(Gamma, CuspIsNotAnOrdinaryNode) {
    PrimeField F;
    auto cusp = ternary(F, 3, {{{0, 2, 1}, 1}, {{3, 0, 0}, -1}});
    auto pts = singular_points(F, cusp, 5);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], (PlanePoint{0, 0, 1}));
    EXPECT_FALSE(is_ordinary_node(F, cusp, pts[0]));
}

TEST(Gamma, SmoothCubicHasNoSingularPoints) {
    PrimeField F;
    auto f = ternary(F, 3, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}});
    EXPECT_TRUE(singular_points(F, f, 9).empty());
}
