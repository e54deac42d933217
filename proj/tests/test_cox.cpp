#include <gtest/gtest.h>

#include "k3rcr/cox.hpp"

using namespace k3rcr;

namespace {

// h0(O(aH + bR)) on P(O(1)^4 + O)  =  sum over |alpha| = a of h0(O_P1(b + alpha.e)).
std::int64_t h0_oracle(int a, int b) {
    std::int64_t total = 0;
    for (int k = 0; k <= a; ++k) {  // k = number of factors from the e = 1 part
        // monomials of degree k in 4 variables times degree a - k in 1 variable
        std::int64_t mult = binomial(k + 3, 3);
        std::int64_t d = b + k;
        total += mult * (d >= 0 ? d + 1 : 0);
    }
    return total;
}

}  // namespace

TEST(Cox, SliceDimensionsMatchSectionCounts) {
    CoxRing R;
    for (int a = 0; a <= 4; ++a)
        for (int b = -4; b <= 2; ++b) EXPECT_EQ(static_cast<std::int64_t>(R.dim({a, b})), h0_oracle(a, b)) << a << "," << b;
}

TEST(Cox, EulerCharacteristicAgreesWithSectionsWhenNoCohomology) {
    ScrollType s;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 3; ++b) EXPECT_EQ(euler_scroll(s, a, b), h0_oracle(a, b));
    // -5 < a < 0 has no cohomology
    for (int a = -4; a < 0; ++a) EXPECT_EQ(euler_scroll(s, a, 3), 0);
}

TEST(Cox, MonomialDegrees) {
    ScrollType s;
    EXPECT_EQ(fiber_variable(0).degree(s), (Bidegree{1, -1}));
    EXPECT_EQ(fiber_variable(4).degree(s), (Bidegree{1, 0}));
    EXPECT_EQ(base_variable(1).degree(s), (Bidegree{0, 1}));
}

TEST(Cox, MultiplicationIsCommutative) {
    PrimeField F;
    CoxRing R;
    FieldRng rng(F, 4);
    CoxForm f{{1, 0}, rng.vector(R.dim({1, 0}))}, g{{2, -1}, rng.vector(R.dim({2, -1}))};
    EXPECT_EQ(multiply(F, R, f, g).coeffs, multiply(F, R, g, f).coeffs);
}
