#include <gtest/gtest.h>

#include <cmath>

#include "lpoly/norms.hpp"
#include "support.hpp"

using namespace lpoly;
using lpoly::testing::poly;

namespace {

double grid_max(const PowerPoly& f, int samples) {
    double m = 0.0;
    for (int k = 0; k <= samples; ++k) m = std::max(m, std::abs(f.eval_double(-1.0 + 2.0 * k / samples)));
    return m;
}

}  // namespace

TEST(IntegralExact, Examples) {
    EXPECT_EQ(integral_exact(poly({1, 1}).pow(2), -1, 1), make_rational(8, 3));
    EXPECT_EQ(integral_exact(poly({0, 1}), -1, 1), 0);
    EXPECT_EQ(integral_exact(poly({1}), -1, 1), 2);
}

TEST(SupNorm, Examples) {
    const NormValue a = sup_norm(poly({1, 0, 1}));
    EXPECT_TRUE(a.is_exact());
    EXPECT_EQ(a.lower, 2);
    ASSERT_TRUE(a.argmax);
    EXPECT_EQ(*a.argmax, -1);

    const NormValue b = sup_norm(poly({1, 1}).pow(3) - PowerPoly::constant(4));
    EXPECT_TRUE(b.is_exact());
    EXPECT_EQ(b.lower, 4);
    EXPECT_EQ(*b.argmax, -1);

    const NormValue c = sup_norm(chebyshev_T(5));
    EXPECT_EQ(c.upper, 1);
    EXPECT_EQ(c.lower, 1);
}

TEST(SupNorm, IrrationalCriticalPointIsEnclosed) {
    // x³ − x has its extremum at ±1/√3, value 2/(3√3)
    const NormValue v = sup_norm(poly({0, -1, 0, 1}));
    const double expected = 2.0 / (3.0 * std::sqrt(3.0));
    EXPECT_EQ(v.mode, NormMode::enclosure);
    EXPECT_LE(to_double(v.lower), expected);
    EXPECT_GE(to_double(v.upper), expected);
    EXPECT_NEAR(v.value, expected, 1e-15);
}

TEST(LpNorm, Examples) {
    const NormValue a = lp_norm(poly({1, 1}).pow(2), Exponent::of(1));
    EXPECT_TRUE(a.is_exact());
    EXPECT_EQ(a.lower, make_rational(8, 3));
    for (const Rational& p : {make_rational(1, 2), make_rational(1), make_rational(3, 2), make_rational(3)}) {
        const NormValue v = lp_norm(poly({1}), Exponent::of(p));
        EXPECT_NEAR(v.value, std::pow(2.0, 1.0 / to_double(p)), 1e-13);
    }
    for (unsigned n = 1; n <= 6; ++n) {
        for (const Rational& qv : {make_rational(1, 2), make_rational(2), make_rational(5, 2)}) {
            const double qd = to_double(qv);
            const double expected = std::pow(std::pow(2.0, n * qd + 1) / (n * qd + 1), 1.0 / qd);
            EXPECT_NEAR(lp_norm(poly({1, 1}).pow(n), Exponent::of(qv)).value, expected, 1e-11 * expected);
        }
    }
    EXPECT_EQ(lp_norm(poly({1, 0, 1}), Exponent::infinity()).lower, 2);
    EXPECT_THROW(lp_norm(poly({1}), Exponent::of(0)), NonPositiveP);
    EXPECT_THROW(lp_norm(poly({1}), Exponent::of(-1)), NonPositiveP);
    EXPECT_THROW(parse_exponent("-2"), NonPositiveP);
}

TEST(PowerIntegral, SignChangesHandledExactly) {
    // ∫|x| = 1, ∫|x³| = 1/2, ∫|x − 1/2| = 5/4
    EXPECT_EQ(power_integral(poly({0, 1}), 1, -1, 1).lower, 1);
    EXPECT_EQ(power_integral(poly({0, 1}), 3, -1, 1).upper, make_rational(1, 2));
    const auto I = power_integral(PowerPoly{make_rational(-1, 2), 1}, 1, -1, 1);
    EXPECT_TRUE(I.is_exact());
    EXPECT_EQ(I.lower, make_rational(5, 4));
}

TEST(PowerIntegral, IrrationalRootsGiveTightEnclosure) {
    // ∫|x² − 1/2| over [−1, 1] = (4√2 − 2)/6
    const auto I = power_integral(PowerPoly{make_rational(-1, 2), 0, 1}, 1, -1, 1);
    const double expected = (4.0 * std::sqrt(2.0) - 2.0) / 6.0;
    EXPECT_LE(pow_r(6 * I.lower + 2, 2), 32);
    EXPECT_GE(pow_r(6 * I.upper + 2, 2), 32);
    EXPECT_NEAR(to_double(I.lower), expected, 1e-15);
    EXPECT_LT(to_double(I.upper - I.lower), 1e-15);
}

TEST(NormsProperty, ExactAndQuadraturePathsAgree) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 100; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 8);
        if (f.is_zero()) continue;
        for (unsigned p = 1; p <= 4; ++p) {
            const NormValue exact = lp_norm(f, Exponent::of(p));
            LpOptions opt;
            opt.force_quadrature = true;
            const NormValue quad = lp_norm(f, Exponent::of(p), opt);
            ASSERT_NEAR(quad.value, exact.value, 1e-9 * exact.value) << f << " p=" << p;
        }
    }
}

TEST(NormsProperty, LpBelowScaledSup) {
    std::mt19937_64 rng(52);
    for (int t = 0; t < 100; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 8);
        if (f.is_zero()) continue;
        const double sup = sup_norm(f).value;
        for (const Rational& p : {make_rational(1, 2), make_rational(1), make_rational(5, 2), make_rational(4)}) {
            const double v = lp_norm(f, Exponent::of(p)).value;
            ASSERT_LE(v, std::pow(2.0, 1.0 / to_double(p)) * sup * (1 + 1e-12));
        }
    }
}

TEST(NormsProperty, SupNormAgreesWithDenseGrid) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 100; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 12);
        if (f.is_zero()) continue;
        const NormValue s = sup_norm(f);
        const double grid = grid_max(f, 100000);
        ASSERT_LE(grid, to_double(s.upper) * (1 + 1e-15)) << f;
        ASSERT_LE(s.value, grid * (1 + 1e-6)) << f;
    }
}

TEST(NormsProperty, ScalingIsExact) {
    std::mt19937_64 rng(54);
    for (int t = 0; t < 100; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 6);
        if (f.is_zero()) continue;
        const Rational c = lpoly::testing::small_rational(rng) - make_rational(1, 7);
        for (unsigned p : {1u, 2u}) {
            const auto I = power_integral(f, p, -1, 1);
            const auto J = power_integral(f.scaled(c), p, -1, 1);
            if (I.is_exact()) {
                ASSERT_EQ(J.lower, pow_r(abs_r(c), p) * I.lower);
            }
        }
        const NormValue s = sup_norm(f);
        const NormValue sc = sup_norm(f.scaled(c));
        if (s.is_exact()) {
            ASSERT_EQ(sc.lower, abs_r(c) * s.lower);
        }
    }
}
