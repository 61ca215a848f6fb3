#include <gtest/gtest.h>

#include "lpoly/lorentz_form.hpp"
#include "support.hpp"

using namespace lpoly;
using lpoly::testing::poly;
using lpoly::testing::small_rational;

namespace {

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

const Rational half = make_rational(1, 2);
const Rational quarter = make_rational(1, 4);

// Independent oracle: solve for the representation at every degree separately.
std::optional<unsigned> brute_force_degree(const PowerPoly& f, const Rational& a, const Rational& b, unsigned cap) {
    for (unsigned d = static_cast<unsigned>(f.degree()); d <= cap; ++d)
        if (from_power(f, d, a, b).is_nonnegative() || from_power(f.scaled(-1), d, a, b).is_nonnegative()) return d;
    return std::nullopt;
}

std::pair<Rational, Rational> nested(std::mt19937_64& rng, const Rational& a, const Rational& b) {
    std::uniform_int_distribution<long> pick(0, 24);
    long u = pick(rng), w = pick(rng);
    while (u == w) w = pick(rng);
    if (u > w) std::swap(u, w);
    return {a + (b - a) * make_rational(u, 24), a + (b - a) * make_rational(w, 24)};
}

Factorization random_outside_factors(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 4);
    Factorization fz;
    fz.leading = small_rational(rng) + 20;
    for (int i = count(rng); i > 0; --i) {
        Rational r = make_rational(num(rng), den(rng));
        if (abs_r(r) < 1) r = r < 0 ? Rational(-1) : Rational(1);
        fz.real_roots.push_back({r, static_cast<unsigned>(count(rng) % 2 + 1)});
    }
    for (int i = count(rng); i > 0; --i) {
        ComplexPair c{make_rational(num(rng), den(rng)), make_rational(std::abs(num(rng)) + 1, den(rng)), 1};
        if (c.modulus_squared() < 1) c = {Rational(0), Rational(1), 1};
        fz.complex_pairs.push_back(c);
    }
    return fz;
}

}  // namespace

TEST(ToPower, Examples) {
    EXPECT_EQ(to_power(LorentzForm(-1, 1, q({1, 0}))), poly({1, 1}));
    EXPECT_EQ(to_power(LorentzForm(-1, 1, q({half, 0, half}))), poly({1, 0, 1}));
    EXPECT_EQ(to_power(LorentzForm(-1, 1, q({make_rational(7, 3)}))), PowerPoly::constant(make_rational(7, 3)));
}

TEST(FromPower, Examples) {
    EXPECT_EQ(from_power(poly({1, 0, 1}), 2, -1, 1).coeffs(), q({half, 0, half}));
    EXPECT_EQ(from_power(poly({1, 1}), 2, -1, 1).coeffs(), q({half, half, 0}));
    const LorentzForm x = from_power(poly({0, 1}), 1, -1, 1);
    EXPECT_EQ(x.coeffs(), q({half, -half}));
    EXPECT_FALSE(x.is_nonnegative());
    EXPECT_THROW(from_power(poly({1, 0, 1}), 1, -1, 1), DegreeTooSmall);
    EXPECT_THROW(from_power(poly({1}), 1, 1, -1), BadNesting);
}

TEST(Elevate, Examples) {
    EXPECT_EQ(elevate(LorentzForm(-1, 1, q({1, 0})), 2).coeffs(), q({half, half, 0}));
    EXPECT_EQ(elevate(LorentzForm(-1, 1, q({1})), 2).coeffs(), q({quarter, half, quarter}));
    const LorentzForm L(-1, 1, q({3, -2, 5}));
    EXPECT_EQ(elevate(L, 2), L);
    EXPECT_THROW(elevate(L, 1), DegreeDecrease);
}

TEST(RestrictInterval, Examples) {
    // x + 1 = 2(x − 0) + 1(1 − x) on [0, 1]
    const LorentzForm r = restrict_interval(LorentzForm(-1, 1, q({1, 0})), 0, 1);
    EXPECT_EQ(r.coeffs(), q({2, 1}));
    EXPECT_EQ(r.a(), 0);
    EXPECT_EQ(r.b(), 1);
    const LorentzForm L(-1, 1, q({3, 1, 4}));
    EXPECT_EQ(restrict_interval(L, -1, 1), L);
    const LorentzForm one = restrict_interval(LorentzForm(-1, 1, q({half, half})), make_rational(-1, 3), make_rational(1, 2));
    EXPECT_EQ(to_power(one), PowerPoly::constant(1));
    EXPECT_THROW(restrict_interval(L, -2, 0), BadNesting);
    EXPECT_THROW(restrict_interval(L, half, half), BadNesting);
}

TEST(MulLorentz, Examples) {
    const LorentzForm xp1(-1, 1, q({1, 0}));
    const LorentzForm omx(-1, 1, q({0, 1}));
    EXPECT_EQ(mul_lorentz(xp1, omx).coeffs(), q({0, 1, 0}));
    const LorentzForm L(-1, 1, q({3, 1, 4}));
    EXPECT_EQ(mul_lorentz(L, LorentzForm(-1, 1, q({1}))), L);
    EXPECT_EQ(mul_lorentz(xp1, xp1).coeffs(), q({1, 0, 0}));
    EXPECT_EQ(mul_lorentz(omx, omx).coeffs(), q({0, 0, 1}));
    EXPECT_THROW(mul_lorentz(L, LorentzForm(0, 1, q({1}))), IntervalMismatch);
}

TEST(LorentzFromFactors, Examples) {
    Factorization one_minus_x;
    one_minus_x.real_roots = {{1, 1}};
    one_minus_x.leading = -1;
    const auto a = lorentz_from_factors(one_minus_x);
    EXPECT_EQ(a.form.coeffs(), q({0, 1}));
    EXPECT_EQ(a.sign, 1);

    Factorization i;
    i.complex_pairs = {{0, 1, 1}};
    EXPECT_EQ(lorentz_from_factors(i).form.coeffs(), q({half, 0, half}));

    Factorization two_i;
    two_i.complex_pairs = {{0, 2, 1}};
    const auto b = lorentz_from_factors(two_i);
    EXPECT_EQ(b.form.coeffs(), q({make_rational(5, 4), make_rational(3, 2), make_rational(5, 4)}));
    EXPECT_EQ(to_power(b.form), poly({4, 0, 1}));

    Factorization inside;
    inside.real_roots = {{half, 1}};
    EXPECT_THROW(lorentz_from_factors(inside), ZeroInsideDisk);
    Factorization inside_pair;
    inside_pair.complex_pairs = {{0, half, 1}};
    EXPECT_THROW(lorentz_from_factors(inside_pair), ZeroInsideDisk);
}

TEST(LorentzDegree, Examples) {
    const auto a = lorentz_degree(poly({1, 0, 1}), 128);
    ASSERT_TRUE(a.is_finite());
    EXPECT_EQ(a.degree, 2u);
    EXPECT_EQ(to_string(a), "finite 2");
    EXPECT_EQ(lorentz_degree(poly({0, 1}), 64).kind, LorentzDegreeResult::Kind::infinite);
    for (unsigned n = 1; n <= 8; ++n) {
        const auto r = lorentz_degree(poly({1, 1}).pow(n), 64 * n);
        ASSERT_TRUE(r.is_finite());
        EXPECT_EQ(r.degree, n);
    }
    const PowerPoly eps = PowerPoly{make_rational(1, 100), 0, 1};
    const auto e = lorentz_degree(eps, default_degree_cap(2, make_rational(1, 10)));
    ASSERT_TRUE(e.is_finite());
    EXPECT_GT(e.degree, 2u);
    EXPECT_EQ(e.degree, brute_force_degree(eps, -1, 1, 200).value());
    EXPECT_EQ(e.degree, 101u);
    EXPECT_THROW(lorentz_degree(PowerPoly{}, 8), ZeroPolynomial);
    EXPECT_THROW(lorentz_degree(poly({1, 0, 1}), 1), DegreeTooSmall);
}

TEST(LorentzDegree, UnknownWhenCapTooSmall) {
    const auto r = lorentz_degree(PowerPoly{make_rational(1, 100), 0, 1}, 10);
    EXPECT_EQ(r.kind, LorentzDegreeResult::Kind::unknown);
    EXPECT_EQ(to_string(r), "unknown (cap 10)");
}

TEST(LorentzDegree, NegativePolynomialNormalizedBySign) {
    const auto r = lorentz_degree(poly({-1, 0, -1}), 16);
    ASSERT_TRUE(r.is_finite());
    EXPECT_EQ(r.degree, 2u);
    EXPECT_EQ(r.sign, -1);
}

TEST(LorentzIdentity, RestrictionWeightsInterpolateExactly) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        Rational a = small_rational(rng), b = small_rational(rng);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        const auto [c, e] = nested(rng, a, b);
        const PowerPoly xc{-c, 1}, ex{e, -1};
        // x − a and b − x in the basis of [c, e]
        ASSERT_EQ(PowerPoly({-a, 1}), xc.scaled((e - a) / (e - c)) + ex.scaled((c - a) / (e - c)));
        ASSERT_EQ(PowerPoly({b, -1}), xc.scaled((b - e) / (e - c)) + ex.scaled((b - c) / (e - c)));
    }
}

TEST(LorentzIdentity, SwappedRestrictionWeightsAreNotAnIdentity) {
    const Rational a = -1, c = 0, e = 1;
    const PowerPoly xc{-c, 1}, ex{e, -1};
    EXPECT_NE(PowerPoly({-a, 1}), xc.scaled((c - a) / (e - c)) + ex.scaled((e - a) / (e - c)));
}

TEST(LorentzIdentity, QuadraticFactorExpansion) {
    std::mt19937_64 rng(32);
    const PowerPoly omx{1, -1}, xp1{1, 1};
    for (int t = 0; t < 200; ++t) {
        const Rational re = small_rational(rng), im = small_rational(rng);
        const Rational m2 = re * re + im * im;
        const Rational p1 = (1 + re) * (1 + re) + im * im;
        const Rational m1 = (1 - re) * (1 - re) + im * im;
        const PowerPoly lhs{m2, -2 * re, 1};
        ASSERT_EQ(lhs, (omx * omx).scaled(p1 / 4) + (omx * xp1).scaled((m2 - 1) / 2) + (xp1 * xp1).scaled(m1 / 4));
    }
    // Outer weights ½|1 ± α|² double the outer terms: α = i gives 2(x² + 1).
    const PowerPoly outer_half = (omx * omx).scaled(1) + (xp1 * xp1).scaled(1);
    EXPECT_EQ(outer_half, poly({1, 0, 1}).scaled(2));
    EXPECT_NE(outer_half, poly({1, 0, 1}));
}

TEST(LorentzProperty, RoundTrip) {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<unsigned> extra(0, 6);
    for (int t = 0; t < 300; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 10);
        Rational a = small_rational(rng), b = small_rational(rng);
        if (a == b) b = a + 1;
        if (b < a) std::swap(a, b);
        const unsigned d = static_cast<unsigned>(std::max(f.degree(), 0)) + extra(rng);
        const LorentzForm L = from_power(f, d, a, b);
        ASSERT_EQ(L.degree(), d);
        ASSERT_EQ(to_power(L), f);
    }
}

TEST(LorentzProperty, ElevationMatchesDirectSolve) {
    std::mt19937_64 rng(34);
    for (int t = 0; t < 200; ++t) {
        const PowerPoly f = lpoly::testing::random_poly(rng, 6);
        const unsigned d = static_cast<unsigned>(std::max(f.degree(), 0));
        const LorentzForm L = from_power(f, d, -1, 2);
        for (unsigned k = 1; k <= 4; ++k) ASSERT_EQ(elevate(L, d + k), from_power(f, d + k, -1, 2));
    }
}

TEST(LorentzProperty, ElevationKeepsNonnegativity) {
    std::mt19937_64 rng(35);
    std::uniform_int_distribution<long> c(0, 9);
    for (int t = 0; t < 100; ++t) {
        std::vector<Rational> coeffs(5);
        for (auto& x : coeffs) x = c(rng);
        coeffs[0] += 1;
        const LorentzForm L(-1, 1, coeffs);
        for (unsigned k = 1; k <= 10; ++k) ASSERT_TRUE(elevate(L, 4 + k).is_nonnegative());
    }
}

TEST(LorentzProperty, RestrictionKeepsPolynomialAndSign) {
    std::mt19937_64 rng(36);
    std::uniform_int_distribution<long> c(0, 9);
    for (int t = 0; t < 100; ++t) {
        std::vector<Rational> coeffs(4);
        for (auto& x : coeffs) x = make_rational(c(rng), 3);
        coeffs[1] += 1;
        Rational a = small_rational(rng), b = small_rational(rng);
        if (a == b) b = a + 2;
        if (b < a) std::swap(a, b);
        const LorentzForm L(a, b, coeffs);
        const auto [cc, e] = nested(rng, a, b);
        const LorentzForm R = restrict_interval(L, cc, e);
        ASSERT_EQ(to_power(R), to_power(L));
        ASSERT_EQ(R.degree(), L.degree());
        ASSERT_TRUE(R.is_nonnegative());
    }
}

TEST(LorentzProperty, FactorFormsAreComplete) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 200; ++t) {
        const Factorization fz = random_outside_factors(rng);
        const PowerPoly f = expand(fz);
        const auto s = lorentz_from_factors(fz);
        ASSERT_TRUE(s.form.is_nonnegative());
        ASSERT_EQ(s.form.degree(), static_cast<unsigned>(f.degree()));
        ASSERT_EQ(s.form, from_power(f.scaled(s.sign), s.form.degree(), -1, 1));
    }
}

TEST(LorentzProperty, ScanAgreesWithBruteForceAndIsMinimal) {
    std::mt19937_64 rng(38);
    for (int t = 0; t < 150; ++t) {
        PowerPoly f = lpoly::testing::random_poly(rng, 4);
        if (f.is_zero()) continue;
        const unsigned cap = static_cast<unsigned>(f.degree()) + 26;
        const auto fast = lorentz_degree(f, cap);
        const auto slow = brute_force_degree(f, -1, 1, cap);
        if (slow) {
            ASSERT_TRUE(fast.is_finite()) << f;
            ASSERT_EQ(fast.degree, *slow) << f;
            if (fast.degree > static_cast<unsigned>(f.degree())) {
                ASSERT_FALSE(from_power(f.scaled(fast.sign), fast.degree - 1, -1, 1).is_nonnegative());
            }
        } else {
            ASSERT_FALSE(fast.is_finite()) << f;
        }
    }
}
