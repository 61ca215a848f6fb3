#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lpoly/serialize.hpp"
#include "support.hpp"

using namespace lpoly;
using lpoly::testing::poly;

namespace {

// f' = 3(x+1)², f = (x+1)³ − 4
Recipe shifted_cube() {
    Recipe r;
    r.real_roots = {Rational(-1), Rational(-1)};
    r.leading = 3;
    r.constant = -3;
    return r;
}

}  // namespace

TEST(Search, StartsAtExtremalFixedPoint) {
    const ClassTag tag{ClassKind::deriv_zeros_outside_disk, 3};
    ASSERT_EQ(build_sample(tag, shifted_cube()).poly, poly({1, 1}).pow(3) - poly({4}));
    const SearchResult r = maximize_ratio(tag, Strategy::coordinate_descent, 300, 7, shifted_cube());
    EXPECT_DOUBLE_EQ(r.best_ratio, 3.0);
    EXPECT_DOUBLE_EQ(r.bound, 3.0);
    EXPECT_NEAR(r.gap, 0.0, 1e-12);
    EXPECT_EQ(r.history.size(), 1u);
}

TEST(Search, RandomStaysBelowBound) {
    for (auto kind : {ClassKind::lorentz_nonneg, ClassKind::zeros_outside_disk, ClassKind::deriv_lorentz,
                      ClassKind::deriv_zeros_outside_disk, ClassKind::monotone_real_zeros_outside,
                      ClassKind::real_zeros_outside}) {
        const SearchResult r = maximize_ratio({kind, 4}, Strategy::random, 200, 11);
        EXPECT_LE(r.best_ratio, r.bound * (1 + 1e-9)) << class_name(kind);
        EXPECT_GE(r.gap, -1e-9);
    }
}

TEST(Search, MonotoneOnlyExceedsHalfN) {
    for (unsigned n = 2; n <= 6; ++n) {
        const SearchResult r = maximize_ratio({ClassKind::monotone_only, n}, Strategy::random, 2000, 0);
        const auto it = first_iteration_above(r, n / 2.0);
        ASSERT_TRUE(it.has_value()) << n;
        EXPECT_LT(*it, 10000u);
        EXPECT_LE(r.best_ratio, r.bound * (1 + 1e-9));
    }
}

TEST(Search, RejectsBadInput) {
    EXPECT_THROW(maximize_ratio({ClassKind::lorentz_nonneg, 3}, Strategy::random, 0, 1), InvalidArgument);
    Recipe outside;
    outside.real_roots = {Rational(0)};
    outside.leading = 1;
    EXPECT_THROW(maximize_ratio({ClassKind::real_zeros_outside, 1}, Strategy::coordinate_descent, 5, 1, outside),
                 ClassViolation);
    EXPECT_THROW(parse_strategy("anneal"), ParseError);
    EXPECT_EQ(parse_strategy("cd"), Strategy::coordinate_descent);
}

TEST(SearchProperty, HistoryIsStrictlyIncreasing) {
    for (std::uint64_t seed = 0; seed < 6; ++seed)
        for (auto strategy : {Strategy::random, Strategy::coordinate_descent}) {
            const SearchResult r = maximize_ratio({ClassKind::zeros_outside_disk, 3}, strategy, 150, seed);
            ASSERT_FALSE(r.history.empty());
            for (std::size_t i = 1; i < r.history.size(); ++i) {
                ASSERT_GT(r.history[i].first, r.history[i - 1].first);
                ASSERT_GT(r.history[i].second, r.history[i - 1].second);
            }
            EXPECT_DOUBLE_EQ(r.history.back().second, r.best_ratio);
        }
}

TEST(SearchProperty, BestIterateIsClassMember) {
    for (auto kind : {ClassKind::deriv_lorentz, ClassKind::monotone_real_zeros_outside, ClassKind::monotone_only})
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const SearchResult r = maximize_ratio({kind, 4}, Strategy::coordinate_descent, 120, seed);
            EXPECT_TRUE(check_membership(r.best).yes()) << class_name(kind);
            EXPECT_NEAR(objective_ratio(r.tag, r.best.poly), r.best_ratio, 1e-12 * r.best_ratio);
        }
}

TEST(Profile, ChebyshevGridAndEnvelope) {
    const auto g = chebyshev_grid();
    ASSERT_EQ(g.size(), 41u);
    EXPECT_EQ(g[20], 0.0);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    const Profile p = pointwise_profile({ClassKind::real_zeros_outside, 8}, 50, 3);
    ASSERT_EQ(p.rows.size(), 41u);
    EXPECT_DOUBLE_EQ(p.rows[20].envelope, std::sqrt(8.0));
    EXPECT_DOUBLE_EQ(p.rows.front().envelope, 8.0);
    EXPECT_LE(p.max_ratio, to_double(erdos_factor(8)) * (1 + 1e-12));
    EXPECT_THROW(pointwise_profile({ClassKind::real_zeros_outside, 2}, 5, 0, {0.0, 1.0}), InvalidArgument);
    const std::string csv = profile_csv(p);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,max_ratio,envelope,c_emp");
}

TEST(Growth, Examples) {
    const DegreeGrowthRow r = degree_growth_row(2, 0, 1);
    EXPECT_EQ(ellipse_family(2, 0, 1), poly({1, 0, 1}).pow(2));
    ASSERT_TRUE(r.d_found.is_finite());
    EXPECT_EQ(r.d_found.degree, 4u);
    EXPECT_DOUBLE_EQ(*r.normalized, 2.0);

    const auto rows = degree_growth_experiment({1, 2}, {Rational(0)},
                                               {Rational(1), make_rational(1, 2), make_rational(1, 4), make_rational(1, 8)});
    ASSERT_EQ(rows.size(), 8u);
    const GrowthBand band = growth_band(rows);
    EXPECT_TRUE(band.monotone);
    EXPECT_LE(band.ratio(), 4.0);
    EXPECT_THROW(degree_growth_row(1, 0, 0), InvalidArgument);
    EXPECT_THROW(degree_growth_row(1, 1, make_rational(1, 2)), InvalidArgument);
    EXPECT_EQ(growth_csv(rows).substr(0, 30), "n,a,eps,d,normalized,status\n1,");
}

TEST(GrowthProperty, DegreeNonIncreasingInEps) {
    for (unsigned n = 1; n <= 3; ++n)
        for (const Rational& a : {Rational(0), make_rational(1, 2), make_rational(-3, 4)}) {
            unsigned prev = 0;
            for (const Rational& e : {Rational(1), make_rational(1, 2), make_rational(1, 4)}) {
                const DegreeGrowthRow r = degree_growth_row(n, a, e);
                ASSERT_TRUE(r.d_found.is_finite());
                EXPECT_GE(r.d_found.degree, prev);
                EXPECT_GE(r.d_found.degree, 2 * n);
                prev = r.d_found.degree;
            }
        }
}

TEST(Serialize, PolyRoundTrip) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const PowerPoly f = lpoly::testing::random_poly(rng);
        EXPECT_EQ(poly_from_json(json::parse(to_json(f).dump())), f);
    }
    json bad = to_json(poly({1, 2}));
    bad["factors"] = to_json(Factorization{});
    EXPECT_THROW(poly_from_json(bad), ParseError);
}

TEST(Serialize, WitnessRoundTripAndRecheck) {
    for (auto t : all_theorems()) {
        BatchConfig c;
        c.theorem = t;
        c.trials = 12;
        c.seed = 9;
        const Report rep = batch_verify(c);
        for (std::size_t i = 0; i < rep.records.size(); ++i) {
            const Witness w = witness_of(rep.records[i], t);
            const Witness back = witness_from_json(json::parse(to_json(w).dump()));
            EXPECT_EQ(back.poly, w.poly);
            EXPECT_EQ(back.n, w.n);
            EXPECT_EQ(back.theorem, t);
            const Verdict v = recheck(back);
            EXPECT_EQ(v.outcome, rep.records[i].verdict.outcome) << witness_id(t, i);
            EXPECT_EQ(v.ratio, rep.records[i].verdict.ratio) << witness_id(t, i);
        }
    }
    EXPECT_EQ(witness_id(TheoremId::markov_deriv_disk, 17), "thm2.4-17");
}

TEST(Serialize, ReportFormats) {
    BatchConfig c;
    c.theorem = TheoremId::erdos;
    c.trials = 25;
    c.seed = 42;
    const Report rep = batch_verify(c);
    const std::string csv = csv_header() + to_csv_rows(rep);
    std::istringstream in(csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    }
    EXPECT_EQ(lines, 26u);
    const json j = to_json(rep);
    EXPECT_EQ(j.at("theorem"), "erdos");
    EXPECT_EQ(j.at("failures"), 0);
    EXPECT_FALSE(j.contains("runtime_ms"));
    EXPECT_TRUE(to_json(rep, true).contains("runtime_ms"));
    EXPECT_NE(to_text(rep).find("OK"), std::string::npos);
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
