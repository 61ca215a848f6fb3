// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "lpoly.hpp"

using namespace lpoly;

namespace {

struct Result {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

PowerPoly linear(long c0, long c1) { return PowerPoly{Rational(c0), Rational(c1)}; }

Exponent ex(long num, long den = 1) { return Exponent::of(make_rational(num, den)); }

Result exact_equality_cases() {
    Result r;
    for (unsigned d = 1; d <= 12; ++d) {
        const Verdict v = check_nikolskii_lorentz(linear(1, 1).pow(d), d, Exponent::infinity(), ex(1));
        r.require(v.holds() && v.equality && v.exact, "thm2.1 (x+1)^" + std::to_string(d));
    }
    const Verdict two = check_nikolskii_lorentz(linear(1, 1).pow(2), 2, Exponent::infinity(), ex(1));
    r.require(two.lhs.lower == 4 && std::abs(two.rhs_bound.value - 4.0) < 1e-12, "thm2.1 d=2 sides 4 = (3/2)(8/3)");
    for (unsigned n = 2; n <= 12; ++n) {
        const PowerPoly f = linear(1, 1).pow(n) - PowerPoly::constant(pow_r(Rational(2), n - 1));
        const Verdict v = check_markov_deriv_disk(f, n);
        r.require(v.equality && v.exact && v.lhs.lower == v.rhs_bound.lower, "thm2.4 n=" + std::to_string(n));
    }
    for (unsigned n = 1; n <= 12; ++n) {
        const Verdict v = check_markov_monotone_realzeros(linear(1, 1).pow(n), n);
        r.require(v.equality && v.exact && v.ratio == n / 2.0, "thm2.5 n=" + std::to_string(n));
    }
    const Verdict e = check_erdos_factor(PowerPoly{Rational(-1), Rational(0), Rational(1)}, 2);
    r.require(e.equality && e.exact && e.ratio == 2.0, "erdos x^2-1");
    r.detail = r.ok ? "thm2.1 d=1..12, thm2.4 n=2..12, thm2.5 n=1..12, erdos n=2 all exact equalities" : r.detail;
    return r;
}

Result batch_soundness() {
    Result r;
    std::string summary;
    for (auto t : all_theorems()) {
        BatchConfig c;
        c.theorem = t;
        c.trials = 1000;
        c.seed = 1;
        c.jobs = std::max(1u, std::thread::hardware_concurrency());
        const Report rep = batch_verify(c);
        r.require(rep.failures == 0, theorem_name(t) + " has failures");
        r.require(rep.indeterminates * 100 < rep.trials, theorem_name(t) + " indeterminates >= 1%");
        summary += theorem_name(t) + ":" + std::to_string(rep.failures) + "/" + std::to_string(rep.indeterminates) + " ";
    }
    if (r.ok) r.detail = "failures/indeterminates per checker over 1000 trials: " + summary;
    return r;
}

Result negative_control() {
    Result r;
    std::string found;
    for (unsigned n = 2; n <= 6; ++n) {
        const SearchResult s = maximize_ratio({ClassKind::monotone_only, n}, Strategy::random, 10000, 0);
        const auto it = first_iteration_above(s, n / 2.0);
        r.require(it.has_value(), "no monotone-only witness above n/2 for n=" + std::to_string(n));
        if (it) found += "n=" + std::to_string(n) + "@" + std::to_string(*it) + " ";
    }
    BatchConfig c;
    c.theorem = TheoremId::markov_monotone_realzeros;
    c.n_lo = 2;
    c.n_hi = 6;
    c.trials = 200;
    c.generator_override = ClassKind::monotone_only;
    const Report rep = batch_verify(c);
    r.require(rep.failures > 0 && report_ok(rep), "batch negative control found no violation");
    if (r.ok) r.detail = "first iteration above n/2: " + found + "; batch violations " + std::to_string(rep.failures);
    return r;
}

Result lorentz_oracles() {
    Result r;
    std::mt19937_64 rng(1000);
    std::uniform_int_distribution<long> coef(0, 12);
    std::uniform_int_distribution<unsigned> deg(0, 9);
    for (int i = 0; i < 1000 && r.ok; ++i) {
        const unsigned d = deg(rng);
        std::vector<Rational> c(d + 1);
        for (auto& x : c) x = make_rational(coef(rng), 1 + coef(rng));
        const LorentzForm L(-1, 1, c);
        const PowerPoly f = to_power(L);
        r.require(from_power(f, d, -1, 1) == L, "round trip");
        const LorentzForm E = elevate(L, d + 3);
        r.require(E.is_nonnegative() && to_power(E) == f && from_power(f, d + 3, -1, 1) == E, "elevation");
        const LorentzForm R = restrict_interval(L, make_rational(-1, 3), make_rational(1, 2));
        r.require(R.is_nonnegative() && to_power(R) == f, "restriction");
        const LorentzForm M = mul_lorentz(L, E);
        r.require(M.is_nonnegative() && to_power(M) == f * f, "product");
    }
    // (1 − x) + (x + 1) = 2 and (1 − x)² + 2(1 − x²) + (x + 1)² = 4
    r.require(to_power(LorentzForm(-1, 1, {Rational(1), Rational(1)})) == PowerPoly::constant(2), "identity deg 1");
    r.require(to_power(LorentzForm(-1, 1, {Rational(1), Rational(2), Rational(1)})) == PowerPoly::constant(4),
              "identity deg 2");
    // x + 1 = 1·(x + 1) on [-1, 1] and 2·x + 1·(1 - x) on [0, 1]
    r.require(restrict_interval(LorentzForm(-1, 1, {Rational(1), Rational(0)}), 0, 1).coeffs() ==
                  std::vector<Rational>{Rational(2), Rational(1)},
              "x+1 restricted to [0,1]");
    if (r.ok) r.detail = "1000 random nonnegative forms: round trip, elevation, restriction, product; identities";
    return r;
}

Result lorentz_degrees() {
    Result r;
    const auto a = lorentz_degree(PowerPoly{Rational(1), Rational(0), Rational(1)}, 64);
    r.require(a.is_finite() && a.degree == 2, "x^2+1 -> 2");
    const auto b = lorentz_degree(PowerPoly{Rational(0), Rational(1)}, 64);
    r.require(b.kind == LorentzDegreeResult::Kind::infinite, "x -> infinite");
    const auto rows = degree_growth_experiment({1, 2, 3}, {Rational(0), make_rational(1, 2)},
                                               {Rational(1), make_rational(1, 2), make_rational(1, 4)});
    const GrowthBand band = growth_band(rows);
    for (const auto& row : rows) r.require(row.d_found.is_finite(), "growth row unresolved");
    r.require(band.monotone, "d not monotone in eps");
    r.require(band.ratio() <= 4.0, "normalized band ratio above 4");
    if (r.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "x^2+1 -> 2, x -> infinite, d*eps^2/n in [%.4g, %.4g] (ratio %.3g), monotone",
                      band.min, band.max, band.ratio());
        r.detail = buf;
    }
    return r;
}

Result signed_forms() {
    Result r;
    std::size_t built = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const ClassSample s = sample({ClassKind::zeros_outside_disk, 1 + static_cast<unsigned>(seed % 12)}, seed);
        if (!s.poly.factors()) {
            r.require(false, "sample without factor list");
            continue;
        }
        const SignedLorentzForm L = lorentz_from_factors(*s.poly.factors());
        r.require(L.form.is_nonnegative(), "negative coefficient");
        r.require(to_power(L.form).scaled(L.sign) == s.poly, "form does not expand to f");
        r.require(L.form.degree() == static_cast<unsigned>(s.poly.degree()), "form degree differs from deg f");
        ++built;
    }
    if (r.ok) r.detail = std::to_string(built) + " factor-built polynomials, all with a nonnegative form of degree deg f";
    return r;
}

std::string verify_all_json(unsigned jobs) {
    json out = json::array();
    for (auto t : all_theorems()) {
        BatchConfig c;
        c.theorem = t;
        c.trials = 150;
        c.seed = 42;
        c.jobs = jobs;
        out.push_back(to_json(batch_verify(c)));
    }
    return out.dump();
}

Result determinism() {
    Result r;
    const std::string one = verify_all_json(1);
    const std::string four = verify_all_json(4);
    r.require(one == four, "JSON differs between 1 and 4 workers");
    r.require(one == verify_all_json(1), "JSON differs between runs");
    if (r.ok) r.detail = "seed 42, 150 trials per checker: identical JSON (" + std::to_string(one.size()) + " bytes)";
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"exact equality cases", exact_equality_cases},
        {"batch soundness, all nine checkers", batch_soundness},
        {"negative control", negative_control},
        {"Lorentz representation oracles", lorentz_oracles},
        {"Lorentz degree values and growth", lorentz_degrees},
        {"signed forms from factor lists", signed_forms},
        {"determinism across workers", determinism},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Result res;
        try {
            res = run();
        } catch (const std::exception& e) {
            res.ok = false;
            res.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %d. %s: %s\n", res.ok ? "PASS" : "FAIL", index++, name.c_str(), res.detail.c_str());
        std::fflush(stdout);
        if (!res.ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
