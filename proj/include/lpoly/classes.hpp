#pragma once

// Constrained polynomial classes: membership predicates and seeded generators
// that build members from a constructive parameterization (a Recipe).

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpoly/lorentz_form.hpp"
#include "lpoly/sturm.hpp"

namespace lpoly {

enum class ClassKind {
    lorentz_nonneg,               // B_d(−1, 1)
    zeros_outside_disk,           // P_{n,0}
    deriv_lorentz,                // f' ∈ B_{d−1}(−1, 1)
    deriv_zeros_outside_disk,     // f' ∈ P_{n−1,0}
    monotone_real_zeros_outside,  // monotone on [−1,1], all zeros real and outside (−1,1)
    monotone_only,                // monotone on [−1,1]
    real_zeros_outside,           // all zeros real and outside (−1,1)
};

struct ClassTag {
    ClassKind kind = ClassKind::lorentz_nonneg;
    unsigned n = 1;

    friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

inline std::string class_name(ClassKind k) {
    switch (k) {
        case ClassKind::lorentz_nonneg: return "lorentz-nonneg";
        case ClassKind::zeros_outside_disk: return "zeros-outside-disk";
        case ClassKind::deriv_lorentz: return "deriv-lorentz";
        case ClassKind::deriv_zeros_outside_disk: return "deriv-disk";
        case ClassKind::monotone_real_zeros_outside: return "monotone-real-zeros";
        case ClassKind::monotone_only: return "monotone-only";
        case ClassKind::real_zeros_outside: return "real-zeros-outside";
    }
    return "?";
}

inline ClassKind parse_class(const std::string& s) {
    for (auto k : {ClassKind::lorentz_nonneg, ClassKind::zeros_outside_disk, ClassKind::deriv_lorentz,
                   ClassKind::deriv_zeros_outside_disk, ClassKind::monotone_real_zeros_outside,
                   ClassKind::monotone_only, ClassKind::real_zeros_outside})
        if (class_name(k) == s) return k;
    throw ParseError("unknown class '" + s + "'");
}

struct Membership {
    enum class Answer { yes, no, indeterminate };
    enum class Basis { constructive, numeric };

    Answer answer = Answer::indeterminate;
    double margin = 0.0;
    Basis basis = Basis::constructive;

    bool yes() const { return answer == Answer::yes; }
    bool no() const { return answer == Answer::no; }

    static Membership constructive(bool ok, double margin = 0.0) {
        return {ok ? Answer::yes : Answer::no, margin, Basis::constructive};
    }
};

inline std::string to_string(Membership::Answer a) {
    switch (a) {
        case Membership::Answer::yes: return "yes";
        case Membership::Answer::no: return "no";
        case Membership::Answer::indeterminate: return "indeterminate";
    }
    return "?";
}

/// f ∈ B_d(a, b): the degree-d representation exists with all coefficients ≥ 0.
inline Membership in_lorentz_class(const PowerPoly& f, unsigned d, const Rational& a = -1, const Rational& b = 1) {
    if (f.degree() > static_cast<int>(d)) return Membership::constructive(false);
    return Membership::constructive(from_power(f, d, a, b).is_nonnegative());
}

/// Roots of f in floating point (companion-matrix eigenvalues).
inline std::vector<std::complex<double>> numeric_roots(const PowerPoly& f) {
    const int n = f.degree();
    std::vector<std::complex<double>> out;
    if (n < 1) return out;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = to_double(f.leading());
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -to_double(f.coeff(static_cast<std::size_t>(i))) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    for (int i = 0; i < n; ++i) out.push_back(ev(i));
    return out;
}

namespace detail {

inline double factor_margin(const Factorization& fz) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : fz.real_roots) m = std::min(m, std::abs(std::abs(to_double(r.value)) - 1.0));
    for (const auto& c : fz.complex_pairs) m = std::min(m, std::abs(std::sqrt(to_double(c.modulus_squared())) - 1.0));
    return std::isfinite(m) ? m : 0.0;
}

inline bool factors_outside_disk(const Factorization& fz) {
    for (const auto& r : fz.real_roots)
        if (abs_r(r.value) < 1) return false;
    for (const auto& c : fz.complex_pairs)
        if (c.modulus_squared() < 1) return false;
    return true;
}

}  // namespace detail

namespace detail {

/// x^n f(1/x)
inline PowerPoly reciprocal(const PowerPoly& f) {
    std::vector<Rational> c(f.coeffs().rbegin(), f.coeffs().rend());
    return PowerPoly(c);
}

/// For g with g* ∝ g: are all its roots on the unit circle? Writing
/// g(z) = z^m P(z + 1/z), circle roots correspond to real roots of P in (−2, 2).
inline std::optional<bool> roots_on_unit_circle(PowerPoly g) {
    for (const Rational& s : {Rational(1), Rational(-1)})
        while (g.degree() > 0 && g(s) == 0) g = divmod(g, PowerPoly::linear(s)).first;
    if (g.degree() <= 0) return true;
    if (g.degree() % 2 == 1) return std::nullopt;
    g = monic(g);
    if (monic(reciprocal(g)) != g) return std::nullopt;
    const auto m = static_cast<unsigned>(g.degree() / 2);
    // Dickson polynomials D_k(t) = z^k + z^{-k}
    PowerPoly prev = PowerPoly::constant(2);
    PowerPoly cur{0, 1};
    PowerPoly P = PowerPoly::constant(g.coeff(m));
    for (unsigned k = 1; k <= m; ++k) {
        P = P + cur.scaled(g.coeff(m + k));
        PowerPoly next = cur * PowerPoly{0, 1} - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    const unsigned all = count_roots_with_multiplicity(P, OpenInterval::whole_line());
    const unsigned inside = count_roots_with_multiplicity(P, OpenInterval::between(-2, 2));
    return all == m && inside == m;
}

inline Membership numeric_disk(const PowerPoly& input, int depth) {
    if (input.degree() <= 0) return Membership::constructive(true);
    // Same root set, all simple: eigenvalues of repeated roots scatter badly.
    const PowerPoly f = square_free_part(input);
    // A real zero inside (−1, 1) settles it exactly.
    if (count_roots_in(f, -1, 1) > 0) return Membership::constructive(false);
    constexpr double tol = 1e-9;
    double margin = std::numeric_limits<double>::infinity();
    bool inside = false;
    bool close = false;
    for (const auto& z : numeric_roots(f)) {
        const double r = std::abs(z);
        margin = std::min(margin, std::abs(r - 1.0));
        if (r <= 1.0 - tol) inside = true;
        else if (r < 1.0 + tol) close = true;
    }
    Membership m;
    m.basis = Membership::Basis::numeric;
    m.margin = margin;
    if (inside) {
        m.answer = Membership::Answer::no;
        return m;
    }
    if (!close) {
        m.answer = Membership::Answer::yes;
        return m;
    }
    // Roots near the circle: those exactly on it divide gcd(f, f*).
    if (depth < 8) {
        const PowerPoly g = gcd(f, reciprocal(f));
        if (g.degree() >= 1) {
            const auto on = roots_on_unit_circle(g);
            // Off-circle roots of g come in pairs (z, 1/z), one of them inside.
            if (on && !*on) return Membership::constructive(false);
            if (on) {
                Membership rest = numeric_disk(divmod(f, g).first, depth + 1);
                rest.margin = 0.0;
                return rest;
            }
        }
    }
    m.answer = Membership::Answer::indeterminate;
    return m;
}

}  // namespace detail

/// All zeros satisfy |z| ≥ 1 (boundary allowed).
inline Membership zeros_outside_open_disk(const PowerPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("zeros_outside_open_disk: zero polynomial");
    if (f.factors()) {
        const auto& fz = *f.factors();
        return Membership::constructive(detail::factors_outside_disk(fz), detail::factor_margin(fz));
    }
    return detail::numeric_disk(f, 0);
}

/// All zeros real (with multiplicity) and none inside (−1, 1). Exact.
inline Membership real_zeros_outside_interval(const PowerPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("real_zeros_outside_interval: zero polynomial");
    if (f.degree() == 0) return Membership::constructive(true);
    const bool all_real =
        count_roots_with_multiplicity(f, OpenInterval::whole_line()) == static_cast<unsigned>(f.degree());
    if (!all_real) return Membership::constructive(false);
    return Membership::constructive(count_roots_in(f, -1, 1) == 0);
}

/// f' has no odd-multiplicity zero in (−1, 1). Exact.
inline Membership monotone_on_interval(const PowerPoly& f) {
    const PowerPoly df = derivative(f);
    if (df.degree() <= 0) return Membership::constructive(true);
    for (const auto& sf : square_free_decomposition(df)) {
        if (sf.multiplicity % 2 == 0) continue;
        if (SturmChain(sf.poly).count(OpenInterval::between(-1, 1)) > 0) return Membership::constructive(false);
    }
    return Membership::constructive(true);
}

/// Constructive parameters of a class member. Which fields are used depends on the class.
struct Recipe {
    std::vector<Rational> lorentz;     // nonnegative Lorentz coefficients on [−1, 1]
    std::vector<Rational> real_roots;  // simple real roots (repeats allowed)
    std::vector<ComplexPair> pairs;    // conjugate pairs, multiplicity 1 each
    Rational leading = 1;
    Rational constant = 0;  // added after antidifferentiation

    friend bool operator==(const Recipe&, const Recipe&) = default;
};

/// A class member with the evidence needed to answer its predicates constructively.
struct ClassSample {
    ClassTag tag;
    PowerPoly poly;
    std::optional<PowerPoly> derivative;  // f', carrying its factor list when known
    Recipe recipe;
    std::uint64_t seed = 0;
};

namespace detail {

inline Factorization recipe_factors(const Recipe& r) {
    Factorization fz;
    for (const auto& x : r.real_roots) fz.real_roots.push_back({x, 1});
    fz.complex_pairs = r.pairs;
    fz.leading = r.leading;
    return fz;
}

}  // namespace detail

/// Builds the polynomial a recipe describes; no validation.
inline ClassSample build_sample(const ClassTag& tag, const Recipe& r) {
    ClassSample s;
    s.tag = tag;
    s.recipe = r;
    switch (tag.kind) {
        case ClassKind::lorentz_nonneg:
            s.poly = to_power(LorentzForm(-1, 1, r.lorentz));
            break;
        case ClassKind::zeros_outside_disk:
        case ClassKind::real_zeros_outside:
        case ClassKind::monotone_real_zeros_outside:
            s.poly = from_factors(detail::recipe_factors(r));
            break;
        case ClassKind::deriv_lorentz: {
            PowerPoly g = to_power(LorentzForm(-1, 1, r.lorentz));
            s.poly = antiderivative(g) + PowerPoly::constant(r.constant);
            s.derivative = std::move(g);
            break;
        }
        case ClassKind::deriv_zeros_outside_disk: {
            PowerPoly g = from_factors(detail::recipe_factors(r));
            s.poly = antiderivative(g) + PowerPoly::constant(r.constant);
            s.derivative = std::move(g);
            break;
        }
        case ClassKind::monotone_only: {
            PowerPoly sq = PowerPoly::constant(1);
            for (const auto& x : r.real_roots) sq = sq * PowerPoly::linear(x);
            PowerPoly g = (sq * sq * to_power(LorentzForm(-1, 1, r.lorentz))).scaled(r.leading);
            s.poly = antiderivative(g) + PowerPoly::constant(r.constant);
            s.derivative = std::move(g);
            break;
        }
    }
    return s;
}

/// f' with its factor list when the sample carries one.
inline PowerPoly derivative_of(const ClassSample& s) {
    if (s.derivative && *s.derivative == derivative(s.poly)) return *s.derivative;
    return derivative(s.poly);
}

/// Degree bound the tag's class is indexed by.
inline unsigned class_degree(const ClassTag& t) { return t.n; }

/// Membership of a sample in its own class.
inline Membership check_membership(const ClassSample& s) {
    const PowerPoly& f = s.poly;
    const unsigned n = s.tag.n;
    if (f.is_zero()) return Membership::constructive(false);
    if (f.degree() > static_cast<int>(n)) return Membership::constructive(false);
    switch (s.tag.kind) {
        case ClassKind::lorentz_nonneg: return in_lorentz_class(f, n);
        case ClassKind::zeros_outside_disk: return zeros_outside_open_disk(f);
        case ClassKind::real_zeros_outside: return real_zeros_outside_interval(f);
        case ClassKind::monotone_real_zeros_outside: {
            auto m = monotone_on_interval(f);
            if (!m.yes()) return m;
            return real_zeros_outside_interval(f);
        }
        case ClassKind::deriv_lorentz: {
            const PowerPoly df = derivative(f);
            if (df.is_zero()) return Membership::constructive(true);
            return in_lorentz_class(df, n - 1);
        }
        case ClassKind::deriv_zeros_outside_disk: {
            const PowerPoly df = derivative_of(s);
            if (df.is_zero()) return Membership::constructive(true);
            return zeros_outside_open_disk(df);
        }
        case ClassKind::monotone_only: return monotone_on_interval(f);
    }
    return {};
}

/// Constraint check on the parameters themselves (cheap; used by the search).
inline bool recipe_valid(const ClassTag& tag, const Recipe& r) {
    const auto nonneg_lorentz = [&](std::size_t size) {
        if (r.lorentz.size() != size) return false;
        bool any = false;
        for (const auto& c : r.lorentz) {
            if (c < 0) return false;
            any = any || c != 0;
        }
        return any;
    };
    const auto roots_outside = [&] {
        for (const auto& x : r.real_roots)
            if (abs_r(x) < 1) return false;
        for (const auto& c : r.pairs)
            if (c.im <= 0 || c.modulus_squared() < 1) return false;
        return true;
    };
    const unsigned n = tag.n;
    switch (tag.kind) {
        case ClassKind::lorentz_nonneg: return nonneg_lorentz(n + 1);
        case ClassKind::zeros_outside_disk:
        case ClassKind::real_zeros_outside:
        case ClassKind::monotone_real_zeros_outside:
            return r.leading != 0 && roots_outside() && r.real_roots.size() + 2 * r.pairs.size() <= n;
        case ClassKind::deriv_lorentz: return n >= 1 && nonneg_lorentz(n);
        case ClassKind::deriv_zeros_outside_disk:
            return n >= 1 && r.leading != 0 && roots_outside() && r.real_roots.size() + 2 * r.pairs.size() <= n - 1;
        case ClassKind::monotone_only:
            return n >= 1 && r.leading != 0 && !r.lorentz.empty() &&
                   std::all_of(r.lorentz.begin(), r.lorentz.end(), [](const Rational& c) { return c >= 0; }) &&
                   std::any_of(r.lorentz.begin(), r.lorentz.end(), [](const Rational& c) { return c != 0; }) &&
                   2 * r.real_roots.size() + r.lorentz.size() == n;
    }
    return false;
}

namespace detail {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    /// Rounded to a multiple of 1/den.
    Rational rounded(double x, long den) { return make_rational(std::lround(x * static_cast<double>(den)), den); }

    /// Nonzero, sign random, magnitude in [1/4, 4].
    Rational nonzero_scalar() {
        Rational v = rounded(std::exp(uniform(std::log(0.25), std::log(4.0))), 8);
        if (v == 0) v = make_rational(1, 8);
        return coin() ? v : Rational(-v);
    }

    Rational lorentz_coeff() {
        if (coin(0.1)) return 0;
        const Rational v = make_rational(integer(1, 32), integer(1, 8));
        return v;
    }

    std::vector<Rational> lorentz(std::size_t size) {
        for (;;) {
            std::vector<Rational> c(size);
            bool any = false;
            for (auto& v : c) {
                v = lorentz_coeff();
                any = any || v != 0;
            }
            if (any) return c;
        }
    }

    /// |r| ≥ 1: half on the boundary ±1, otherwise log-uniform magnitude in [1, 4].
    Rational real_root_outside(int side = 0) {
        const int s = side != 0 ? side : (coin() ? 1 : -1);
        if (coin()) return Rational(s);
        Rational m = rounded(std::exp(uniform(0.0, std::log(4.0))), 16);
        if (m < 1) m = 1;
        return s * m;
    }

    /// |α| ≥ 1: half exactly on the unit circle (rational points), otherwise
    /// log-uniform modulus in [1, 4] at a uniform angle in (0, π).
    ComplexPair pair_outside() {
        if (coin()) {
            Rational t = make_rational(integer(1, 32), 8);
            if (coin()) t = -t;
            const Rational den = 1 + t * t;
            return {Rational((1 - t * t) / den), abs_r(Rational(2 * t / den)), 1};
        }
        const double rho = std::exp(uniform(0.0, std::log(4.0)));
        const double theta = uniform(0.05, std::numbers::pi - 0.05);
        ComplexPair c{rounded(rho * std::cos(theta), 64), rounded(rho * std::sin(theta), 64), 1};
        if (c.im <= 0) c.im = make_rational(1, 64);
        while (c.modulus_squared() < 1) {
            c.re *= make_rational(17, 16);
            c.im *= make_rational(17, 16);
        }
        return c;
    }

    Rational inside_root() { return make_rational(integer(-15, 15), 16); }

    Rational constant() { return make_rational(integer(-32, 32), 8); }

private:
    std::mt19937_64 rng_;
};

inline Recipe draw_disk_recipe(Draw& d, unsigned degree, bool real_only) {
    Recipe r;
    const unsigned pairs = real_only ? 0 : static_cast<unsigned>(d.integer(0, degree / 2));
    for (unsigned i = 0; i < pairs; ++i) r.pairs.push_back(d.pair_outside());
    for (unsigned i = 0; i < degree - 2 * pairs; ++i) r.real_roots.push_back(d.real_root_outside());
    r.leading = d.nonzero_scalar();
    return r;
}

}  // namespace detail

inline constexpr unsigned rejection_budget = 10000;

/// A seeded member of the class; identical (tag, seed) gives an identical sample.
inline ClassSample sample(const ClassTag& tag, std::uint64_t seed) {
    if (tag.n < 1) throw ClassViolation("sample: n must be at least 1");
    detail::Draw d(seed);
    Recipe r;
    const unsigned n = tag.n;
    switch (tag.kind) {
        case ClassKind::lorentz_nonneg: r.lorentz = d.lorentz(n + 1); break;
        case ClassKind::zeros_outside_disk: r = detail::draw_disk_recipe(d, n, false); break;
        case ClassKind::real_zeros_outside: r = detail::draw_disk_recipe(d, n, true); break;
        case ClassKind::deriv_lorentz:
            r.lorentz = d.lorentz(n);
            r.constant = d.constant();
            break;
        case ClassKind::deriv_zeros_outside_disk:
            r = detail::draw_disk_recipe(d, n - 1, false);
            r.constant = d.constant();
            break;
        case ClassKind::monotone_real_zeros_outside: {
            for (unsigned tries = 0;; ++tries) {
                if (tries >= rejection_budget)
                    throw RejectionBudgetExceeded("monotone-real-zeros: no monotone draw within budget");
                r = Recipe{};
                const int side = d.coin() ? (d.coin() ? 1 : -1) : 0;
                for (unsigned i = 0; i < n; ++i) r.real_roots.push_back(d.real_root_outside(side));
                r.leading = d.nonzero_scalar();
                ClassSample s = build_sample(tag, r);
                if (monotone_on_interval(s.poly).yes()) {
                    s.seed = seed;
                    return s;
                }
            }
        }
        case ClassKind::monotone_only: {
            const auto k = static_cast<unsigned>(d.integer(0, (n - 1) / 2));
            for (unsigned i = 0; i < k; ++i) r.real_roots.push_back(d.inside_root());
            r.lorentz = d.lorentz(n - 2 * k);
            r.leading = d.nonzero_scalar();
            r.constant = d.constant();
            break;
        }
    }
    ClassSample s = build_sample(tag, r);
    s.seed = seed;
    return s;
}

}  // namespace lpoly
