#pragma once

// One checker per inequality. Each computes both sides (exactly where the
// exponents allow), decides the comparison on rigorous bounds, and diagnoses
// equality against the known extremal families.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lpoly/classes.hpp"
#include "lpoly/norms.hpp"

namespace lpoly {

enum class TheoremId {
    nikolskii_lorentz,          // ‖f‖_p ≤ ((qd+1)/2)^{1/q−1/p} ‖f‖_q on B_d(−1,1)
    nikolskii_pn0,              // same factor with d = n on P_{n,0}
    markov_deriv_lorentz,       // ‖f'‖ ≤ d‖f‖ when f' ∈ B_{d−1}(−1,1)
    markov_deriv_disk,          // ‖f'‖ ≤ n‖f‖ when f' has no zeros in the open disk
    markov_monotone_realzeros,  // ‖f'‖ ≤ (n/2)‖f‖ for monotone f with real zeros outside (−1,1)
    lemma_endpoint,             // max{f(a),f(b)}^q ≤ (qd+1)/(b−a) ∫ f^q on B_d(a,b)
    lemma_supnorm,              // ‖f‖_∞^q ≤ ((qd+1)/2) ‖f‖_q^q on B_d(−1,1)
    erdos,                      // ‖f'‖ ≤ (n/2)(n/(n−1))^{n−1} ‖f‖, real zeros outside (−1,1)
    bernstein_monotone,         // ‖f'‖ ≤ ¼(n+1)² (n odd) or ¼n(n+2) (n even), f monotone
};

inline const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids{
        TheoremId::nikolskii_lorentz,   TheoremId::nikolskii_pn0,    TheoremId::markov_deriv_lorentz,
        TheoremId::markov_deriv_disk,   TheoremId::markov_monotone_realzeros, TheoremId::lemma_endpoint,
        TheoremId::lemma_supnorm,       TheoremId::erdos,            TheoremId::bernstein_monotone};
    return ids;
}

inline std::string theorem_name(TheoremId t) {
    switch (t) {
        case TheoremId::nikolskii_lorentz: return "thm2.1";
        case TheoremId::nikolskii_pn0: return "thm2.2";
        case TheoremId::markov_deriv_lorentz: return "thm2.3";
        case TheoremId::markov_deriv_disk: return "thm2.4";
        case TheoremId::markov_monotone_realzeros: return "thm2.5";
        case TheoremId::lemma_endpoint: return "lem3.3";
        case TheoremId::lemma_supnorm: return "lem3.4";
        case TheoremId::erdos: return "erdos";
        case TheoremId::bernstein_monotone: return "bernstein-monotone";
    }
    return "?";
}

inline TheoremId parse_theorem(const std::string& s) {
    for (auto t : all_theorems())
        if (theorem_name(t) == s) return t;
    throw ParseError("unknown theorem selector '" + s + "'");
}

/// The class each theorem's hypothesis describes.
inline ClassKind theorem_class(TheoremId t) {
    switch (t) {
        case TheoremId::nikolskii_lorentz:
        case TheoremId::lemma_endpoint:
        case TheoremId::lemma_supnorm: return ClassKind::lorentz_nonneg;
        case TheoremId::nikolskii_pn0: return ClassKind::zeros_outside_disk;
        case TheoremId::markov_deriv_lorentz: return ClassKind::deriv_lorentz;
        case TheoremId::markov_deriv_disk: return ClassKind::deriv_zeros_outside_disk;
        case TheoremId::markov_monotone_realzeros: return ClassKind::monotone_real_zeros_outside;
        case TheoremId::erdos: return ClassKind::real_zeros_outside;
        case TheoremId::bernstein_monotone: return ClassKind::monotone_only;
    }
    return ClassKind::lorentz_nonneg;
}

inline bool theorem_uses_exponents(TheoremId t) {
    return t == TheoremId::nikolskii_lorentz || t == TheoremId::nikolskii_pn0 || t == TheoremId::lemma_endpoint ||
           t == TheoremId::lemma_supnorm;
}

enum class Outcome { holds, fails, indeterminate };

inline std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        case Outcome::indeterminate: return "indeterminate";
    }
    return "?";
}

struct Verdict {
    TheoremId theorem = TheoremId::nikolskii_lorentz;
    unsigned n = 0;
    std::optional<Exponent> q;
    std::optional<Exponent> p;
    NormValue lhs;
    NormValue rhs_bound;
    double ratio = 0.0;   // the inequality's ratio (e.g. ‖f'‖/‖f‖)
    double factor = 0.0;  // the constant it is bounded by
    double slack = 0.0;   // rhs_bound − lhs
    Outcome outcome = Outcome::indeterminate;
    bool exact = false;          // decided on exact rationals
    bool equality = false;       // lhs = rhs exactly
    bool near_equality = false;  // numeric path, relative slack < 1e-10
    double equality_within = 0.0;
    std::string equality_family;  // extremal family f belongs to, if any
    PowerPoly witness;
    Membership class_evidence;
    std::optional<bool> proof_chain_holds;
    std::vector<std::string> notes;

    bool holds() const { return outcome == Outcome::holds; }
};

struct CheckOptions {
    bool enforce_class = true;
    double rel_tol = 1e-12;      // quadrature target
    double sup_rel_tol = 1e-15;  // critical-point refinement target
    int retries = 1;             // tighter re-runs before reporting indeterminate
};

namespace detail {

inline NormValue scale(const NormValue& v, const Rational& c) {
    NormValue out = v;
    out.value = v.value * to_double(c);
    out.lower = v.lower * c;
    out.upper = v.upper * c;
    out.error_bound = v.error_bound * to_double(c);
    out.argmax.reset();
    return out;
}

inline NormValue power(const NormValue& v, unsigned k) {
    NormValue out = v;
    out.value = std::pow(v.value, static_cast<double>(k));
    out.lower = pow_r(v.lower, k);
    out.upper = pow_r(v.upper, k);
    out.error_bound = to_double(out.upper - out.lower);
    out.argmax.reset();
    return out;
}

/// v^e for real e > 0 in floating point, bounds widened outward.
inline NormValue power_real(const NormValue& v, double e) {
    constexpr double widen = 8 * std::numeric_limits<double>::epsilon();
    const double lo = std::pow(to_double(v.lower), e) * (1 - widen);
    const double hi = std::pow(to_double(v.upper), e) * (1 + widen);
    NormValue out;
    out.value = std::pow(v.value, e);
    out.mode = v.mode == NormMode::quadrature ? NormMode::quadrature : NormMode::enclosure;
    out.lower = from_double(std::max(lo, 0.0));
    out.upper = from_double(hi);
    out.error_bound = hi - lo;
    return out;
}

inline NormValue from_enclosure(const IntegralEnclosure& I) {
    return NormValue::bounded(I.lower, I.upper, to_double((I.lower + I.upper) / 2));
}

inline void decide(Verdict& v) {
    const NormValue& l = v.lhs;
    const NormValue& r = v.rhs_bound;
    v.slack = r.value - l.value;
    v.equality_within = r.value != 0.0 ? v.slack / r.value : v.slack;
    v.exact = l.is_exact() && r.is_exact();
    if (l.upper <= r.lower) {
        v.outcome = Outcome::holds;
        v.equality = v.exact && l.lower == r.lower;
        if (v.equality) {
            v.slack = 0.0;
            v.equality_within = 0.0;
        }
    } else if (l.lower > r.upper) {
        v.outcome = Outcome::fails;
    } else {
        v.outcome = Outcome::indeterminate;
    }
    v.near_equality = !v.exact && std::abs(v.equality_within) < 1e-10;
}

inline bool is_multiple_of(const PowerPoly& f, const PowerPoly& h) {
    if (f.is_zero() || h.is_zero() || f.degree() != h.degree()) return false;
    return f == h.scaled(f.leading() / h.leading());
}

/// "c(x+1)^d" / "c(1-x)^d" when f is such a multiple.
inline std::string power_family(const PowerPoly& f, unsigned d) {
    if (is_multiple_of(f, PowerPoly{Rational(1), Rational(1)}.pow(d))) return "c(x+1)^" + std::to_string(d);
    if (is_multiple_of(f, PowerPoly{Rational(1), Rational(-1)}.pow(d))) return "c(1-x)^" + std::to_string(d);
    return "";
}

/// "c((x+1)^d - 2^(d-1))" / "c((1-x)^d - 2^(d-1))" when f is such a multiple.
inline std::string shifted_power_family(const PowerPoly& f, unsigned d) {
    if (d == 0) return "";
    const PowerPoly half = PowerPoly::constant(pow_r(Rational(2), d - 1));
    if (is_multiple_of(f, PowerPoly{Rational(1), Rational(1)}.pow(d) - half))
        return "c((x+1)^" + std::to_string(d) + " - 2^" + std::to_string(d - 1) + ")";
    if (is_multiple_of(f, PowerPoly{Rational(1), Rational(-1)}.pow(d) - half))
        return "c((1-x)^" + std::to_string(d) + " - 2^" + std::to_string(d - 1) + ")";
    return "";
}

inline void require_class(Verdict& v, const Membership& m, const CheckOptions& opt, const std::string& what) {
    v.class_evidence = m;
    if (!opt.enforce_class) return;
    if (m.no()) throw ClassViolation(theorem_name(v.theorem) + ": " + what);
}

inline bool class_indeterminate(const Verdict& v, const CheckOptions& opt) {
    return opt.enforce_class && v.class_evidence.answer == Membership::Answer::indeterminate;
}

/// Nonnegative Lorentz form of sign·f at degree d, when it exists.
inline std::optional<LorentzForm> nonneg_form(const PowerPoly& f, unsigned d) {
    if (f.degree() > static_cast<int>(d) || f.is_zero()) return std::nullopt;
    for (int s : {1, -1}) {
        LorentzForm L = from_power(f.scaled(s), d, -1, 1);
        if (L.is_nonnegative()) return L;
    }
    return std::nullopt;
}

// Nikolskii comparison ‖f‖_p ≤ K^{1/q−1/p} ‖f‖_q with K = (qd+1)/2.
inline void nikolskii_sides(Verdict& v, const PowerPoly& f, unsigned d, const Exponent& p, const Exponent& q,
                            const CheckOptions& opt) {
    const Rational qv = *q.finite;
    const Rational K = (qv * d + 1) / 2;
    const double inv_q = 1.0 / to_double(qv);
    const double inv_p = p.is_infinite() ? 0.0 : 1.0 / p.as_double();
    v.factor = std::pow(to_double(K), inv_q - inv_p);
    const SupNormOptions sopt{opt.sup_rel_tol, 400};
    LpOptions lopt;
    lopt.rel_tol = opt.rel_tol;

    const auto form = nonneg_form(f, d);
    auto norm_of = [&](const Exponent& e) {
        if (e.is_infinite()) return sup_norm(f, -1, 1, sopt);
        if (form) return lp_norm(*form, e, lopt);
        return lp_norm(f, e, -1, 1, lopt);
    };

    if (q.is_integer() && (p.is_infinite() || p.is_integer())) {
        // Stay rational: compare q-th (or pq-th) powers.
        const unsigned qi = q.as_unsigned();
        const NormValue Iq = from_enclosure(power_integral(f, qi, -1, 1));
        NormValue norm_p = norm_of(p);
        NormValue norm_q = qi == 1 ? Iq : power_real(Iq, 1.0 / qi);
        if (p.is_infinite()) {
            v.lhs = power(norm_p, qi);
            v.rhs_bound = scale(Iq, K);
        } else {
            const unsigned pi = p.as_unsigned();
            const NormValue Ip = from_enclosure(power_integral(f, pi, -1, 1));
            v.lhs = power(Ip, qi);
            v.rhs_bound = scale(power(Iq, pi), pow_r(K, pi - qi));
        }
        decide(v);
        // Report natural-domain values.
        v.ratio = norm_q.value > 0 ? norm_p.value / norm_q.value : 0.0;
        const bool eq = v.equality;
        const Outcome out = v.outcome;
        const bool ex = v.exact;
        v.lhs = norm_p;
        v.rhs_bound = scale(norm_q, 1);
        v.rhs_bound.value = v.factor * norm_q.value;
        v.slack = eq ? 0.0 : v.rhs_bound.value - v.lhs.value;
        v.equality_within = eq ? 0.0 : v.slack / v.rhs_bound.value;
        v.outcome = out;
        v.exact = ex;
        v.equality = eq;
        v.near_equality = !ex && std::abs(v.equality_within) < 1e-10;
        return;
    }
    const NormValue norm_p = norm_of(p);
    const NormValue norm_q = norm_of(q);
    v.lhs = norm_p;
    NormValue rhs = power_real(norm_q, 1.0);
    rhs.value = v.factor * norm_q.value;
    constexpr double widen = 8 * std::numeric_limits<double>::epsilon();
    rhs.lower = from_double(v.factor * to_double(norm_q.lower) * (1 - widen));
    rhs.upper = from_double(v.factor * to_double(norm_q.upper) * (1 + widen));
    v.rhs_bound = rhs;
    v.ratio = norm_q.value > 0 ? norm_p.value / norm_q.value : 0.0;
    decide(v);
}

// ‖f'‖ ≤ c‖f‖ with rational c.
inline void markov_sides(Verdict& v, const PowerPoly& f, const Rational& c, const CheckOptions& opt) {
    const SupNormOptions sopt{opt.sup_rel_tol, 400};
    v.lhs = sup_norm(derivative(f), -1, 1, sopt);
    const NormValue nf = sup_norm(f, -1, 1, sopt);
    v.rhs_bound = scale(nf, c);
    v.factor = to_double(c);
    v.ratio = nf.value > 0 ? v.lhs.value / nf.value : std::numeric_limits<double>::infinity();
    decide(v);
}

// On c(x±1)^d (c(x−a)^d, c(b−x)^d on [a, b]) the sup-norm inequalities are
// equalities in closed form: ‖f‖_∞ = |c|2^d and ∫|f|^q = |c|^q 2^{qd+1}/(qd+1).
inline void settle_extremal(Verdict& v) {
    if (v.equality_family.empty() || v.outcome == Outcome::fails || v.equality) return;
    v.outcome = Outcome::holds;
    v.equality = true;
    v.exact = true;
    v.near_equality = false;
    v.slack = 0.0;
    v.equality_within = 0.0;
    v.ratio = v.factor;
    v.notes.push_back("equality in closed form on the extremal family");
}

inline Verdict with_retries(const std::function<Verdict(const CheckOptions&)>& run, const CheckOptions& opt) {
    Verdict v = run(opt);
    CheckOptions tighter = opt;
    for (int k = 0; k < opt.retries && v.outcome == Outcome::indeterminate && !class_indeterminate(v, opt); ++k) {
        tighter.rel_tol = std::max(tighter.rel_tol * 1e-2, 1e-15);
        tighter.sup_rel_tol *= 1e-30;
        v = run(tighter);
    }
    if (class_indeterminate(v, opt)) {
        v.outcome = Outcome::indeterminate;
        v.notes.push_back("class membership indeterminate");
    }
    return v;
}

}  // namespace detail

inline Verdict check_nikolskii_lorentz(const PowerPoly& f, unsigned d, const Exponent& p, const Exponent& q,
                                       const CheckOptions& opt = {}) {
    if (q.is_infinite() || (!p.is_infinite() && *p.finite <= *q.finite))
        throw NonPositiveP("thm2.1 needs 0 < q < p <= inf");
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::nikolskii_lorentz;
            v.n = d;
            v.p = p;
            v.q = q;
            v.witness = f;
            detail::require_class(v, in_lorentz_class(f, d), o, "f is not in B_d(-1,1)");
            detail::nikolskii_sides(v, f, d, p, q, o);
            if (p.is_infinite()) v.equality_family = detail::power_family(f, d);
            detail::settle_extremal(v);
            return v;
        },
        opt);
}

inline Verdict check_nikolskii_pn0(const PowerPoly& f, unsigned n, const Exponent& p, const Exponent& q,
                                   const CheckOptions& opt = {}) {
    if (q.is_infinite() || (!p.is_infinite() && *p.finite <= *q.finite))
        throw NonPositiveP("thm2.2 needs 0 < q < p <= inf");
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::nikolskii_pn0;
            v.n = n;
            v.p = p;
            v.q = q;
            v.witness = f;
            if (f.degree() > static_cast<int>(n) && o.enforce_class) throw ClassViolation("thm2.2: deg f > n");
            detail::require_class(v, zeros_outside_open_disk(f), o, "f has a zero inside the open unit disk");
            detail::nikolskii_sides(v, f, n, p, q, o);
            if (p.is_infinite()) v.equality_family = detail::power_family(f, n);
            detail::settle_extremal(v);
            return v;
        },
        opt);
}

/// ‖f'‖ ≤ d‖f‖ for f' ∈ B_{d−1}(−1, 1); also checks ‖f'‖ ≤ (d/2)(f(1) − f(−1)).
inline Verdict check_markov_deriv_lorentz(const PowerPoly& f, unsigned d, const CheckOptions& opt = {}) {
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::markov_deriv_lorentz;
            v.n = d;
            v.witness = f;
            if (d == 0) throw ClassViolation("thm2.3 needs d >= 1");
            const PowerPoly df = derivative(f);
            if (f.degree() > static_cast<int>(d) && o.enforce_class) throw ClassViolation("thm2.3: deg f > d");
            detail::require_class(v, df.is_zero() ? Membership::constructive(true) : in_lorentz_class(df, d - 1), o,
                                  "f' is not in B_{d-1}(-1,1)");
            detail::markov_sides(v, f, Rational(d), o);
            const Rational chain = make_rational(d, 2) * (f(1) - f(-1));
            v.proof_chain_holds = v.lhs.upper <= chain;
            v.equality_family = detail::shifted_power_family(f, d);
            return v;
        },
        opt);
}

/// ‖f'‖ ≤ n‖f‖ when f' has all zeros outside the open unit disk. `derivative_evidence`
/// (f' with its factor list) lets the class test answer constructively.
inline Verdict check_markov_deriv_disk(const PowerPoly& f, unsigned n,
                                       const std::optional<PowerPoly>& derivative_evidence = std::nullopt,
                                       const CheckOptions& opt = {}) {
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::markov_deriv_disk;
            v.n = n;
            v.witness = f;
            PowerPoly df = derivative(f);
            if (derivative_evidence && *derivative_evidence == df) df = *derivative_evidence;
            if (f.degree() > static_cast<int>(n) && o.enforce_class) throw ClassViolation("thm2.4: deg f > n");
            detail::require_class(v, df.is_zero() ? Membership::constructive(true) : zeros_outside_open_disk(df), o,
                                  "f' has a zero inside the open unit disk");
            detail::markov_sides(v, f, Rational(n), o);
            v.equality_family = detail::shifted_power_family(f, n);
            return v;
        },
        opt);
}

/// ‖f'‖ ≤ (n/2)‖f‖ for monotone f with all zeros real and outside (−1, 1).
inline Verdict check_markov_monotone_realzeros(const PowerPoly& f, unsigned n, const CheckOptions& opt = {}) {
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::markov_monotone_realzeros;
            v.n = n;
            v.witness = f;
            if (f.degree() > static_cast<int>(n) && o.enforce_class) throw ClassViolation("thm2.5: deg f > n");
            Membership m = monotone_on_interval(f);
            if (m.yes()) m = real_zeros_outside_interval(f);
            detail::require_class(v, m, o, "f is not monotone with all zeros real and outside (-1,1)");
            detail::markov_sides(v, f, make_rational(n, 2), o);
            const Rational f1 = f(1);
            const Rational fm1 = f(-1);
            if (f1 * fm1 < 0) v.notes.push_back("f(1)f(-1) < 0");
            v.proof_chain_holds = f1 * fm1 >= 0 && v.lhs.upper <= make_rational(n, 2) * abs_r(f1 - fm1);
            v.equality_family = detail::power_family(f, n);
            return v;
        },
        opt);
}

/// max{f(a), f(b)}^q ≤ (qd+1)/(b−a) ∫_a^b f^q for f ∈ B_d(a, b).
inline Verdict check_lemma_endpoint(const PowerPoly& f, unsigned d, const Exponent& q, const Rational& a,
                                    const Rational& b, const CheckOptions& opt = {}) {
    if (q.is_infinite()) throw NonPositiveP("lem3.3 needs finite q");
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::lemma_endpoint;
            v.n = d;
            v.q = q;
            v.witness = f;
            detail::require_class(v, in_lorentz_class(f, d, a, b), o, "f is not in B_d(a,b)");
            const Rational qv = *q.finite;
            const Rational factor = (qv * d + 1) / (b - a);
            v.factor = to_double(qv * d + 1);
            const Rational top = std::max(f(a), f(b));
            if (q.is_integer()) {
                const unsigned qi = q.as_unsigned();
                v.lhs = NormValue::exact(pow_r(top, qi));
                v.rhs_bound = detail::scale(detail::from_enclosure(power_integral(f, qi, a, b)), factor);
            } else {
                v.lhs = detail::power_real(NormValue::exact(top), to_double(qv));
                LpOptions lo;
                lo.rel_tol = o.rel_tol;
                const auto L = from_power(f, d, a, b);
                // ∫ f^q = ‖f‖_q^q
                const NormValue nq = lp_norm(L, q, lo);
                v.rhs_bound = detail::scale(detail::power_real(nq, to_double(qv)), factor);
            }
            detail::decide(v);
            const double mean = v.rhs_bound.value / v.factor;
            v.ratio = mean > 0 ? v.lhs.value / mean : 0.0;
            const PowerPoly xa{Rational(-a), Rational(1)};
            const PowerPoly bx{b, Rational(-1)};
            if (detail::is_multiple_of(f, xa.pow(d))) v.equality_family = "c(x-a)^" + std::to_string(d);
            else if (detail::is_multiple_of(f, bx.pow(d))) v.equality_family = "c(b-x)^" + std::to_string(d);
            detail::settle_extremal(v);
            return v;
        },
        opt);
}

/// ‖f‖_∞^q ≤ ((qd+1)/2) ‖f‖_q^q for f ∈ B_d(−1, 1).
inline Verdict check_lemma_supnorm(const PowerPoly& f, unsigned d, const Exponent& q, const CheckOptions& opt = {}) {
    if (q.is_infinite()) throw NonPositiveP("lem3.4 needs finite q");
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::lemma_supnorm;
            v.n = d;
            v.q = q;
            v.witness = f;
            detail::require_class(v, in_lorentz_class(f, d), o, "f is not in B_d(-1,1)");
            const Rational qv = *q.finite;
            const Rational K = (qv * d + 1) / 2;
            v.factor = to_double(K);
            const NormValue sup = sup_norm(f, -1, 1, SupNormOptions{o.sup_rel_tol, 400});
            if (q.is_integer()) {
                const unsigned qi = q.as_unsigned();
                v.lhs = detail::power(sup, qi);
                v.rhs_bound = detail::scale(detail::from_enclosure(power_integral(f, qi, -1, 1)), K);
            } else {
                LpOptions lo;
                lo.rel_tol = o.rel_tol;
                v.lhs = detail::power_real(sup, to_double(qv));
                const NormValue nq = lp_norm(from_power(f, d, -1, 1), q, lo);
                v.rhs_bound = detail::scale(detail::power_real(nq, to_double(qv)), K);
            }
            detail::decide(v);
            const double base = v.rhs_bound.value / v.factor;
            v.ratio = base > 0 ? v.lhs.value / base : 0.0;
            v.equality_family = detail::power_family(f, d);
            detail::settle_extremal(v);
            return v;
        },
        opt);
}

/// (n/2)(n/(n−1))^{n−1} = n^n / (2(n−1)^{n−1}); 1/2 for n = 1.
inline Rational erdos_factor(unsigned n) {
    if (n <= 1) return make_rational(1, 2);
    return pow_r(Rational(n), n) / (2 * pow_r(Rational(n - 1), n - 1));
}

inline double scheick_factor(unsigned n) { return std::numbers::e * n / 2.0; }

inline Rational bernstein_monotone_factor(unsigned n) {
    return n % 2 == 1 ? make_rational((n + 1) * (n + 1), 4) : make_rational(n * (n + 2), 4);
}

inline Verdict check_erdos_factor(const PowerPoly& f, unsigned n, const CheckOptions& opt = {}) {
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::erdos;
            v.n = n;
            v.witness = f;
            if (f.degree() > static_cast<int>(n) && o.enforce_class) throw ClassViolation("erdos: deg f > n");
            detail::require_class(v, real_zeros_outside_interval(f), o,
                                  "f has a non-real zero or a zero inside (-1,1)");
            detail::markov_sides(v, f, erdos_factor(n), o);
            const double scheick = scheick_factor(n);
            v.notes.push_back("en/2 = " + std::to_string(scheick) + (v.ratio <= scheick ? " (below)" : " (ABOVE)"));
            return v;
        },
        opt);
}

inline Verdict check_bernstein_monotone(const PowerPoly& f, unsigned n, const CheckOptions& opt = {}) {
    return detail::with_retries(
        [&](const CheckOptions& o) {
            Verdict v;
            v.theorem = TheoremId::bernstein_monotone;
            v.n = n;
            v.witness = f;
            if (f.degree() > static_cast<int>(n) && o.enforce_class)
                throw ClassViolation("bernstein-monotone: deg f > n");
            detail::require_class(v, monotone_on_interval(f), o, "f is not monotone on [-1,1]");
            detail::markov_sides(v, f, bernstein_monotone_factor(n), o);
            return v;
        },
        opt);
}

// ---------------------------------------------------------------------------
// Batch driver

struct ExponentPair {
    Exponent q;
    Exponent p;
};

/// q ∈ {1/2, 1, 2, 3}, p ∈ {q + 1/2, 2q, ∞} (duplicates removed).
inline std::vector<ExponentPair> default_exponent_pairs() {
    std::vector<ExponentPair> out;
    for (const Rational& q : {make_rational(1, 2), make_rational(1), make_rational(2), make_rational(3)}) {
        std::vector<Exponent> ps{Exponent::of(q + make_rational(1, 2)), Exponent::of(2 * q), Exponent::infinity()};
        std::vector<Exponent> seen;
        for (const auto& p : ps) {
            if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
            seen.push_back(p);
            out.push_back({Exponent::of(q), p});
        }
    }
    return out;
}

struct BatchConfig {
    TheoremId theorem = TheoremId::nikolskii_lorentz;
    unsigned n_lo = 1;
    unsigned n_hi = 12;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::vector<ExponentPair> exponents = default_exponent_pairs();
    unsigned jobs = 1;
    std::optional<ClassKind> generator_override;  // negative controls
    CheckOptions check;
};

/// One trial's inputs: which n, which exponents, which sample.
struct TrialSpec {
    std::size_t index = 0;
    unsigned n = 1;
    std::optional<ExponentPair> exponents;
    std::uint64_t seed = 0;
    std::optional<std::pair<Rational, Rational>> interval;  // lem3.3
};

struct TrialRecord {
    TrialSpec spec;
    Verdict verdict;
    ClassSample sample;
};

struct Report {
    TheoremId theorem = TheoremId::nikolskii_lorentz;
    ClassKind generator = ClassKind::lorentz_nonneg;
    bool expected_violation = false;  // negative control: failures are the expected outcome
    std::size_t trials = 0;
    std::size_t holds = 0;
    std::size_t failures = 0;
    std::size_t indeterminates = 0;
    std::size_t equalities = 0;
    std::size_t near_equalities = 0;
    std::size_t exact_decisions = 0;
    std::size_t chain_failures = 0;  // proof-chain step violated (thm2.3/thm2.5)
    std::optional<std::size_t> max_ratio_trial;  // largest ratio/factor
    std::optional<std::size_t> min_slack_trial;  // smallest relative slack
    std::optional<std::size_t> first_failure_trial;
    std::vector<TrialRecord> records;
    double runtime_ms = 0.0;
};

inline TrialSpec trial_spec(const BatchConfig& cfg, std::size_t i) {
    TrialSpec t;
    t.index = i;
    const unsigned span = cfg.n_hi - cfg.n_lo + 1;
    t.n = cfg.n_lo + static_cast<unsigned>(i % span);
    t.seed = cfg.seed + i;
    if (theorem_uses_exponents(cfg.theorem) && !cfg.exponents.empty())
        t.exponents = cfg.exponents[(i / span) % cfg.exponents.size()];
    if (cfg.theorem == TheoremId::lemma_endpoint) {
        // Nested subinterval [a, b] ⊆ [−1, 1] drawn from the trial seed.
        std::mt19937_64 rng(t.seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<long> pick(0, 16);
        long u = pick(rng);
        long w = pick(rng);
        if (u == w) w = u == 16 ? 0 : 16;
        if (u > w) std::swap(u, w);
        t.interval = std::make_pair(make_rational(u - 8, 8), make_rational(w - 8, 8));
    }
    return t;
}

/// Runs one theorem's checker on a sample; enforce_class off turns it into a raw inequality test.
inline Verdict run_checker(TheoremId theorem, const ClassSample& s, const TrialSpec& t, const CheckOptions& opt) {
    const PowerPoly& f = s.poly;
    switch (theorem) {
        case TheoremId::nikolskii_lorentz: return check_nikolskii_lorentz(f, t.n, t.exponents->p, t.exponents->q, opt);
        case TheoremId::nikolskii_pn0: return check_nikolskii_pn0(f, t.n, t.exponents->p, t.exponents->q, opt);
        case TheoremId::markov_deriv_lorentz: return check_markov_deriv_lorentz(f, t.n, opt);
        case TheoremId::markov_deriv_disk: return check_markov_deriv_disk(f, t.n, s.derivative, opt);
        case TheoremId::markov_monotone_realzeros: return check_markov_monotone_realzeros(f, t.n, opt);
        case TheoremId::lemma_endpoint: {
            const auto& [a, b] = *t.interval;
            // Restricting a B_d(−1,1) member to [a, b] keeps it in B_d(a, b).
            return check_lemma_endpoint(f, t.n, t.exponents->q, a, b, opt);
        }
        case TheoremId::lemma_supnorm: return check_lemma_supnorm(f, t.n, t.exponents->q, opt);
        case TheoremId::erdos: return check_erdos_factor(f, t.n, opt);
        case TheoremId::bernstein_monotone: return check_bernstein_monotone(f, t.n, opt);
    }
    throw ParseError("unknown theorem");
}

inline TrialRecord run_trial(const BatchConfig& cfg, std::size_t i) {
    TrialRecord r;
    r.spec = trial_spec(cfg, i);
    const ClassKind kind = cfg.generator_override.value_or(theorem_class(cfg.theorem));
    r.sample = sample(ClassTag{kind, r.spec.n}, r.spec.seed);
    CheckOptions opt = cfg.check;
    if (cfg.generator_override) opt.enforce_class = false;
    r.verdict = run_checker(cfg.theorem, r.sample, r.spec, opt);
    return r;
}

/// Samples, checks, and aggregates. Records are kept in trial order, so the
/// aggregate does not depend on the number of workers.
inline Report batch_verify(const BatchConfig& cfg) {
    if (cfg.trials == 0) throw ParseError("batch_verify: trials must be >= 1");
    if (cfg.n_lo < 1 || cfg.n_hi < cfg.n_lo) throw ParseError("batch_verify: bad n range");
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.theorem = cfg.theorem;
    rep.generator = cfg.generator_override.value_or(theorem_class(cfg.theorem));
    rep.expected_violation = cfg.generator_override.has_value();
    rep.records.resize(cfg.trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.trials || failed.load()) return;
            try {
                rep.records[i] = run_trial(cfg, i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    const unsigned jobs = std::max(1u, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    rep.trials = cfg.trials;
    double best_ratio = -1.0;
    double best_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const Verdict& v = rep.records[i].verdict;
        switch (v.outcome) {
            case Outcome::holds: ++rep.holds; break;
            case Outcome::fails:
                ++rep.failures;
                if (!rep.first_failure_trial) rep.first_failure_trial = i;
                break;
            case Outcome::indeterminate: ++rep.indeterminates; break;
        }
        if (v.equality) ++rep.equalities;
        if (v.near_equality) ++rep.near_equalities;
        if (v.exact) ++rep.exact_decisions;
        if (v.proof_chain_holds && !*v.proof_chain_holds) ++rep.chain_failures;
        const double normalized = v.factor > 0 ? v.ratio / v.factor : 0.0;
        if (normalized > best_ratio) {
            best_ratio = normalized;
            rep.max_ratio_trial = i;
        }
        if (v.equality_within < best_slack) {
            best_slack = v.equality_within;
            rep.min_slack_trial = i;
        }
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// A report passes when nothing failed and indeterminates stay within budget;
/// for negative controls it passes when a violation was found.
inline bool report_ok(const Report& r, double indeterminate_budget = 0.01) {
    if (r.expected_violation) return r.failures > 0;
    return r.failures == 0 && static_cast<double>(r.indeterminates) <= indeterminate_budget * static_cast<double>(r.trials);
}

}  // namespace lpoly
