#pragma once

// Sup and L_p norms on an interval. Integer exponents stay in exact rational
// arithmetic (up to the final p-th root); other exponents use adaptive
// Gauss–Legendre quadrature after splitting at sign changes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lpoly/lorentz_form.hpp"
#include "lpoly/quadrature.hpp"
#include "lpoly/sturm.hpp"

namespace lpoly {

enum class NormMode {
    exact,       // value is a known rational
    enclosure,   // rigorous rational bounds [lower, upper]
    quadrature,  // floating estimate with an estimated error bound
};

inline std::string to_string(NormMode m) {
    switch (m) {
        case NormMode::exact: return "exact";
        case NormMode::enclosure: return "enclosure";
        case NormMode::quadrature: return "quadrature";
    }
    return "?";
}

/// A nonnegative real quantity with provenance. For exact and enclosure
/// modes [lower, upper] is rigorous; for quadrature it is value ± error_bound.
struct NormValue {
    double value = 0.0;
    NormMode mode = NormMode::exact;
    double error_bound = 0.0;
    Rational lower;
    Rational upper;
    std::optional<Rational> argmax;

    bool is_exact() const { return mode == NormMode::exact; }

    static NormValue exact(const Rational& v) {
        NormValue n;
        n.value = to_double(v);
        n.lower = v;
        n.upper = v;
        return n;
    }

    static NormValue bounded(const Rational& lo, const Rational& hi, double estimate) {
        if (lo == hi) return exact(lo);
        NormValue n;
        n.value = estimate;
        n.mode = NormMode::enclosure;
        n.lower = lo;
        n.upper = hi;
        n.error_bound = to_double(hi - lo);
        return n;
    }

    static NormValue approximate(double v, double err) {
        NormValue n;
        n.value = v;
        n.mode = NormMode::quadrature;
        n.error_bound = err;
        n.lower = from_double(std::max(0.0, v - err));
        n.upper = from_double(v + err);
        return n;
    }
};

/// Norm exponent: a positive rational or ∞.
struct Exponent {
    std::optional<Rational> finite;

    static Exponent infinity() { return {}; }
    static Exponent of(const Rational& p) { return {p}; }

    bool is_infinite() const { return !finite.has_value(); }
    bool is_integer() const { return finite && finite->get_den() == 1; }
    unsigned as_unsigned() const { return static_cast<unsigned>(finite->get_num().get_ui()); }
    double as_double() const { return finite ? to_double(*finite) : std::numeric_limits<double>::infinity(); }

    friend bool operator==(const Exponent&, const Exponent&) = default;
};

inline std::string to_string(const Exponent& p) { return p.finite ? to_string(*p.finite) : "inf"; }

inline Exponent parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return Exponent::infinity();
    const Rational v = parse_rational(s);
    if (v <= 0) throw NonPositiveP("norm exponent must be positive, got " + s);
    return Exponent::of(v);
}

inline Rational integral_exact(const PowerPoly& f, const Rational& a, const Rational& b) {
    const PowerPoly F = antiderivative(f);
    return F(b) - F(a);
}

namespace detail {

// Σ |c_k| R^k for the polynomial g: bounds |g| on [−R, R].
inline Rational abs_bound(const PowerPoly& g, const Rational& R) {
    Rational acc = 0;
    for (auto it = g.coeffs().rbegin(); it != g.coeffs().rend(); ++it) acc = acc * R + abs_r(*it);
    return acc;
}

struct Candidate {
    Rational x;  // exact point, or bracket midpoint
    Rational lower;
    Rational upper;
    bool exact = true;
};

}  // namespace detail

struct SupNormOptions {
    double rel_tol = 1e-15;
    // Hard cap on bisection steps per critical point.
    int max_steps = 400;
};

namespace detail {

/// |f| ≤ M on [a, b], given |f(a)|, |f(b)| ≤ M: neither M − f nor M + f changes sign inside.
inline bool bounded_by(const PowerPoly& f, const Rational& M, const Rational& a, const Rational& b) {
    for (const PowerPoly& g : {PowerPoly::constant(M) - f, PowerPoly::constant(M) + f}) {
        if (g.is_zero()) continue;
        for (const auto& br : sturm_isolate(g, a, b))
            if (br.odd_multiplicity()) return false;
    }
    return true;
}

}  // namespace detail

/// max_{[a,b]} |f| over the endpoints and the critical points in (a, b).
inline NormValue sup_norm(const PowerPoly& f, const Rational& a, const Rational& b, const SupNormOptions& opt = {}) {
    std::vector<detail::Candidate> cands;
    for (const Rational& x : {a, b}) {
        const Rational v = abs_r(f(x));
        cands.push_back({x, v, v, true});
    }
    Rational best_exact = std::max(cands[0].lower, cands[1].lower);
    const PowerPoly df = derivative(f);
    if (f.degree() >= 2) {
        const PowerPoly d2 = derivative(df);
        const Rational tol_rel = from_double(opt.rel_tol);
        for (auto& br : sturm_isolate(df, a, b)) {
            // Make sure the bracket sits inside [a, b].
            while (br.lo < a || br.hi > b) br.refine_once();
            for (int step = 0;; ++step) {
                if (br.exact) {
                    const Rational v = abs_r(f(*br.exact));
                    cands.push_back({*br.exact, v, v, true});
                    best_exact = std::max(best_exact, v);
                    break;
                }
                // f'(r) = 0 inside the bracket, so |f(r) − f(m)| ≤ max|f''|·(w/2)²/2.
                const Rational m = (br.lo + br.hi) / 2;
                const Rational w = br.hi - br.lo;
                const Rational R = std::max(abs_r(br.lo), abs_r(br.hi));
                const Rational delta = detail::abs_bound(d2, R) * w * w / 8;
                const Rational fm = abs_r(f(m));
                Rational lo = fm - delta;
                if (lo < 0) lo = 0;
                const Rational hi = fm + delta;
                const Rational scale = std::max(best_exact, fm);
                if (hi <= best_exact || delta <= tol_rel * scale || step >= opt.max_steps) {
                    cands.push_back({m, lo, hi, false});
                    break;
                }
                br.refine_once();
            }
        }
    }
    // Best = largest lower bound; ties go to the smallest point.
    std::size_t best = 0;
    Rational upper = cands[0].upper;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        if (cands[i].lower > cands[best].lower || (cands[i].lower == cands[best].lower && cands[i].x < cands[best].x))
            best = i;
        upper = std::max(upper, cands[i].upper);
    }
    const Rational lower = cands[best].lower;
    if (cands[best].exact && upper > lower && detail::bounded_by(f, lower, a, b)) upper = lower;
    NormValue out;
    if (cands[best].exact && upper == lower) {
        out = NormValue::exact(lower);
    } else {
        out = NormValue::bounded(lower, upper, to_double((lower + upper) / 2));
    }
    out.argmax = cands[best].x;
    return out;
}

inline NormValue sup_norm(const PowerPoly& f) { return sup_norm(f, -1, 1); }

/// Rigorous enclosure of ∫_a^b |f|^p for integer p ≥ 1.
struct IntegralEnclosure {
    Rational lower;
    Rational upper;
    bool is_exact() const { return lower == upper; }
};

inline IntegralEnclosure power_integral(const PowerPoly& f, unsigned p, const Rational& a, const Rational& b,
                                        double rel_tol = 1e-17) {
    if (p == 0) throw NonPositiveP("power_integral needs p >= 1");
    const PowerPoly fp = f.pow(p);
    const PowerPoly F = antiderivative(fp);
    if (f.is_zero()) return {0, 0};
    if (p % 2 == 0) {
        const Rational v = F(b) - F(a);
        return {v, v};
    }
    auto brackets = sturm_isolate(f, a, b);
    std::vector<std::size_t> odd;
    for (std::size_t i = 0; i < brackets.size(); ++i)
        if (brackets[i].odd_multiplicity()) odd.push_back(i);
    if (odd.empty()) {
        const Rational v = abs_r(F(b) - F(a));
        return {v, v};
    }
    // Keep brackets strictly inside (a, b) so every gap has an interior point.
    for (auto& br : brackets)
        while (br.lo <= a || br.hi >= b) br.refine_once();
    auto gap_sign = [&](std::size_t k) {  // sign of f right after bracket k−1 (k = 0: after a)
        const Rational l = k == 0 ? a : brackets[k - 1].hi;
        const Rational h = k == brackets.size() ? b : brackets[k].lo;
        return sign(f(Rational((l + h) / 2)));
    };
    // ∫|f|^p = −s_0 F(a) + s_last F(b) + Σ 2 s_{before r} F(r) over sign-change roots r.
    const int s0 = gap_sign(0);
    const int s_last = gap_sign(brackets.size());
    const Rational base = s_last * F(b) - s0 * F(a);
    Rational lower = base;
    Rational upper = base;
    const PowerPoly df = derivative(f);
    const Rational scale = abs_r(F(b) - F(a)) + 1;
    const Rational tol = from_double(rel_tol) * scale;
    for (std::size_t idx : odd) {
        auto& br = brackets[idx];
        const int before = gap_sign(idx);
        for (;;) {
            if (br.exact) {
                const Rational v = 2 * before * F(*br.exact);
                lower += v;
                upper += v;
                break;
            }
            // |F(r) − F(m)| ≤ (w/2)·max|f|^p on the bracket, and |f| ≤ max|f'|·w there.
            const Rational m = (br.lo + br.hi) / 2;
            const Rational w = br.hi - br.lo;
            const Rational R = std::max(abs_r(br.lo), abs_r(br.hi));
            const Rational delta = w / 2 * pow_r(detail::abs_bound(df, R) * w, p);
            if (delta * 2 <= tol) {
                const Rational v = 2 * before * F(m);
                lower += v - 2 * delta;
                upper += v + 2 * delta;
                break;
            }
            br.refine_once();
        }
    }
    if (lower < 0) lower = 0;
    return {lower, upper};
}

struct LpOptions {
    double rel_tol = 1e-12;
    bool force_quadrature = false;
};

namespace detail {

inline NormValue root_of(const IntegralEnclosure& I, unsigned p) {
    const double inv = 1.0 / p;
    const double v = std::pow(to_double((I.lower + I.upper) / 2), inv);
    if (p == 1) return NormValue::bounded(I.lower, I.upper, v);
    // p-th root of a rational: floating, with a certified ulp-level bound.
    double lo = std::pow(to_double(I.lower), inv);
    double hi = std::pow(to_double(I.upper), inv);
    for (int k = 0; k < 2; ++k) {
        lo = std::nextafter(lo, 0.0);
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    NormValue n;
    n.value = v;
    n.mode = I.is_exact() ? NormMode::exact : NormMode::enclosure;
    n.lower = from_double(std::max(lo, 0.0));
    n.upper = from_double(hi);
    n.error_bound = hi - lo;
    if (n.mode == NormMode::exact) {
        // The rational p-th power is exact; the root itself is a rounded float.
        n.mode = NormMode::enclosure;
    }
    return n;
}

// Points in (a, b) where f changes sign, as doubles.
inline std::vector<double> sign_change_points(const PowerPoly& f, const Rational& a, const Rational& b) {
    std::vector<double> out;
    if (f.degree() < 1) return out;
    for (auto& br : sturm_isolate(f, a, b)) {
        if (!br.odd_multiplicity()) continue;
        const Rational target = abs_r(br.midpoint()) * make_rational(1, 1L << 55) + make_rational(1, 1L << 60);
        br.refine_to(target);
        out.push_back(to_double(br.midpoint()));
    }
    return out;
}

/// |f(x)| evaluated from f expanded around the nearest break point, which keeps
/// the integrand accurate next to its zeros.
inline std::function<double(double)> local_abs(const PowerPoly& f, const std::vector<double>& breaks) {
    std::vector<PowerPoly> local;
    for (double x : breaks) local.push_back(f.taylor_shift(from_double(x)));
    return [breaks, local = std::move(local)](double x) {
        auto k = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
        if (k == breaks.size() || (k > 0 && x - breaks[k - 1] <= breaks[k] - x)) --k;
        return std::abs(local[k].eval_double(x - breaks[k]));
    };
}

inline NormValue quadrature_norm(const std::function<double(double)>& absf, const std::vector<double>& breaks, double p,
                                 const LpOptions& opt) {
    double total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto r = integrate_gl([&](double x) { return std::pow(absf(x), p); }, breaks[i], breaks[i + 1], opt.rel_tol);
        total += r.value;
        err += r.error_bound;
    }
    // Floating-point evaluation noise floor.
    err += 64 * std::numeric_limits<double>::epsilon() * std::abs(total);
    const double inv = 1.0 / p;
    const double v = std::pow(total, inv);
    const double vlo = std::pow(std::max(total - err, 0.0), inv);
    const double vhi = std::pow(total + err, inv);
    return NormValue::approximate(v, std::max(v - vlo, vhi - v));
}

}  // namespace detail

/// ∫|f|^p by quadrature (no exact path); used for non-integer p and as a cross-check.
inline NormValue quadrature_power_integral(const PowerPoly& f, double p, const Rational& a, const Rational& b,
                                           double rel_tol = 1e-12) {
    std::vector<double> breaks{to_double(a)};
    for (double x : detail::sign_change_points(f, a, b)) breaks.push_back(x);
    breaks.push_back(to_double(b));
    const auto absf = detail::local_abs(f, breaks);
    double total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        auto r = integrate_gl([&](double x) { return std::pow(absf(x), p); }, breaks[i], breaks[i + 1], rel_tol);
        total += r.value;
        err += r.error_bound;
    }
    err += 64 * std::numeric_limits<double>::epsilon() * std::abs(total);
    return NormValue::approximate(total, err);
}

/// (∫_a^b |f|^p)^{1/p}; p = ∞ gives the sup norm.
inline NormValue lp_norm(const PowerPoly& f, const Exponent& p, const Rational& a, const Rational& b,
                         const LpOptions& opt = {}) {
    if (p.finite && *p.finite <= 0) throw NonPositiveP("lp_norm needs p > 0");
    if (p.is_infinite()) return sup_norm(f, a, b);
    if (f.is_zero()) return NormValue::exact(0);
    if (p.is_integer() && !opt.force_quadrature) {
        const unsigned pi = p.as_unsigned();
        const IntegralEnclosure I = power_integral(f, pi, a, b);
        if (pi == 1) return NormValue::bounded(I.lower, I.upper, to_double((I.lower + I.upper) / 2));
        return detail::root_of(I, pi);
    }
    std::vector<double> breaks{to_double(a)};
    for (double x : detail::sign_change_points(f, a, b)) breaks.push_back(x);
    breaks.push_back(to_double(b));
    return detail::quadrature_norm(detail::local_abs(f, breaks), breaks, p.as_double(), opt);
}

inline NormValue lp_norm(const PowerPoly& f, const Exponent& p, const LpOptions& opt = {}) {
    return lp_norm(f, p, -1, 1, opt);
}

/// L_p norm of a nonnegative Lorentz form on its own interval; no sign
/// splitting, and quadrature evaluates in the representation itself.
inline NormValue lp_norm(const LorentzForm& L, const Exponent& p, const LpOptions& opt = {}) {
    if (p.finite && *p.finite <= 0) throw NonPositiveP("lp_norm needs p > 0");
    if (p.is_infinite() || (p.is_integer() && !opt.force_quadrature)) return lp_norm(to_power(L), p, L.a(), L.b(), opt);
    std::vector<double> breaks{to_double(L.a()), to_double(L.b())};
    return detail::quadrature_norm([&](double x) { return std::abs(L.eval_double(x)); }, breaks, p.as_double(), opt);
}

}  // namespace lpoly
