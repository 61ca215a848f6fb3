#pragma once

// Exact real-root counting and isolation via Sturm sequences over the
// square-free factors of a polynomial (Yun decomposition).

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "lpoly/power_poly.hpp"

namespace lpoly {

/// An open interval with optional infinite ends (nullopt = ∓∞).
struct OpenInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    static OpenInterval whole_line() { return {}; }
    static OpenInterval between(Rational a, Rational b) { return {std::move(a), std::move(b)}; }
};

/// Square-free factor with the multiplicity its roots carry in the original polynomial.
struct SquareFreeFactor {
    PowerPoly poly;
    unsigned multiplicity = 1;
};

/// Yun's algorithm: f = c · Π factor_i^i with monic, pairwise coprime, square-free factors.
inline std::vector<SquareFreeFactor> square_free_decomposition(const PowerPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("square_free_decomposition of the zero polynomial");
    std::vector<SquareFreeFactor> out;
    if (f.degree() == 0) return out;
    const PowerPoly df = derivative(f);
    const PowerPoly a0 = gcd(f, df);
    PowerPoly b = divmod(f, a0).first;
    PowerPoly c = divmod(df, a0).first;
    PowerPoly d = c - derivative(b);
    unsigned i = 1;
    while (b.degree() > 0) {
        PowerPoly a = gcd(b, d);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - derivative(b);
        if (a.degree() > 0) out.push_back({monic(a), i});
        ++i;
    }
    return out;
}

inline PowerPoly square_free_part(const PowerPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial("square_free_part of the zero polynomial");
    return monic(divmod(f, gcd(f, derivative(f))).first);
}

/// Sturm sequence of a square-free polynomial; members are rescaled by
/// positive constants, which leaves every sign pattern unchanged.
class SturmChain {
public:
    explicit SturmChain(const PowerPoly& g) {
        if (g.is_zero()) throw ZeroPolynomial("Sturm chain of the zero polynomial");
        chain_.push_back(normalize(g));
        if (g.degree() == 0) return;
        chain_.push_back(normalize(derivative(g)));
        while (chain_.back().degree() > 0) {
            PowerPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero()) break;
            chain_.push_back(normalize(-r));
        }
    }

    const PowerPoly& base() const { return chain_.front(); }

    unsigned variations(const Rational& x) const {
        unsigned v = 0;
        int prev = 0;
        for (const auto& p : chain_) {
            const int s = sign(p(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Variations at +∞ (at_plus) or −∞.
    unsigned variations_at_infinity(bool at_plus) const {
        unsigned v = 0;
        int prev = 0;
        for (const auto& p : chain_) {
            int s = sign(p.leading());
            if (!at_plus && p.degree() % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Distinct roots strictly inside the interval.
    unsigned count(const OpenInterval& iv) const {
        const unsigned vlo = iv.lo ? variations(*iv.lo) : variations_at_infinity(false);
        const unsigned vhi = iv.hi ? variations(*iv.hi) : variations_at_infinity(true);
        // vlo − vhi counts roots in (lo, hi].
        unsigned n = vlo >= vhi ? vlo - vhi : 0;
        if (iv.hi && n > 0 && base()(*iv.hi) == 0) --n;
        return n;
    }

private:
    static PowerPoly normalize(const PowerPoly& p) {
        const Rational lead = p.leading();
        return p.scaled(Rational(1) / abs_r(lead));
    }

    std::vector<PowerPoly> chain_;
};

/// Distinct real roots of f strictly inside the interval.
inline unsigned count_roots_in(const PowerPoly& f, const OpenInterval& iv) {
    if (f.is_zero()) throw ZeroPolynomial("count_roots_in: zero polynomial");
    if (f.degree() == 0) return 0;
    return SturmChain(square_free_part(f)).count(iv);
}

inline unsigned count_roots_in(const PowerPoly& f, const Rational& lo, const Rational& hi) {
    return count_roots_in(f, OpenInterval::between(lo, hi));
}

/// Real roots counted with multiplicity strictly inside the interval.
inline unsigned count_roots_with_multiplicity(const PowerPoly& f, const OpenInterval& iv) {
    unsigned total = 0;
    for (const auto& sf : square_free_decomposition(f)) total += sf.multiplicity * SturmChain(sf.poly).count(iv);
    return total;
}

/// Strict upper bound on the modulus of every root (Cauchy).
inline Rational cauchy_bound(const PowerPoly& f) {
    Rational m = 0;
    const Rational lead = abs_r(f.leading());
    for (int k = 0; k < f.degree(); ++k) m = std::max(m, Rational(abs_r(f.coeff(static_cast<std::size_t>(k))) / lead));
    return m + 1;
}

/// An interval [lo, hi] holding exactly one distinct real root of `factor`.
struct RootBracket {
    Rational lo;
    Rational hi;
    unsigned multiplicity = 1;
    std::optional<Rational> exact;  // set when the root is known to be rational
    std::shared_ptr<const PowerPoly> factor;

    bool odd_multiplicity() const { return multiplicity % 2 == 1; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return exact ? *exact : Rational((lo + hi) / 2); }

    /// Halves the bracket; detects rational roots exactly.
    void refine_once() {
        if (exact) {
            lo = (lo + *exact) / 2;
            hi = (hi + *exact) / 2;
            return;
        }
        const Rational m = (lo + hi) / 2;
        const PowerPoly& g = *factor;
        const int sm = sign(g(m));
        if (sm == 0) {
            exact = m;
            lo = (lo + m) / 2;
            hi = (hi + m) / 2;
            return;
        }
        if (sign(g(lo)) == sm) lo = m;
        else hi = m;
        // Catch non-dyadic rational roots.
        const Rational r = simplest_between(lo, hi);
        if (r != lo && r != hi && g(r) == 0) exact = r;
    }

    void refine_to(const Rational& width_target) {
        while (hi - lo > width_target) refine_once();
    }
};

namespace detail {

inline void isolate_rec(const SturmChain& chain, const std::shared_ptr<const PowerPoly>& g, unsigned mult,
                        const Rational& l, const Rational& h, unsigned count, std::vector<RootBracket>& out) {
    if (count == 0) return;
    if (count == 1) {
        RootBracket b{l, h, mult, std::nullopt, g};
        // Move the ends off any root so sign bisection is valid.
        for (Rational step = (h - l) / 4; (*g)(b.lo) == 0; step /= 2) {
            if (chain.count(OpenInterval::between(b.lo + step, h)) == 1) b.lo += step;
        }
        for (Rational step = (b.hi - b.lo) / 4; (*g)(b.hi) == 0; step /= 2) {
            if (chain.count(OpenInterval::between(b.lo, b.hi - step)) == 1) b.hi -= step;
        }
        out.push_back(std::move(b));
        return;
    }
    const Rational m = (l + h) / 2;
    const unsigned left = chain.count(OpenInterval::between(l, m));
    isolate_rec(chain, g, mult, l, m, left, out);
    if ((*g)(m) == 0) {
        Rational delta = (h - l) / 4;
        while (chain.count(OpenInterval::between(m - delta, m + delta)) != 1) delta /= 2;
        out.push_back(RootBracket{m - delta, m + delta, mult, m, g});
    }
    const unsigned right = chain.count(OpenInterval::between(m, h));
    isolate_rec(chain, g, mult, m, h, right, out);
}

}  // namespace detail

/// Isolating brackets for the distinct real roots of f strictly inside the
/// interval, sorted and pairwise disjoint, each tagged with its multiplicity.
inline std::vector<RootBracket> sturm_isolate(const PowerPoly& f,
                                              const OpenInterval& iv = OpenInterval::whole_line()) {
    if (f.is_zero()) throw ZeroPolynomial("sturm_isolate: zero polynomial");
    std::vector<RootBracket> out;
    for (const auto& sf : square_free_decomposition(f)) {
        auto g = std::make_shared<const PowerPoly>(sf.poly);
        SturmChain chain(*g);
        const Rational bound = cauchy_bound(*g);
        Rational lo = iv.lo ? *iv.lo : Rational(-bound);
        Rational hi = iv.hi ? *iv.hi : bound;
        if (lo >= hi) continue;
        const unsigned n = chain.count(OpenInterval::between(lo, hi));
        detail::isolate_rec(chain, g, sf.multiplicity, lo, hi, n, out);
    }
    auto by_lo = [](const RootBracket& a, const RootBracket& b) { return a.lo < b.lo; };
    std::sort(out.begin(), out.end(), by_lo);
    // Roots of different square-free factors are distinct, so shrinking separates them.
    for (bool overlap = true; overlap;) {
        overlap = false;
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i - 1].hi >= out[i].lo) {
                out[i - 1].refine_once();
                out[i].refine_once();
                overlap = true;
            }
        }
        if (overlap) std::sort(out.begin(), out.end(), by_lo);
    }
    return out;
}

inline std::vector<RootBracket> sturm_isolate(const PowerPoly& f, const Rational& lo, const Rational& hi) {
    return sturm_isolate(f, OpenInterval::between(lo, hi));
}

}  // namespace lpoly
