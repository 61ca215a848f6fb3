#pragma once

// Lorentz (Bernstein-type) representations
//
//     f(x) = Σ_{j=0}^{d} c_j (b − x)^j (x − a)^{d−j}
//
// on an interval [a, b]. coeffs[j] always multiplies (b − x)^j (x − a)^{d−j}.
// The cone B_d(a, b) consists of the forms whose coefficients are all ≥ 0.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lpoly/power_poly.hpp"
#include "lpoly/sturm.hpp"

namespace lpoly {

class LorentzForm {
public:
    LorentzForm(Rational a, Rational b, std::vector<Rational> coeffs)
        : a_(std::move(a)), b_(std::move(b)), coeffs_(std::move(coeffs)) {
        if (!(a_ < b_)) throw BadNesting("Lorentz form needs a < b");
        if (coeffs_.empty()) throw DegreeTooSmall("Lorentz form needs at least one coefficient");
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_nonnegative() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c >= 0; });
    }

    bool same_interval(const LorentzForm& o) const { return a_ == o.a_ && b_ == o.b_; }

    friend bool operator==(const LorentzForm&, const LorentzForm&) = default;

    /// Direct evaluation in the representation; stable for nonnegative forms.
    double eval_double(double x) const {
        const double u = to_double(b_) - x;
        const double v = x - to_double(a_);
        const auto d = degree();
        double acc = 0.0;
        double up = 1.0;
        std::vector<double> vpow(d + 1, 1.0);
        for (unsigned k = 1; k <= d; ++k) vpow[k] = vpow[k - 1] * v;
        for (unsigned j = 0; j <= d; ++j) {
            acc += to_double(coeffs_[j]) * up * vpow[d - j];
            up *= u;
        }
        return acc;
    }

private:
    Rational a_;
    Rational b_;
    std::vector<Rational> coeffs_;
};

/// (b − x)^j (x − a)^{d−j} in the power basis.
inline PowerPoly lorentz_basis(unsigned j, unsigned d, const Rational& a, const Rational& b) {
    const PowerPoly bx{b, Rational(-1)};
    const PowerPoly xa{Rational(-a), Rational(1)};
    return bx.pow(j) * xa.pow(d - j);
}

inline PowerPoly to_power(const LorentzForm& L) {
    PowerPoly out;
    const auto d = L.degree();
    const PowerPoly bx{L.b(), Rational(-1)};
    const PowerPoly xa{Rational(-L.a()), Rational(1)};
    std::vector<PowerPoly> bx_pow{PowerPoly::constant(1)};
    std::vector<PowerPoly> xa_pow{PowerPoly::constant(1)};
    for (unsigned k = 1; k <= d; ++k) {
        bx_pow.push_back(bx_pow.back() * bx);
        xa_pow.push_back(xa_pow.back() * xa);
    }
    for (unsigned j = 0; j <= d; ++j) {
        if (L.coeffs()[j] == 0) continue;
        out = out + (bx_pow[j] * xa_pow[d - j]).scaled(L.coeffs()[j]);
    }
    return out;
}

/// Unique degree-d representation of f on [a, b], from the exact
/// (d+1)×(d+1) linear system between the two bases.
inline LorentzForm from_power(const PowerPoly& f, unsigned d, const Rational& a, const Rational& b) {
    if (!(a < b)) throw BadNesting("from_power needs a < b");
    if (f.degree() > static_cast<int>(d))
        throw DegreeTooSmall("from_power: degree " + std::to_string(d) + " below deg f = " +
                             std::to_string(f.degree()));
    const std::size_t n = d + 1;
    // Augmented matrix: row i = power x^i, column j = basis j.
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    {
        const PowerPoly bx{b, Rational(-1)};
        const PowerPoly xa{Rational(-a), Rational(1)};
        PowerPoly bxp = PowerPoly::constant(1);
        std::vector<PowerPoly> xa_pow{PowerPoly::constant(1)};
        for (unsigned k = 1; k <= d; ++k) xa_pow.push_back(xa_pow.back() * xa);
        for (unsigned j = 0; j <= d; ++j) {
            const PowerPoly basis = bxp * xa_pow[d - j];
            for (std::size_t i = 0; i < n; ++i) m[i][j] = basis.coeff(i);
            bxp = bxp * bx;
        }
    }
    for (std::size_t i = 0; i < n; ++i) m[i][n] = f.coeff(i);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        // The basis is a basis of P_d, so a pivot always exists.
        std::swap(m[col], m[piv]);
        const Rational inv = Rational(1) / m[col][col];
        for (std::size_t k = col; k <= n; ++k) m[col][k] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational t = m[r][col];
            for (std::size_t k = col; k <= n; ++k) m[r][k] -= t * m[col][k];
        }
    }
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = m[i][n];
    return LorentzForm(a, b, std::move(c));
}

/// Rewrites L at a higher degree using (b − x) + (x − a) = b − a.
inline LorentzForm elevate(const LorentzForm& L, unsigned d_new) {
    if (d_new < L.degree())
        throw DegreeDecrease("elevate: target degree " + std::to_string(d_new) + " below " +
                             std::to_string(L.degree()));
    std::vector<Rational> c = L.coeffs();
    const Rational inv_len = Rational(1) / (L.b() - L.a());
    for (unsigned d = L.degree(); d < d_new; ++d) {
        std::vector<Rational> next(c.size() + 1);
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (j < c.size()) next[j] += c[j];
            if (j > 0) next[j] += c[j - 1];
            next[j] *= inv_len;
        }
        c = std::move(next);
    }
    return LorentzForm(L.a(), L.b(), std::move(c));
}

namespace detail {

// Coefficient vectors of homogeneous forms in (e − x), (x − c):
// entry k multiplies (e − x)^k (x − c)^{deg−k}.
inline std::vector<Rational> convolve(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    std::vector<Rational> out(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    }
    return out;
}

}  // namespace detail

/// Re-expresses L on a subinterval [c, e] ⊂ [a, b] at the same degree, via
///   x − a = ((e − a)/(e − c))(x − c) + ((c − a)/(e − c))(e − x)
///   b − x = ((b − e)/(e − c))(x − c) + ((b − c)/(e − c))(e − x).
/// All substitution weights are ≥ 0, so nonnegative forms stay nonnegative.
inline LorentzForm restrict_interval(const LorentzForm& L, const Rational& c, const Rational& e) {
    if (!(L.a() <= c && c < e && e <= L.b())) throw BadNesting("restrict_interval: [c,e] must lie inside [a,b]");
    const Rational len = e - c;
    const std::vector<Rational> xa{Rational((e - L.a()) / len), Rational((c - L.a()) / len)};
    const std::vector<Rational> bx{Rational((L.b() - e) / len), Rational((L.b() - c) / len)};
    const auto d = L.degree();
    std::vector<std::vector<Rational>> xa_pow{{Rational(1)}};
    std::vector<std::vector<Rational>> bx_pow{{Rational(1)}};
    for (unsigned k = 1; k <= d; ++k) {
        xa_pow.push_back(detail::convolve(xa_pow.back(), xa));
        bx_pow.push_back(detail::convolve(bx_pow.back(), bx));
    }
    std::vector<Rational> out(d + 1);
    for (unsigned j = 0; j <= d; ++j) {
        if (L.coeffs()[j] == 0) continue;
        const auto term = detail::convolve(bx_pow[j], xa_pow[d - j]);
        for (std::size_t k = 0; k <= d; ++k) out[k] += L.coeffs()[j] * term[k];
    }
    return LorentzForm(c, e, std::move(out));
}

inline LorentzForm mul_lorentz(const LorentzForm& L1, const LorentzForm& L2) {
    if (!L1.same_interval(L2)) throw IntervalMismatch("mul_lorentz: forms live on different intervals");
    return LorentzForm(L1.a(), L1.b(), detail::convolve(L1.coeffs(), L2.coeffs()));
}

/// A nonnegative form on [−1, 1] together with the sign s such that
/// to_power(form) = s · f.
struct SignedLorentzForm {
    LorentzForm form;
    int sign = 1;
};

/// Nonnegative degree-deg(f) form on [−1, 1] for ±f, built factor by factor from
///   x − α = ((1 − α)/2)(x + 1) − ((α + 1)/2)(1 − x)
///   (x − α)(x − ᾱ) = ¼|1 + α|²(1 − x)² + ½(|α|² − 1)(1 − x²) + ¼|1 − α|²(x + 1)².
inline SignedLorentzForm lorentz_from_factors(const Factorization& fz) {
    if (fz.leading == 0) throw ZeroPolynomial("lorentz_from_factors: zero leading coefficient");
    const Rational a = -1;
    const Rational b = 1;
    int s = sign(fz.leading);
    LorentzForm acc(a, b, {abs_r(fz.leading)});
    for (const auto& r : fz.real_roots) {
        const Rational& alpha = r.value;
        std::vector<Rational> lin;
        if (alpha <= -1) {
            lin = {Rational((1 - alpha) / 2), Rational(-(alpha + 1) / 2)};
        } else if (alpha >= 1) {
            // x − α = −(α − x)
            lin = {Rational((alpha - 1) / 2), Rational((alpha + 1) / 2)};
            if (r.multiplicity % 2 == 1) s = -s;
        } else {
            throw ZeroInsideDisk("real root " + to_string(alpha) + " lies inside (-1,1)");
        }
        const LorentzForm f1(a, b, std::move(lin));
        for (unsigned k = 0; k < r.multiplicity; ++k) acc = mul_lorentz(acc, f1);
    }
    for (const auto& c : fz.complex_pairs) {
        const Rational mod2 = c.modulus_squared();
        if (mod2 < 1)
            throw ZeroInsideDisk("complex root " + to_string(c.re) + "+" + to_string(c.im) + "i lies inside the unit disk");
        const Rational one_minus = (1 - c.re) * (1 - c.re) + c.im * c.im;  // |1 − α|²
        const Rational one_plus = (1 + c.re) * (1 + c.re) + c.im * c.im;   // |1 + α|²
        const LorentzForm f2(a, b, {Rational(one_minus / 4), Rational((mod2 - 1) / 2), Rational(one_plus / 4)});
        for (unsigned k = 0; k < c.multiplicity; ++k) acc = mul_lorentz(acc, f2);
    }
    return {std::move(acc), s};
}

struct LorentzDegreeResult {
    enum class Kind { finite, infinite, unknown };

    Kind kind = Kind::unknown;
    unsigned degree = 0;  // d(f) when finite; the cap when unknown
    int sign = 1;         // f was normalized to sign·f > 0 inside the interval
    std::optional<LorentzForm> form;

    static LorentzDegreeResult infinite() { return {Kind::infinite, 0, 1, std::nullopt}; }

    bool is_finite() const { return kind == Kind::finite; }
};

inline std::string to_string(const LorentzDegreeResult& r) {
    switch (r.kind) {
        case LorentzDegreeResult::Kind::finite: return "finite " + std::to_string(r.degree);
        case LorentzDegreeResult::Kind::infinite: return "infinite";
        case LorentzDegreeResult::Kind::unknown: return "unknown (cap " + std::to_string(r.degree) + ")";
    }
    return "unknown";
}

/// ceil(10·n·ε⁻²) when an ellipse parameter is supplied, 64·n otherwise.
inline unsigned default_degree_cap(unsigned n, const std::optional<Rational>& eps = std::nullopt) {
    if (eps) return static_cast<unsigned>(ceil_r(Rational(10 * n) / (*eps * *eps)).get_ui());
    return 64 * n;
}

/// Minimal d with sign·f ∈ B_d(a, b), scanning upward by degree elevation.
inline LorentzDegreeResult lorentz_degree(const PowerPoly& f, const Rational& a, const Rational& b, unsigned cap) {
    if (f.is_zero()) throw ZeroPolynomial("lorentz_degree: zero polynomial");
    if (!(a < b)) throw BadNesting("lorentz_degree needs a < b");
    const auto n = static_cast<unsigned>(f.degree());
    if (cap < n) throw DegreeTooSmall("lorentz_degree: cap below deg f");
    if (count_roots_in(f, a, b) > 0) return LorentzDegreeResult::infinite();

    // No root inside, so f(midpoint) ≠ 0 fixes the sign.
    const int s = sign(f(Rational((a + b) / 2)));
    LorentzForm L = from_power(f.scaled(s), n, a, b);
    for (unsigned d = n;; ++d) {
        if (L.is_nonnegative()) return {LorentzDegreeResult::Kind::finite, d, s, L};
        if (d == cap) break;
        L = elevate(L, d + 1);
    }
    return {LorentzDegreeResult::Kind::unknown, cap, s, std::nullopt};
}

inline LorentzDegreeResult lorentz_degree(const PowerPoly& f, unsigned cap) { return lorentz_degree(f, -1, 1, cap); }

}  // namespace lpoly
