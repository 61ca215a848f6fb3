#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpoly/rational.hpp"

namespace lpoly {

struct RealRoot {
    Rational value;
    unsigned multiplicity = 1;

    friend bool operator==(const RealRoot&, const RealRoot&) = default;
};

/// A conjugate pair re ± i·im, im > 0.
struct ComplexPair {
    Rational re;
    Rational im;
    unsigned multiplicity = 1;

    Rational modulus_squared() const { return re * re + im * im; }

    friend bool operator==(const ComplexPair&, const ComplexPair&) = default;
};

/// Constructive description leading · Π(x − r) · Π((x − α)(x − ᾱ)).
struct Factorization {
    std::vector<RealRoot> real_roots;
    std::vector<ComplexPair> complex_pairs;
    Rational leading = 1;

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& r : real_roots) d += r.multiplicity;
        for (const auto& c : complex_pairs) d += 2 * c.multiplicity;
        return d;
    }
};

/// Real polynomial in the power basis with exact rational coefficients,
/// stored in ascending degree order with no trailing zeros.
class PowerPoly {
public:
    PowerPoly() = default;

    explicit PowerPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    PowerPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

    static PowerPoly constant(const Rational& c) { return PowerPoly(std::vector<Rational>{c}); }

    static PowerPoly monomial(unsigned k, const Rational& c = 1) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return PowerPoly(std::move(v));
    }

    /// (x − root)
    static PowerPoly linear(const Rational& root) {
        return PowerPoly(std::vector<Rational>{Rational(-root), Rational(1)});
    }

    /// Degree, or −1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    const std::optional<Factorization>& factors() const { return factors_; }

    PowerPoly& with_factors(Factorization f) {
        factors_ = std::move(f);
        return *this;
    }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }

    friend bool operator==(const PowerPoly& f, const PowerPoly& g) { return f.coeffs_ == g.coeffs_; }

    friend PowerPoly operator+(const PowerPoly& f, const PowerPoly& g) {
        std::vector<Rational> out(std::max(f.coeffs_.size(), g.coeffs_.size()));
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) out[i] += f.coeffs_[i];
        for (std::size_t i = 0; i < g.coeffs_.size(); ++i) out[i] += g.coeffs_[i];
        return PowerPoly(std::move(out));
    }

    friend PowerPoly operator-(const PowerPoly& f) {
        PowerPoly out = f.scaled(-1);
        return out;
    }

    friend PowerPoly operator-(const PowerPoly& f, const PowerPoly& g) { return f + (-g); }

    friend PowerPoly operator*(const PowerPoly& f, const PowerPoly& g) {
        if (f.is_zero() || g.is_zero()) return {};
        std::vector<Rational> out(f.coeffs_.size() + g.coeffs_.size() - 1);
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (f.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < g.coeffs_.size(); ++j) out[i + j] += f.coeffs_[i] * g.coeffs_[j];
        }
        return PowerPoly(std::move(out));
    }

    /// c·f; a factor list, when present, is carried along.
    PowerPoly scaled(const Rational& c) const {
        if (c == 0) return {};
        std::vector<Rational> out(coeffs_);
        for (auto& v : out) v *= c;
        PowerPoly p(std::move(out));
        if (factors_) {
            Factorization fz = *factors_;
            fz.leading *= c;
            p.factors_ = std::move(fz);
        }
        return p;
    }

    PowerPoly pow(unsigned k) const {
        PowerPoly out = constant(1);
        PowerPoly base = *this;
        while (k) {
            if (k & 1u) out = out * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return out;
    }

    /// f(x) ↦ f(x + shift)
    PowerPoly taylor_shift(const Rational& shift) const {
        std::vector<Rational> c(coeffs_);
        const auto n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) c[j - 1] += shift * c[j];
        return PowerPoly(std::move(c));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
    std::optional<Factorization> factors_;
};

inline Rational eval(const PowerPoly& f, const Rational& x) { return f(x); }

inline PowerPoly derivative(const PowerPoly& f) {
    const auto& c = f.coeffs();
    if (c.size() <= 1) return {};
    std::vector<Rational> out(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = c[k] * static_cast<unsigned long>(k);
    return PowerPoly(std::move(out));
}

/// Antiderivative with zero constant term.
inline PowerPoly antiderivative(const PowerPoly& f) {
    const auto& c = f.coeffs();
    std::vector<Rational> out(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<unsigned long>(k + 1);
    return PowerPoly(std::move(out));
}

inline PowerPoly expand(const Factorization& fz) {
    PowerPoly out = PowerPoly::constant(fz.leading);
    for (const auto& r : fz.real_roots) out = out * PowerPoly::linear(r.value).pow(r.multiplicity);
    for (const auto& c : fz.complex_pairs) {
        // x² − 2·re·x + |α|²
        PowerPoly q{c.modulus_squared(), Rational(-2 * c.re), Rational(1)};
        out = out * q.pow(c.multiplicity);
    }
    return out;
}

/// leading · Π(x − r) · Π((x − α)(x − ᾱ)), remembering the factor list.
inline PowerPoly from_factors(std::span<const RealRoot> real_roots, std::span<const ComplexPair> complex_pairs,
                              const Rational& leading) {
    if (leading == 0) throw ZeroPolynomial("from_factors: leading coefficient is zero");
    Factorization fz;
    fz.real_roots.assign(real_roots.begin(), real_roots.end());
    fz.complex_pairs.assign(complex_pairs.begin(), complex_pairs.end());
    for (auto& c : fz.complex_pairs) c.im = abs_r(c.im);
    fz.leading = leading;
    PowerPoly p = expand(fz);
    p.with_factors(std::move(fz));
    return p;
}

inline PowerPoly from_factors(const Factorization& fz) {
    return from_factors(fz.real_roots, fz.complex_pairs, fz.leading);
}

inline PowerPoly chebyshev_T(unsigned n) {
    PowerPoly prev = PowerPoly::constant(1);
    if (n == 0) return prev;
    PowerPoly cur = PowerPoly::monomial(1);
    const PowerPoly two_x = PowerPoly::monomial(1, 2);
    for (unsigned k = 1; k < n; ++k) {
        PowerPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Euclidean division f = q·g + r, deg r < deg g.
inline std::pair<PowerPoly, PowerPoly> divmod(const PowerPoly& f, const PowerPoly& g) {
    if (g.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    std::vector<Rational> rem(f.coeffs());
    const int dg = g.degree();
    if (f.degree() < dg) return {PowerPoly{}, f};
    std::vector<Rational> quot(static_cast<std::size_t>(f.degree() - dg + 1));
    const Rational lead = g.leading();
    for (int k = f.degree() - dg; k >= 0; --k) {
        const Rational t = rem[static_cast<std::size_t>(k + dg)] / lead;
        quot[static_cast<std::size_t>(k)] = t;
        if (t == 0) continue;
        for (int i = 0; i <= dg; ++i) rem[static_cast<std::size_t>(k + i)] -= t * g.coeffs()[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(dg));
    return {PowerPoly(std::move(quot)), PowerPoly(std::move(rem))};
}

inline PowerPoly monic(const PowerPoly& f) { return f.is_zero() ? f : f.scaled(Rational(1) / f.leading()); }

inline PowerPoly gcd(PowerPoly f, PowerPoly g) {
    while (!g.is_zero()) {
        auto r = divmod(f, g).second;
        f = std::move(g);
        g = monic(r);
    }
    return monic(f);
}

/// Human-readable form, highest degree first, e.g. "x^2 - 1/4".
inline std::string to_string(const PowerPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int k = f.degree(); k >= 0; --k) {
        Rational c = f.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        if (c != 1 || k == 0) out += lpoly::to_string(c) + (k > 0 ? "*" : "");
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const PowerPoly& f) { return os << to_string(f); }

}  // namespace lpoly
