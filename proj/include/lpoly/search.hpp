#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpoly/verify.hpp"

namespace lpoly {

enum class Strategy { random, coordinate_descent };

inline std::string to_string(Strategy s) { return s == Strategy::random ? "random" : "coordinate-descent"; }

inline Strategy parse_strategy(const std::string& s) {
    if (s == "random") return Strategy::random;
    if (s == "coordinate-descent" || s == "cd") return Strategy::coordinate_descent;
    throw ParseError("unknown strategy '" + s + "'");
}

/// The ratio searched for each class and its proved (or known supremum) bound.
/// Markov ratio ‖f'‖/‖f‖ for the derivative classes, ‖f‖_∞/‖f‖_1 for the
/// Nikolskii classes.
struct Objective {
    std::string ratio;
    Rational bound;
};

inline Objective objective_for(const ClassTag& tag) {
    const unsigned n = tag.n;
    switch (tag.kind) {
        case ClassKind::lorentz_nonneg:
        case ClassKind::zeros_outside_disk: return {"sup/L1", make_rational(n + 1, 2)};
        case ClassKind::deriv_lorentz:
        case ClassKind::deriv_zeros_outside_disk: return {"markov", Rational(n)};
        case ClassKind::monotone_real_zeros_outside: return {"markov", make_rational(n, 2)};
        case ClassKind::real_zeros_outside: return {"markov", erdos_factor(n)};
        case ClassKind::monotone_only: return {"markov", bernstein_monotone_factor(n)};
    }
    return {"markov", Rational(0)};
}

inline double objective_ratio(const ClassTag& tag, const PowerPoly& f) {
    const double norm = sup_norm(f).value;
    if (norm == 0.0) return 0.0;
    if (objective_for(tag).ratio == "sup/L1") {
        const auto I = power_integral(f, 1, -1, 1);
        return norm / to_double((I.lower + I.upper) / 2);
    }
    return sup_norm(derivative(f)).value / norm;
}

struct SearchResult {
    ClassTag tag;
    ClassSample best;
    double best_ratio = 0.0;
    double bound = 0.0;
    double gap = 0.0;  // bound − best_ratio
    std::size_t iterations = 0;
    Strategy strategy = Strategy::random;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::size_t, double>> history;  // (iteration, best ratio) at each improvement
};

/// First iteration whose best ratio exceeded `threshold`.
inline std::optional<std::size_t> first_iteration_above(const SearchResult& r, double threshold) {
    for (const auto& [it, ratio] : r.history)
        if (ratio > threshold) return it;
    return std::nullopt;
}

namespace detail {

inline bool accept_member(const ClassSample& s) { return !s.poly.is_zero() && check_membership(s).yes(); }

/// Moves one constructive coordinate; returns false when the coordinate does not exist.
inline bool perturb(Recipe& r, std::size_t coord, const Rational& delta) {
    if (coord < r.lorentz.size()) {
        r.lorentz[coord] = std::max(Rational(0), Rational(r.lorentz[coord] + delta));
        return true;
    }
    coord -= r.lorentz.size();
    if (coord < r.real_roots.size()) {
        r.real_roots[coord] += delta;
        return true;
    }
    coord -= r.real_roots.size();
    if (coord < 2 * r.pairs.size()) {
        auto& c = r.pairs[coord / 2];
        (coord % 2 == 0 ? c.re : c.im) += delta;
        return true;
    }
    coord -= 2 * r.pairs.size();
    if (coord == 0) {
        r.constant += delta;
        return true;
    }
    return false;
}

inline std::size_t coordinate_count(const Recipe& r) {
    return r.lorentz.size() + r.real_roots.size() + 2 * r.pairs.size() + 1;
}

}  // namespace detail

/// Empirical maximization of the class ratio. Every accepted iterate passes its
/// class predicate; coordinate descent only moves on strict improvement.
inline SearchResult maximize_ratio(const ClassTag& tag, Strategy strategy, std::size_t iterations,
                                   std::uint64_t seed, const std::optional<Recipe>& start = std::nullopt) {
    if (iterations < 1) throw InvalidArgument("maximize_ratio: iterations must be >= 1");
    SearchResult res;
    res.tag = tag;
    res.strategy = strategy;
    res.seed = seed;
    res.iterations = iterations;
    res.bound = to_double(objective_for(tag).bound);

    auto consider = [&](ClassSample s, std::size_t it) {
        const double ratio = objective_ratio(tag, s.poly);
        // Relative margin keeps rounding noise from counting as progress.
        if (res.history.empty() || ratio > res.best_ratio * (1 + 1e-12)) {
            res.best = std::move(s);
            res.best_ratio = ratio;
            res.history.emplace_back(it, ratio);
            return true;
        }
        return false;
    };

    if (start) {
        ClassSample s = build_sample(tag, *start);
        if (!detail::accept_member(s)) throw ClassViolation("maximize_ratio: start recipe is outside the class");
        s.seed = seed;
        consider(std::move(s), 0);
    }

    if (strategy == Strategy::random) {
        for (std::size_t i = start ? 1 : 0; i < iterations; ++i) consider(sample(tag, seed + i), i);
    } else {
        if (!start) consider(sample(tag, seed), 0);
        std::mt19937_64 rng(seed);
        const Rational max_step = make_rational(1, 4);
        const Rational min_step = make_rational(1, 1L << 30);
        Rational step = max_step;
        std::size_t misses = 0;
        for (std::size_t i = 1; i < iterations; ++i) {
            Recipe r = res.best.recipe;
            const std::size_t coords = detail::coordinate_count(r);
            const std::size_t coord = std::uniform_int_distribution<std::size_t>(0, coords - 1)(rng);
            const bool up = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
            detail::perturb(r, coord, up ? step : Rational(-step));
            bool improved = false;
            if (recipe_valid(tag, r)) {
                ClassSample s = build_sample(tag, r);
                s.seed = seed;
                if (detail::accept_member(s)) improved = consider(std::move(s), i);
            }
            if (improved) {
                misses = 0;
                continue;
            }
            if (++misses >= 2 * coords) {
                misses = 0;
                step /= 2;
                if (step < min_step) step = max_step;
            }
        }
    }
    res.gap = res.bound - res.best_ratio;
    return res;
}

// ---------------------------------------------------------------------------
// Pointwise profiles

/// `count` Chebyshev points cos((2k−1)π/(2·count)) in ascending order.
inline std::vector<double> chebyshev_grid(std::size_t count = 41) {
    std::vector<double> g;
    for (std::size_t k = 1; k <= count; ++k)
        g.push_back(std::cos((2.0 * static_cast<double>(k) - 1.0) * std::numbers::pi / (2.0 * static_cast<double>(count))));
    std::sort(g.begin(), g.end());
    for (auto& x : g)
        if (std::abs(x) < 1e-15) x = 0.0;
    return g;
}

/// Constant-free envelope min{√n/(1−x²)², n}.
inline double profile_envelope(unsigned n, double x) {
    const double w = 1.0 - x * x;
    return std::min(std::sqrt(static_cast<double>(n)) / (w * w), static_cast<double>(n));
}

struct ProfileRow {
    double x = 0.0;
    double max_ratio = 0.0;  // max over samples of |f'(x)|/‖f‖_∞
    double envelope = 0.0;
    double c_emp = 0.0;  // max_ratio / envelope
};

struct Profile {
    ClassTag tag;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<ProfileRow> rows;
    double c_emp_max = 0.0;
    double max_ratio = 0.0;
    double cap = 0.0;  // en/2
};

inline Profile pointwise_profile(const ClassTag& tag, std::size_t trials, std::uint64_t seed,
                                 const std::vector<double>& grid = chebyshev_grid()) {
    for (double x : grid)
        if (!(x > -1.0 && x < 1.0)) throw InvalidArgument("pointwise_profile: grid points must lie in (-1,1)");
    Profile prof;
    prof.tag = tag;
    prof.trials = trials;
    prof.seed = seed;
    prof.cap = scheick_factor(tag.n);
    prof.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        prof.rows[i].x = grid[i];
        prof.rows[i].envelope = profile_envelope(tag.n, grid[i]);
    }
    for (std::size_t t = 0; t < trials; ++t) {
        const ClassSample s = sample(tag, seed + t);
        const double norm = sup_norm(s.poly).value;
        if (norm == 0.0) continue;
        const PowerPoly df = derivative(s.poly);
        for (auto& row : prof.rows) row.max_ratio = std::max(row.max_ratio, std::abs(df.eval_double(row.x)) / norm);
    }
    for (auto& row : prof.rows) {
        row.c_emp = row.max_ratio / row.envelope;
        prof.c_emp_max = std::max(prof.c_emp_max, row.c_emp);
        prof.max_ratio = std::max(prof.max_ratio, row.max_ratio);
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Lorentz-degree growth

/// ((x−a)² + ε²(1−a²))^n, zero-free in the ellipse around [−1, 1] of small axis ~ε.
inline PowerPoly ellipse_family(unsigned n, const Rational& a, const Rational& eps) {
    const PowerPoly quad{a * a + eps * eps * (1 - a * a), Rational(-2 * a), Rational(1)};
    return quad.pow(n);
}

struct DegreeGrowthRow {
    unsigned n = 1;
    Rational a;
    Rational eps;
    LorentzDegreeResult d_found;
    unsigned cap = 0;
    std::optional<double> normalized;  // d·ε²/n when finite

    std::string status() const { return d_found.is_finite() ? "finite" : d_found.kind == LorentzDegreeResult::Kind::infinite ? "infinite" : "unresolved"; }
};

inline DegreeGrowthRow degree_growth_row(unsigned n, const Rational& a, const Rational& eps) {
    if (!(eps > 0 && eps <= 1)) throw InvalidArgument("growth: eps must satisfy 0 < eps <= 1");
    if (!(a > -1 && a < 1)) throw InvalidArgument("growth: a must satisfy -1 < a < 1");
    if (n < 1) throw InvalidArgument("growth: n must be >= 1");
    DegreeGrowthRow row;
    row.n = n;
    row.a = a;
    row.eps = eps;
    row.cap = std::max(default_degree_cap(n, eps), 2 * n);
    row.d_found = lorentz_degree(ellipse_family(n, a, eps), row.cap);
    if (row.d_found.is_finite()) row.normalized = row.d_found.degree * to_double(eps * eps) / n;
    return row;
}

/// Rows in (n, a, eps) lexicographic order of the inputs.
inline std::vector<DegreeGrowthRow> degree_growth_experiment(const std::vector<unsigned>& ns,
                                                             const std::vector<Rational>& as,
                                                             const std::vector<Rational>& epss) {
    std::vector<DegreeGrowthRow> rows;
    for (unsigned n : ns)
        for (const auto& a : as)
            for (const auto& e : epss) rows.push_back(degree_growth_row(n, a, e));
    return rows;
}

struct GrowthBand {
    double min = 0.0;
    double max = 0.0;
    bool monotone = true;  // d non-increasing in ε at each fixed (n, a)

    double ratio() const { return min > 0 ? max / min : std::numeric_limits<double>::infinity(); }
};

inline GrowthBand growth_band(const std::vector<DegreeGrowthRow>& rows) {
    GrowthBand band;
    bool first = true;
    for (const auto& r : rows) {
        if (!r.normalized) continue;
        band.min = first ? *r.normalized : std::min(band.min, *r.normalized);
        band.max = first ? *r.normalized : std::max(band.max, *r.normalized);
        first = false;
    }
    for (const auto& r : rows)
        for (const auto& s : rows)
            if (r.n == s.n && r.a == s.a && r.eps < s.eps && r.d_found.is_finite() && s.d_found.is_finite() &&
                r.d_found.degree < s.d_found.degree)
                band.monotone = false;
    return band;
}

}  // namespace lpoly
