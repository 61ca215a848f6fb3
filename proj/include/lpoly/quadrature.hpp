#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace lpoly {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

struct GaussLegendre16 {
    std::array<double, 16> nodes{};
    std::array<double, 16> weights{};

    GaussLegendre16() {
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-17) break;
            }
            nodes[static_cast<std::size_t>(i)] = x;
            weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre16& gl16() {
    static const GaussLegendre16 rule;
    return rule;
}

inline double gl_panel(const std::function<double(double)>& g, double lo, double hi) {
    const auto& r = gl16();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += r.weights[i] * g(mid + half * r.nodes[i]);
    return s * half;
}

inline void gl_adapt(const std::function<double(double)>& g, double lo, double hi, double whole, double tol,
                     double floor, int depth, QuadratureResult& acc) {
    const double mid = 0.5 * (lo + hi);
    const double left = gl_panel(g, lo, mid);
    const double right = gl_panel(g, mid, hi);
    const double delta = std::abs(left + right - whole);
    if (delta <= std::max(tol, floor) || depth >= 48 || mid <= lo || mid >= hi) {
        acc.value += left + right;
        acc.error_bound += delta;
        return;
    }
    gl_adapt(g, lo, mid, left, 0.5 * tol, floor, depth + 1, acc);
    gl_adapt(g, mid, hi, right, 0.5 * tol, floor, depth + 1, acc);
}

}  // namespace detail

/// Adaptive 16-node Gauss–Legendre: panels are halved until two refinement
/// levels agree within rel_tol of the integral's magnitude. The reported
/// error bound is the sum of the final refinement deltas.
inline QuadratureResult integrate_gl(const std::function<double(double)>& g, double lo, double hi,
                                     double rel_tol = 1e-12) {
    QuadratureResult out;
    if (!(hi > lo)) return out;
    constexpr int panels = 8;
    const double step = (hi - lo) / panels;
    std::array<double, panels> coarse{};
    double scale = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double l = lo + i * step;
        const double h = i + 1 == panels ? hi : lo + (i + 1) * step;
        coarse[static_cast<std::size_t>(i)] = detail::gl_panel(g, l, h);
        scale += std::abs(coarse[static_cast<std::size_t>(i)]);
    }
    const double tol = std::max(rel_tol * scale, 1e-300) / panels;
    // Evaluation noise near roots keeps the refinement delta from shrinking.
    const double floor = 4 * std::numeric_limits<double>::epsilon() * scale;
    for (int i = 0; i < panels; ++i) {
        const double l = lo + i * step;
        const double h = i + 1 == panels ? hi : lo + (i + 1) * step;
        detail::gl_adapt(g, l, h, coarse[static_cast<std::size_t>(i)], tol, floor, 0, out);
    }
    return out;
}

}  // namespace lpoly
