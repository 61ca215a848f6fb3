#pragma once

#include <random>

#include "lpoly/power_poly.hpp"

namespace lpoly::testing {

inline Rational small_rational(std::mt19937_64& rng, long range = 9, long max_den = 4) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline PowerPoly random_poly(std::mt19937_64& rng, int max_degree = 8) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = small_rational(rng);
    return PowerPoly(c);
}

inline PowerPoly poly(std::initializer_list<long> ascending) {
    std::vector<Rational> c;
    for (long v : ascending) c.emplace_back(v);
    return PowerPoly(c);
}

}  // namespace lpoly::testing
