#pragma once

// Small deterministic generators for the property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "convidx/piecewise.hpp"
#include "convidx/rational.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::int64_t integer(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::vector<bool> membership(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<bool> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = coin(rng);
  return m;
}

// p/q in (0,1) with q <= max_den.
inline convidx::Rational unit_fraction(Rng& rng, std::int64_t max_den) {
  const std::int64_t q = integer(rng, 2, max_den);
  return {integer(rng, 1, q - 1), q};
}

// A function on `domain` with 1..3 jumps at plain float locations and a
// random cubic plus one trigonometric term as continuous part.
inline convidx::piecewise::JumpFunction jump_function(Rng& rng, convidx::piecewise::Domain domain) {
  using namespace convidx::piecewise;
  ContinuousPart base;
  for (int j = 0; j < 4; ++j) base.poly.push_back(uniform(rng, -1.0, 1.0));
  base.trig.push_back({uniform(rng, 0.5, 6.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});

  const auto count = static_cast<std::size_t>(integer(rng, 1, 3));
  std::vector<double> xs;
  const double width = domain.hi - domain.lo;
  while (xs.size() < count) {
    const double x = domain.lo + width * uniform(rng, 0.05, 0.95);
    if (std::none_of(xs.begin(), xs.end(),
                     [&](double y) { return std::abs(x - y) < 0.05 * width; })) {
      xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());

  std::vector<JumpSpec> jumps;
  double shift = 0.0;
  for (double x : xs) {
    const double left = base(x) + shift;
    double c = uniform(rng, -2.0, 2.0);
    if (std::abs(c) < 0.1) c = 0.5;
    jumps.push_back({JumpLocation::plain(x), left, left + c, left + uniform(rng, -1.0, 1.0)});
    shift += c;
  }
  return {domain, base, jumps};
}

}  // namespace gen
