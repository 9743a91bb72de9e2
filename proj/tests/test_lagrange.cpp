#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convidx/errors.hpp"
#include "convidx/lagrange.hpp"
#include "convidx/specfun.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace convidx;
using namespace convidx::lagrange;
using piecewise::JumpFunction;
using piecewise::JumpLocation;

namespace {

JumpFunction step_at_theta(Rational t, double d) {
  return JumpFunction::from_step(piecewise::lagrange_step(JumpLocation::rational_theta(t), d));
}

// Max |L_n h - h| over a grid on [-1, 1] that keeps `gap` away from x0.
double error_away(const JumpFunction& h, double x0, double gap, std::size_t n) {
  const ChebyshevGrid grid(n);
  const auto samples = sample_nodes(grid, h);
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -1.0 + i / 1000.0;
    if (std::abs(x - x0) < gap) continue;
    worst = std::max(worst, std::abs(lagrange_eval(grid, samples, x) - h(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("nodes are the Chebyshev zeros") {
  for (std::size_t n : {1u, 2u, 7u, 64u}) {
    const ChebyshevGrid grid(n);
    const auto ref = oracle::chebyshev_nodes(n);
    for (std::size_t k = 1; k <= n; ++k) {
      CHECK(grid.node(k) == doctest::Approx(ref[k - 1]).epsilon(1e-15));
      CHECK(grid.node(k) == -grid.node(n + 1 - k));
    }
  }
  CHECK(ChebyshevGrid(5).node(3) == 0.0);
  CHECK(ChebyshevGrid(5).coincident_node(0.0) == 3);
  CHECK(ChebyshevGrid(5).coincident_node(0.1) == 0);
  CHECK_THROWS_AS(ChebyshevGrid(0), DomainError);
}

TEST_CASE("partition of unity up to n = 512") {
  double worst = 0.0;
  for (std::size_t n : {1u, 2u, 3u, 16u, 63u, 64u, 127u, 256u, 511u, 512u}) {
    const ChebyshevGrid grid(n);
    const std::vector<double> ones(n, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = -1.0 + 2.0 * i / 999.0;
      worst = std::max(worst, std::abs(lagrange_eval(grid, ones, x) - 1.0));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("cardinal property at the nodes") {
  for (std::size_t n : {3u, 8u, 64u}) {
    const ChebyshevGrid grid(n);
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t j = 1; j <= n; ++j) {
        CHECK(fundamental_eval(grid, k, grid.node(j)) == (k == j ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("trigonometric form matches the product form") {
  gen::Rng rng(31);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 64; ++n) {
    const ChebyshevGrid grid(n);
    const auto nodes = oracle::chebyshev_nodes(n);
    for (int trial = 0; trial < 20; ++trial) {
      const double x = gen::uniform(rng, -1.0, 1.0);
      for (std::size_t k = 1; k <= n; ++k) {
        worst = std::max(worst, std::abs(fundamental_eval(grid, k, x) -
                                         oracle::fundamental_product(nodes, k, x)));
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("interpolant of a step against the product form") {
  const auto h = step_at_theta(Rational(1, 3), 0.2);
  const ChebyshevGrid grid(50);
  const auto samples = sample_nodes(grid, h);
  const auto nodes = oracle::chebyshev_nodes(50);
  for (double x : {-0.9, -0.2, 0.3, 0.5, 0.77}) {
    CHECK(lagrange_eval(grid, samples, x) ==
          doctest::Approx(oracle::lagrange_product(nodes, samples, x)).epsilon(1e-10));
  }
  // Frozen from a 30-digit product-form evaluation.
  CHECK(lagrange_eval(grid, samples, -0.9) ==
        doctest::Approx(0.00537038514739377480041641081614).epsilon(1e-10));
}

TEST_CASE("sigma cycles") {
  // θ0/π = 1/3: σ runs through 5/6, 1/6, 1/2 with period 3.
  const Rational cycle[] = {{5, 6}, {1, 6}, {1, 2}};
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto tr = sigma_lagrange(Rational(1, 3), n);
    CHECK(tr.n == n);
    CHECK(tr.sigma_exact == cycle[(n - 1) % 3]);
    CHECK_FALSE(tr.is_node);
  }
  // θ0/π = 1/2: odd n put a node on the jump.
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto tr = sigma_lagrange(Rational(1, 2), n);
    CHECK(tr.is_node == (n % 2 == 1));
    CHECK(tr.sigma_exact == (n % 2 == 1 ? Rational(0, 1) : Rational(1, 2)));
  }
  const auto f = sigma_lagrange(1.0 / 3, 4);
  CHECK(f.sigma == doctest::Approx(5.0 / 6));
  CHECK_FALSE(f.sigma_exact.has_value());
}

TEST_CASE("value at the jump") {
  const auto h = step_at_theta(Rational(1, 2), 0.2);
  for (std::size_t n : {5u, 101u, 1001u}) {
    CHECK(lagrange_at_jump(ChebyshevGrid(n), h, 0) == 0.2);
  }
  for (std::size_t n : {4u, 100u, 1000u}) {
    CHECK(lagrange_at_jump(ChebyshevGrid(n), h, 0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  // Exact and float paths agree away from nodes.
  const auto h3 = step_at_theta(Rational(1, 3), 0.2);
  for (std::size_t n : {10u, 77u, 500u}) {
    const ChebyshevGrid grid(n);
    CHECK(lagrange_at_jump(grid, h3, 0) ==
          doctest::Approx(lagrange_eval(grid, h3, 0.5)).epsilon(1e-10));
  }
  // Along σ = 5/6 the values approach g(5/6).
  CHECK(lagrange_at_jump(ChebyshevGrid(3001), h3, 0) ==
        doctest::Approx(specfun::g_lagrange(5.0 / 6)).epsilon(2e-3));
}

TEST_CASE("uniform convergence away from the jump") {
  const auto h = step_at_theta(Rational(1, 3), 0.2);
  const double e128 = error_away(h, 0.5, 0.1, 128);
  const double e512 = error_away(h, 0.5, 0.1, 512);
  const double e2048 = error_away(h, 0.5, 0.1, 2048);
  CHECK(e2048 < e128);
  CHECK(e512 < e128);
  // C/n envelope with C fitted at n = 128.
  const double C = e128 * 128;
  CHECK(e512 <= 1.5 * C / 512);
  CHECK(e2048 <= 1.5 * C / 2048);
}
