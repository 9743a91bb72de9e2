#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "convidx/density.hpp"
#include "convidx/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace convidx;
using namespace convidx::density;

namespace {

std::vector<double> eps_grid() { return default_eps_grid(); }

SequencePrefix sequence(std::size_t N, auto&& term) {
  std::vector<double> v(N);
  for (std::size_t n = 1; n <= N; ++n) v[n - 1] = term(n);
  return SequencePrefix(std::move(v));
}

}  // namespace

TEST_CASE("window starts at the ceiling of half the prefix") {
  CHECK(DensityWindow{}.first(10) == 5);
  CHECK(DensityWindow{}.first(11) == 6);
  CHECK(DensityWindow{}.first(1) == 1);
  CHECK(DensityWindow{1.0}.first(7) == 7);
}

TEST_CASE("complement identity holds for random sets") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto N = static_cast<std::size_t>(gen::integer(rng, 1, 800));
    const auto m = gen::membership(rng, N, gen::uniform(rng, 0.0, 1.0));
    CHECK(complement_identity_check(m));
    Membership c(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) c[i] = !m[i];
    const auto lo = lower_density_ratio(m);
    const auto up = upper_density_ratio(c);
    CHECK(lo.n == up.n);
    CHECK(lo.count + up.count == lo.n);
  }
}

TEST_CASE("lower density agrees with the recounting oracle") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto N = static_cast<std::size_t>(gen::integer(rng, 1, 400));
    const auto m = gen::membership(rng, N, gen::uniform(rng, 0.0, 1.0));
    CHECK(lower_density(m) == doctest::Approx(oracle::lower_density(m)).epsilon(1e-15));
  }
}

TEST_CASE("arithmetic progressions have their natural density") {
  Membership thirds(3000);
  for (std::size_t i = 0; i < thirds.size(); ++i) thirds[i] = (i + 1) % 3 == 0;
  CHECK(lower_density(thirds) == doctest::Approx(1.0 / 3).epsilon(1e-3));
  CHECK(upper_density(thirds) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  // A set with no density: blocks [4^j, 2·4^j) have lower density 1/3 and
  // upper density 2/3 in the limit; the tail window sees a part of that swing.
  Membership blocks(1 << 14);
  for (std::size_t n = 1; n <= blocks.size(); ++n) {
    const auto lg = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    blocks[n - 1] = lg % 2 == 0;
  }
  CHECK(lower_density(blocks) < upper_density(blocks));
}

TEST_CASE("empirical index of cos(n pi / 2)") {
  const auto seq = sequence(10'000, [](std::size_t n) {
    return std::cos(static_cast<double>(n) * std::numbers::pi / 2);
  });
  const auto grid = eps_grid();
  CHECK(empirical_index(seq, 0.0, grid).estimate == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(empirical_index(seq, 1.0, grid).estimate == doctest::Approx(0.25).epsilon(2e-3));
  CHECK(empirical_index(seq, -1.0, grid).estimate == doctest::Approx(0.25).epsilon(2e-3));
  CHECK(empirical_index(seq, 0.5, grid).estimate == 0.0);
}

TEST_CASE("estimates lie in [0,1] and profiles do not grow as eps shrinks") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const double L = gen::uniform(rng, -1.0, 1.0);
    const double spread = gen::uniform(rng, 0.01, 2.0);
    std::vector<double> v(2000);
    for (auto& x : v) x = L + spread * gen::uniform(rng, -1.0, 1.0);
    const SequencePrefix seq(v);
    const auto est = empirical_index(seq, L, eps_grid());
    CHECK(est.estimate >= 0.0);
    CHECK(est.estimate <= 1.0);
    REQUIRE(est.profile.size() == eps_grid().size());
    for (std::size_t j = 1; j < est.profile.size(); ++j) {
      CHECK(est.profile[j].ratio <= est.profile[j - 1].ratio);
    }
  }
}

TEST_CASE("index at infinity") {
  // Even terms sit beyond every level of the M-grid, odd terms stay at 0.
  const auto seq = sequence(5000, [](std::size_t n) {
    return n % 2 == 0 ? 1e7 * static_cast<double>(n) : 0.0;
  });
  const auto grid = default_m_grid();
  CHECK(empirical_index(seq, Infinity::positive, grid).estimate ==
        doctest::Approx(0.5).epsilon(1e-3));
  CHECK(empirical_index(seq, Infinity::negative, grid).estimate == 0.0);
  // Terms that only pass M = 10^3 late in the prefix give a falling profile
  // with no plateau.
  const auto slow = sequence(5000, [](std::size_t n) {
    return n % 2 == 0 ? static_cast<double>(n) : 0.0;
  });
  const auto est = empirical_index(slow, Infinity::positive, grid);
  CHECK(est.profile[0].ratio == doctest::Approx(0.5).epsilon(1e-2));
  CHECK(est.estimate == 0.0);
}

TEST_CASE("Weyl sequence has set index equal to the length") {
  const double alpha = std::numbers::sqrt2 - 1.0;
  const auto seq = sequence(20'000, [&](std::size_t n) {
    const double t = static_cast<double>(n) * alpha;
    return t - std::floor(t);
  });
  const auto grid = eps_grid();
  CHECK(set_index(seq, IntervalUnion(0.2, 0.5), grid).estimate ==
        doctest::Approx(0.3).epsilon(0.02 / 0.3));
  const IntervalUnion two({{0.0, 0.1}, {0.6, 0.7}});
  CHECK(set_index(seq, two, grid).estimate == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("set indices of separated sets never sum above one") {
  gen::Rng rng(14);
  // ε stays below half the separation of the sets, so the inflated sets
  // remain disjoint at every scale.
  std::vector<double> grid;
  for (int j = 4; j <= 14; ++j) grid.push_back(std::ldexp(1.0, -j));
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> v(3000);
    for (auto& x : v) x = gen::uniform(rng, 0.0, 1.0) < 0.5 ? 0.25 : gen::uniform(rng, 0.0, 1.0);
    const SequencePrefix seq(v);
    double sum = 0.0;
    for (double lo = 0.0; lo < 1.0; lo += 0.25) {
      sum += set_index(seq, IntervalUnion(lo, lo + 0.1), grid).estimate;
    }
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("clusters of planted subsequences are found in both directions") {
  gen::Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    // Two or three limits with Weyl-assigned shares; the remainder diverges.
    const auto k = static_cast<std::size_t>(gen::integer(rng, 2, 3));
    std::vector<double> centers, shares;
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      centers.push_back(static_cast<double>(j) + gen::uniform(rng, 0.0, 0.5));
      shares.push_back(gen::uniform(rng, 0.1, 0.3));
      total += shares.back();
    }
    const double offset = gen::uniform(rng, 0.0, 1.0);
    const auto seq = sequence(3000, [&](std::size_t n) {
      double u = offset + static_cast<double>(n) * std::numbers::phi;
      u -= std::floor(u);
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        acc += shares[j];
        if (u < acc) return centers[j] + 0.05 * std::cos(static_cast<double>(n)) / n;
      }
      return 100.0 + static_cast<double>(n);
    });
    const auto report = detect_clusters(seq);
    CHECK(index_sum_audit(report));
    CHECK(report.unassigned_fraction == doctest::Approx(1.0 - total).epsilon(0.05));
    // Planted limit => detected cluster.
    for (std::size_t j = 0; j < k; ++j) {
      const auto est = empirical_index(seq, centers[j], eps_grid());
      bool found = false;
      for (const auto& c : report.clusters) {
        if (std::abs(c.center - centers[j]) < 1e-3 &&
            c.empirical_index >= est.estimate - 0.02) {
          found = true;
        }
      }
      CHECK(found);
    }
    // Detected cluster => its center carries the index.
    CHECK(report.clusters.size() == k);
    for (const auto& c : report.clusters) {
      CHECK(empirical_index(seq, c.center, eps_grid()).estimate >= c.empirical_index - 0.02);
    }
  }
}

TEST_CASE("clusters are reported in increasing order with disjoint balls") {
  const auto seq = sequence(4000, [](std::size_t n) {
    return static_cast<double>(n % 4) * 0.3 + 1.0 / static_cast<double>(n);
  });
  const auto report = detect_clusters(seq);
  REQUIRE(report.clusters.size() == 4);
  for (std::size_t c = 1; c < report.clusters.size(); ++c) {
    const auto& a = report.clusters[c - 1];
    const auto& b = report.clusters[c];
    CHECK(a.center < b.center);
    CHECK(a.eps + b.eps <= b.center - a.center);
  }
  for (const auto& c : report.clusters) CHECK(std::abs(c.empirical_index - 0.25) <= 0.02);
}

TEST_CASE("interval unions are canonical") {
  const IntervalUnion u({{0.5, 0.7}, {0.0, 0.2}, {0.2, 0.3}, {0.6, 0.9}});
  REQUIRE(u.intervals().size() == 2);
  CHECK(u.intervals()[0].lo == 0.0);
  CHECK(u.intervals()[0].hi == 0.3);
  CHECK(u.intervals()[1].hi == 0.9);
  CHECK(u.total_length() == doctest::Approx(0.7));
  CHECK(u.contains(0.25));
  CHECK_FALSE(u.contains(0.4));
  CHECK(u.distance(0.4) == doctest::Approx(0.1));
  CHECK(u.inflated(0.11).intervals().size() == 1);
  CHECK_THROWS_AS(IntervalUnion(1.0, 0.0), DomainError);
}

TEST_CASE("invalid inputs are refused") {
  CHECK_THROWS_AS(SequencePrefix({}), DomainError);
  CHECK_THROWS_AS(SequencePrefix({1.0, NAN}), DomainError);
  const SequencePrefix seq({0.0, 1.0});
  const std::vector<double> rising{0.1, 0.2};
  CHECK_THROWS_AS(empirical_index(seq, 0.0, rising), DomainError);
  CHECK_THROWS_AS(empirical_index(seq, 0.0, std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(set_index(seq, IntervalUnion{}, eps_grid()), DomainError);
  CHECK_THROWS_AS(detect_clusters(seq, {.gap = 0.0}), DomainError);
}
