#include <doctest.h>

#include <cmath>
#include <numeric>

#include "convidx/errors.hpp"
#include "convidx/specfun.hpp"
#include "convidx/theory.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace convidx;
using namespace convidx::theory;
using piecewise::JumpLocation;
using piecewise::JumpSpec;

namespace {

JumpSpec unit_step(double d) { return {JumpLocation::plain(0.0), 0.0, 1.0, d}; }
JumpSpec shepard_unit_step(double d) { return {JumpLocation::plain(0.5), 1.0, 0.0, d}; }

}  // namespace

TEST_CASE("Lagrange, q even") {
  const auto p = predict_lagrange(unit_step(0.2), Rational(1, 2));
  CHECK(p.source == Source::lagrange_rational);
  REQUIRE(p.atoms.size() == 2);
  CHECK(p.atoms[0].value == 0.2);
  CHECK(p.atoms[0].index == Rational(1, 2));
  CHECK(p.atoms[1].value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.atoms[1].index == Rational(1, 2));
  CHECK_FALSE(p.continuous.has_value());
}

TEST_CASE("Lagrange, q odd") {
  const auto p = predict_lagrange(unit_step(0.2), Rational(1, 3));
  REQUIRE(p.atoms.size() == 3);
  CHECK(p.atoms[0].value == doctest::Approx(specfun::g_lagrange(1.0 / 6)));
  CHECK(p.atoms[1].value == doctest::Approx(0.5));
  CHECK(p.atoms[2].value == doctest::Approx(specfun::g_lagrange(5.0 / 6)));
  CHECK(p.atoms[0].value + p.atoms[2].value == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& a : p.atoms) CHECK(a.index == Rational(1, 3));
}

TEST_CASE("odd-q atoms pair up") {
  for (std::int64_t q = 3; q <= 15; q += 2) {
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto spec = predict_lagrange(unit_step(0.2), Rational(p, q));
      REQUIRE(spec.atoms.size() == static_cast<std::size_t>(q));
      for (std::size_t m = 0; m < spec.atoms.size(); ++m) {
        CHECK(std::abs(spec.atoms[m].value + spec.atoms[q - 1 - m].value - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("general jumps use the affine map") {
  const JumpSpec j{JumpLocation::plain(0.1), 2.0, 4.0, 7.0};
  const auto odd = predict_lagrange(j, Rational(1, 3));
  CHECK(odd.atoms[0].value == doctest::Approx(2.0 + 2.0 * specfun::g_lagrange(1.0 / 6)));
  const auto irr = predict_lagrange(j, Irrational{0.3});
  CHECK(irr.source == Source::lagrange_irrational);
  CHECK(irr.atoms.empty());
  REQUIRE(irr.continuous.has_value());
  CHECK(irr.continuous->profile == specfun::LimitProfile::lagrange());
  CHECK(irr.continuous->map.alpha == 2.0);
  CHECK(irr.continuous->map.beta == 2.0);

  const JumpSpec down{JumpLocation::plain(0.5), 5.0, 1.0, 0.0};
  const auto s3 = predict_shepard(down, Irrational{0.3}, 3.0);
  REQUIRE(s3.continuous.has_value());
  CHECK(s3.continuous->profile == specfun::LimitProfile::shepard(3.0));
  CHECK(s3.continuous->map.alpha == 1.0);
  CHECK(s3.continuous->map.beta == 4.0);
}

TEST_CASE("Shepard spectra") {
  const auto half = predict_shepard(shepard_unit_step(0.2), Rational(1, 2), 2.0);
  REQUIRE(half.atoms.size() == 2);
  CHECK(half.atoms[0].value == 0.2);
  CHECK(half.atoms[1].value == doctest::Approx(0.5));

  const auto third = predict_shepard(shepard_unit_step(0.2), Rational(1, 3), 2.0);
  REQUIRE(third.atoms.size() == 3);
  CHECK(third.atoms[1].value == doctest::Approx(specfun::g_shepard(2, 1.0 / 3)));
  CHECK(third.atoms[2].value == doctest::Approx(specfun::g_shepard(2, 2.0 / 3)));

  const auto s1 = predict_shepard(shepard_unit_step(0.2), Rational(1, 3), 1.0);
  CHECK(s1.source == Source::shepard_s1_rational);
  REQUIRE(s1.atoms.size() == 2);
  CHECK(s1.atoms[0].value == 0.2);
  CHECK(s1.atoms[0].index == Rational(1, 3));
  CHECK(s1.atoms[1].value == 0.5);
  CHECK(s1.atoms[1].index == Rational(2, 3));

  const auto s1i = predict_shepard(shepard_unit_step(0.2), Irrational{0.7}, 1.0);
  REQUIRE(s1i.atoms.size() == 1);
  CHECK(s1i.atoms[0].index == Rational(1, 1));
  CHECK_FALSE(s1i.continuous.has_value());

  CHECK_THROWS_AS(predict_shepard(shepard_unit_step(0.2), Rational(1, 3), 0.5), DomainError);
}

TEST_CASE("rational atom indices sum to one") {
  gen::Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = gen::unit_fraction(rng, 40);
    const double d = gen::uniform(rng, -1.0, 2.0);
    CHECK(predict_lagrange(unit_step(d), t).atom_index_sum() == Rational(1, 1));
    const double s = gen::integer(rng, 0, 1) == 0 ? 1.0 : gen::uniform(rng, 1.1, 6.0);
    CHECK(predict_shepard(shepard_unit_step(d), t, s).atom_index_sum() == Rational(1, 1));
  }
}

TEST_CASE("covering sets get the full index") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const double left = gen::uniform(rng, -2.0, 2.0);
    const double right = left + gen::uniform(rng, 0.5, 2.0) * (trial % 2 == 0 ? 1 : -1);
    const JumpSpec j{JumpLocation::plain(0.3), left, right, gen::uniform(rng, -3.0, 3.0)};
    const IntervalUnion all(-10.0, 10.0);
    const auto t = gen::unit_fraction(rng, 12);
    CHECK(predicted_set_index(predict_lagrange(j, t), all) == doctest::Approx(1.0));
    CHECK(predicted_set_index(predict_lagrange(j, Irrational{0.4}), all) == doctest::Approx(1.0));
    CHECK(predicted_set_index(predict_shepard(j, t, 2.5), all) == doctest::Approx(1.0));
    CHECK(predicted_set_index(predict_shepard(j, Irrational{0.4}, 2.5), all) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("predicted set index") {
  const auto atoms = predict_lagrange(unit_step(0.2), Rational(1, 2));
  CHECK(predicted_set_index(atoms, IntervalUnion(0.4, 0.6)) == 0.5);
  CHECK(predicted_set_index(atoms, IntervalUnion(0.6, 0.9)) == 0.0);

  const auto g = predict_lagrange(unit_step(0.2), Irrational{0.3});
  CHECK(predicted_set_index(g, IntervalUnion(0.0, 1.0)) == doctest::Approx(1.0));

  const JumpSpec down{JumpLocation::plain(0.5), 5.0, 1.0, 0.0};
  const auto g2 = predict_shepard(down, Irrational{0.3}, 2.0);
  const double lo = 1 + 4 * specfun::g_shepard(2, 0.75);
  const double hi = 1 + 4 * specfun::g_shepard(2, 0.25);
  CHECK(std::abs(predicted_set_index(g2, IntervalUnion(lo, hi)) - 0.5) < 1e-8);

  // Grid-scan oracle on the pushforward of a decreasing map.
  const IntervalUnion A(0.3, 0.45);
  const double scan = oracle::preimage_measure(
      [](double x) { return 2.0 + 2.0 * specfun::g_lagrange(x); }, 2.6, 2.9);
  const JumpSpec up{JumpLocation::plain(0.1), 2.0, 4.0, 0.0};
  CHECK(predicted_set_index(predict_lagrange(up, Irrational{0.3}), IntervalUnion(2.6, 2.9)) ==
        doctest::Approx(scan).epsilon(1e-4));
  CHECK(predicted_set_index(g, A) ==
        doctest::Approx(oracle::preimage_measure(specfun::g_lagrange, 0.3, 0.45)).epsilon(1e-4));
}

TEST_CASE("spectrum serialization") {
  const auto p = predict_lagrange(unit_step(0.2), Rational(1, 3));
  const auto j = to_json(p);
  REQUIRE(j.at("atoms").size() == 3);
  CHECK(j["atoms"][0].at("index_num") == 1);
  CHECK(j["atoms"][0].at("index_den") == 3);
  CHECK(j.at("continuous").is_null());
  CHECK(j.at("source") == "lagrange_rational");

  const JumpSpec down{JumpLocation::plain(0.5), 5.0, 1.0, 0.0};
  const auto c = to_json(predict_shepard(down, Irrational{0.3}, 3.0));
  CHECK(c.at("atoms").empty());
  CHECK(c.at("continuous").at("alpha") == 1.0);
  CHECK(c.at("continuous").at("beta") == 4.0);
  CHECK(c.at("continuous").at("s") == 3.0);
  CHECK(c.at("continuous").contains("profile"));
}

TEST_CASE("affine maps") {
  const AffineMap m{1.0, -2.0};
  CHECK(m(0.25) == 0.5);
  CHECK(m.inverse(0.5) == 0.25);
  const auto pre = m.preimage(IntervalUnion(-1.0, 0.0));
  REQUIRE(pre.intervals().size() == 1);
  CHECK(pre.intervals()[0].lo == 0.5);
  CHECK(pre.intervals()[0].hi == 1.0);
}
