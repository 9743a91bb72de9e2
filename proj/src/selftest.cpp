#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "convidx/descriptor.hpp"
#include "convidx/harness.hpp"
#include "convidx/lagrange.hpp"
#include "convidx/shepard.hpp"
#include "convidx/specfun.hpp"

namespace convidx::harness {

namespace {

using piecewise::JumpLocation;

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os.precision(3);
  os << label << ' ' << std::scientific << v;
  return os.str();
}

SelftestResult density_complement() {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 20; ++trial) {
    density::Membership m(500 + 37 * static_cast<std::size_t>(trial));
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = coin(rng);
    if (!density::complement_identity_check(m)) {
      return {"density.complement", false, "identity broken at trial " + std::to_string(trial)};
    }
  }
  return {"density.complement", true, "20 random sets"};
}

SelftestResult special_values() {
  using std::numbers::pi;
  const double err = std::max({std::abs(specfun::hurwitz_zeta(2, 1).value - pi * pi / 6),
                               std::abs(specfun::hurwitz_zeta(2, 0.5).value - pi * pi / 2),
                               std::abs(specfun::lerch_J(1, 1).value - std::numbers::ln2),
                               std::abs(specfun::lerch_J(1, 0.5).value - pi / 2)});
  double residual = 0.0;
  for (double s : {1.5, 2.0, 4.0, 9.0}) {
    for (double a : {0.05, 0.3, 0.7, 1.0}) {
      residual = std::max(residual, specfun::j_zeta_relation_residual(s, a));
    }
  }
  return {"specfun.values", err < 1e-10 && residual < 1e-9,
          fmt("closed forms", err) + ", " + fmt("J-zeta residual", residual)};
}

SelftestResult profile_symmetry() {
  double worst = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double x = i / 200.0;
    worst = std::max(worst, std::abs(specfun::g_lagrange(x) + specfun::g_lagrange(1 - x) - 1));
    worst = std::max(worst,
                     std::abs(specfun::g_shepard(2, x) + specfun::g_shepard(2, 1 - x) - 1));
  }
  return {"specfun.symmetry", worst < 1e-10, fmt("max |p(x)+p(1-x)-1|", worst)};
}

SelftestResult partition_of_unity() {
  double worst = 0.0;
  for (std::size_t n : {5u, 64u, 257u}) {
    const lagrange::ChebyshevGrid grid(n);
    const std::vector<double> ones(n, 1.0);
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + i / 50.0;
      worst = std::max(worst, std::abs(lagrange::lagrange_eval(grid, ones, x) - 1.0));
    }
  }
  return {"lagrange.partition_of_unity", worst < 1e-10, fmt("max deviation", worst)};
}

SelftestResult shepard_range() {
  const auto f = piecewise::JumpFunction::from_step(
      piecewise::shepard_step(JumpLocation::rational_x(Rational(1, 3)), 0.2));
  bool ok = true;
  for (double s : {1.0, 2.0, 3.5}) {
    for (std::size_t n : {7u, 64u, 301u}) {
      const auto samples = shepard::sample_nodes(n, f);
      for (int i = 0; i <= 50 && ok; ++i) {
        const double v = shepard::shepard_eval({s, n}, samples, i / 50.0);
        ok = v >= 0.0 && v <= 1.0;
      }
    }
  }
  return {"shepard.range", ok, "values inside the sample range"};
}

SelftestResult spectrum_mass() {
  const piecewise::JumpSpec jump{JumpLocation::plain(0.0), 0.0, 1.0, 0.3};
  bool ok = true;
  for (std::int64_t q = 2; q <= 9 && ok; ++q) {
    const Location loc{Rational(1, q)};
    ok = theory::predict_lagrange(jump, loc).atom_index_sum() == Rational(1, 1) &&
         theory::predict_shepard(jump, loc, 2.0).atom_index_sum() == Rational(1, 1) &&
         theory::predict_shepard(jump, loc, 1.0).atom_index_sum() == Rational(1, 1);
  }
  return {"theory.atom_mass", ok, "rational spectra carry index 1"};
}

SelftestResult descriptor_roundtrip() {
  const piecewise::ContinuousPart base{{0.1, 0.0, 1.0}, {{3.0, 0.25, -0.5}}};
  const auto first = JumpLocation::rational_theta(Rational(2, 3));
  const auto second = JumpLocation::irrational_x(std::sqrt(0.5));
  const double l1 = base(first.x());
  const double l2 = base(second.x()) + 1.5;
  const piecewise::JumpFunction f(
      {-1.0, 1.0}, base, {{first, l1, l1 + 1.5, 0.3}, {second, l2, l2 - 2.0 / 3.0, -0.1}});
  const std::string text = piecewise::dump_descriptor(f);
  const auto back = piecewise::parse_descriptor(text);
  const bool ok = back == f && piecewise::dump_descriptor(back) == text;
  return {"piecewise.descriptor", ok, "dump/parse round trip"};
}

}  // namespace

std::vector<SelftestResult> run_selftests() {
  std::vector<SelftestResult> out;
  auto guarded = [&out](SelftestResult (*check)(), const char* name) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded(density_complement, "density.complement");
  guarded(special_values, "specfun.values");
  guarded(profile_symmetry, "specfun.symmetry");
  guarded(partition_of_unity, "lagrange.partition_of_unity");
  guarded(shepard_range, "shepard.range");
  guarded(spectrum_mass, "theory.atom_mass");
  guarded(descriptor_roundtrip, "piecewise.descriptor");
  return out;
}

}  // namespace convidx::harness
