#include "convidx/theory.hpp"

#include <algorithm>
#include <utility>

#include "convidx/errors.hpp"

namespace convidx::theory {

using piecewise::JumpSpec;
using specfun::LimitProfile;

namespace {

const Rational* rational_of(const Location& loc) { return std::get_if<Rational>(&loc); }

void check_unit_location(const Rational& r, const char* what) {
  if (!(r > Rational(0, 1) && r < Rational(1, 1))) {
    throw DomainError(std::string(what) + " must lie strictly between 0 and 1");
  }
}

}  // namespace

IntervalUnion AffineMap::preimage(const IntervalUnion& A) const {
  std::vector<Interval> pieces;
  for (const auto& piece : A.intervals()) {
    double lo = inverse(piece.lo);
    double hi = inverse(piece.hi);
    if (lo > hi) std::swap(lo, hi);
    pieces.push_back({lo, hi});
  }
  return IntervalUnion(std::move(pieces));
}

std::string source_name(Source source) {
  switch (source) {
    case Source::lagrange_rational: return "lagrange_rational";
    case Source::lagrange_irrational: return "lagrange_irrational";
    case Source::shepard_rational: return "shepard_rational";
    case Source::shepard_irrational: return "shepard_irrational";
    case Source::shepard_s1_rational: return "shepard_s1_rational";
    case Source::shepard_s1_irrational: return "shepard_s1_irrational";
  }
  return "unknown";
}

Rational PredictedSpectrum::atom_index_sum() const {
  Rational total(0, 1);
  for (const auto& a : atoms) total = total + a.index;
  return total;
}

PredictedSpectrum predict_lagrange(const JumpSpec& jump, const Location& theta) {
  if (jump.right == jump.left) throw DomainError("predict_lagrange: jump has zero height");
  // g_i(t) = f(x_i - 0) + (f(x_i + 0) - f(x_i - 0)) g(t)
  const AffineMap map{jump.left, jump.right - jump.left};
  PredictedSpectrum out{{}, std::nullopt, Source::lagrange_irrational, 0.0};

  const Rational* t = rational_of(theta);
  if (t == nullptr) {
    out.continuous = ContinuousComponent{LimitProfile::lagrange(), map};
    return out;
  }
  check_unit_location(*t, "theta0/pi");
  out.source = Source::lagrange_rational;
  const std::int64_t q = t->den();
  const Rational share(1, q);
  if (q % 2 == 1) {
    for (std::int64_t m = 0; m < q; ++m) {
      const double sigma = static_cast<double>(2 * m + 1) / static_cast<double>(2 * q);
      out.atoms.push_back({map(specfun::g_lagrange(sigma)), share});
    }
  } else {
    out.atoms.push_back({jump.value, share});
    for (std::int64_t m = 1; m < q; ++m) {
      const double sigma = static_cast<double>(m) / static_cast<double>(q);
      out.atoms.push_back({map(specfun::g_lagrange(sigma)), share});
    }
  }
  return out;
}

PredictedSpectrum predict_shepard(const JumpSpec& jump, const Location& x0, double s) {
  if (!(s >= 1.0)) throw DomainError("predict_shepard: s must be at least 1");
  if (jump.right == jump.left) throw DomainError("predict_shepard: jump has zero height");
  // g_{s,i}(t) = f(x_i + 0) + (f(x_i - 0) - f(x_i + 0)) g_s(t)
  const AffineMap map{jump.right, jump.left - jump.right};
  const double midpoint = 0.5 * (jump.left + jump.right);
  const Rational* r = rational_of(x0);
  if (r != nullptr) check_unit_location(*r, "x0");

  PredictedSpectrum out{{}, std::nullopt, Source::shepard_irrational, s};
  if (s == 1.0) {
    if (r == nullptr) {
      out.source = Source::shepard_s1_irrational;
      out.atoms.push_back({midpoint, Rational(1, 1)});
    } else {
      out.source = Source::shepard_s1_rational;
      out.atoms.push_back({jump.value, Rational(1, r->den())});
      out.atoms.push_back({midpoint, Rational(r->den() - 1, r->den())});
    }
    return out;
  }

  const LimitProfile profile = LimitProfile::shepard(s);
  if (r == nullptr) {
    out.continuous = ContinuousComponent{profile, map};
    return out;
  }
  out.source = Source::shepard_rational;
  const std::int64_t q = r->den();
  const Rational share(1, q);
  out.atoms.push_back({jump.value, share});
  for (std::int64_t m = 1; m < q; ++m) {
    out.atoms.push_back(
        {map(profile(static_cast<double>(m) / static_cast<double>(q))), share});
  }
  return out;
}

double predicted_set_index(const PredictedSpectrum& spectrum, const IntervalUnion& A) {
  Rational atoms(0, 1);
  for (const auto& a : spectrum.atoms) {
    if (A.contains(a.value)) atoms = atoms + a.index;
  }
  double total = atoms.to_double();
  if (spectrum.continuous && !A.empty()) {
    const auto& c = *spectrum.continuous;
    total += specfun::profile_preimage_measure(c.profile, c.map.preimage(A));
  }
  return std::clamp(total, 0.0, 1.0);
}

nlohmann::json to_json(const PredictedSpectrum& spectrum) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : spectrum.atoms) {
    atoms.push_back(
        {{"value", a.value}, {"index_num", a.index.num()}, {"index_den", a.index.den()}});
  }
  nlohmann::json continuous = nullptr;
  if (spectrum.continuous) {
    const auto& c = *spectrum.continuous;
    continuous = {{"profile", c.profile.name()}, {"alpha", c.map.alpha}, {"beta", c.map.beta}};
    if (c.profile.kind() == LimitProfile::Kind::shepard_gs) continuous["s"] = c.profile.s();
  }
  nlohmann::json out = {
      {"atoms", atoms}, {"continuous", continuous}, {"source", source_name(spectrum.source)}};
  if (spectrum.s != 0.0) out["s"] = spectrum.s;
  return out;
}

}  // namespace convidx::theory
