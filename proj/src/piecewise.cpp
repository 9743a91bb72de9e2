#include "convidx/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "convidx/errors.hpp"

namespace convidx::piecewise {

namespace {

// cos(πt) for t ∈ (0,1), exact at the three rational values.
double cospi_unit(const Rational& t) {
  if (t == Rational(1, 2)) return 0.0;
  if (t == Rational(1, 3)) return 0.5;
  if (t == Rational(2, 3)) return -0.5;
  return std::cos(std::numbers::pi * t.to_double());
}

std::optional<Rational> niven_theta(const Rational& x) {
  if (x == Rational(0, 1)) return Rational(1, 2);
  if (x == Rational(1, 2)) return Rational(1, 3);
  if (x == Rational(-1, 2)) return Rational(2, 3);
  return std::nullopt;
}

std::optional<Rational> niven_x(const Rational& t) {
  if (t == Rational(1, 2)) return Rational(0, 1);
  if (t == Rational(1, 3)) return Rational(1, 2);
  if (t == Rational(2, 3)) return Rational(-1, 2);
  return std::nullopt;
}

}  // namespace

JumpLocation JumpLocation::plain(double x) {
  if (!std::isfinite(x)) throw DomainError("jump location must be finite");
  return {Kind::plain, x, x, std::nullopt};
}

JumpLocation JumpLocation::rational_x(Rational x) {
  return {Kind::rational_x, x.to_double(), x.to_double(), x};
}

JumpLocation JumpLocation::rational_theta(Rational t) {
  if (!(t > Rational(0, 1) && t < Rational(1, 1))) {
    throw DomainError("theta/pi must lie in (0, 1)");
  }
  return {Kind::rational_theta, cospi_unit(t), t.to_double(), t};
}

JumpLocation JumpLocation::irrational_x(double x) {
  if (!std::isfinite(x)) throw DomainError("jump location must be finite");
  return {Kind::irrational_x, x, x, std::nullopt};
}

JumpLocation JumpLocation::irrational_theta(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("theta/pi must lie in (0, 1)");
  return {Kind::irrational_theta, std::cos(std::numbers::pi * t), t, std::nullopt};
}

double JumpLocation::theta_over_pi() const noexcept {
  if (kind_ == Kind::rational_theta || kind_ == Kind::irrational_theta) return param_;
  return std::acos(std::clamp(x_, -1.0, 1.0)) / std::numbers::pi;
}

std::optional<Rational> JumpLocation::exact_x() const {
  if (kind_ == Kind::rational_x) return exact_;
  if (kind_ == Kind::rational_theta) return niven_x(*exact_);
  return std::nullopt;
}

std::optional<Rational> JumpLocation::exact_theta() const {
  if (kind_ == Kind::rational_theta) return exact_;
  if (kind_ == Kind::rational_x) return niven_theta(*exact_);
  return std::nullopt;
}

std::optional<Location> JumpLocation::theta_location() const {
  if (auto t = exact_theta()) return Location{*t};
  switch (kind_) {
    case Kind::rational_x:  // rational x outside {0, ±1/2}: θ/π is irrational
    case Kind::irrational_theta:
      return Location{Irrational{theta_over_pi()}};
    default:
      return std::nullopt;
  }
}

std::optional<Location> JumpLocation::x_location() const {
  if (auto x = exact_x()) return Location{*x};
  switch (kind_) {
    case Kind::rational_theta:  // cos(πp/q) outside {0, ±1/2} is irrational
    case Kind::irrational_x:
      return Location{Irrational{x_}};
    default:
      return std::nullopt;
  }
}

double JumpSpec::coefficient(Orientation orientation) const noexcept {
  return orientation == Orientation::left0_right1 ? right - left : left - right;
}

double JumpSpec::normalized_value(Orientation orientation) const noexcept {
  return orientation == Orientation::left0_right1 ? (value - left) / (right - left)
                                                  : (value - right) / (left - right);
}

double StepSpec::operator()(double x) const {
  if (!domain.contains(x)) throw DomainError("x outside the step's domain");
  const double x0v = x0.x();
  if (x == x0v) return d;
  const bool left_side = x < x0v;
  if (orientation == Orientation::left0_right1) return left_side ? 0.0 : 1.0;
  return left_side ? 1.0 : 0.0;
}

StepSpec lagrange_step(JumpLocation x0, double d) {
  return {x0, d, Orientation::left0_right1, {-1.0, 1.0}};
}

StepSpec shepard_step(JumpLocation x0, double d) {
  return {x0, d, Orientation::left1_right0, {0.0, 1.0}};
}

double ContinuousPart::operator()(double x) const noexcept {
  double p = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) p = p * x + *it;
  for (const auto& t : trig) {
    p += t.cos_coeff * std::cos(t.frequency * x) + t.sin_coeff * std::sin(t.frequency * x);
  }
  return p;
}

JumpFunction::JumpFunction(Domain domain, ContinuousPart base, std::vector<JumpSpec> jumps)
    : domain_(domain), base_(std::move(base)), jumps_(std::move(jumps)) {
  if (!(domain_.lo < domain_.hi)) throw DomainError("domain must satisfy lo < hi");
  double accumulated = 0.0;
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const auto& j = jumps_[i];
    if (!domain_.interior(j.x())) throw DomainError("jump must be strictly interior");
    if (i > 0 && !(j.x() > jumps_[i - 1].x())) {
      throw DomainError("jump locations must be strictly increasing");
    }
    if (!std::isfinite(j.left) || !std::isfinite(j.right) || !std::isfinite(j.value)) {
      throw DomainError("jump limits and value must be finite");
    }
    if (j.right == j.left) throw DomainError("jump with zero height");
    const double expected = base_(j.x()) + accumulated;
    if (std::abs(expected - j.left) > 1e-9 * (1.0 + std::abs(expected))) {
      throw DomainError("declared left limit " + std::to_string(j.left) +
                        " inconsistent with continuous part (" +
                        std::to_string(expected) + ")");
    }
    accumulated += j.right - j.left;
  }
}

JumpFunction JumpFunction::from_step(const StepSpec& step) {
  if (step.orientation == Orientation::left0_right1) {
    return JumpFunction(step.domain, {{0.0}, {}}, {{step.x0, 0.0, 1.0, step.d}});
  }
  return JumpFunction(step.domain, {{1.0}, {}}, {{step.x0, 1.0, 0.0, step.d}});
}

double JumpFunction::value_off_jumps(double x) const noexcept {
  double v = base_(x);
  for (const auto& j : jumps_) {
    if (!(j.x() < x)) break;
    v += j.right - j.left;
  }
  return v;
}

double JumpFunction::operator()(double x) const {
  if (!domain_.contains(x)) throw DomainError("x outside the function's domain");
  for (const auto& j : jumps_) {
    if (j.x() == x) return j.value;
  }
  return value_off_jumps(x);
}

JumpFunction JumpFunction::with_location(std::size_t i, const JumpLocation& location) const {
  if (i >= jumps_.size()) throw DomainError("jump index out of range");
  if (std::abs(location.x() - jumps_[i].x()) > 1e-12) {
    throw DomainError("relocated jump does not match the declared abscissa");
  }
  auto jumps = jumps_;
  jumps[i].location = location;
  return JumpFunction(domain_, base_, std::move(jumps));
}

double eval(const JumpFunction& f, double x) { return f(x); }

std::pair<double, double> one_sided_limits(const JumpFunction& f, double x0) {
  if (!f.domain().interior(x0)) throw DomainError("x0 must be in the open domain");
  for (const auto& j : f.jumps()) {
    if (j.x() == x0) return {j.left, j.right};
  }
  const double v = f.value_off_jumps(x0);
  return {v, v};
}

double Decomposition::operator()(double x) const {
  double v = continuous(x);
  for (const auto& s : steps) v += s.coefficient * s.step(x);
  return v;
}

Decomposition decompose(const JumpFunction& f, Orientation orientation) {
  Decomposition out{orientation, f.base(), {}};
  if (out.continuous.poly.empty()) out.continuous.poly.push_back(0.0);
  const bool lagrange = orientation == Orientation::left0_right1;
  for (const auto& j : f.jumps()) {
    // With 1-on-the-left steps the continuous part absorbs every jump.
    if (!lagrange) out.continuous.poly[0] += j.right - j.left;
    out.steps.push_back({j.coefficient(orientation),
                         {j.location, j.normalized_value(orientation), orientation,
                          f.domain()}});
  }
  return out;
}

}  // namespace convidx::piecewise
