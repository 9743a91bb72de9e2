#pragma once

// Functions with finitely many jump discontinuities of the first kind:
// a continuous part (polynomial plus a finite trigonometric series) and a
// sorted list of jumps, each carrying its left limit, right limit and the
// value taken at the jump point.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "convidx/rational.hpp"

namespace convidx::piecewise {

/// Step orientation. left0_right1 is the step used with Chebyshev nodes on
/// [-1,1]; left1_right0 the one used with Shepard operators on [0,1].
enum class Orientation { left0_right1, left1_right0 };

struct Domain {
  double lo;
  double hi;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  bool interior(double x) const noexcept { return x > lo && x < hi; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Position of a jump. The floating-point abscissa is always available.
/// Exact forms are kept when the location was declared as x = p/q or as
/// x = cos(πp/q); an irrationality marker refers to x or to θ/π.
class JumpLocation {
 public:
  enum class Kind { plain, rational_x, rational_theta, irrational_x, irrational_theta };

  static JumpLocation plain(double x);
  static JumpLocation rational_x(Rational x);
  /// x = cos(π·t); t must lie in (0, 1).
  static JumpLocation rational_theta(Rational theta_over_pi);
  static JumpLocation irrational_x(double x);
  static JumpLocation irrational_theta(double theta_over_pi);

  Kind kind() const noexcept { return kind_; }
  double x() const noexcept { return x_; }
  /// θ/π with x = cos θ, as a float.
  double theta_over_pi() const noexcept;
  /// The declared exact rational (x or θ/π depending on kind), if any.
  std::optional<Rational> declared_rational() const noexcept { return exact_; }
  /// Declared float parameter (x or θ/π depending on kind).
  double declared_value() const noexcept { return param_; }

  /// x as an exact rational when known exactly. cos(πp/q) is rational only
  /// for the values 0 and ±1/2 inside (-1, 1).
  std::optional<Rational> exact_x() const;
  /// θ/π as an exact rational when known exactly.
  std::optional<Rational> exact_theta() const;

  /// θ/π classified as rational or irrational, if that is decidable from the
  /// declaration.
  std::optional<Location> theta_location() const;
  /// x classified as rational or irrational, if decidable.
  std::optional<Location> x_location() const;

  friend bool operator==(const JumpLocation&, const JumpLocation&) = default;

 private:
  JumpLocation(Kind kind, double x, double param, std::optional<Rational> exact)
      : kind_(kind), x_(x), param_(param), exact_(exact) {}

  Kind kind_;
  double x_;
  double param_;
  std::optional<Rational> exact_;
};

struct JumpSpec {
  JumpLocation location;
  double left;   // f(x_i - 0)
  double right;  // f(x_i + 0)
  double value;  // f(x_i)

  double x() const noexcept { return location.x(); }
  /// c_i: right - left for left0_right1, left - right for left1_right0.
  double coefficient(Orientation orientation) const noexcept;
  /// d̃_i, the point value of the normalized step.
  double normalized_value(Orientation orientation) const noexcept;

  friend bool operator==(const JumpSpec&, const JumpSpec&) = default;
};

/// Pure step h_{x0,d}: 0 | d | 1 (left0_right1) or 1 | d | 0 (left1_right0).
struct StepSpec {
  JumpLocation x0;
  double d;
  Orientation orientation;
  Domain domain;

  double operator()(double x) const;
};

StepSpec lagrange_step(JumpLocation x0, double d);
StepSpec shepard_step(JumpLocation x0, double d);

struct TrigTerm {
  double frequency;
  double cos_coeff;
  double sin_coeff;

  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

/// Σ poly[j] x^j + Σ (a cos(ωx) + b sin(ωx)).
struct ContinuousPart {
  std::vector<double> poly;
  std::vector<TrigTerm> trig;

  double operator()(double x) const noexcept;
  friend bool operator==(const ContinuousPart&, const ContinuousPart&) = default;
};

class JumpFunction {
 public:
  /// Validates: jumps strictly increasing and strictly interior, right !=
  /// left, and each declared left limit consistent (to 1e-9 relative) with
  /// the continuous part plus the preceding jumps.
  JumpFunction(Domain domain, ContinuousPart base, std::vector<JumpSpec> jumps);

  static JumpFunction from_step(const StepSpec& step);

  const Domain& domain() const noexcept { return domain_; }
  const ContinuousPart& base() const noexcept { return base_; }
  const std::vector<JumpSpec>& jumps() const noexcept { return jumps_; }

  /// Exact piecewise value; d_i at x == x_i. Throws outside the domain.
  double operator()(double x) const;

  /// Value assuming x is not a jump point: base plus the steps strictly to
  /// the left of x.
  double value_off_jumps(double x) const noexcept;

  /// Same function with jump i relocated to an equivalent annotation (the
  /// abscissa must agree to 1e-12).
  JumpFunction with_location(std::size_t i, const JumpLocation& location) const;

  friend bool operator==(const JumpFunction&, const JumpFunction&) = default;

 private:
  Domain domain_;
  ContinuousPart base_;
  std::vector<JumpSpec> jumps_;
};

double eval(const JumpFunction& f, double x);

/// (f(x0 - 0), f(x0 + 0)); x0 must be in the open domain.
std::pair<double, double> one_sided_limits(const JumpFunction& f, double x0);

struct StepComponent {
  double coefficient;
  StepSpec step;
};

/// f = F + Σ c_i h_i with F continuous.
struct Decomposition {
  Orientation orientation;
  ContinuousPart continuous;
  std::vector<StepComponent> steps;

  double operator()(double x) const;
};

Decomposition decompose(const JumpFunction& f,
                        Orientation orientation = Orientation::left0_right1);

}  // namespace convidx::piecewise
