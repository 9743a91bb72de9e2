#pragma once

// Hurwitz zeta, the alternating Lerch series J(s,a) = Φ(1/2, s, a), and the
// two limit profiles built from them:
//
//   g(x)   = sin(πx)/π · J(1, x)                     (Lagrange, Chebyshev nodes)
//   g_s(x) = ζ(s,x) / (ζ(s,x) + ζ(s,1-x))            (Shepard, exponent s > 1)
//
// Both profiles map (0,1) onto (0,1), decrease from 1 to 0 and satisfy
// p(x) + p(1-x) = 1.

#include <string>

#include "convidx/interval_union.hpp"

namespace convidx::specfun {

/// Supported parameter box. Requests outside it are refused.
inline constexpr double kMaxZetaS = 50.0;
inline constexpr double kMaxZetaA = 2.0;

struct ZetaEval {
  double s;
  double a;
  double value;
  /// Truncation bound plus a floating-point summation bound. It is below
  /// 1e-10 * max(1, |value|) everywhere in the supported box.
  double abs_error_bound;
};

/// ζ(s,a) = Σ_{n>=0} (n+a)^{-s} for s ∈ (1, 50], a ∈ (0, 2].
/// Direct sum up to M plus an Euler–Maclaurin tail through the B2 term.
ZetaEval hurwitz_zeta(double s, double a);

/// J(s,a) = Σ_{n>=0} (-1)^n (n+a)^{-s} for s ∈ [1, 50], a ∈ (0, 1].
/// Pairs of terms are summed as an absolutely convergent series; the tail of
/// the alternating series is closed with its Euler–Boole expansion.
ZetaEval lerch_J(double s, double a);

/// |J(s,a) - (2^{1-s} ζ(s,a/2) - ζ(s,a))| / max(1, |J(s,a)|).
double j_zeta_relation_residual(double s, double a);

double g_lagrange(double x);
double g_shepard(double s, double x);

class LimitProfile {
 public:
  enum class Kind { lagrange_g, shepard_gs };

  static LimitProfile lagrange() { return LimitProfile(Kind::lagrange_g, 0.0); }
  static LimitProfile shepard(double s);

  Kind kind() const noexcept { return kind_; }
  /// Shepard exponent; zero for the Lagrange profile.
  double s() const noexcept { return s_; }
  std::string name() const;

  double operator()(double x) const;

  /// The unique x ∈ [0,1] with profile(x) = y, by bisection to 1e-10 (well
  /// below that in practice). y >= 1 maps to 0 and y <= 0 maps to 1.
  double inverse(double y) const;

  friend bool operator==(const LimitProfile&, const LimitProfile&) = default;

 private:
  LimitProfile(Kind kind, double s) : kind_(kind), s_(s) {}

  Kind kind_;
  double s_;
};

/// Checks that the profile is strictly decreasing on a uniform interior grid
/// of `points` points, through its log-odds log p(x) - log p(1-x) so that
/// the check keeps resolution where p rounds to 0 or 1. Throws PreconditionError("profile not monotone on
/// grid") otherwise. Results for the default grid are memoized per profile.
void verify_monotone(const LimitProfile& profile, std::size_t points = 10000);

/// |profile^{-1}(A)|, the Lebesgue measure of the preimage in (0,1).
double profile_preimage_measure(const LimitProfile& profile,
                                const IntervalUnion& A);

}  // namespace convidx::specfun
