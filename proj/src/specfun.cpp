#include "convidx/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "convidx/errors.hpp"

namespace convidx::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kZetaTruncation = 1e-12;
constexpr double kLerchTruncation = 1e-15;

double rising(double s, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= s + i;
  return r;
}

// sin(πx) with the argument folded into [0, 1/2] so that 1 - x stays exact.
double sinpi_unit(double x) {
  const double y = x <= 0.5 ? x : 1.0 - x;
  return std::sin(std::numbers::pi * y);
}

void check_overflow(double s, double a) {
  if (s * std::log(1.0 / a) > 700.0) {
    throw DomainError("value overflows binary64 (a too small for this s)");
  }
}

}  // namespace

ZetaEval hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(s <= kMaxZetaS)) {
    throw DomainError("hurwitz_zeta: s must lie in (1, 50]");
  }
  if (!(a > 0.0) || !(a <= kMaxZetaA)) {
    throw DomainError("hurwitz_zeta: a must lie in (0, 2]");
  }
  check_overflow(s, a);

  // Next Euler–Maclaurin term is s(s+1)(s+2)/720 · (M+a)^{-s-3}.
  const double next_coeff = rising(s, 3) / 720.0;
  const double z_min = std::pow(next_coeff / kZetaTruncation, 1.0 / (s + 3.0));
  const auto M = static_cast<long>(std::max(1.0, std::ceil(z_min - a)));

  double sum = 0.0;
  for (long n = M - 1; n >= 0; --n) sum += std::pow(static_cast<double>(n) + a, -s);

  const double z = static_cast<double>(M) + a;
  const double zs = std::pow(z, -s);
  const double tail = z * zs / (s - 1.0) + 0.5 * zs + s * zs / (12.0 * z);
  const double value = sum + tail;
  const double truncation = next_coeff * zs / (z * z * z);
  const double rounding = static_cast<double>(M + 4) * kEps * value;
  return {s, a, value, truncation + rounding};
}

ZetaEval lerch_J(double s, double a) {
  if (!(s >= 1.0) || !(s <= kMaxZetaS)) {
    throw DomainError("lerch_J: s must lie in [1, 50]");
  }
  if (!(a > 0.0) || !(a <= 1.0)) {
    throw DomainError("lerch_J: a must lie in (0, 1]");
  }
  check_overflow(s, a);

  // First omitted Euler–Boole term: 17 (s)_7 / 80640 · z^{-s-7}.
  const double next_coeff = 17.0 * rising(s, 7) / 80640.0;
  const double z_min = std::pow(next_coeff / kLerchTruncation, 1.0 / (s + 7.0));
  const auto pairs = static_cast<long>(std::max(4.0, std::ceil(0.5 * (z_min - a))));

  double sum = 0.0;
  for (long m = pairs - 1; m >= 0; --m) {
    const double x = 2.0 * static_cast<double>(m) + a;
    // (x)^{-s} - (x+1)^{-s} without cancellation
    const double pair = s == 1.0 ? 1.0 / (x * (x + 1.0))
                                 : std::pow(x, -s) * -std::expm1(-s * std::log1p(1.0 / x));
    sum += pair;
  }

  // Σ_{k>=0} (-1)^k f(z+k) = f/2 - f'/4 + f'''/48 - f^(5)/480 + ...
  const double z = 2.0 * static_cast<double>(pairs) + a;
  const double zs = std::pow(z, -s);
  const double iz = 1.0 / z;
  const double iz2 = iz * iz;
  const double tail =
      zs * (0.5 + iz * (0.25 * s + iz2 * (-rising(s, 3) / 48.0 +
                                          iz2 * rising(s, 5) / 480.0)));
  const double value = sum + tail;
  const double truncation = 2.0 * next_coeff * zs * iz2 * iz2 * iz2 * iz;
  const double rounding = static_cast<double>(pairs + 6) * kEps * std::abs(value);
  return {s, a, value, truncation + rounding};
}

double j_zeta_relation_residual(double s, double a) {
  if (!(s > 1.0)) throw DomainError("j_zeta_relation_residual: s must exceed 1");
  const double j = lerch_J(s, a).value;
  const double rhs =
      std::exp2(1.0 - s) * hurwitz_zeta(s, 0.5 * a).value - hurwitz_zeta(s, a).value;
  return std::abs(j - rhs) / std::max(1.0, std::abs(j));
}

double g_lagrange(double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("g_lagrange: x must lie in (0, 1)");
  return sinpi_unit(x) / std::numbers::pi * lerch_J(1.0, x).value;
}

double g_shepard(double s, double x) {
  if (!(s > 1.0)) throw DomainError("g_shepard: s must exceed 1");
  if (!(x > 0.0) || !(x < 1.0)) throw DomainError("g_shepard: x must lie in (0, 1)");
  const double left = hurwitz_zeta(s, x).value;
  const double right = hurwitz_zeta(s, 1.0 - x).value;
  return left / (left + right);
}

LimitProfile LimitProfile::shepard(double s) {
  if (!(s > 1.0) || !(s <= kMaxZetaS)) {
    throw DomainError("shepard profile needs s in (1, 50]");
  }
  return LimitProfile(Kind::shepard_gs, s);
}

std::string LimitProfile::name() const {
  return kind_ == Kind::lagrange_g ? "g" : "g_s";
}

double LimitProfile::operator()(double x) const {
  return kind_ == Kind::lagrange_g ? g_lagrange(x) : g_shepard(s_, x);
}

double LimitProfile::inverse(double y) const {
  if (std::isnan(y)) throw DomainError("profile inverse of NaN");
  if (y >= 1.0) return 0.0;
  if (y <= 0.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void verify_monotone(const LimitProfile& profile, std::size_t points) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, bool> verified;
  const std::pair key{static_cast<int>(profile.kind()), profile.s()};
  const bool memoize = points == 10000;
  if (memoize) {
    std::lock_guard lock(mutex);
    if (verified.count(key) != 0) {
      if (verified[key]) return;
      throw PreconditionError("profile not monotone on grid");
    }
  }

  // For large s, g_s(x) rounds to exactly 1 near x = 0, so the profile
  // itself cannot be compared there. The log-odds log p(x) - log p(1-x) are
  // monotone exactly when p is (p(1-x) = 1 - p(x)) and keep full resolution
  // at both ends, since the small tail value is computed directly.
  auto log_odds = [&](double x) {
    if (profile.kind() == LimitProfile::Kind::shepard_gs) {
      return std::log(hurwitz_zeta(profile.s(), x).value) -
             std::log(hurwitz_zeta(profile.s(), 1.0 - x).value);
    }
    return std::log(g_lagrange(x)) - std::log(g_lagrange(1.0 - x));
  };
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  const double step = 1.0 / static_cast<double>(points + 1);
  for (std::size_t i = 1; i <= points && ok; ++i) {
    const double v = log_odds(static_cast<double>(i) * step);
    ok = std::isfinite(v) && v < prev;
    prev = v;
  }

  if (memoize) {
    std::lock_guard lock(mutex);
    verified[key] = ok;
  }
  if (!ok) throw PreconditionError("profile not monotone on grid");
}

double profile_preimage_measure(const LimitProfile& profile,
                                const IntervalUnion& A) {
  verify_monotone(profile);
  double measure = 0.0;
  for (const auto& piece : A.intervals()) {
    // decreasing profile: {lo <= p(x) <= hi} = [p^{-1}(hi), p^{-1}(lo)]
    measure += std::max(0.0, profile.inverse(piece.lo) - profile.inverse(piece.hi));
  }
  return std::min(measure, 1.0);
}

}  // namespace convidx::specfun
