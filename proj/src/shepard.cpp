#include "convidx/shepard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "convidx/errors.hpp"

namespace convidx::shepard {

namespace {

using v2d = double __attribute__((vector_size(16)));

struct Sums {
  double num = 0.0;
  double den = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

// Adds Σ w_m·samples[first + m·dir] and Σ w_m over m = 0..count-1 with
// w_m = weight(a + m·unit), and tracks the sample range. Offsets are carried
// as doubles; on the exact path they are integers and stay exact.
template <typename Weight>
void accumulate_scalar(Weight weight, const double* first, std::ptrdiff_t dir,
                       std::size_t count, double a, double unit, Sums& sums) {
  double offset = a;
  for (std::size_t m = 0; m < count; ++m, offset += unit) {
    const double w = weight(offset);
    const double f = first[static_cast<std::ptrdiff_t>(m) * dir];
    sums.num += w * f;
    sums.den += w;
    sums.lo = std::min(sums.lo, f);
    sums.hi = std::max(sums.hi, f);
  }
}

// Same, two lanes at a time; `weight` must accept v2d as well as double.
template <typename Weight>
void accumulate_pairs(Weight weight, const double* first, std::ptrdiff_t dir,
                      std::size_t count, double a, double unit, Sums& sums) {
  v2d vnum = {0.0, 0.0};
  v2d vden = {0.0, 0.0};
  v2d vlo = {sums.lo, sums.lo};
  v2d vhi = {sums.hi, sums.hi};
  v2d offset = {a, a + unit};
  const double stride = 2.0 * unit;
  std::size_t m = 0;
  for (; m + 2 <= count; m += 2, offset += stride) {
    const auto i = static_cast<std::ptrdiff_t>(m) * dir;
    const v2d w = weight(offset);
    const v2d f = {first[i], first[i + dir]};
    vnum += w * f;
    vden += w;
    vlo = f < vlo ? f : vlo;
    vhi = f > vhi ? f : vhi;
  }
  sums.num += vnum[0] + vnum[1];
  sums.den += vden[0] + vden[1];
  sums.lo = std::min({sums.lo, vlo[0], vlo[1]});
  sums.hi = std::max({sums.hi, vhi[0], vhi[1]});
  accumulate_scalar(weight, first + static_cast<std::ptrdiff_t>(m) * dir, dir, count - m,
                    offset[0], unit, sums);
}

// Weighted mean over the nodes k0, k0-1, ... at distances a, a+unit, ... and
// k0+1, k0+2, ... at b, b+unit, ... (common scale factors cancel). Weights
// are (u_min/u)^s relative to the nearest node.
double weighted_mean(double s, std::span<const double> samples, std::size_t k0, double a,
                     double b, double unit) {
  const std::size_t n = samples.size() - 1;
  const double umin = std::min(a, b);
  const double* left = samples.data() + k0;
  const double* right = samples.data() + k0 + 1;
  Sums sums;
  if (s == 1.0) {
    auto w = [umin](auto u) { return umin / u; };
    accumulate_pairs(w, left, -1, k0 + 1, a, unit, sums);
    accumulate_pairs(w, right, 1, n - k0, b, unit, sums);
  } else if (s == 2.0) {
    auto w = [umin](auto u) {
      const auto r = umin / u;
      return r * r;
    };
    accumulate_pairs(w, left, -1, k0 + 1, a, unit, sums);
    accumulate_pairs(w, right, 1, n - k0, b, unit, sums);
  } else {
    auto w = [umin, s](double u) { return std::exp(-s * std::log(u / umin)); };
    accumulate_scalar(w, left, -1, k0 + 1, a, unit, sums);
    accumulate_scalar(w, right, 1, n - k0, b, unit, sums);
  }
  // A convex combination; clamp away the last-ulp excursions.
  return std::clamp(sums.num / sums.den, sums.lo, sums.hi);
}

void check_samples(std::size_t count, std::size_t n) {
  if (count != n + 1) throw DomainError("shepard: expected n + 1 samples");
}

}  // namespace

void ShepardConfig::validate() const {
  if (!(s >= kMinExponent && s <= kMaxExponent)) {
    throw DomainError("shepard: s must lie in [1, 20]");
  }
  if (n == 0) throw DomainError("shepard: n must be positive");
}

std::vector<double> sample_nodes(std::size_t n, const piecewise::JumpFunction& f) {
  if (n == 0) throw DomainError("shepard: n must be positive");
  struct Site {
    std::optional<Rational> exact;
    double x;
    double step;
    double value;
  };
  std::vector<Site> sites;
  for (const auto& j : f.jumps()) {
    sites.push_back({j.location.exact_x(), j.x(), j.right - j.left, j.value});
  }

  // sign of k/n - x_j
  const auto compare = [n](std::size_t k, double x, const Site& site) {
    if (site.exact) {
      const __int128 lhs = static_cast<__int128>(k) * site.exact->den();
      const __int128 rhs = static_cast<__int128>(n) * site.exact->num();
      return lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
    }
    const double dx = x - site.x;
    return std::abs(dx) < kNodeTolerance ? 0 : (dx < 0.0 ? -1 : 1);
  };

  // First node at or right of each jump (k > n when there is none).
  const double dn = static_cast<double>(n);
  std::vector<std::size_t> boundary(sites.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double guess = std::floor(dn * sites[i].x) - 1.0;
    if (guess > static_cast<double>(k)) k = static_cast<std::size_t>(guess);
    while (k <= n && compare(k, static_cast<double>(k) / dn, sites[i]) < 0) ++k;
    boundary[i] = k;
  }

  std::vector<double> out(n + 1);
  const auto& base = f.base();
  const bool constant_base = base.trig.empty() && base.poly.size() <= 1;
  double offset = 0.0;
  std::size_t begin = 0;
  auto fill = [&](std::size_t end) {  // [begin, end) lies strictly between jumps
    for (std::size_t j = begin; j < end; ++j) {
      out[j] = (constant_base ? (base.poly.empty() ? 0.0 : base.poly[0])
                              : base(static_cast<double>(j) / dn)) +
               offset;
    }
    begin = end;
  };
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::size_t b = std::min(boundary[i], n + 1);
    fill(std::max(b, begin));
    if (b <= n && compare(b, static_cast<double>(b) / dn, sites[i]) == 0) {
      out[b] = sites[i].value;
      begin = b + 1;
    }
    offset += sites[i].step;
  }
  fill(n + 1);
  return out;
}

double shepard_eval(const ShepardConfig& cfg, std::span<const double> samples, double x) {
  cfg.validate();
  check_samples(samples.size(), cfg.n);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("shepard_eval: x outside [0, 1]");
  const SigmaTrace tr = sigma_shepard(x, cfg.n);
  if (tr.is_node) return samples[static_cast<std::size_t>(tr.k0)];
  return weighted_mean(cfg.s, samples, static_cast<std::size_t>(tr.k0), tr.sigma,
                       1.0 - tr.sigma, 1.0);
}

double shepard_eval(const ShepardConfig& cfg, const piecewise::JumpFunction& f, double x) {
  return shepard_eval(cfg, sample_nodes(cfg.n, f), x);
}

double shepard_at_jump(const ShepardConfig& cfg, std::span<const double> samples,
                       const piecewise::JumpSpec& jump) {
  cfg.validate();
  check_samples(samples.size(), cfg.n);
  if (auto r = jump.location.exact_x()) {
    const SigmaTrace tr = sigma_shepard(*r, cfg.n);
    const auto k0 = static_cast<std::size_t>(tr.k0);
    if (tr.is_node) return samples[k0];
    // distances to k0 - m and k0 + 1 + m, scaled by nq: rem + mq and q - rem + mq
    const auto rem = static_cast<std::int64_t>(static_cast<__int128>(cfg.n) * r->num() %
                                               r->den());
    const double q = static_cast<double>(r->den());
    return weighted_mean(cfg.s, samples, k0, static_cast<double>(rem),
                         q - static_cast<double>(rem), q);
  }
  if (!(jump.x() >= 0.0 && jump.x() <= 1.0)) {
    throw DomainError("shepard_at_jump: jump outside [0, 1]");
  }
  const double x0 = jump.location.kind() == piecewise::JumpLocation::Kind::irrational_x
                        ? jump.location.declared_value()
                        : jump.x();
  const SigmaTrace tr = sigma_shepard(x0, cfg.n);
  if (tr.is_node) return samples[static_cast<std::size_t>(tr.k0)];
  return weighted_mean(cfg.s, samples, static_cast<std::size_t>(tr.k0), tr.sigma,
                       1.0 - tr.sigma, 1.0);
}

double shepard_at_jump(const ShepardConfig& cfg, const piecewise::JumpFunction& f,
                       std::size_t i) {
  if (i >= f.jumps().size()) throw DomainError("shepard_at_jump: jump index out of range");
  return shepard_at_jump(cfg, sample_nodes(cfg.n, f), f.jumps()[i]);
}

SigmaTrace sigma_shepard(const Rational& x0, std::size_t n) {
  if (x0 < Rational(0, 1) || x0 > Rational(1, 1)) {
    throw DomainError("sigma_shepard: x0 must lie in [0, 1]");
  }
  const __int128 np = static_cast<__int128>(n) * x0.num();
  const std::int64_t q = x0.den();
  SigmaTrace tr;
  tr.n = n;
  tr.k0 = static_cast<std::int64_t>(np / q);
  tr.sigma_exact = Rational(static_cast<std::int64_t>(np % q), q);
  tr.sigma = tr.sigma_exact->to_double();
  tr.is_node = np % q == 0;
  return tr;
}

SigmaTrace sigma_shepard(double x0, std::size_t n) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw DomainError("sigma_shepard: x0 must lie in [0, 1]");
  if (n == 0) throw DomainError("sigma_shepard: n must be positive");
  const double nx = static_cast<double>(n) * x0;
  SigmaTrace tr;
  tr.n = n;
  tr.k0 = static_cast<std::int64_t>(std::floor(nx));
  tr.sigma = nx - std::floor(nx);
  // |x0 - k/n| < tol  <=>  n·|x0 - k/n| < n·tol
  const double tol = kNodeTolerance * static_cast<double>(n);
  if (tr.sigma > 1.0 - tol) {
    ++tr.k0;
    tr.sigma = 0.0;
  } else if (tr.sigma < tol) {
    tr.sigma = 0.0;
  }
  tr.is_node = tr.sigma == 0.0;
  return tr;
}

}  // namespace convidx::shepard
