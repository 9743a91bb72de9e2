#include "convidx/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "convidx/errors.hpp"

namespace convidx::lagrange {

namespace {

constexpr double pi = std::numbers::pi;

// A jump as seen from the node grid: exact θ0/π when known.
struct Site {
  std::optional<Rational> theta;
  double x;
  double step;
  double value;
};

enum class Side { left, right, on };

// Position of the node θ_k = (2k-1)π/(2n) relative to the jump.
Side node_side(std::size_t n, std::size_t k, double node, const Site& site) {
  if (site.theta) {
    const __int128 lhs = static_cast<__int128>(2 * k - 1) * site.theta->den();
    const __int128 rhs = static_cast<__int128>(2 * n) * site.theta->num();
    if (lhs == rhs) return Side::on;
    return lhs < rhs ? Side::right : Side::left;  // smaller angle, larger x
  }
  if (std::abs(node - site.x) < kNodeTolerance) return Side::on;
  return node > site.x ? Side::right : Side::left;
}

double alternating(std::size_t k) { return (k % 2 == 1) ? 1.0 : -1.0; }

}  // namespace

ChebyshevGrid::ChebyshevGrid(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("Chebyshev grid needs n >= 1");
  theta_.resize(n);
  node_.resize(n);
  sin_theta_.resize(n);
  const double two_n = 2.0 * static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double odd = static_cast<double>(2 * k - 1);
    theta_[k - 1] = pi * odd / two_n;
    // cos θ_k = sin(π(n-2k+1)/(2n)): exactly antisymmetric in k ↔ n+1-k
    node_[k - 1] = std::sin(pi * (static_cast<double>(n) - odd) / two_n);
    sin_theta_[k - 1] = std::sin(theta_[k - 1]);
  }
}

std::size_t ChebyshevGrid::coincident_node(double x) const {
  const double theta = std::acos(std::clamp(x, -1.0, 1.0));
  const auto guess = static_cast<long>(std::floor(static_cast<double>(n_) * theta / pi + 0.5));
  for (long k = guess - 1; k <= guess + 1; ++k) {
    if (k < 1 || k > static_cast<long>(n_)) continue;
    if (std::abs(x - node_[static_cast<std::size_t>(k) - 1]) < kNodeTolerance) {
      return static_cast<std::size_t>(k);
    }
  }
  return 0;
}

double fundamental_eval(const ChebyshevGrid& grid, std::size_t k, double x) {
  const std::size_t n = grid.n();
  if (k < 1 || k > n) throw DomainError("fundamental_eval: k must lie in 1..n");
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("fundamental_eval: x outside [-1, 1]");
  if (const std::size_t j = grid.coincident_node(x); j != 0) return j == k ? 1.0 : 0.0;
  const double theta = std::acos(x);
  const double tk = grid.theta(k);
  const double diff = -2.0 * std::sin(0.5 * (theta + tk)) * std::sin(0.5 * (theta - tk));
  return alternating(k) / static_cast<double>(n) * std::cos(static_cast<double>(n) * theta) *
         grid.sin_theta(k) / diff;
}

std::vector<double> sample_nodes(const ChebyshevGrid& grid, const piecewise::JumpFunction& f) {
  std::vector<Site> sites;
  for (const auto& j : f.jumps()) {
    sites.push_back({j.location.exact_theta(), j.x(), j.right - j.left, j.value});
  }
  const std::size_t n = grid.n();
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = grid.node(k);
    double v = f.base()(x);
    for (const auto& site : sites) {
      const Side side = node_side(n, k, x, site);
      if (side == Side::on) {
        v = site.value;
        break;
      }
      if (side == Side::right) v += site.step;
    }
    out[k - 1] = v;
  }
  return out;
}

double lagrange_eval(const ChebyshevGrid& grid, std::span<const double> samples, double x) {
  const std::size_t n = grid.n();
  if (samples.size() != n) throw DomainError("lagrange_eval: sample count must equal n");
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("lagrange_eval: x outside [-1, 1]");
  if (const std::size_t j = grid.coincident_node(x); j != 0) return samples[j - 1];
  const double theta = std::acos(x);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double tk = grid.theta(k);
    const double diff = -2.0 * std::sin(0.5 * (theta + tk)) * std::sin(0.5 * (theta - tk));
    sum += alternating(k) * grid.sin_theta(k) * samples[k - 1] / diff;
  }
  return std::cos(static_cast<double>(n) * theta) / static_cast<double>(n) * sum;
}

double lagrange_eval(const ChebyshevGrid& grid, const piecewise::JumpFunction& f, double x) {
  return lagrange_eval(grid, sample_nodes(grid, f), x);
}

double lagrange_at_jump(const ChebyshevGrid& grid, std::span<const double> samples,
                        const piecewise::JumpSpec& jump) {
  const std::size_t n = grid.n();
  if (samples.size() != n) throw DomainError("lagrange_at_jump: sample count must equal n");
  if (!(jump.x() > -1.0 && jump.x() < 1.0)) {
    throw DomainError("lagrange_at_jump: jump must be interior");
  }
  const double dn = static_cast<double>(n);

  double cos_n_theta = 0.0;
  double sum = 0.0;
  if (auto t = jump.location.exact_theta()) {
    const std::int64_t p = t->num();
    const std::int64_t q = t->den();
    const SigmaTrace tr = sigma_lagrange(*t, n);
    if (tr.is_node) return samples[static_cast<std::size_t>(tr.k0) - 1];
    // cos(nθ0) = cos(π·(np mod 2q)/q)
    const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(n) * p) % (2 * q));
    cos_n_theta = std::cos(pi * static_cast<double>(r) / static_cast<double>(q));
    // (θ0 ± θ_k)/2 = π·(2np ± (2k-1)q) / (4nq)
    const double denom = 4.0 * dn * static_cast<double>(q);
    const std::int64_t two_np = 2 * static_cast<std::int64_t>(n) * p;
    for (std::size_t k = 1; k <= n; ++k) {
      const std::int64_t odd_q = static_cast<std::int64_t>(2 * k - 1) * q;
      const double s_plus = std::sin(pi * static_cast<double>(two_np + odd_q) / denom);
      const double s_minus = std::sin(pi * static_cast<double>(two_np - odd_q) / denom);
      sum += alternating(k) * grid.sin_theta(k) * samples[k - 1] / (-2.0 * s_plus * s_minus);
    }
  } else {
    if (const std::size_t j = grid.coincident_node(jump.x()); j != 0) return samples[j - 1];
    const double t0 = jump.location.theta_over_pi();
    cos_n_theta = std::cos(pi * std::fmod(dn * t0, 2.0));
    const double two_nt = 2.0 * dn * t0;
    const double denom = 4.0 * dn;
    for (std::size_t k = 1; k <= n; ++k) {
      const double odd = static_cast<double>(2 * k - 1);
      const double s_plus = std::sin(pi * (two_nt + odd) / denom);
      const double s_minus = std::sin(pi * (two_nt - odd) / denom);
      sum += alternating(k) * grid.sin_theta(k) * samples[k - 1] / (-2.0 * s_plus * s_minus);
    }
  }
  return cos_n_theta / dn * sum;
}

double lagrange_at_jump(const ChebyshevGrid& grid, const piecewise::JumpFunction& f,
                        std::size_t i) {
  if (i >= f.jumps().size()) throw DomainError("lagrange_at_jump: jump index out of range");
  return lagrange_at_jump(grid, sample_nodes(grid, f), f.jumps()[i]);
}

SigmaTrace sigma_lagrange(const Rational& t, std::size_t n) {
  if (!(t > Rational(0, 1) && t < Rational(1, 1))) {
    throw DomainError("sigma_lagrange: theta0/pi must lie in (0, 1)");
  }
  const __int128 p = t.num();
  const __int128 q = t.den();
  const __int128 v = 2 * static_cast<__int128>(n) * p + q;  // (nθ0/π + 1/2)·2q
  const auto rem = static_cast<std::int64_t>(v % (2 * q));
  SigmaTrace tr;
  tr.n = n;
  tr.k0 = static_cast<std::int64_t>(v / (2 * q));
  tr.sigma_exact = Rational(rem, static_cast<std::int64_t>(2 * q));
  tr.sigma = tr.sigma_exact->to_double();
  tr.is_node = rem == 0;
  return tr;
}

SigmaTrace sigma_lagrange(double t, std::size_t n) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("sigma_lagrange: theta0/pi must lie in (0, 1)");
  const double v = static_cast<double>(n) * t + 0.5;
  SigmaTrace tr;
  tr.n = n;
  tr.k0 = static_cast<std::int64_t>(std::floor(v));
  tr.sigma = v - std::floor(v);
  if (tr.sigma > 1.0 - kSigmaTolerance) {
    ++tr.k0;
    tr.sigma = 0.0;
  } else if (tr.sigma < kSigmaTolerance) {
    tr.sigma = 0.0;
  }
  tr.is_node = tr.sigma == 0.0;
  return tr;
}

}  // namespace convidx::lagrange
