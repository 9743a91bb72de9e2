#pragma once

// Lagrange interpolation at the Chebyshev nodes x_{n,k} = cos θ_k,
// θ_k = (2k-1)π/(2n), evaluated through the trigonometric form
//
//   ℓ_{n,k}(cos θ) = ((-1)^{k-1}/n) · cos(nθ) · sin θ_k / (cos θ - cos θ_k)
//
// with the denominator written as -2 sin((θ+θ_k)/2) sin((θ-θ_k)/2).

#include <cstddef>
#include <span>
#include <vector>

#include "convidx/piecewise.hpp"
#include "convidx/rational.hpp"

namespace convidx::lagrange {

/// Distance in x below which a point is treated as a node on the float path.
inline constexpr double kNodeTolerance = 1e-13;
/// Tolerance for σ_n = 0 when θ0/π is only known as a float.
inline constexpr double kSigmaTolerance = 1e-12;

class ChebyshevGrid {
 public:
  explicit ChebyshevGrid(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  /// 1-based accessors, k = 1..n.
  double theta(std::size_t k) const { return theta_.at(k - 1); }
  double node(std::size_t k) const { return node_.at(k - 1); }
  double sin_theta(std::size_t k) const { return sin_theta_.at(k - 1); }
  std::span<const double> nodes() const noexcept { return node_; }

  /// Index of the node within kNodeTolerance of x, or 0.
  std::size_t coincident_node(double x) const;

 private:
  std::size_t n_;
  std::vector<double> theta_;
  std::vector<double> node_;
  std::vector<double> sin_theta_;
};

double fundamental_eval(const ChebyshevGrid& grid, std::size_t k, double x);

/// f(x_{n,k}) for k = 1..n (stored 0-based). A node that coincides with a
/// jump takes the jump's point value; the coincidence test is exact for jumps
/// whose θ/π or x is a known rational.
std::vector<double> sample_nodes(const ChebyshevGrid& grid, const piecewise::JumpFunction& f);

double lagrange_eval(const ChebyshevGrid& grid, std::span<const double> samples, double x);
double lagrange_eval(const ChebyshevGrid& grid, const piecewise::JumpFunction& f, double x);

/// L_n f(x_i) at jump i. Uses exact integer reduction of nθ0 and of the
/// half-angle sums when θ0/π is rational.
double lagrange_at_jump(const ChebyshevGrid& grid, std::span<const double> samples,
                        const piecewise::JumpSpec& jump);
double lagrange_at_jump(const ChebyshevGrid& grid, const piecewise::JumpFunction& f,
                        std::size_t i);

/// σ_n = frac(nθ0/π + 1/2), k0 = ⌊nθ0/π + 1/2⌋.
SigmaTrace sigma_lagrange(const Rational& theta_over_pi, std::size_t n);
SigmaTrace sigma_lagrange(double theta_over_pi, std::size_t n);

}  // namespace convidx::lagrange
