#pragma once

// Shepard operators on [0,1]:
//
//   S_{n,s} f(x) = Σ_k f(k/n) |x - k/n|^{-s} / Σ_k |x - k/n|^{-s},  k = 0..n.
//
// Weights are formed relative to the nearest node, (u_min/u_k)^s, so large
// exponents never overflow.

#include <cstddef>
#include <span>
#include <vector>

#include "convidx/piecewise.hpp"
#include "convidx/rational.hpp"

namespace convidx::shepard {

inline constexpr double kMinExponent = 1.0;
inline constexpr double kMaxExponent = 20.0;
/// Float-path node test: |x - k/n| < kNodeTolerance · max(1, |x|).
inline constexpr double kNodeTolerance = 1e-12;

struct ShepardConfig {
  double s;
  std::size_t n;

  /// Throws DomainError unless s ∈ [1, 20] and n >= 1.
  void validate() const;
};

/// f(k/n) for k = 0..n. Nodes that coincide with a jump take its point value;
/// coincidence is decided by kq == np for jumps at x = p/q.
std::vector<double> sample_nodes(std::size_t n, const piecewise::JumpFunction& f);

double shepard_eval(const ShepardConfig& cfg, std::span<const double> samples, double x);
double shepard_eval(const ShepardConfig& cfg, const piecewise::JumpFunction& f, double x);

/// S_{n,s} f(x_i). With x_i = p/q the node test and all distances to the
/// nodes are exact integers (|kq - np|, up to the common factor 1/(nq)).
double shepard_at_jump(const ShepardConfig& cfg, std::span<const double> samples,
                       const piecewise::JumpSpec& jump);
double shepard_at_jump(const ShepardConfig& cfg, const piecewise::JumpFunction& f,
                       std::size_t i);

/// σ_n = n x0 - ⌊n x0⌋, k0 = ⌊n x0⌋.
SigmaTrace sigma_shepard(const Rational& x0, std::size_t n);
SigmaTrace sigma_shepard(double x0, std::size_t n);

}  // namespace convidx::shepard
