#pragma once

// Finite-prefix estimators for natural densities of integer sets and for the
// index of convergence of a real sequence.
//
// The lower density of K is a liminf of |K ∩ {1..n}| / n. On a prefix of
// length N it is estimated by the minimum of the prefix ratios over the tail
// window n ∈ [⌈w·N⌉, N] (w = 0.5 by default), which ignores the transient at
// the start of the sequence. The upper density uses the maximum over the same
// window, so δ_-(K) = 1 - δ_+(K^c) holds exactly for the estimators too.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "convidx/interval_union.hpp"

namespace convidx::density {

/// Finite prefix x_1..x_N of a real sequence. Values are finite; N >= 1.
class SequencePrefix {
 public:
  explicit SequencePrefix(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  /// 1-indexed access, n ∈ [1, N].
  double term(std::size_t n) const { return values_.at(n - 1); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

using Membership = std::vector<bool>;

/// Tail window of prefix lengths over which liminf / limsup are taken.
struct DensityWindow {
  double start_fraction = 0.5;

  /// First prefix length in the window for a sequence of length N.
  std::size_t first(std::size_t N) const;
};

/// |K ∩ {1..n}| / n kept as an exact pair of integers.
struct DensityRatio {
  std::size_t count = 0;
  std::size_t n = 1;

  double value() const noexcept {
    return static_cast<double>(count) / static_cast<double>(n);
  }
};

DensityRatio lower_density_ratio(const Membership& membership,
                                 DensityWindow window = {});
DensityRatio upper_density_ratio(const Membership& membership,
                                 DensityWindow window = {});
double lower_density(const Membership& membership, DensityWindow window = {});
double upper_density(const Membership& membership, DensityWindow window = {});

/// Exact check of lower_density(K) == 1 - upper_density(K^c) in integer
/// arithmetic.
bool complement_identity_check(const Membership& membership,
                               DensityWindow window = {});

enum class Infinity { positive, negative };

using IndexTarget = std::variant<double, Infinity, IntervalUnion>;

/// One point of the ε-profile (or M-profile for infinite targets).
struct ProfilePoint {
  double scale;  // ε, or M for ±∞ targets
  double ratio;  // lower density of the membership set at this scale
};

struct IndexEstimate {
  IndexTarget target;
  std::vector<ProfilePoint> profile;  // ordered from coarse to fine
  double estimate = 0.0;
  double chosen_scale = 0.0;  // profile scale the estimate was read at
};

struct IndexOptions {
  DensityWindow window{};
  /// The profile is cut, coarse to fine, into plateaus whose ratios stay
  /// within stability_tol (absolute) of the plateau's first ratio. The
  /// estimate is the finest ratio of the longest non-zero plateau of at
  /// least two levels (the finer one on ties), and 0 when there is none: a
  /// profile that keeps falling has no level to settle on. Below the
  /// resolution of the prefix the ratios collapse towards zero and form only
  /// short runs.
  double stability_tol = 0.01;
};

/// ε = 2^-j, j = 1..14.
std::vector<double> default_eps_grid();
/// M = 10, 10^2, .., 10^6.
std::vector<double> default_m_grid();

/// Estimate of i(x_n; L) = inf_ε δ_-({n : |x_n - L| < ε}).
/// eps_grid must be non-empty and strictly decreasing.
IndexEstimate empirical_index(const SequencePrefix& prefix, double target,
                              std::span<const double> eps_grid,
                              const IndexOptions& options = {});

/// Estimate of i(x_n; ±∞) = inf_M δ_-({n : x_n > M}) (resp. x_n < -M).
/// m_grid must be non-empty, positive and strictly increasing.
IndexEstimate empirical_index(const SequencePrefix& prefix, Infinity target,
                              std::span<const double> m_grid,
                              const IndexOptions& options = {});

/// Estimate of i(x_n, A) = inf_ε δ_-({n : x_n ∈ A + B_ε}).
IndexEstimate set_index(const SequencePrefix& prefix, const IntervalUnion& A,
                        std::span<const double> eps_grid,
                        const IndexOptions& options = {});

struct Cluster {
  double center = 0.0;
  double empirical_index = 0.0;
  std::size_t count = 0;  // tail members
  double eps = 0.0;       // ε at which the index estimate was taken
};

struct ClusterReport {
  std::vector<Cluster> clusters;  // centers strictly increasing
  double unassigned_fraction = 0.0;

  double index_sum() const noexcept;
};

struct ClusterOptions {
  double gap = 1e-2;
  double tail_fraction = 0.5;
  double index_floor = 0.005;
  std::vector<double> eps_grid = default_eps_grid();
  IndexOptions index{};
};

/// Gap-based clustering of the tail of the prefix. Each cluster's index is
/// estimated over the full prefix around the cluster median, using only
/// ε-levels that keep the balls of neighbouring clusters disjoint.
ClusterReport detect_clusters(const SequencePrefix& prefix,
                              const ClusterOptions& options = {});

/// Σ empirical_index <= 1 + 1e-12.
bool index_sum_audit(const ClusterReport& report);

}  // namespace convidx::density
