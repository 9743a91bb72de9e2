#pragma once

#include <vector>

namespace convidx {

struct Interval {
  double lo;
  double hi;
};

/// Finite union of closed intervals kept in canonical form: sorted,
/// pairwise disjoint, with touching or overlapping pieces merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> pieces);
  IntervalUnion(double lo, double hi) : IntervalUnion({{lo, hi}}) {}

  const std::vector<Interval>& intervals() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  double total_length() const noexcept;

  bool contains(double x) const noexcept;
  /// Distance from x to the set; zero inside.
  double distance(double x) const noexcept;
  /// A + [-eps, eps], re-merged.
  IntervalUnion inflated(double eps) const;

 private:
  std::vector<Interval> pieces_;
};

}  // namespace convidx
