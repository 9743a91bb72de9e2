#include "convidx/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convidx/errors.hpp"

namespace convidx {

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  for (const auto& p : pieces) {
    if (!(p.lo <= p.hi) || std::isnan(p.lo) || std::isnan(p.hi)) {
      throw DomainError("interval with lo > hi");
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(p);
    }
  }
}

double IntervalUnion::total_length() const noexcept {
  double total = 0.0;
  for (const auto& p : pieces_) total += p.hi - p.lo;
  return total;
}

bool IntervalUnion::contains(double x) const noexcept {
  return distance(x) == 0.0;
}

double IntervalUnion::distance(double x) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    if (x < p.lo) {
      best = std::min(best, p.lo - x);
      break;  // later pieces are further right
    }
    if (x <= p.hi) return 0.0;
    best = std::min(best, x - p.hi);
  }
  return best;
}

IntervalUnion IntervalUnion::inflated(double eps) const {
  std::vector<Interval> grown;
  grown.reserve(pieces_.size());
  for (const auto& p : pieces_) grown.push_back({p.lo - eps, p.hi + eps});
  return IntervalUnion(std::move(grown));
}

}  // namespace convidx
