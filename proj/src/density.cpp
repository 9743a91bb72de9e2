#include "convidx/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convidx/errors.hpp"

namespace convidx::density {

namespace {

// a < b as exact fractions.
bool ratio_less(const DensityRatio& a, const DensityRatio& b) {
  using wide = unsigned __int128;
  return static_cast<wide>(a.count) * b.n < static_cast<wide>(b.count) * a.n;
}

template <typename Pred>
DensityRatio window_extreme(std::size_t N, Pred&& member, DensityWindow window,
                            bool take_min) {
  if (N == 0) throw DomainError("empty prefix");
  const std::size_t first = window.first(N);
  std::size_t count = 0;
  DensityRatio best{};
  bool have = false;
  for (std::size_t n = 1; n <= N; ++n) {
    if (member(n)) ++count;
    if (n < first) continue;
    const DensityRatio r{count, n};
    if (!have || (take_min ? ratio_less(r, best) : ratio_less(best, r))) {
      best = r;
      have = true;
    }
  }
  return best;
}

template <typename Pred>
double window_lower(std::size_t N, Pred&& member, DensityWindow window) {
  return window_extreme(N, member, window, true).value();
}

void require_strictly_decreasing(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("empty ε-grid");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid[j] > 0.0)) throw DomainError("ε-grid must be positive");
    if (j > 0 && !(grid[j] < grid[j - 1])) {
      throw DomainError("ε-grid must be strictly decreasing");
    }
  }
}

void select_estimate(IndexEstimate& est, double tol) {
  const auto& p = est.profile;
  // A single level is not evidence of a stable index unless it is all we have.
  const std::size_t min_len = std::min<std::size_t>(2, p.size());
  std::size_t best_begin = 0;
  std::size_t best_len = 0;
  for (std::size_t begin = 0; begin < p.size();) {
    std::size_t end = begin + 1;
    while (end < p.size() && p[end].ratio >= p[begin].ratio - tol) ++end;
    const std::size_t len = end - begin;
    if (p[begin].ratio > 0.0 && len >= min_len && len >= best_len) {
      best_begin = begin;
      best_len = len;
    }
    begin = end;
  }
  if (best_len == 0) {  // no non-zero plateau
    est.estimate = 0.0;
    est.chosen_scale = p.back().scale;
    return;
  }
  const auto& chosen = p[best_begin + best_len - 1];
  est.estimate = chosen.ratio;
  est.chosen_scale = chosen.scale;
}

}  // namespace

SequencePrefix::SequencePrefix(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("empty prefix");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("non-finite sequence value");
  }
}

std::size_t DensityWindow::first(std::size_t N) const {
  const auto n = static_cast<std::size_t>(
      std::ceil(static_cast<double>(N) * start_fraction));
  return std::clamp<std::size_t>(n, 1, N);
}

DensityRatio lower_density_ratio(const Membership& membership,
                                 DensityWindow window) {
  return window_extreme(
      membership.size(), [&](std::size_t n) { return membership[n - 1]; },
      window, true);
}

DensityRatio upper_density_ratio(const Membership& membership,
                                 DensityWindow window) {
  return window_extreme(
      membership.size(), [&](std::size_t n) { return membership[n - 1]; },
      window, false);
}

double lower_density(const Membership& membership, DensityWindow window) {
  return lower_density_ratio(membership, window).value();
}

double upper_density(const Membership& membership, DensityWindow window) {
  return upper_density_ratio(membership, window).value();
}

bool complement_identity_check(const Membership& membership,
                               DensityWindow window) {
  Membership complement(membership.size());
  for (std::size_t i = 0; i < membership.size(); ++i) {
    complement[i] = !membership[i];
  }
  const DensityRatio lower = lower_density_ratio(membership, window);
  const DensityRatio upper_c = upper_density_ratio(complement, window);
  // lower.count / lower.n == 1 - upper_c.count / upper_c.n
  using wide = unsigned __int128;
  return static_cast<wide>(lower.count) * upper_c.n ==
         static_cast<wide>(upper_c.n - upper_c.count) * lower.n;
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  for (int j = 1; j <= 14; ++j) grid.push_back(std::ldexp(1.0, -j));
  return grid;
}

std::vector<double> default_m_grid() {
  return {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
}

IndexEstimate empirical_index(const SequencePrefix& prefix, double target,
                              std::span<const double> eps_grid,
                              const IndexOptions& options) {
  require_strictly_decreasing(eps_grid);
  const auto values = prefix.values();
  IndexEstimate est{target, {}, 0.0, 0.0};
  for (double eps : eps_grid) {
    const double r = window_lower(
        values.size(),
        [&](std::size_t n) { return std::abs(values[n - 1] - target) < eps; },
        options.window);
    est.profile.push_back({eps, r});
  }
  select_estimate(est, options.stability_tol);
  return est;
}

IndexEstimate empirical_index(const SequencePrefix& prefix, Infinity target,
                              std::span<const double> m_grid,
                              const IndexOptions& options) {
  if (m_grid.empty()) throw DomainError("empty M-grid");
  for (std::size_t j = 0; j < m_grid.size(); ++j) {
    if (!(m_grid[j] > 0.0)) throw DomainError("M-grid must be positive");
    if (j > 0 && !(m_grid[j] > m_grid[j - 1])) {
      throw DomainError("M-grid must be strictly increasing");
    }
  }
  const auto values = prefix.values();
  const double sign = target == Infinity::positive ? 1.0 : -1.0;
  IndexEstimate est{target, {}, 0.0, 0.0};
  for (double M : m_grid) {
    const double r = window_lower(
        values.size(), [&](std::size_t n) { return sign * values[n - 1] > M; },
        options.window);
    est.profile.push_back({M, r});
  }
  select_estimate(est, options.stability_tol);
  return est;
}

IndexEstimate set_index(const SequencePrefix& prefix, const IntervalUnion& A,
                        std::span<const double> eps_grid,
                        const IndexOptions& options) {
  if (A.empty()) throw DomainError("empty target set");
  require_strictly_decreasing(eps_grid);
  const auto values = prefix.values();
  IndexEstimate est{A, {}, 0.0, 0.0};
  for (double eps : eps_grid) {
    // x ∈ A + B_ε  <=>  dist(x, A) < ε for closed A
    const double r = window_lower(
        values.size(),
        [&](std::size_t n) { return A.distance(values[n - 1]) < eps; },
        options.window);
    est.profile.push_back({eps, r});
  }
  select_estimate(est, options.stability_tol);
  return est;
}

double ClusterReport::index_sum() const noexcept {
  double total = 0.0;
  for (const auto& c : clusters) total += c.empirical_index;
  return total;
}

ClusterReport detect_clusters(const SequencePrefix& prefix,
                              const ClusterOptions& options) {
  if (!(options.gap > 0.0)) throw DomainError("gap must be positive");
  if (!(options.tail_fraction > 0.0 && options.tail_fraction <= 1.0)) {
    throw DomainError("tail_fraction must lie in (0, 1]");
  }
  const auto values = prefix.values();
  const std::size_t N = values.size();
  const auto tail_start = std::clamp<std::size_t>(
      static_cast<std::size_t>(
          std::ceil((1.0 - options.tail_fraction) * static_cast<double>(N))),
      1, N);

  std::vector<double> tail(values.begin() + static_cast<long>(tail_start - 1),
                           values.end());
  std::sort(tail.begin(), tail.end());

  struct Group {
    double center;
    std::size_t count;
  };
  std::vector<Group> groups;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= tail.size(); ++i) {
    if (i == tail.size() || tail[i] - tail[i - 1] > options.gap) {
      const std::size_t len = i - begin;
      const std::size_t mid = begin + len / 2;
      const double median =
          len % 2 == 1 ? tail[mid] : 0.5 * (tail[mid - 1] + tail[mid]);
      groups.push_back({median, len});
      begin = i;
    }
  }

  ClusterReport report;
  std::vector<double> radii;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double half = inf;
    if (g > 0) half = std::min(half, 0.5 * (groups[g].center - groups[g - 1].center));
    if (g + 1 < groups.size()) {
      half = std::min(half, 0.5 * (groups[g + 1].center - groups[g].center));
    }
    std::vector<double> grid;
    for (double eps : options.eps_grid) {
      if (eps <= half) grid.push_back(eps);
    }
    if (grid.empty()) grid.push_back(half);

    const IndexEstimate est =
        empirical_index(prefix, groups[g].center, grid, options.index);
    if (est.estimate < options.index_floor) continue;
    report.clusters.push_back(
        {groups[g].center, est.estimate, groups[g].count, est.chosen_scale});
    radii.push_back(est.chosen_scale);
  }

  // Upper density of the indices covered by none of the chosen balls.
  const auto& cl = report.clusters;
  const DensityRatio covered = window_extreme(
      N,
      [&](std::size_t n) {
        const double v = values[n - 1];
        for (std::size_t c = 0; c < cl.size(); ++c) {
          if (std::abs(v - cl[c].center) < radii[c]) return true;
        }
        return false;
      },
      options.index.window, true);
  report.unassigned_fraction = 1.0 - covered.value();
  return report;
}

bool index_sum_audit(const ClusterReport& report) {
  return report.index_sum() <= 1.0 + 1e-12;
}

}  // namespace convidx::density
