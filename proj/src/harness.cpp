#include "convidx/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "convidx/errors.hpp"
#include "convidx/lagrange.hpp"
#include "convidx/shepard.hpp"
#include "convidx/specfun.hpp"

namespace convidx::harness {

using piecewise::JumpFunction;
using piecewise::JumpLocation;
using piecewise::JumpSpec;

namespace {

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
  t = std::max(1u, t);
  return static_cast<unsigned>(std::min<std::size_t>(t, work));
}

SigmaTrace sigma_for(Operator op, const JumpLocation& loc, std::size_t n) {
  if (op == Operator::lagrange) {
    if (auto t = loc.exact_theta()) return lagrange::sigma_lagrange(*t, n);
    return lagrange::sigma_lagrange(loc.theta_over_pi(), n);
  }
  if (auto x = loc.exact_x()) return shepard::sigma_shepard(*x, n);
  const double x0 =
      loc.kind() == JumpLocation::Kind::irrational_x ? loc.declared_value() : loc.x();
  return shepard::sigma_shepard(x0, n);
}

std::size_t tail_start(std::size_t N, double tail_fraction) {
  return std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil((1.0 - tail_fraction) * static_cast<double>(N))), 1,
      N);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_max < 64) throw ConfigError("n_max", "must be at least 64");
  if (stride < 1) throw ConfigError("stride", "must be at least 1");
  if (op == Operator::shepard && !(s >= 1.0 && s <= 20.0)) {
    throw ConfigError("s", "Shepard exponent must lie in [1, 20]");
  }
  if (!std::isfinite(d)) throw ConfigError("d", "must be finite");
  if (!(gap > 0.0)) throw ConfigError("gap", "must be positive");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw ConfigError("tail_fraction", "must lie in (0, 1]");
  }
  if (!(index_floor >= 0.0 && index_floor < 1.0)) {
    throw ConfigError("index_floor", "must lie in [0, 1)");
  }
  if (eps_grid.empty()) throw ConfigError("eps_grid", "must not be empty");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))) {
      throw ConfigError("eps_grid", "must be positive and strictly decreasing");
    }
  }
  if (value_tol && !(*value_tol > 0.0)) throw ConfigError("value_tol", "must be positive");
  if (!(index_tol > 0.0)) throw ConfigError("index_tol", "must be positive");
  if (!(ks_tol > 0.0)) throw ConfigError("ks_tol", "must be positive");
  if (!function && !location) {
    throw ConfigError("location", "give --fn or a jump location (--theta-num/--theta-den, "
                                  "--x0-num/--x0-den or --location)");
  }

  const JumpFunction f = resolved_function();
  const JumpSpec& j = selected_jump(f);
  const auto& dom = f.domain();
  if (op == Operator::lagrange) {
    if (dom.lo > -1.0 || dom.hi < 1.0) throw ConfigError("fn", "domain must contain [-1, 1]");
    if (!(j.x() > -1.0 && j.x() < 1.0)) throw ConfigError("jump", "must lie in (-1, 1)");
  } else {
    if (dom.lo > 0.0 || dom.hi < 1.0) throw ConfigError("fn", "domain must contain [0, 1]");
    if (!(j.x() > 0.0 && j.x() < 1.0)) throw ConfigError("jump", "must lie in (0, 1)");
  }
}

double ExperimentConfig::effective_value_tol() const {
  if (value_tol) return *value_tol;
  return op == Operator::shepard && s == 1.0 ? 2e-2 : 2e-3;
}

JumpFunction ExperimentConfig::resolved_function() const {
  try {
    if (function) {
      if (!location) return *function;
      if (jump >= function->jumps().size()) throw ConfigError("jump", "index out of range");
      return function->with_location(jump, *location);
    }
    if (!location) throw ConfigError("location", "missing");
    const auto step = op == Operator::lagrange ? piecewise::lagrange_step(*location, d)
                                               : piecewise::shepard_step(*location, d);
    return JumpFunction::from_step(step);
  } catch (const DomainError& e) {
    throw ConfigError(function ? "fn" : "location", e.what());
  }
}

const JumpSpec& ExperimentConfig::selected_jump(const JumpFunction& f) const {
  if (jump >= f.jumps().size()) throw ConfigError("jump", "index out of range");
  return f.jumps()[jump];
}

JumpLocation make_location(Operator op, std::optional<Rational> theta,
                           std::optional<Rational> x0, std::optional<double> value,
                           bool irrational) {
  const int given = (theta ? 1 : 0) + (x0 ? 1 : 0) + (value ? 1 : 0);
  if (given != 1) {
    throw ConfigError("location", "give exactly one of theta, x0 or a float location");
  }
  try {
    if (theta) return JumpLocation::rational_theta(*theta);
    if (x0) return JumpLocation::rational_x(*x0);
    if (op == Operator::lagrange) {
      if (irrational) return JumpLocation::irrational_theta(*value);
      if (!(*value > 0.0 && *value < 1.0)) throw DomainError("theta/pi must lie in (0, 1)");
      return JumpLocation::plain(std::cos(std::numbers::pi * *value));
    }
    return irrational ? JumpLocation::irrational_x(*value) : JumpLocation::plain(*value);
  } catch (const DomainError& e) {
    throw ConfigError("location", e.what());
  }
}

SequenceRun run_sequence(const ExperimentConfig& cfg) {
  cfg.validate();
  const JumpFunction f = cfg.resolved_function();
  const JumpSpec& jump = cfg.selected_jump(f);
  const std::size_t N = cfg.n_max;

  std::vector<double> values(N);
  std::vector<SigmaTrace> sigma(N);
  std::atomic<std::size_t> next{1};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::size_t n = next++; n <= N; n = next++) {
        double v;
        if (cfg.op == Operator::lagrange) {
          const lagrange::ChebyshevGrid grid(n);
          v = lagrange::lagrange_at_jump(grid, lagrange::sample_nodes(grid, f), jump);
        } else {
          const shepard::ShepardConfig sc{cfg.s, n};
          v = shepard::shepard_at_jump(sc, shepard::sample_nodes(n, f), jump);
        }
        values[n - 1] = v;
        sigma[n - 1] = sigma_for(cfg.op, jump.location, n);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = N + 1;
    }
  };

  const unsigned workers = worker_count(cfg.threads, N);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return {density::SequencePrefix(std::move(values)), std::move(sigma)};
}

Location native_location(const ExperimentConfig& cfg, const JumpSpec& jump) {
  const auto loc = cfg.op == Operator::lagrange ? jump.location.theta_location()
                                                : jump.location.x_location();
  if (!loc) {
    throw ConfigError("location",
                      "cannot tell whether the jump location is rational; declare it as "
                      "num/den or mark a float location irrational");
  }
  return *loc;
}

theory::PredictedSpectrum predict(const ExperimentConfig& cfg) {
  cfg.validate();
  const JumpFunction f = cfg.resolved_function();
  const JumpSpec& jump = cfg.selected_jump(f);
  const Location loc = native_location(cfg, jump);
  try {
    return cfg.op == Operator::lagrange ? theory::predict_lagrange(jump, loc)
                                        : theory::predict_shepard(jump, loc, cfg.s);
  } catch (const DomainError& e) {
    throw ConfigError("location", e.what());
  }
}

double ks_uniform_distance(std::vector<double> sample) {
  if (sample.empty()) throw DomainError("KS distance of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = std::clamp(sample[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / m - u, u - static_cast<double>(i) / m});
  }
  return d;
}

ComparisonReport compare(const ExperimentConfig& cfg, const SequenceRun& run) {
  ComparisonReport rep;
  rep.predicted = predict(cfg);
  rep.value_tol = cfg.effective_value_tol();
  rep.index_tol = cfg.index_tol;
  rep.ks_tol = cfg.ks_tol;

  density::ClusterOptions opts;
  opts.gap = cfg.gap;
  opts.tail_fraction = cfg.tail_fraction;
  opts.index_floor = cfg.index_floor;
  opts.eps_grid = cfg.eps_grid;
  rep.empirical = density::detect_clusters(run.values, opts);

  // Atoms that the data cannot tell apart are compared as one.
  auto atoms = rep.predicted.atoms;
  std::sort(atoms.begin(), atoms.end(),
            [](const theory::Atom& a, const theory::Atom& b) { return a.value < b.value; });
  for (const auto& a : atoms) {
    if (!rep.atoms.empty() && a.value - rep.atoms.back().value < rep.value_tol) {
      rep.atoms.back().index = rep.atoms.back().index + a.index;
    } else {
      rep.atoms.push_back(a);
    }
  }

  if (rep.predicted.continuous) {
    const auto& c = *rep.predicted.continuous;
    specfun::verify_monotone(c.profile);
    const auto values = run.values.values();
    std::vector<double> u;
    for (std::size_t n = tail_start(values.size(), cfg.tail_fraction); n <= values.size(); ++n) {
      u.push_back(c.profile.inverse(c.map.inverse(values[n - 1])));
    }
    rep.ks = KsResult{ks_uniform_distance(u), u.size()};
    rep.pass = rep.ks->distance < rep.ks_tol;
    return rep;
  }

  // Greedy nearest-value matching.
  struct Pair {
    double distance;
    std::size_t atom;
    std::size_t cluster;
  };
  const auto& clusters = rep.empirical.clusters;
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < rep.atoms.size(); ++a) {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      pairs.push_back({std::abs(rep.atoms[a].value - clusters[c].center), a, c});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.distance < y.distance; });
  std::vector<bool> atom_used(rep.atoms.size()), cluster_used(clusters.size());
  for (const auto& p : pairs) {
    if (atom_used[p.atom] || cluster_used[p.cluster]) continue;
    atom_used[p.atom] = cluster_used[p.cluster] = true;
    rep.matching.push_back(
        {p.atom, p.cluster, p.distance,
         std::abs(rep.atoms[p.atom].index.to_double() - clusters[p.cluster].empirical_index)});
  }
  for (std::size_t a = 0; a < rep.atoms.size(); ++a) {
    if (!atom_used[a]) rep.unmatched_atoms.push_back(a);
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!cluster_used[c] && clusters[c].empirical_index > cfg.index_floor) {
      rep.unmatched_clusters.push_back(c);
    }
  }
  rep.pass = rep.unmatched_atoms.empty() && rep.unmatched_clusters.empty() &&
             std::all_of(rep.matching.begin(), rep.matching.end(), [&](const Match& m) {
               return m.value_error < rep.value_tol && m.index_error < rep.index_tol;
             });
  return rep;
}

ComparisonReport compare(const ExperimentConfig& cfg) { return compare(cfg, run_sequence(cfg)); }

}  // namespace convidx::harness
