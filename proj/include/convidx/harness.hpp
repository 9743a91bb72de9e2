#pragma once

// Experiment pipeline: evaluate an operator at a jump for n = 1..n_max,
// cluster the resulting sequence, and compare the clusters with the
// predicted spectrum.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "convidx/density.hpp"
#include "convidx/piecewise.hpp"
#include "convidx/rational.hpp"
#include "convidx/theory.hpp"

namespace convidx::harness {

enum class Operator { lagrange, shepard };
enum class Format { csv, json };

struct ExperimentConfig {
  Operator op = Operator::lagrange;
  double s = 2.0;  // Shepard exponent
  /// Function under test; without one, the pure step at `location` is used.
  std::optional<piecewise::JumpFunction> function;
  std::size_t jump = 0;  // 0-based jump selector
  /// Overrides (or, without a function, defines) the jump location.
  std::optional<piecewise::JumpLocation> location;
  double d = 0.2;  // point value of the pure step
  std::size_t n_max = 2000;
  std::size_t stride = 1;  // CSV decimation only

  std::vector<double> eps_grid = density::default_eps_grid();
  double gap = 1e-2;
  double tail_fraction = 0.5;
  double index_floor = 0.005;

  std::optional<double> value_tol;  // default depends on the operator
  double index_tol = 0.02;
  double ks_tol = 0.05;

  std::string out;  // empty: standard output
  Format format = Format::csv;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws ConfigError naming the offending field.
  void validate() const;
  /// 2e-3, or 2e-2 for Shepard with s = 1, unless overridden.
  double effective_value_tol() const;
  /// The function with the location override applied, or the pure step.
  piecewise::JumpFunction resolved_function() const;
  const piecewise::JumpSpec& selected_jump(const piecewise::JumpFunction& f) const;
};

/// Reads the keys written by config_to_json (the CLI flag names with '_' for
/// '-'); missing keys keep their value from `base`. "fn" is either an inline
/// descriptor object or a path to a descriptor file.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Builds a jump location from the CLI-style location fields. `value` is the
/// operator-native coordinate: θ0/π for Lagrange, x0 for Shepard.
piecewise::JumpLocation make_location(Operator op, std::optional<Rational> theta,
                                      std::optional<Rational> x0, std::optional<double> value,
                                      bool irrational);

struct SequenceRun {
  density::SequencePrefix values;
  std::vector<SigmaTrace> sigma;  // sigma[n-1] for n = 1..n_max
};

/// Value at position n is the operator of order n at the selected jump.
/// Evaluations run in parallel; the result does not depend on the schedule.
SequenceRun run_sequence(const ExperimentConfig& cfg);

/// Operator-native location (θ0/π for Lagrange, x0 for Shepard) classified
/// as rational or irrational. Throws ConfigError when undecidable.
Location native_location(const ExperimentConfig& cfg, const piecewise::JumpSpec& jump);

theory::PredictedSpectrum predict(const ExperimentConfig& cfg);

struct Match {
  std::size_t atom;     // index into ComparisonReport::atoms
  std::size_t cluster;  // index into empirical.clusters
  double value_error;
  double index_error;
};

struct KsResult {
  double distance;
  std::size_t samples;
};

struct ComparisonReport {
  theory::PredictedSpectrum predicted;
  /// Predicted atoms with coincident values (within value_tol) merged.
  std::vector<theory::Atom> atoms;
  density::ClusterReport empirical;
  std::vector<Match> matching;
  std::vector<std::size_t> unmatched_atoms;
  std::vector<std::size_t> unmatched_clusters;
  std::optional<KsResult> ks;
  double value_tol = 0.0;
  double index_tol = 0.0;
  double ks_tol = 0.0;
  bool pass = false;
};

/// Kolmogorov–Smirnov distance between the sample and U(0,1).
double ks_uniform_distance(std::vector<double> sample);

ComparisonReport compare(const ExperimentConfig& cfg, const SequenceRun& run);
ComparisonReport compare(const ExperimentConfig& cfg);

// Output.
void write_csv(const SequenceRun& run, std::size_t stride, std::ostream& out);
nlohmann::json run_to_json(const ExperimentConfig& cfg, const SequenceRun& run);
nlohmann::json report_to_json(const ExperimentConfig& cfg, const ComparisonReport& report);
nlohmann::json clusters_to_json(const density::ClusterReport& clusters);

struct SelftestResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Quick invariant checks over every module.
std::vector<SelftestResult> run_selftests();

}  // namespace convidx::harness
