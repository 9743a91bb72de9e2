#pragma once

// Predicted limit spectra of the operator sequences at a jump: a list of
// atoms (limit value, exact index) and, for irrational locations, a
// continuous law α + β·p(U) with U uniform on (0,1) and p a limit profile.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "convidx/interval_union.hpp"
#include "convidx/piecewise.hpp"
#include "convidx/rational.hpp"
#include "convidx/specfun.hpp"

namespace convidx::theory {

struct Atom {
  double value;
  Rational index;
};

/// t ↦ alpha + beta·t, beta != 0.
struct AffineMap {
  double alpha;
  double beta;

  double operator()(double t) const noexcept { return alpha + beta * t; }
  double inverse(double y) const noexcept { return (y - alpha) / beta; }
  /// {t : alpha + beta·t ∈ A}.
  IntervalUnion preimage(const IntervalUnion& A) const;
};

struct ContinuousComponent {
  specfun::LimitProfile profile;
  AffineMap map;
};

enum class Source {
  lagrange_rational,
  lagrange_irrational,
  shepard_rational,
  shepard_irrational,
  shepard_s1_rational,
  shepard_s1_irrational,
};

std::string source_name(Source source);

struct PredictedSpectrum {
  std::vector<Atom> atoms;
  std::optional<ContinuousComponent> continuous;
  Source source;
  /// Shepard exponent; zero for Lagrange spectra.
  double s = 0.0;

  /// Exact sum of the atom indices.
  Rational atom_index_sum() const;
};

/// theta is θ0/π: Rational p/q with 0 < p < q, or an Irrational marker.
PredictedSpectrum predict_lagrange(const piecewise::JumpSpec& jump, const Location& theta);

/// x0 is Rational p/q in (0,1) or an Irrational marker; s >= 1.
PredictedSpectrum predict_shepard(const piecewise::JumpSpec& jump, const Location& x0,
                                  double s);

/// Σ of the atom indices with value in A plus the measure of the continuous
/// part's preimage of A. Clipped to [0, 1].
double predicted_set_index(const PredictedSpectrum& spectrum, const IntervalUnion& A);

nlohmann::json to_json(const PredictedSpectrum& spectrum);

}  // namespace convidx::theory
