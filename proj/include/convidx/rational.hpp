#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace convidx {

/// Exact rational number num/den, always stored in lowest terms with den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A location declared irrational by the caller. Only the approximation is
/// numeric; the irrationality itself is a declaration and is never tested.
struct Irrational {
  double approx;
};

/// Operator-native coordinate of a jump: theta0/pi for Lagrange
/// interpolation, x0 itself for Shepard operators.
using Location = std::variant<Rational, Irrational>;

double location_value(const Location& loc);

/// Fractional offset of a jump inside the n-th node grid.
struct SigmaTrace {
  std::size_t n = 0;
  std::int64_t k0 = 0;
  double sigma = 0.0;
  std::optional<Rational> sigma_exact;  // present on the exact rational path
  bool is_node = false;
};

}  // namespace convidx
