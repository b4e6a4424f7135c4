#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace insep {

/// Absolute precision of an element known exactly.
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;
inline constexpr std::int64_t kDefaultPrecision = 64;

inline std::int64_t add_precision(std::int64_t a, std::int64_t b) {
  if (a >= kExact || b >= kExact) return kExact;
  return a + b;
}

class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A valuation that is a finite integer, +infinity (exact zero), or only known
/// to be at least some bound (zero to the known precision).
class Valuation {
 public:
  enum class Kind { finite, infinite, indeterminate };

  static Valuation finite(std::int64_t v) { return {Kind::finite, v}; }
  static Valuation infinite() { return {Kind::infinite, 0}; }
  static Valuation at_least(std::int64_t bound) { return {Kind::indeterminate, bound}; }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_indeterminate() const { return kind_ == Kind::indeterminate; }

  /// The finite value; throws InsufficientPrecision when indeterminate.
  std::int64_t value() const {
    if (kind_ == Kind::indeterminate)
      throw InsufficientPrecision("insufficient precision: valuation is only known to be >= " +
                                  std::to_string(value_));
    if (kind_ == Kind::infinite) throw std::domain_error("valuation of zero is infinite");
    return value_;
  }

  /// Largest integer known to be <= the valuation (kExact for infinity).
  std::int64_t lower_bound() const { return kind_ == Kind::infinite ? kExact : value_; }

  /// True when the valuation is certainly >= k.
  bool at_least_value(std::int64_t k) const { return kind_ == Kind::infinite || value_ >= k; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::finite: return std::to_string(value_);
      case Kind::infinite: return "inf";
      default: return "indeterminate(>=" + std::to_string(value_) + ")";
    }
  }

  bool operator==(const Valuation&) const = default;

 private:
  Valuation(Kind k, std::int64_t v) : kind_(k), value_(v) {}
  Kind kind_;
  std::int64_t value_;
};

}  // namespace insep
