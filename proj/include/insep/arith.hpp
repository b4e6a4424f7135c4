#pragma once

// Small integer helpers shared by the combinatorial and field modules.
// Machine integers are used throughout; every operation that can overflow
// goes through the checked_* functions and throws instead of wrapping.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace insep {

class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what)
      : std::overflow_error("integer overflow in " + what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("addition");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("subtraction");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("multiplication");
  return out;
}

inline std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

/// Binomial coefficient C(n, k); zero when k < 0 or k > n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i at every step
    out = checked_mul(out, n - k + i) / i;
  }
  return out;
}

/// p-adic valuation of a nonzero integer. v_p(0) is reported as `zero_value`.
inline int vp(std::int64_t k, std::int64_t p,
              int zero_value = std::numeric_limits<int>::max()) {
  if (p < 2) throw std::invalid_argument("vp: p must be >= 2");
  if (k == 0) return zero_value;
  if (k < 0) k = -k;
  int v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

/// Floor division for signed operands (b > 0).
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

/// Nonnegative remainder.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t b) {
  return a - b * floor_div(a, b);
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace insep
