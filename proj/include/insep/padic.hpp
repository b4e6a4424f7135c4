#pragma once

#include <algorithm>
#include <optional>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "insep/arith.hpp"
#include "insep/valuation.hpp"

namespace insep {

using PadicInt = boost::multiprecision::cpp_int;

/// unit * p^val in Q_p, known modulo p^precision. Integers are exact; an
/// inexact unit is reduced into [0, p^(precision - val)).
class PadicNumber {
 public:
  PadicNumber() = default;
  PadicNumber(std::int64_t p, PadicInt value, std::int64_t precision = kExact)
      : p_(p), unit_(std::move(value)), prec_(precision) {
    normalize();
  }

  static PadicNumber from_parts(std::int64_t p, PadicInt unit, std::int64_t val,
                                std::int64_t precision = kExact) {
    PadicNumber x(p, std::move(unit), kExact);
    x.val_ += val;
    x.prec_ = precision;
    x.normalize();
    return x;
  }

  /// p^e, exact.
  static PadicNumber prime_power(std::int64_t p, std::int64_t e) { return from_parts(p, 1, e); }

  std::int64_t p() const { return p_; }
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return unit_ == 0; }
  bool is_exact_zero() const { return unit_ == 0 && is_exact(); }
  std::int64_t order() const { return val_; }
  const PadicInt& unit() const { return unit_; }

  Valuation valuation() const {
    if (unit_ != 0) return Valuation::finite(val_);
    return is_exact() ? Valuation::infinite() : Valuation::at_least(prec_);
  }

  /// The exact rational value as an integer, when it is one.
  std::optional<PadicInt> as_integer() const {
    if (!is_exact() || (unit_ != 0 && val_ < 0)) return std::nullopt;
    if (unit_ == 0) return PadicInt(0);
    return unit_ * boost::multiprecision::pow(PadicInt(p_), static_cast<unsigned>(val_));
  }

  PadicNumber truncated(std::int64_t precision) const {
    PadicNumber x = *this;
    x.prec_ = std::min(prec_, precision);
    x.normalize();
    return x;
  }

  PadicNumber operator-() const {
    PadicNumber x = *this;
    x.unit_ = -x.unit_;
    x.normalize();
    return x;
  }

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) { return combine(a, b, 1); }
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return combine(a, b, -1); }

  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    const std::int64_t p = a.p_ ? a.p_ : b.p_;
    if (a.is_exact_zero() || b.is_exact_zero()) return PadicNumber(p, 0);
    const std::int64_t va = a.is_zero() ? a.prec_ : a.val_;
    const std::int64_t vb = b.is_zero() ? b.prec_ : b.val_;
    PadicNumber out;
    out.p_ = p;
    out.prec_ = std::min(add_precision(a.prec_, vb), add_precision(b.prec_, va));
    if (!a.is_zero() && !b.is_zero()) {
      out.unit_ = a.unit_ * b.unit_;
      out.val_ = a.val_ + b.val_;
    }
    out.normalize();
    return out;
  }

  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

  PadicNumber inverse(std::int64_t relative_precision = kDefaultPrecision) const {
    if (is_zero()) {
      if (is_exact()) throw std::domain_error("inverse of zero");
      throw InsufficientPrecision("inverse of an element that is zero to precision " + std::to_string(prec_));
    }
    if (is_exact() && (unit_ == 1 || unit_ == -1)) return from_parts(p_, unit_, -val_);
    const std::int64_t rel = is_exact() ? relative_precision : std::min(relative_precision, prec_ - val_);
    const PadicInt modulus = boost::multiprecision::pow(PadicInt(p_), static_cast<unsigned>(rel));
    PadicInt u = unit_ % modulus;
    if (u < 0) u += modulus;
    return from_parts(p_, boost::integer::mod_inverse(u, modulus), -val_, rel - val_);
  }

  bool operator==(const PadicNumber& o) const {
    return p_ == o.p_ && prec_ == o.prec_ && unit_ == o.unit_ && (unit_ == 0 || val_ == o.val_);
  }

  /// Integers print as integers; other values as "u*p^v", with "+ O(p^N)" when inexact.
  std::string to_string() const {
    std::ostringstream os;
    if (auto z = as_integer()) return z->str();
    if (unit_ != 0) {
      os << unit_.str();
      if (val_ != 0) os << '*' << p_ << '^' << val_;
    }
    if (!is_exact()) os << (unit_ != 0 ? " + " : "") << "O(" << p_ << '^' << prec_ << ')';
    return os.str();
  }

 private:
  static PadicNumber combine(const PadicNumber& a, const PadicNumber& b, int sign) {
    const std::int64_t p = a.p_ ? a.p_ : b.p_;
    PadicNumber out;
    out.p_ = p;
    out.prec_ = std::min(a.prec_, b.prec_);
    if (a.is_zero() && b.is_zero()) return out;
    if (b.is_zero()) {
      out.unit_ = a.unit_;
      out.val_ = a.val_;
    } else if (a.is_zero()) {
      out.unit_ = sign * b.unit_;
      out.val_ = b.val_;
    } else {
      const std::int64_t v = std::min(a.val_, b.val_);
      const PadicInt pp(p);
      out.unit_ = a.unit_ * boost::multiprecision::pow(pp, static_cast<unsigned>(a.val_ - v)) +
                  sign * b.unit_ * boost::multiprecision::pow(pp, static_cast<unsigned>(b.val_ - v));
      out.val_ = v;
    }
    out.normalize();
    return out;
  }

  void normalize() {
    if (p_ < 2) throw std::invalid_argument("p-adic number needs a prime p");
    if (unit_ == 0) {
      val_ = 0;
      return;
    }
    while (unit_ % p_ == 0) {
      unit_ /= p_;
      ++val_;
    }
    if (is_exact()) return;
    if (val_ >= prec_) {
      unit_ = 0;
      val_ = 0;
      return;
    }
    const PadicInt modulus = boost::multiprecision::pow(PadicInt(p_), static_cast<unsigned>(prec_ - val_));
    unit_ %= modulus;
    if (unit_ < 0) unit_ += modulus;
  }

  std::int64_t p_ = 0;
  PadicInt unit_ = 0;
  std::int64_t val_ = 0;
  std::int64_t prec_ = kExact;
};

}  // namespace insep
