#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "insep/residue_field.hpp"
#include "insep/valuation.hpp"

namespace insep {

/// Laurent series over F_q in t with tracked absolute precision: coefficients
/// are known for exponents below precision(); kExact means a finite Laurent
/// polynomial known exactly.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  explicit LaurentSeries(ResidueFieldPtr field, std::int64_t precision = kExact)
      : field_(std::move(field)), prec_(precision) {}

  static LaurentSeries monomial(ResidueFieldPtr field, int c, std::int64_t e,
                                std::int64_t precision = kExact) {
    return from_coefficients(std::move(field), e, {c}, precision);
  }

  static LaurentSeries from_coefficients(ResidueFieldPtr field, std::int64_t start,
                                         std::vector<int> coeffs, std::int64_t precision = kExact) {
    LaurentSeries s(std::move(field), precision);
    s.start_ = start;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
  }

  const ResidueFieldPtr& field() const { return field_; }
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }

  /// Exponent of the lowest nonzero coefficient; requires !is_zero().
  std::int64_t order() const { return start_; }
  /// Exponent one past the highest nonzero coefficient.
  std::int64_t end() const { return start_ + static_cast<std::int64_t>(coeffs_.size()); }

  int coefficient(std::int64_t e) const {
    if (e >= prec_)
      throw InsufficientPrecision("coefficient of t^" + std::to_string(e) + " is beyond precision " +
                                  std::to_string(prec_));
    if (coeffs_.empty() || e < start_ || e >= end()) return 0;
    return coeffs_[static_cast<std::size_t>(e - start_)];
  }

  Valuation valuation() const {
    if (!coeffs_.empty()) return Valuation::finite(start_);
    return is_exact() ? Valuation::infinite() : Valuation::at_least(prec_);
  }

  LaurentSeries truncated(std::int64_t precision) const {
    LaurentSeries s = *this;
    s.prec_ = std::min(prec_, precision);
    s.normalize();
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (int& c : s.coeffs_) c = field_->neg(c);
    return s;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    return combine(a, b, false);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return combine(a, b, true);
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const auto& f = a.field_ ? a.field_ : b.field_;
    if (a.is_exact_zero() || b.is_exact_zero()) return LaurentSeries(f);
    const std::int64_t va = a.is_zero() ? a.prec_ : a.start_;
    const std::int64_t vb = b.is_zero() ? b.prec_ : b.start_;
    const std::int64_t prec = std::min(add_precision(a.prec_, vb), add_precision(b.prec_, va));
    LaurentSeries out(f, prec);
    if (a.is_zero() || b.is_zero()) return out;
    out.start_ = a.start_ + b.start_;
    out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (!a.coeffs_[i]) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out.coeffs_[i + j] = f->add(out.coeffs_[i + j], f->mul(a.coeffs_[i], b.coeffs_[j]));
    }
    out.normalize();
    return out;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse, known to `relative_precision` terms past the
  /// leading one (fewer if this series is itself inexact).
  LaurentSeries inverse(std::int64_t relative_precision = kDefaultPrecision) const {
    if (is_zero()) {
      if (is_exact()) throw std::domain_error("inverse of zero");
      throw InsufficientPrecision("inverse of an element that is zero to precision " + std::to_string(prec_));
    }
    const int u0_inv = field_->inv(coeffs_[0]);
    if (coeffs_.size() == 1 && is_exact()) return monomial(field_, u0_inv, -start_);
    const std::int64_t rel = is_exact() ? relative_precision : std::min(relative_precision, prec_ - start_);
    std::vector<int> b(static_cast<std::size_t>(rel), 0);
    for (std::int64_t k = 0; k < rel; ++k) {
      int acc = k == 0 ? 1 : 0;
      for (std::int64_t i = 1; i <= k && i < static_cast<std::int64_t>(coeffs_.size()); ++i)
        acc = field_->sub(acc, field_->mul(coeffs_[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(k - i)]));
      b[static_cast<std::size_t>(k)] = field_->mul(acc, u0_inv);
    }
    return from_coefficients(field_, -start_, std::move(b), -start_ + rel);
  }

  bool operator==(const LaurentSeries& o) const {
    return prec_ == o.prec_ && coeffs_ == o.coeffs_ && (coeffs_.empty() || start_ == o.start_);
  }

  /// "t^3 + (a+1)*t^5 + O(t^10)"; exact zero prints as "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int c = coeffs_[i];
      if (!c) continue;
      const std::int64_t e = start_ + static_cast<std::int64_t>(i);
      if (!first) os << " + ";
      first = false;
      std::string cs = field_->to_string(c);
      const bool compound = cs.find('+') != std::string::npos;
      if (e == 0) {
        os << cs;
        continue;
      }
      if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << '*';
      os << 't';
      if (e != 1) os << '^' << e;
    }
    if (!is_exact()) {
      if (!first) os << " + ";
      first = false;
      os << "O(t^" << prec_ << ')';
    }
    return first ? "0" : os.str();
  }

 private:
  static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
    const auto& f = a.field_ ? a.field_ : b.field_;
    LaurentSeries out(f, std::min(a.prec_, b.prec_));
    if (a.is_zero() && b.is_zero()) return out;
    std::int64_t lo = kExact, hi = -kExact;
    for (const auto* s : {&a, &b})
      if (!s->is_zero()) {
        lo = std::min(lo, s->start_);
        hi = std::max(hi, s->end());
      }
    hi = std::min(hi, out.prec_);
    if (hi <= lo) return out;
    out.start_ = lo;
    out.coeffs_.assign(static_cast<std::size_t>(hi - lo), 0);
    for (std::int64_t e = lo; e < hi; ++e) {
      const int x = a.raw(e), y = b.raw(e);
      out.coeffs_[static_cast<std::size_t>(e - lo)] = subtract ? f->sub(x, y) : f->add(x, y);
    }
    out.normalize();
    return out;
  }

  int raw(std::int64_t e) const {
    if (coeffs_.empty() || e < start_ || e >= end()) return 0;
    return coeffs_[static_cast<std::size_t>(e - start_)];
  }

  void normalize() {
    if (!is_exact() && !coeffs_.empty() && end() > prec_) {
      const std::int64_t keep = std::max<std::int64_t>(0, prec_ - start_);
      coeffs_.resize(static_cast<std::size_t>(keep));
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead) {
      coeffs_ = std::vector<int>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead), coeffs_.end());
      start_ += static_cast<std::int64_t>(lead);
    }
    if (coeffs_.empty()) start_ = 0;
  }

  ResidueFieldPtr field_;
  std::int64_t start_ = 0;
  std::vector<int> coeffs_;
  std::int64_t prec_ = kExact;
};

}  // namespace insep
