#pragma once

// Base fields (F_q((t)) and Q_p), totally ramified Eisenstein extensions over
// them, multiplication matrices and characteristic polynomials.

#include <concepts>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "insep/arith.hpp"
#include "insep/laurent_series.hpp"
#include "insep/padic.hpp"
#include "insep/residue_field.hpp"
#include "insep/valuation.hpp"

namespace insep {

class NotEisenstein : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAUniformizer : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LaurentBase {
  using Element = LaurentSeries;

  ResidueFieldPtr field;
  std::int64_t precision = kDefaultPrecision;

  static LaurentBase make(int p, int d = 1, fp_poly::Poly modulus = {},
                          std::int64_t precision = kDefaultPrecision) {
    return {ResidueField::make(p, d, std::move(modulus)), precision};
  }

  int p() const { return field->p(); }
  std::int64_t q() const { return field->q(); }
  bool equal_characteristic() const { return true; }
  /// v_K(p); absent (infinite) in equal characteristic.
  std::optional<std::int64_t> e_K() const { return std::nullopt; }

  Element zero() const { return LaurentSeries(field); }
  Element one() const { return LaurentSeries::monomial(field, 1, 0); }
  Element from_integer(std::int64_t k) const { return LaurentSeries::monomial(field, field->from_integer(k), 0); }
  Element uniformizer() const { return LaurentSeries::monomial(field, 1, 1); }
  Element uniformizer_power(std::int64_t e) const { return LaurentSeries::monomial(field, 1, e); }
  /// Constant series lifting a residue class (encoded as in ResidueField).
  Element residue(int x) const { return LaurentSeries::monomial(field, x, 0); }
  std::vector<Element> residue_representatives() const {
    std::vector<Element> out;
    for (int x = 0; x < field->q(); ++x) out.push_back(residue(x));
    return out;
  }
  Element inverse(const Element& x) const { return x.inverse(precision); }

  std::string describe() const {
    std::string s = "laurent:p=" + std::to_string(field->p()) + ",d=" + std::to_string(field->degree());
    return s;
  }
};

struct PadicBase {
  using Element = PadicNumber;

  std::int64_t prime = 2;
  std::int64_t precision = kDefaultPrecision;

  static PadicBase make(std::int64_t p, std::int64_t precision = kDefaultPrecision) {
    if (!is_prime(p)) throw std::invalid_argument("p-adic base: p = " + std::to_string(p) + " is not prime");
    return {p, precision};
  }

  int p() const { return static_cast<int>(prime); }
  std::int64_t q() const { return prime; }
  bool equal_characteristic() const { return false; }
  std::optional<std::int64_t> e_K() const { return 1; }

  Element zero() const { return PadicNumber(prime, 0); }
  Element one() const { return PadicNumber(prime, 1); }
  Element from_integer(std::int64_t k) const { return PadicNumber(prime, k); }
  Element uniformizer() const { return PadicNumber(prime, prime); }
  Element uniformizer_power(std::int64_t e) const { return PadicNumber::prime_power(prime, e); }
  Element residue(int x) const { return PadicNumber(prime, x); }
  std::vector<Element> residue_representatives() const {
    std::vector<Element> out;
    for (std::int64_t x = 0; x < prime; ++x) out.push_back(from_integer(x));
    return out;
  }
  Element inverse(const Element& x) const { return x.inverse(precision); }

  std::string describe() const { return "padic:p=" + std::to_string(prime); }
};

template <class B>
concept LocalBase = requires(const B& b, const typename B::Element& x, std::int64_t k, int r) {
  { b.zero() } -> std::same_as<typename B::Element>;
  { b.one() } -> std::same_as<typename B::Element>;
  { b.from_integer(k) } -> std::same_as<typename B::Element>;
  { b.uniformizer_power(k) } -> std::same_as<typename B::Element>;
  { b.residue(r) } -> std::same_as<typename B::Element>;
  { b.residue_representatives() } -> std::same_as<std::vector<typename B::Element>>;
  { b.inverse(x) } -> std::same_as<typename B::Element>;
  { b.p() } -> std::convertible_to<int>;
  { b.q() } -> std::convertible_to<std::int64_t>;
  { b.e_K() } -> std::same_as<std::optional<std::int64_t>>;
  { x.valuation() } -> std::same_as<Valuation>;
  { x + x } -> std::same_as<typename B::Element>;
  { x * x } -> std::same_as<typename B::Element>;
  { -x } -> std::same_as<typename B::Element>;
  { x.is_exact_zero() } -> std::same_as<bool>;
  { x.to_string() } -> std::same_as<std::string>;
};

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Coefficients k_0 = 1, k_1, ..., k_n of det(X·I − A) = Σ k_i X^(n−i), by
/// Berkowitz's algorithm, which uses only ring operations.
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return {one};
  std::vector<T> poly{one, -a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // leading r×r block A_r, new row R = a[r][0..r), column C = a[0..r)[r]
    std::vector<T> t{one, -a[r][r]};
    std::vector<T> q(r);
    for (std::size_t i = 0; i < r; ++i) q[i] = a[i][r];
    for (std::size_t k = 1; k <= r; ++k) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i)
        if (!a[r][i].is_exact_zero() && !q[i].is_exact_zero()) dot += a[r][i] * q[i];
      t.push_back(-dot);
      if (k == r) break;
      std::vector<T> next(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (!a[i][j].is_exact_zero() && !q[j].is_exact_zero()) next[i] += a[i][j] * q[j];
      q = std::move(next);
    }
    std::vector<T> next_poly(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!t[i - j].is_exact_zero() && !poly[j].is_exact_zero()) next_poly[i] += t[i - j] * poly[j];
    poly = std::move(next_poly);
  }
  return poly;
}

/// α = Σ coeffs[i] π^i in the basis 1, π, ..., π^(n−1).
template <class Element>
struct ExtElement {
  std::vector<Element> coeffs;
  bool operator==(const ExtElement&) const = default;
};

/// L = K(π) where π is a root of the Eisenstein polynomial
/// f(X) = X^n − c_1 X^(n−1) + ... + (−1)^n c_n.
template <LocalBase Base>
class EisensteinExtension {
 public:
  using Element = typename Base::Element;
  using Elt = ExtElement<Element>;

  /// From c_1, ..., c_n.
  EisensteinExtension(Base base, std::vector<Element> coefficients)
      : base_(std::move(base)), c_(std::move(coefficients)) {
    n_ = static_cast<int>(c_.size());
    if (n_ < 1) throw NotEisenstein("Eisenstein polynomial must have degree >= 1");
    const int p = base_.p();
    nu_ = 0;
    u_ = n_;
    while (u_ % p == 0) {
      u_ /= p;
      ++nu_;
    }
    for (int h = 1; h <= n_; ++h) {
      const Valuation v = c(h).valuation();
      if (h < n_ && !v.at_least_value(1))
        throw NotEisenstein("not Eisenstein: coefficient c_" + std::to_string(h) + " has valuation " +
                            v.to_string());
      if (h == n_ && !(v.is_finite() && v.value() == 1))
        throw NotEisenstein("not Eisenstein: constant term has valuation " + v.to_string() + ", need 1");
    }
    reduction_.reserve(static_cast<std::size_t>(n_));
    for (int h = 1; h <= n_; ++h) reduction_.push_back(h % 2 ? c(h) : -c(h));
  }

  /// From the monic coefficient list f_0, ..., f_n (low to high).
  static EisensteinExtension from_polynomial(Base base, const std::vector<Element>& f) {
    if (f.size() < 2) throw NotEisenstein("polynomial must have degree >= 1");
    const int n = static_cast<int>(f.size()) - 1;
    const Element diff = f.back() - base.one();
    if (!diff.is_exact_zero()) throw NotEisenstein("polynomial must be monic");
    std::vector<Element> c;
    for (int h = 1; h <= n; ++h) c.push_back(h % 2 ? -f[static_cast<std::size_t>(n - h)] : f[static_cast<std::size_t>(n - h)]);
    return EisensteinExtension(std::move(base), std::move(c));
  }

  const Base& base() const { return base_; }
  int n() const { return n_; }
  int p() const { return base_.p(); }
  int u() const { return u_; }
  int nu() const { return nu_; }
  const Element& c(int h) const { return c_.at(static_cast<std::size_t>(h - 1)); }
  const std::vector<Element>& cs() const { return c_; }
  /// v_L(p) = n·e_K; absent (infinite) in equal characteristic.
  std::optional<std::int64_t> e_L() const {
    auto e = base_.e_K();
    if (!e) return std::nullopt;
    return *e * n_;
  }

  /// f_0, ..., f_n, low to high.
  std::vector<Element> polynomial() const {
    std::vector<Element> f(static_cast<std::size_t>(n_) + 1, base_.zero());
    f[static_cast<std::size_t>(n_)] = base_.one();
    for (int h = 1; h <= n_; ++h) f[static_cast<std::size_t>(n_ - h)] = h % 2 ? -c(h) : c(h);
    return f;
  }

  std::string polynomial_string() const {
    auto f = polynomial();
    std::ostringstream os;
    os << "X^" << n_;
    for (int k = n_ - 1; k >= 0; --k) {
      const auto& coef = f[static_cast<std::size_t>(k)];
      if (coef.is_exact_zero()) continue;
      std::string s = coef.to_string();
      const bool compound = s.find(' ') != std::string::npos;
      os << " + ";
      if (k == 0) {
        os << (compound ? "(" + s + ")" : s);
        continue;
      }
      if (s != "1") os << (compound ? "(" + s + ")" : s) << '*';
      os << 'X';
      if (k > 1) os << '^' << k;
    }
    return os.str();
  }

  Elt zero() const { return Elt{std::vector<Element>(static_cast<std::size_t>(n_), base_.zero())}; }
  Elt embed(const Element& x) const {
    Elt e = zero();
    e.coeffs[0] = x;
    return e;
  }
  Elt one() const { return embed(base_.one()); }
  Elt pi() const { return pi_power(1); }

  Elt add(const Elt& a, const Elt& b) const {
    Elt out = a;
    for (int i = 0; i < n_; ++i) out.coeffs[static_cast<std::size_t>(i)] += b.coeffs[static_cast<std::size_t>(i)];
    return out;
  }
  Elt scale(const Element& s, const Elt& a) const {
    Elt out = a;
    for (auto& x : out.coeffs) x = s * x;
    return out;
  }

  Elt multiply(const Elt& a, const Elt& b) const {
    std::vector<Element> prod(static_cast<std::size_t>(2 * n_ - 1), base_.zero());
    for (int i = 0; i < n_; ++i) {
      const auto& x = a.coeffs[static_cast<std::size_t>(i)];
      if (x.is_exact_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        const auto& y = b.coeffs[static_cast<std::size_t>(j)];
        if (!y.is_exact_zero()) prod[static_cast<std::size_t>(i + j)] += x * y;
      }
    }
    return reduce(std::move(prod));
  }

  /// Reduces a polynomial in π of any degree modulo f.
  Elt reduce(std::vector<Element> poly) const {
    for (int d = static_cast<int>(poly.size()) - 1; d >= n_; --d) {
      const Element x = poly[static_cast<std::size_t>(d)];
      if (x.is_exact_zero()) continue;
      for (int h = 1; h <= n_; ++h) {
        const auto& s = reduction_[static_cast<std::size_t>(h - 1)];
        if (!s.is_exact_zero()) poly[static_cast<std::size_t>(d - h)] += s * x;
      }
    }
    poly.resize(static_cast<std::size_t>(n_), base_.zero());
    return Elt{std::move(poly)};
  }

  /// π^e for any integer e (negative powers use c_n^(−1)).
  Elt pi_power(std::int64_t e) const {
    if (e >= 0 && e < n_) {
      Elt out = zero();
      out.coeffs[static_cast<std::size_t>(e)] = base_.one();
      return out;
    }
    Elt step = e >= 0 ? pi_power(1) : pi_inverse();
    Elt out = one();
    std::uint64_t k = static_cast<std::uint64_t>(e >= 0 ? e : -e);
    while (k) {
      if (k & 1) out = multiply(out, step);
      step = multiply(step, step);
      k >>= 1;
    }
    return out;
  }

  Elt pi_inverse() const {
    // π · Σ_{h<n} (−1)^h c_h π^(n−1−h) = (−1)^(n+1) c_n
    Element scale_by = base_.inverse(n_ % 2 ? c(n_) : -c(n_));
    Elt out = zero();
    for (int h = 0; h < n_; ++h) {
      Element ch = h == 0 ? base_.one() : c(h);
      if (h % 2) ch = -ch;
      out.coeffs[static_cast<std::size_t>(n_ - 1 - h)] = ch * scale_by;
    }
    return out;
  }

  /// Σ a_i π^i for (i, a_i) pairs; exponents may repeat or be negative.
  Elt from_series(const std::vector<std::pair<std::int64_t, Element>>& terms) const {
    Elt out = zero();
    for (const auto& [i, a] : terms) {
      if (a.is_exact_zero()) continue;
      out = add(out, scale(a, pi_power(i)));
    }
    return out;
  }

  /// Column i holds the coordinates of α·π^i.
  Matrix<Element> mult_matrix(const Elt& alpha) const {
    Matrix<Element> m(static_cast<std::size_t>(n_), std::vector<Element>(static_cast<std::size_t>(n_), base_.zero()));
    Elt col = alpha;
    for (int i = 0; i < n_; ++i) {
      for (int r = 0; r < n_; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = col.coeffs[static_cast<std::size_t>(r)];
      if (i + 1 < n_) col = times_pi(col);
    }
    return m;
  }

  /// E_1(α), ..., E_n(α): E_h = (−1)^h · (coefficient of X^(n−h) in det(X − T_α)).
  std::vector<Element> elementary_symmetric_values(const Elt& alpha, bool require_determinate = false) const {
    auto k = characteristic_polynomial(mult_matrix(alpha), base_.zero(), base_.one());
    std::vector<Element> e;
    for (int h = 1; h <= n_; ++h) {
      Element v = k[static_cast<std::size_t>(h)];
      e.push_back(h % 2 ? -v : v);
      if (require_determinate && e.back().valuation().is_indeterminate())
        throw InsufficientPrecision("insufficient precision: E_" + std::to_string(h) + " is " +
                                    e.back().to_string());
    }
    return e;
  }

  Element norm(const Elt& alpha) const { return elementary_symmetric_values(alpha).back(); }
  Element trace(const Elt& alpha) const { return elementary_symmetric_values(alpha).front(); }

  /// min_i (n·v_K(α_i) + i).
  Valuation valuation_L(const Elt& alpha) const {
    std::optional<std::int64_t> best_finite, best_bound;
    for (int i = 0; i < n_; ++i) {
      const Valuation v = alpha.coeffs[static_cast<std::size_t>(i)].valuation();
      if (v.is_infinite()) continue;
      const std::int64_t cand = static_cast<std::int64_t>(n_) * v.lower_bound() + i;
      auto& slot = v.is_finite() ? best_finite : best_bound;
      if (!slot || cand < *slot) slot = cand;
    }
    if (!best_finite && !best_bound) return Valuation::infinite();
    if (best_finite && (!best_bound || *best_finite < *best_bound)) return Valuation::finite(*best_finite);
    return Valuation::at_least(best_finite ? std::min(*best_finite, *best_bound) : *best_bound);
  }

  /// The Eisenstein polynomial of a uniformizer α of L.
  EisensteinExtension min_poly_of(const Elt& alpha) const {
    const Valuation v = valuation_L(alpha);
    if (!(v.is_finite() && v.value() == 1)) throw NotAUniformizer("not a uniformizer: v_L(alpha) = " + v.to_string());
    return EisensteinExtension(base_, elementary_symmetric_values(alpha, true));
  }

  /// "c@i" term list, e.g. "t@0, 1@3"; zero prints as "0@0".
  std::string element_string(const Elt& alpha) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < n_; ++i) {
      const auto& x = alpha.coeffs[static_cast<std::size_t>(i)];
      if (x.is_exact_zero()) continue;
      std::string s = x.to_string();
      if (s.find(' ') != std::string::npos) s = "(" + s + ")";
      os << (first ? "" : ", ") << s << '@' << i;
      first = false;
    }
    return first ? "0@0" : os.str();
  }

 private:
  Elt times_pi(const Elt& a) const {
    std::vector<Element> shifted(static_cast<std::size_t>(n_) + 1, base_.zero());
    for (int i = 0; i < n_; ++i) shifted[static_cast<std::size_t>(i) + 1] = a.coeffs[static_cast<std::size_t>(i)];
    return reduce(std::move(shifted));
  }

  Base base_;
  std::vector<Element> c_;
  std::vector<Element> reduction_;  // π^n = Σ_h reduction_[h−1] π^(n−h)
  int n_ = 0, u_ = 0, nu_ = 0;
};

using LaurentExtension = EisensteinExtension<LaurentBase>;
using PadicExtension = EisensteinExtension<PadicBase>;

}  // namespace insep
