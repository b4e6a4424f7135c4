#pragma once

// Finite fields F_q = F_p[a]/(m(a)). An element is stored as the integer whose
// base-p digits are its coefficients in 1, a, a^2, ...

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "insep/arith.hpp"

namespace insep {

namespace fp_poly {

using Poly = std::vector<int>;  // coefficients low -> high

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly rem(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = static_cast<int>(checked_pow(m.back(), static_cast<unsigned>(p - 2)) % p);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int f = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return out;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& m, int p) {
  const int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k) {
    const std::int64_t count = checked_pow(p, static_cast<unsigned>(k));
    for (std::int64_t code = 0; code < count; ++code) {
      Poly g(static_cast<std::size_t>(k) + 1, 0);
      std::int64_t c = code;
      for (int i = 0; i < k; ++i, c /= p) g[i] = static_cast<int>(c % p);
      g[k] = 1;
      if (rem(m, g, p).empty()) return false;
    }
  }
  return true;
}

/// The monic irreducible of degree d whose lower coefficients, read as base-p
/// digits, form the smallest integer.
inline Poly smallest_irreducible(int p, int d) {
  const std::int64_t count = checked_pow(p, static_cast<unsigned>(d));
  for (std::int64_t code = 0; code < count; ++code) {
    Poly m(static_cast<std::size_t>(d) + 1, 0);
    std::int64_t c = code;
    for (int i = 0; i < d; ++i, c /= p) m[i] = static_cast<int>(c % p);
    m[d] = 1;
    if (is_irreducible(m, p)) return m;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace fp_poly

class ResidueField {
 public:
  static constexpr int kBuiltinLimit = 64;
  static constexpr int kTableLimit = 256;

  /// F_q with q = p^d. Without a modulus, q must be at most 64 and the
  /// smallest monic irreducible is used; a supplied modulus is checked.
  ResidueField(int p, int d = 1, fp_poly::Poly modulus = {}) : p_(p), d_(d) {
    if (!is_prime(p)) throw std::invalid_argument("residue field: p = " + std::to_string(p) + " is not prime");
    if (d < 1) throw std::invalid_argument("residue field: degree must be >= 1");
    q_ = static_cast<int>(checked_pow(p, static_cast<unsigned>(d)));
    if (modulus.empty()) {
      if (q_ > kBuiltinLimit)
        throw std::invalid_argument("residue field: q = " + std::to_string(q_) +
                                    " exceeds the built-in table; supply a modulus");
      modulus_ = fp_poly::smallest_irreducible(p, d);
    } else {
      for (int& c : modulus) c = static_cast<int>(mod_floor(c, p));
      if (static_cast<int>(modulus.size()) != d + 1 || modulus.back() != 1)
        throw std::invalid_argument("residue field: modulus must be monic of degree " + std::to_string(d));
      if (!fp_poly::is_irreducible(modulus, p))
        throw std::invalid_argument("residue field: modulus is reducible over F_" + std::to_string(p));
      modulus_ = std::move(modulus);
    }
    if (q_ <= kTableLimit) build_tables();
  }

  static std::shared_ptr<const ResidueField> make(int p, int d = 1, fp_poly::Poly modulus = {}) {
    return std::make_shared<const ResidueField>(p, d, std::move(modulus));
  }

  int p() const { return p_; }
  int degree() const { return d_; }
  int q() const { return q_; }
  const fp_poly::Poly& modulus() const { return modulus_; }

  int add(int x, int y) const {
    if (!add_.empty()) return add_[static_cast<std::size_t>(x * q_ + y)];
    return encode(combine(decode(x), decode(y), 1));
  }
  int neg(int x) const { return sub(0, x); }
  int sub(int x, int y) const {
    if (!sub_.empty()) return sub_[static_cast<std::size_t>(x * q_ + y)];
    return encode(combine(decode(x), decode(y), -1));
  }
  int mul(int x, int y) const {
    if (!mul_.empty()) return mul_[static_cast<std::size_t>(x * q_ + y)];
    return slow_mul(x, y);
  }
  int inv(int x) const {
    if (x == 0) throw std::domain_error("residue field: inverse of 0");
    if (!inv_.empty()) return inv_[static_cast<std::size_t>(x)];
    return pow(x, static_cast<std::uint64_t>(q_ - 2));
  }
  int pow(int x, std::uint64_t e) const {
    int r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  int from_integer(std::int64_t k) const { return static_cast<int>(mod_floor(k, p_)); }

  /// The class of a in F_p[a]/(m(a)).
  int generator() const {
    if (d_ == 1) throw std::invalid_argument("residue field F_" + std::to_string(p_) + " has no generator 'a'");
    return p_;
  }
  bool in_prime_field(int x) const { return x < p_; }

  std::string to_string(int x) const {
    if (d_ == 1) return std::to_string(x);
    auto c = decode(x);
    std::ostringstream os;
    bool first = true;
    for (int i = d_ - 1; i >= 0; --i) {
      if (!c[i]) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0) {
        os << c[i];
        continue;
      }
      if (c[i] != 1) os << c[i] << '*';
      os << 'a';
      if (i > 1) os << '^' << i;
    }
    return first ? "0" : os.str();
  }

 private:
  fp_poly::Poly decode(int x) const {
    fp_poly::Poly c(static_cast<std::size_t>(d_), 0);
    for (int i = 0; i < d_; ++i, x /= p_) c[i] = x % p_;
    return c;
  }
  int encode(const fp_poly::Poly& c) const {
    int x = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) x = x * p_ + c[i];
    return x;
  }
  fp_poly::Poly combine(fp_poly::Poly a, const fp_poly::Poly& b, int sign) const {
    for (int i = 0; i < d_; ++i) a[i] = static_cast<int>(mod_floor(a[i] + sign * b[i], p_));
    return a;
  }
  int slow_mul(int x, int y) const {
    auto prod = fp_poly::rem(fp_poly::mul(decode(x), decode(y), p_), modulus_, p_);
    prod.resize(static_cast<std::size_t>(d_), 0);
    return encode(prod);
  }
  void build_tables() {
    const auto qq = static_cast<std::size_t>(q_) * static_cast<std::size_t>(q_);
    std::vector<int> a(qq), s(qq), m(qq), inv(static_cast<std::size_t>(q_), 0);
    for (int x = 0; x < q_; ++x)
      for (int y = 0; y < q_; ++y) {
        const auto k = static_cast<std::size_t>(x * q_ + y);
        a[k] = encode(combine(decode(x), decode(y), 1));
        s[k] = encode(combine(decode(x), decode(y), -1));
        m[k] = slow_mul(x, y);
        if (m[k] == 1) inv[static_cast<std::size_t>(x)] = y;
      }
    add_ = std::move(a);
    sub_ = std::move(s);
    mul_ = std::move(m);
    inv_ = std::move(inv);
  }

  int p_, d_, q_;
  fp_poly::Poly modulus_;
  std::vector<int> add_, sub_, mul_, inv_;
};

using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

}  // namespace insep
