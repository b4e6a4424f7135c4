#pragma once

// Symmetric polynomials in the monomial basis, the monomial -> elementary
// change of basis computed by exact integer elimination, and the subrings
// R_k = Z[X^(p^k)] + p Z[X^(p^(k-1))] + ... + p^k Z[X] of Z[X_1..X_n].

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "insep/arith.hpp"
#include "insep/partition.hpp"

namespace insep {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kDefaultPsiBound = 12;

class BoundExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symmetric polynomial in n variables, stored in the monomial basis:
/// key λ (at most n parts) carries the coefficient of m_λ.
class MultiSymPoly {
 public:
  explicit MultiSymPoly(int n = 1) : n_(n) {
    if (n < 1) throw std::invalid_argument("MultiSymPoly: n must be >= 1");
  }

  static MultiSymPoly monomial(const Partition& mu, int n) {
    if (static_cast<int>(mu.size()) > n)
      throw std::invalid_argument("monomial_sym: " + mu.to_string() + " has more than " +
                                  std::to_string(n) + " parts");
    MultiSymPoly out(n);
    out.terms_[mu] = 1;
    return out;
  }

  static MultiSymPoly constant(const BigInt& c, int n) {
    MultiSymPoly out(n);
    if (c != 0) out.terms_[Partition{}] = c;
    return out;
  }

  int variables() const { return n_; }
  const std::map<Partition, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt coefficient(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  MultiSymPoly& add_term(const Partition& lambda, const BigInt& c) {
    if (c == 0) return *this;
    auto [it, inserted] = terms_.emplace(lambda, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  MultiSymPoly& operator+=(const MultiSymPoly& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  MultiSymPoly& operator-=(const MultiSymPoly& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend MultiSymPoly operator+(MultiSymPoly a, const MultiSymPoly& b) { return a += b; }
  friend MultiSymPoly operator-(MultiSymPoly a, const MultiSymPoly& b) { return a -= b; }

  friend MultiSymPoly operator*(const BigInt& s, const MultiSymPoly& a) {
    MultiSymPoly out(a.n_);
    if (s == 0) return out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, s * c);
    return out;
  }

  /// Product in the monomial basis. The coefficient of m_ν in m_α·m_β is
  /// the number of pairs (a, b), a a rearrangement of α, b of β (padded
  /// to n), with a + b = ν as exponent vectors.
  friend MultiSymPoly operator*(const MultiSymPoly& x, const MultiSymPoly& y) {
    x.check_same(y);
    MultiSymPoly out(x.n_);
    for (const auto& [alpha, ca] : x.terms_)
      for (const auto& [beta, cb] : y.terms_)
        for (const auto& [nu, count] : monomial_product(alpha, beta, x.n_))
          out.add_term(nu, ca * cb * count);
    return out;
  }

  friend bool operator==(const MultiSymPoly&, const MultiSymPoly&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      os << (first ? "" : " + ") << it->second << "*m" << it->first.to_string();
      first = false;
    }
    return os.str();
  }

  static std::map<Partition, BigInt> monomial_product(const Partition& alpha,
                                                      const Partition& beta, int n) {
    std::vector<int> a_counts = padded(alpha, n), b_counts = padded(beta, n);
    std::vector<int> a(static_cast<std::size_t>(n)), nu(static_cast<std::size_t>(n));
    std::map<Partition, BigInt> out;
    // choose a position by position, then b subject to ν weakly decreasing
    auto pick_b = [&](auto&& self, int i) -> void {
      if (i == n) {
        std::vector<int> parts;
        for (int v : nu)
          if (v > 0) parts.push_back(v);
        out[Partition(std::move(parts))] += 1;
        return;
      }
      for (std::size_t v = 0; v < b_counts.size(); ++v) {
        if (!b_counts[v]) continue;
        int val = a[static_cast<std::size_t>(i)] + static_cast<int>(v);
        if (i > 0 && val > nu[static_cast<std::size_t>(i - 1)]) continue;
        --b_counts[v];
        nu[static_cast<std::size_t>(i)] = val;
        self(self, i + 1);
        ++b_counts[v];
      }
    };
    auto pick_a = [&](auto&& self, int i) -> void {
      if (i == n) {
        pick_b(pick_b, 0);
        return;
      }
      for (std::size_t v = 0; v < a_counts.size(); ++v) {
        if (!a_counts[v]) continue;
        --a_counts[v];
        a[static_cast<std::size_t>(i)] = static_cast<int>(v);
        self(self, i + 1);
        ++a_counts[v];
      }
    };
    pick_a(pick_a, 0);
    return out;
  }

 private:
  // multiplicities of each exponent value in λ padded with zeros to n slots
  static std::vector<int> padded(const Partition& p, int n) {
    if (static_cast<int>(p.size()) > n)
      throw std::invalid_argument("partition has more parts than variables");
    std::vector<int> c(static_cast<std::size_t>(p.largest()) + 1, 0);
    c[0] = n - static_cast<int>(p.size());
    for (int x : p) ++c[static_cast<std::size_t>(x)];
    return c;
  }

  void check_same(const MultiSymPoly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("MultiSymPoly: variable counts differ");
  }

  int n_;
  std::map<Partition, BigInt> terms_;
};

inline MultiSymPoly monomial_sym(const Partition& mu, int n) {
  return MultiSymPoly::monomial(mu, n);
}

/// e_h = m_{1^h}
inline MultiSymPoly elementary_sym(int h, int n) {
  if (h < 1 || h > n)
    throw std::invalid_argument("elementary_sym: need 1 <= h <= n, got h=" + std::to_string(h));
  return MultiSymPoly::monomial(Partition::uniform(h, 1), n);
}

/// e_{λ1}···e_{λk} with memoization on λ.
class ElementaryProducts {
 public:
  explicit ElementaryProducts(int n) : n_(n) {}

  const MultiSymPoly& get(const Partition& lambda) {
    if (auto it = memo_.find(lambda); it != memo_.end()) return it->second;
    MultiSymPoly value(n_);
    if (lambda.empty()) {
      value = MultiSymPoly::constant(1, n_);
    } else {
      std::vector<int> rest(lambda.begin(), lambda.end() - 1);
      value = get(Partition(rest)) * elementary_sym(lambda.smallest(), n_);
    }
    return memo_.emplace(lambda, std::move(value)).first->second;
  }

 private:
  int n_;
  std::map<Partition, MultiSymPoly> memo_;
};

/// ψ_μ: the unique polynomial with m_μ = ψ_μ(e_1, …, e_n), stored as its
/// coefficients on the monomials X_{λ1}···X_{λk} (keyed by λ, parts ≤ n).
struct PsiPolynomial {
  int n = 1;
  Partition mu;
  std::map<Partition, BigInt> terms;

  BigInt coefficient(const Partition& lambda) const {
    auto it = terms.find(lambda);
    return it == terms.end() ? BigInt(0) : it->second;
  }

  /// ψ_μ(e_1, …, e_n) expanded in the monomial basis.
  MultiSymPoly evaluate_on_elementary() const {
    ElementaryProducts e(n);
    MultiSymPoly out(n);
    for (const auto& [lambda, c] : terms) out += c * e.get(lambda);
    return out;
  }

  /// One line per term: "d * X_a·X_b·…".
  std::string to_string() const {
    std::ostringstream os;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      os << it->second << " * ";
      for (std::size_t i = 0; i < it->first.size(); ++i)
        os << (i ? "·" : "") << "X_" << it->first[i];
      os << '\n';
    }
    return os.str();
  }
};

/// Solves m_μ = Σ_λ x_λ e_λ exactly. In the monomial basis e_{λ'} has leading
/// (lexicographically largest) term m_λ with coefficient 1, so peeling off
/// the current leading term solves the unitriangular integer system without
/// any choice of pivot order.
inline PsiPolynomial brute_force_psi(const Partition& mu, int n, int bound = kDefaultPsiBound) {
  if (static_cast<int>(mu.size()) > n)
    throw std::invalid_argument("brute_force_psi: " + mu.to_string() + " has more than " +
                                std::to_string(n) + " parts");
  if (mu.sum() > bound)
    throw BoundExceeded("brute_force_psi: sum(mu)=" + std::to_string(mu.sum()) +
                        " exceeds bound " + std::to_string(bound));
  PsiPolynomial psi{n, mu, {}};
  ElementaryProducts e(n);
  MultiSymPoly rest = monomial_sym(mu, n);
  while (!rest.is_zero()) {
    const auto& [lead, c] = *rest.terms().rbegin();
    const Partition lambda = conjugate(lead);
    const MultiSymPoly& prod = e.get(lambda);
    if (prod.terms().rbegin()->first != lead || prod.terms().rbegin()->second != 1)
      throw std::logic_error("brute_force_psi: e-product is not unitriangular at " +
                             lambda.to_string());
    const BigInt coeff = c;
    psi.terms[lambda] += coeff;
    rest -= coeff * prod;
  }
  return psi;
}

/// Power sum p_k = m_{k} computed from e's by Newton's identities:
/// p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
inline MultiSymPoly power_sum_by_newton(int k, int n) {
  std::vector<MultiSymPoly> p;
  p.reserve(static_cast<std::size_t>(k) + 1);
  p.emplace_back(n);
  for (int m = 1; m <= k; ++m) {
    MultiSymPoly acc(n);
    for (int i = 1; i < m && i <= n; ++i) {
      BigInt sign = (i % 2 == 1) ? 1 : -1;
      acc += sign * (elementary_sym(i, n) * p[static_cast<std::size_t>(m - i)]);
    }
    if (m <= n) acc += BigInt((m % 2 == 1) ? m : -m) * elementary_sym(m, n);
    p.push_back(std::move(acc));
  }
  return p.back();
}

/// A symmetric function written in the elementary basis: key μ carries the
/// coefficient of e_μ. Identities here hold in infinitely many variables.
using ElementaryExpansion = std::map<Partition, BigInt>;

/// p_m = Σ_{μ ⊢ m} (-1)^(m-ℓ(μ)) · m·(ℓ(μ)-1)! / Π_i m_i(μ)! · e_μ.
inline ElementaryExpansion power_sum_in_elementary(int m) {
  if (m < 1) throw std::invalid_argument("power_sum_in_elementary: m must be >= 1");
  ElementaryExpansion out;
  for (const auto& mu : enumerate(m)) {
    const int len = static_cast<int>(mu.size());
    BigInt num = m;
    for (int i = 2; i < len; ++i) num *= i;
    BigInt den = 1;
    for (int c : mu.counts())
      for (int i = 2; i <= c; ++i) den *= i;
    if (num % den != 0) throw std::logic_error("power_sum_in_elementary: non-integral coefficient");
    BigInt coeff = num / den;
    if ((m - len) % 2) coeff = -coeff;
    out.emplace(mu, std::move(coeff));
  }
  return out;
}

/// m_{k·λ'} in the elementary basis. m_λ' is first written in power sums by
/// an exact rational solve in Σ(λ') variables; substituting p_j -> p_{kj}
/// gives m_{k·λ'}, and each p_{kj} is expanded by Newton's identities.
inline ElementaryExpansion scaled_monomial_in_elementary(const Partition& lambda_prime, int k) {
  using boost::multiprecision::cpp_rational;
  if (k < 1) throw std::invalid_argument("scaled_monomial_in_elementary: k must be >= 1");
  const int w = lambda_prime.sum();
  if (w < 1) throw std::invalid_argument("scaled_monomial_in_elementary: empty partition");
  const auto parts = partitions_of(w);
  const std::size_t m = parts.size();
  // rows: equations indexed by λ; columns: unknown c_ρ; Σ_ρ c_ρ [m_λ] p_ρ = δ_{λ,λ'}
  std::vector<std::vector<cpp_rational>> a(m, std::vector<cpp_rational>(m + 1, 0));
  for (std::size_t col = 0; col < m; ++col) {
    MultiSymPoly prod = MultiSymPoly::constant(1, w);
    for (int part : parts[col]) prod = prod * monomial_sym(Partition{part}, w);
    for (std::size_t row = 0; row < m; ++row) a[row][col] = cpp_rational(prod.coefficient(parts[row]));
  }
  for (std::size_t row = 0; row < m; ++row) a[row][m] = parts[row] == lambda_prime ? 1 : 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw std::logic_error("scaled_monomial_in_elementary: singular power-sum matrix");
    std::swap(a[pivot], a[col]);
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const cpp_rational f = a[row][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[row][c] -= f * a[col][c];
    }
  }
  std::map<int, ElementaryExpansion> newton;
  std::map<Partition, cpp_rational> acc;
  for (std::size_t col = 0; col < m; ++col) {
    const cpp_rational c = a[col][m] / a[col][col];
    if (c == 0) continue;
    ElementaryExpansion prod{{Partition{}, 1}};
    for (int part : parts[col]) {
      auto it = newton.find(k * part);
      if (it == newton.end()) it = newton.emplace(k * part, power_sum_in_elementary(k * part)).first;
      ElementaryExpansion next;
      for (const auto& [x, cx] : prod)
        for (const auto& [y, cy] : it->second) next[merge(x, y)] += cx * cy;
      prod = std::move(next);
    }
    for (const auto& [mu, v] : prod) acc[mu] += c * cpp_rational(v);
  }
  ElementaryExpansion out;
  for (const auto& [mu, v] : acc) {
    if (v == 0) continue;
    if (boost::multiprecision::denominator(v) != 1)
      throw std::logic_error("scaled_monomial_in_elementary: non-integral coefficient at " + mu.to_string());
    out.emplace(mu, boost::multiprecision::numerator(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// General integer polynomials and the R_k subrings

/// Polynomial in n variables over Z, keyed by exponent vector.
class IntPoly {
 public:
  explicit IntPoly(int n = 1) : n_(n) {}

  int variables() const { return n_; }
  const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  IntPoly& add_term(std::vector<int> exps, const BigInt& c) {
    if (static_cast<int>(exps.size()) != n_)
      throw std::invalid_argument("IntPoly: exponent vector has wrong length");
    if (c == 0) return *this;
    auto [it, inserted] = terms_.emplace(std::move(exps), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<int> e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }

  IntPoly pow(unsigned k) const {
    IntPoly out(n_);
    out.add_term(std::vector<int>(static_cast<std::size_t>(n_), 0), 1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// F(X_1^k, …, X_n^k)
  IntPoly substitute_power(int k) const {
    IntPoly out(n_);
    for (const auto& [e, c] : terms_) {
      std::vector<int> f(e);
      for (int& x : f) x *= k;
      out.add_term(std::move(f), c);
    }
    return out;
  }

  friend IntPoly operator*(const BigInt& s, const IntPoly& a) {
    IntPoly out(a.n_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
    return out;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      os << (first ? "" : " + ") << c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) os << "*X" << (i + 1) << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
      first = false;
    }
    return os.str();
  }

 private:
  int n_;
  std::map<std::vector<int>, BigInt> terms_;
};

/// ψ_μ as a polynomial in X_1..X_n (X_i stands for e_i).
inline IntPoly to_int_poly(const PsiPolynomial& psi) {
  IntPoly out(psi.n);
  for (const auto& [lambda, c] : psi.terms) {
    std::vector<int> e(static_cast<std::size_t>(psi.n), 0);
    for (int part : lambda) ++e[static_cast<std::size_t>(part - 1)];
    out.add_term(std::move(e), c);
  }
  return out;
}

struct RkMembership {
  bool member = false;
  /// On success: F = Σ_{i=0}^{k} p^(k-i) φ_i(X^(p^i)), φ_i = witness[i].
  std::vector<IntPoly> witness;
  /// On failure: an exponent vector whose coefficient violates the bound.
  std::optional<std::vector<int>> offending_exponent;
  int failing_level = 0;
};

/// F ∈ R_k iff for every 1 ≤ i ≤ k, each monomial whose exponent vector is
/// not divisible by p^i has coefficient divisible by p^(k+1-i).
inline RkMembership rk_membership(const IntPoly& f, int k, int p) {
  if (k < 0) throw std::invalid_argument("rk_membership: k must be >= 0");
  if (!is_prime(p)) throw std::invalid_argument("rk_membership: p must be prime");
  RkMembership out;
  for (const auto& [e, c] : f.terms()) {
    std::int64_t pi = 1;
    for (int i = 1; i <= k; ++i) {
      pi = checked_mul(pi, p);
      bool divisible = std::all_of(e.begin(), e.end(), [&](int x) { return x % pi == 0; });
      if (!divisible) {
        BigInt modulus = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k + 1 - i));
        if (c % modulus != 0) {
          out.offending_exponent = e;
          out.failing_level = i;
          return out;
        }
      }
    }
  }
  out.member = true;
  out.witness.assign(static_cast<std::size_t>(k) + 1, IntPoly(f.variables()));
  for (const auto& [e, c] : f.terms()) {
    // s = min(v_p(gcd of exponents), k); the term lives in p^(k-s) φ_s(X^(p^s))
    int s = k;
    for (int x : e) s = std::min(s, vp(x, p, k));
    std::int64_t ps = checked_pow(p, static_cast<unsigned>(s));
    std::vector<int> reduced(e);
    for (int& x : reduced) x = static_cast<int>(x / ps);
    BigInt scale = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k - s));
    out.witness[static_cast<std::size_t>(s)].add_term(std::move(reduced), c / scale);
  }
  return out;
}

/// Rebuilds Σ_i p^(k-i) φ_i(X^(p^i)) from a witness.
inline IntPoly assemble_rk_witness(const std::vector<IntPoly>& phi, int p) {
  const int k = static_cast<int>(phi.size()) - 1;
  IntPoly out(phi.empty() ? 1 : phi.front().variables());
  for (int i = 0; i <= k; ++i) {
    BigInt scale = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k - i));
    out = out + scale * phi[static_cast<std::size_t>(i)].substitute_power(
                            static_cast<int>(checked_pow(p, static_cast<unsigned>(i))));
  }
  return out;
}

/// One term a_μ m_μ of e_h(φ(X_1), …, φ(X_n)) for φ = Σ_{i≥r} a_i X^i.
struct SeriesTerm {
  Partition mu;

  /// The generic-coefficient monomial a_{μ1}···a_{μh}, e.g. "a_1^3*a_2".
  std::string coefficient_monomial() const {
    std::ostringstream os;
    auto c = mu.counts();
    bool first = true;
    for (std::size_t v = 1; v < c.size(); ++v) {
      if (!c[v]) continue;
      os << (first ? "" : "*") << "a_" << v;
      if (c[v] > 1) os << '^' << c[v];
      first = false;
    }
    return os.str();
  }
};

/// Partitions μ with h parts, all ≥ r, and Σ(μ) ≤ degree_cap: the terms of
/// e_h(φ(X_1), …, φ(X_n)) up to total degree degree_cap.
inline std::vector<SeriesTerm> eh_of_series(int h, int n, int r, int degree_cap) {
  if (h < 1 || h > n) throw std::invalid_argument("eh_of_series: need 1 <= h <= n");
  if (r < 1) throw std::invalid_argument("eh_of_series: r must be >= 1");
  std::vector<SeriesTerm> out;
  for (int w = h * r; w <= degree_cap; ++w)
    for (const auto& mu : enumerate(w, {.min_part = r, .max_part = std::nullopt, .num_parts = h}))
      out.push_back({mu});
  return out;
}

}  // namespace insep
