#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "insep/arith.hpp"
#include "insep/kr_coefficients.hpp"
#include "insep/local_fields.hpp"
#include "insep/symmetric_functions.hpp"

namespace insep {

class InseparableInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResidueFieldTooSmall : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// min(v_p(k), ν), with v_p(0) = ∞.
inline int vbar_p(std::int64_t k, int nu, int p) {
  if (k == 0) return nu;
  return std::min(vp(k, p), nu);
}

struct InsepProfile {
  int n = 0, u = 0, nu = 0, p = 0;
  std::vector<std::optional<std::int64_t>> i_pi;  // i_j^π for j = 0..ν; empty = ∞
  std::vector<std::int64_t> i;                    // i_j
  std::vector<std::optional<std::int64_t>> a, b;  // i_j^π = a_j n − b_j, 1 <= b_j <= n
  std::optional<std::int64_t> e_L, e_K;           // empty = ∞
  std::vector<std::string> notes;

  std::int64_t index(int j) const { return i.at(static_cast<std::size_t>(j)); }
  int vbar(std::int64_t k) const { return vbar_p(k, nu, p); }
};

template <LocalBase Base>
InsepProfile profile(const EisensteinExtension<Base>& ext) {
  InsepProfile pr;
  pr.n = ext.n();
  pr.u = ext.u();
  pr.nu = ext.nu();
  pr.p = ext.p();
  pr.e_L = ext.e_L();
  pr.e_K = ext.base().e_K();
  const std::int64_t n = pr.n;

  for (int j = 0; j <= pr.nu; ++j) {
    std::optional<std::int64_t> best;
    std::vector<std::pair<int, std::int64_t>> unknown;  // (h, lower bound of n v(c_h) − h)
    for (int h = 1; h <= pr.n; ++h) {
      if (pr.vbar(h) > j) continue;
      const Valuation v = ext.c(h).valuation();
      if (v.is_infinite()) continue;
      const std::int64_t cand = n * v.lower_bound() - h;
      if (v.is_indeterminate()) {
        unknown.emplace_back(h, cand);
        continue;
      }
      if (!best || cand < *best) best = cand;
    }
    for (const auto& [h, bound] : unknown) {
      if (best && bound >= *best) {
        pr.notes.push_back("j=" + std::to_string(j) + ": c_" + std::to_string(h) +
                           " is indeterminate but cannot lower the minimum");
        continue;
      }
      throw InsufficientPrecision("insufficient precision: c_" + std::to_string(h) +
                                  " is needed for i_" + std::to_string(j) + "^pi");
    }
    pr.i_pi.push_back(best);
    if (best) {
      const std::int64_t a = floor_div(*best, n) + 1;
      pr.a.push_back(a);
      pr.b.push_back(a * n - *best);
    } else {
      pr.a.push_back(std::nullopt);
      pr.b.push_back(std::nullopt);
    }
  }
  if (!pr.e_L && !pr.i_pi[0])
    throw InseparableInput("inseparable input: every c_h with p not dividing h vanishes");

  for (int j = 0; j <= pr.nu; ++j) {
    std::optional<std::int64_t> best;
    for (int jp = j; jp <= pr.nu; ++jp) {
      const auto& ip = pr.i_pi[static_cast<std::size_t>(jp)];
      if (!ip) continue;
      if (jp > j && !pr.e_L) break;
      const std::int64_t cand = *ip + (jp - j) * (pr.e_L ? *pr.e_L : 0);
      if (!best || cand < *best) best = cand;
    }
    pr.i.push_back(*best);
  }
  return pr;
}

/// Which source supplies d_λμ: the cycle-digraph count or the integer
/// change of basis from monomial to elementary symmetric polynomials.
enum class DSource { basis_change, tilings };

/// ψ_μ in n variables, memoized across calls.
inline const PsiPolynomial& psi_cached(const Partition& mu, int n) {
  static std::mutex lock;
  static std::map<std::pair<Partition, int>, PsiPolynomial> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto key = std::make_pair(mu, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, brute_force_psi(mu, n, std::max(mu.sum(), 1))).first;
  return it->second;
}

namespace insep_detail {

template <LocalBase Base>
typename Base::Element from_big(const Base& base, const BigInt& x) {
  const BigInt r = x % base.p();
  if constexpr (std::is_same_v<Base, PadicBase>) {
    return PadicNumber(base.prime, x);
  } else {
    return base.from_integer(static_cast<std::int64_t>(r));
  }
}

template <LocalBase Base>
std::int64_t valuation_floor(const EisensteinExtension<Base>& ext, const Partition& lambda) {
  std::int64_t total = 0;
  for (int part : lambda) {
    const Valuation v = ext.c(part).valuation();
    if (v.is_infinite()) return kExact;
    total += v.lower_bound();
  }
  return total;
}

}  // namespace insep_detail

/// M_μ(π) = Σ_λ d_λμ c_λ over partitions λ of Σ(μ) with parts <= n. With a
/// cap, terms whose c_λ has valuation >= cap are skipped and the result is
/// truncated to absolute precision cap.
template <LocalBase Base>
typename Base::Element m_mu_value(const EisensteinExtension<Base>& ext, const Partition& mu,
                                  std::optional<std::int64_t> cap = std::nullopt,
                                  DSource source = DSource::basis_change) {
  const int n = ext.n();
  if (static_cast<int>(mu.size()) > n)
    throw std::invalid_argument("m_mu_value: mu has more than n parts");
  const auto& base = ext.base();
  auto total = base.zero();
  const PsiPolynomial* psi = source == DSource::basis_change ? &psi_cached(mu, n) : nullptr;
  for (const auto& lambda : enumerate(mu.sum(), {.min_part = 1, .max_part = n, .num_parts = std::nullopt})) {
    if (cap && insep_detail::valuation_floor(ext, lambda) >= *cap) continue;
    typename Base::Element d = psi ? insep_detail::from_big(base, psi->coefficient(lambda))
                                   : base.from_integer(d_coefficient_cached(lambda, mu));
    if (d.is_exact_zero()) continue;
    auto term = d;
    for (int part : lambda) term = term * ext.c(part);
    total += term;
  }
  return cap ? total.truncated(*cap) : total;
}

/// ⌈(i_j + hr)/n⌉ with j = v̄_p(h).
inline std::int64_t gamma_lower_bound(const InsepProfile& pr, int h, std::int64_t r) {
  if (h < 1 || h > pr.n) throw std::invalid_argument("gamma_lower_bound: need 1 <= h <= n");
  return ceil_div(pr.index(pr.vbar(h)) + h * r, pr.n);
}

/// Largest w with ⌈(i_j + w)/n⌉ < cap: sums Σ(μ) above it cannot matter below cap.
inline std::int64_t weight_cutoff(const InsepProfile& pr, int h, std::int64_t cap) {
  return pr.n * (cap - 1) - pr.index(pr.vbar(h));
}

template <LocalBase Base>
struct MonomialContribution {
  Partition mu;
  typename Base::Element value;  // M_μ(π) modulo M_K^cap
  std::string monomial;          // a_{μ1}···a_{μh}
};

/// The terms a_μ M_μ(π) of E_h(Σ_{i>=r} a_i π^i) with generic coefficients a_i,
/// keeping those nonzero modulo M_K^cap.
template <LocalBase Base>
std::vector<MonomialContribution<Base>> e_h_symbolic(const EisensteinExtension<Base>& ext, const InsepProfile& pr,
                                                     int h, int r, std::int64_t cap,
                                                     DSource source = DSource::basis_change) {
  std::vector<MonomialContribution<Base>> out;
  const std::int64_t wmax = weight_cutoff(pr, h, cap);
  if (wmax < static_cast<std::int64_t>(h) * r) return out;
  for (const auto& term : eh_of_series(h, ext.n(), r, static_cast<int>(wmax))) {
    auto value = m_mu_value(ext, term.mu, cap, source);
    if (!value.is_zero()) out.push_back({term.mu, value, term.coefficient_monomial()});
  }
  return out;
}

/// Renders the terms modulo M_K^cap, e.g. "a_1^3*a_2*t + a_1^2*a_2^2*t".
template <LocalBase Base>
std::string symbolic_string(const std::vector<MonomialContribution<Base>>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::string v = terms[k].value.to_string();
    if (auto cut = v.find(" + O("); cut != std::string::npos) v.erase(cut);
    if (v.find(' ') != std::string::npos) v = "(" + v + ")";
    os << (k ? " + " : "") << terms[k].monomial;
    if (v != "1") os << '*' << v;
  }
  return os.str();
}

/// E_h(α) modulo M_K^cap from the expansion Σ_μ a_μ M_μ(π), for α = Σ a_i π^i
/// given by terms with exponents >= 1.
template <LocalBase Base>
typename Base::Element e_h_via_monomials(const EisensteinExtension<Base>& ext, const InsepProfile& pr,
                                         const std::vector<std::pair<std::int64_t, typename Base::Element>>& terms,
                                         int h, std::int64_t cap, DSource source = DSource::basis_change) {
  if (h < 1 || h > ext.n()) throw std::invalid_argument("e_h_via_monomials: need 1 <= h <= n");
  std::map<std::int64_t, typename Base::Element> coeff;
  for (const auto& [i, a] : terms) {
    if (i < 1) throw std::invalid_argument("e_h_via_monomials: exponents must be >= 1");
    auto [it, fresh] = coeff.emplace(i, a);
    if (!fresh) it->second += a;
  }
  std::erase_if(coeff, [](const auto& kv) { return kv.second.is_exact_zero(); });
  auto total = ext.base().zero().truncated(cap);
  if (coeff.empty()) return total;
  const int r = static_cast<int>(coeff.begin()->first);
  const int top = static_cast<int>(coeff.rbegin()->first);
  const std::int64_t wmax = weight_cutoff(pr, h, cap);
  for (std::int64_t w = static_cast<std::int64_t>(h) * r; w <= wmax; ++w)
    for (const auto& mu : enumerate(static_cast<int>(w), {.min_part = r, .max_part = top, .num_parts = h})) {
      auto a_mu = ext.base().one();
      bool zero = false;
      for (int part : mu) {
        auto it = coeff.find(part);
        if (it == coeff.end()) {
          zero = true;
          break;
        }
        a_mu = a_mu * it->second;
      }
      if (zero) continue;
      total += a_mu * m_mu_value(ext, mu, cap, source);
    }
  return total.truncated(cap);
}

enum class GMode { witness, exhaustive };
enum class GStatus { exact, lower_bound, upper_bound };

inline std::string to_string(GStatus s) {
  switch (s) {
    case GStatus::exact: return "exact";
    case GStatus::lower_bound: return "lower_bound";
    default: return "upper_bound";
  }
}

template <LocalBase Base>
struct GResult {
  std::int64_t value = 0;
  GStatus status = GStatus::lower_bound;
  std::int64_t gamma = 0;
  /// Proven lower bound on g_h(r); equals value when status is exact.
  std::int64_t proven_lower = 0;
  std::optional<ExtElement<typename Base::Element>> witness;
  std::string method;
};

struct ExhaustiveOptions {
  int digits = 0;            // B; 0 means n
  bool stop_at_gamma = true;  // the family cannot go below γ
};

namespace insep_detail {

template <LocalBase Base>
Valuation e_h_valuation(const EisensteinExtension<Base>& ext, const ExtElement<typename Base::Element>& alpha, int h) {
  return ext.elementary_symmetric_values(alpha)[static_cast<std::size_t>(h - 1)].valuation();
}

inline std::int64_t breakpoint_at_or_after(const InsepProfile& pr, int h, std::int64_t r) {
  const std::int64_t g = gamma_lower_bound(pr, h, r);
  while (gamma_lower_bound(pr, h, r + 1) == g) ++r;
  return r;
}

/// h = p^j with j <= ν, else -1.
inline int prime_power_level(const InsepProfile& pr, int h) {
  std::int64_t x = 1;
  for (int j = 0; j <= pr.nu; ++j, x *= pr.p)
    if (x == h) return j;
  return -1;
}

}  // namespace insep_detail

/// Exact g_h(r) where a certificate exists, else the best bound.
template <LocalBase Base>
GResult<Base> g_exact(const EisensteinExtension<Base>& ext, const InsepProfile& pr, int h, std::int64_t r,
                      GMode mode, ExhaustiveOptions opts = {}) {
  using Elt = ExtElement<typename Base::Element>;
  if (h < 1 || h > ext.n()) throw std::invalid_argument("g_exact: need 1 <= h <= n");
  GResult<Base> res;
  res.gamma = gamma_lower_bound(pr, h, r);
  res.proven_lower = res.gamma;
  res.value = res.gamma;

  auto certify = [&](const Elt& alpha, const std::string& method) {
    const Valuation v = insep_detail::e_h_valuation(ext, alpha, h);
    if (v.is_finite() && v.value() == res.gamma) {
      res.status = GStatus::exact;
      res.witness = alpha;
      res.method = method;
      return true;
    }
    return false;
  };

  if (mode == GMode::exhaustive) {
    const int digits = opts.digits > 0 ? opts.digits : ext.n();
    const auto reps = ext.base().residue_representatives();
    std::vector<Elt> powers;
    for (int i = 0; i < digits; ++i) powers.push_back(ext.pi_power(r + i));
    std::vector<std::size_t> idx(static_cast<std::size_t>(digits), 0);
    std::optional<std::int64_t> best;
    std::optional<Elt> best_alpha;
    while (true) {
      Elt alpha = ext.zero();
      for (int i = 0; i < digits; ++i)
        if (idx[static_cast<std::size_t>(i)]) alpha = ext.add(alpha, ext.scale(reps[idx[static_cast<std::size_t>(i)]], powers[static_cast<std::size_t>(i)]));
      const Valuation v = insep_detail::e_h_valuation(ext, alpha, h);
      if (v.is_finite() && (!best || v.value() < *best)) {
        best = v.value();
        best_alpha = alpha;
        if (opts.stop_at_gamma && *best <= res.gamma) break;
      }
      int pos = digits - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == reps.size()) idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
    // Every α in M_L^r agrees with a swept element modulo M_L^(r+B), which moves
    // E_h only in valuation >= ⌈(hr + B)/n⌉.
    const std::int64_t tail = ceil_div(h * r + digits, ext.n());
    res.method = "exhaustive sweep over " + std::to_string(digits) + " digits";
    if (!best) {
      res.value = tail;
      res.proven_lower = std::max(res.gamma, tail);
      res.status = GStatus::lower_bound;
      return res;
    }
    res.value = *best;
    res.witness = best_alpha;
    if (*best <= std::max(tail, res.gamma)) {
      res.status = GStatus::exact;
      res.proven_lower = *best;
    } else {
      res.status = GStatus::upper_bound;
      res.proven_lower = std::max(res.gamma, tail);
    }
    return res;
  }

  const std::int64_t rstar = insep_detail::breakpoint_at_or_after(pr, h, r);
  const int j = insep_detail::prime_power_level(pr, h);
  if (j >= 0) {
    const int m = pr.vbar(pr.index(j));
    if (m >= j) {
      if (certify(ext.pi_power(rstar), "distinct: pi^" + std::to_string(rstar))) return res;
    } else {
      const std::int64_t pm = checked_pow(pr.p, static_cast<unsigned>(m));
      if (ext.base().q() <= pm)
        throw ResidueFieldTooSmall("residue field too small: |K| = " + std::to_string(ext.base().q()) +
                                   " <= p^m = " + std::to_string(pm));
      const std::int64_t pj = checked_pow(pr.p, static_cast<unsigned>(j));
      const std::int64_t b = *pr.b[static_cast<std::size_t>(j)];
      const std::int64_t b2 = mod_floor(b, pj) / pm;
      const Elt head = ext.pi_power(rstar);
      const Elt shift = ext.pi_power(rstar + b2);
      for (const auto& beta : ext.base().residue_representatives())
        if (certify(ext.add(head, ext.scale(beta, shift)),
                    "multiple: pi^" + std::to_string(rstar) + " + beta*pi^" + std::to_string(rstar + b2)))
          return res;
    }
    res.status = GStatus::lower_bound;
    res.method = "theorem witness failed to certify";
    return res;
  }

  if (pr.nu == 0 && mod_floor(h * r, pr.n) == 0) {
    const std::int64_t s = h * r / pr.n;
    const std::int64_t u = std::gcd(r, static_cast<std::int64_t>(pr.n));
    const std::int64_t v = std::gcd(static_cast<std::int64_t>(h), s);
    const std::int64_t binom = binomial(u, v);
    if (binom % pr.p != 0) {
      if (certify(ext.pi_power(r), "tame: p does not divide C(" + std::to_string(u) + "," + std::to_string(v) + ")"))
        return res;
      res.status = GStatus::lower_bound;
      res.method = "tame witness failed to certify";
      return res;
    }
    res.value = s + 1;
    res.proven_lower = s + 1;
    res.status = GStatus::lower_bound;
    res.method = "tame: p divides C(" + std::to_string(u) + "," + std::to_string(v) + ")";
    return res;
  }

  if (certify(ext.pi_power(rstar), "generic: pi^" + std::to_string(rstar))) return res;
  res.status = GStatus::lower_bound;
  res.method = "no certificate; containment bound";
  return res;
}

/// ⌊(i_j + n − 1)/p^j⌋.
inline std::int64_t higher_different(const InsepProfile& pr, int j) {
  if (j < 0 || j > pr.nu) throw std::invalid_argument("higher_different: need 0 <= j <= nu");
  return floor_div(pr.index(j) + pr.n - 1, checked_pow(pr.p, static_cast<unsigned>(j)));
}

/// ⌊(d_0 + r)/n⌋.
inline std::int64_t trace_ideal(const InsepProfile& pr, std::int64_t r) {
  return floor_div(higher_different(pr, 0) + r, pr.n);
}

/// min v_K(E_1(π^i)) over r <= i < r + n; the trace is O_K-linear and these
/// powers span M_L^r, so this is exactly g_1(r).
template <LocalBase Base>
Valuation trace_sweep(const EisensteinExtension<Base>& ext, std::int64_t r) {
  std::optional<Valuation> best;
  for (std::int64_t i = r; i < r + ext.n(); ++i) {
    const Valuation v = ext.trace(ext.pi_power(i)).valuation();
    if (v.is_indeterminate()) throw InsufficientPrecision("insufficient precision in trace sweep");
    if (!best || v.lower_bound() < best->lower_bound()) best = v;
  }
  return *best;
}

struct LemmaBoundRow {
  int h = 0, j = 0;
  Valuation v_L = Valuation::infinite();
  std::optional<std::int64_t> bound;  // i_j^π + h
  bool equality = false, expected_equality = false;
};

struct LemmaBoundReport {
  std::vector<LemmaBoundRow> rows;
  bool pass = true;
  std::vector<int> equality_at;
};

/// v_L(c_h) >= i_j^π + h, with equality exactly when h = b_j.
template <LocalBase Base>
LemmaBoundReport verify_lemma_bound(const EisensteinExtension<Base>& ext, const InsepProfile& pr) {
  LemmaBoundReport rep;
  for (int h = 1; h <= ext.n(); ++h) {
    LemmaBoundRow row;
    row.h = h;
    row.j = pr.vbar(h);
    const Valuation vk = ext.c(h).valuation();
    if (vk.is_indeterminate()) throw InsufficientPrecision("insufficient precision: c_" + std::to_string(h));
    row.v_L = vk.is_infinite() ? vk : Valuation::finite(pr.n * vk.value());
    const auto& ip = pr.i_pi[static_cast<std::size_t>(row.j)];
    if (ip) {
      row.bound = *ip + h;
      row.expected_equality = pr.b[static_cast<std::size_t>(row.j)] == h;
      row.equality = row.v_L.is_finite() && row.v_L.value() == *row.bound;
      if (!row.v_L.at_least_value(*row.bound) || row.equality != row.expected_equality) rep.pass = false;
    } else {
      row.expected_equality = true;
      row.equality = row.v_L.is_infinite();
      if (!row.equality) rep.pass = false;
    }
    if (row.equality) rep.equality_at.push_back(h);
    rep.rows.push_back(row);
  }
  return rep;
}

/// v_L(c_λ) >= i_t^π + Σ(λ) with t the least v̄_p over the parts of λ.
template <LocalBase Base>
bool sigma_bound_holds(const EisensteinExtension<Base>& ext, const InsepProfile& pr, const Partition& lambda) {
  int t = pr.nu;
  std::int64_t vl = 0;
  for (int part : lambda) {
    t = std::min(t, pr.vbar(part));
    const Valuation v = ext.c(part).valuation();
    if (v.is_infinite()) return true;
    vl += pr.n * v.value();
  }
  const auto& ip = pr.i_pi[static_cast<std::size_t>(t)];
  if (!ip) return false;
  return vl >= *ip + lambda.sum();
}

}  // namespace insep
