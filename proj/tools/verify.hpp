#pragma once

// Checkers behind `insep verify`. Each returns named results with a JSON
// payload; a failing check carries the first counterexample found.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "insep/insep.hpp"

namespace insep::cli {

using json = nlohmann::ordered_json;

struct CheckResult {
  std::string name;
  bool pass = true;
  std::int64_t cases = 0;
  json detail = json::object();
  std::optional<json> counterexample;

  void fail(json payload) {
    if (pass) counterexample = std::move(payload);
    pass = false;
  }

  json to_json() const {
    json j;
    j["name"] = name;
    j["pass"] = pass;
    j["cases"] = cases;
    if (!detail.empty()) j["detail"] = detail;
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

struct VerifyConfig {
  std::uint64_t seed = 7;
  int kr_max_w = 8;            // oracle equivalence sweep
  int symmetry_max_w = 10;
  int closed_form_max_w = 10;
  int contain_samples = 20;    // random α per (field, h, r) cell
  int two_path_samples = 2;
  int two_path_cap = 3;
  std::int64_t precision = kDefaultPrecision;
};

namespace catalog {

inline LaurentExtension octic(int d = 1, std::int64_t prec = kDefaultPrecision) {
  return parse_extension(LaurentBase::make(2, d, {}, prec), "X^8 + t*X^3 + t*X^2 + t");
}
inline LaurentExtension quartic(std::int64_t prec = kDefaultPrecision) {
  return parse_extension(LaurentBase::make(2, 1, {}, prec), "X^4 + t*X + t");
}
inline LaurentExtension octic_distinct(std::int64_t prec = kDefaultPrecision) {
  return parse_extension(LaurentBase::make(2, 1, {}, prec), "X^8 + t*X^4 + t^2*X + t");
}
inline PadicExtension q2_quartic(std::int64_t prec = kDefaultPrecision) {
  return parse_extension(PadicBase::make(2, prec), "X^4 + 2*X + 2");
}
inline PadicExtension q3_cubic(std::int64_t prec = kDefaultPrecision) {
  return parse_extension(PadicBase::make(3, prec), "X^3 + 3*X + 3");
}

}  // namespace catalog

namespace verify_detail {

template <class Ext>
std::vector<std::pair<std::int64_t, typename Ext::Element>> random_terms(const Ext& ext, std::mt19937_64& rng, int lo,
                                                                         int hi) {
  const auto reps = ext.base().residue_representatives();
  std::vector<std::pair<std::int64_t, typename Ext::Element>> terms;
  for (int i = lo; i <= hi; ++i) terms.emplace_back(i, reps[rng() % reps.size()]);
  return terms;
}

template <class Ext>
typename Ext::Elt random_element(const Ext& ext, std::mt19937_64& rng, int lo, int hi) {
  return ext.from_series(random_terms(ext, rng, lo, hi));
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// kr

inline CheckResult check_worked_coefficients() {
  CheckResult res{"worked example coefficients (tilings and basis change)"};
  const std::vector<std::tuple<Partition, Partition, std::int64_t>> cases = {
      {Partition{6}, Partition{1, 1, 1, 3}, 6}, {Partition{6}, Partition{1, 1, 2, 2}, 9},
      {Partition{5}, Partition{1, 1, 1, 2}, -5}};
  json rows = json::array();
  for (const auto& [lambda, mu, expected] : cases) {
    ++res.cases;
    const std::int64_t tiling = d_coefficient(lambda, mu);
    const BigInt basis = brute_force_psi(mu, mu.sum(), mu.sum()).coefficient(lambda);
    rows.push_back({{"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"d", tiling},
                    {"basis_change", basis.str()}});
    if (tiling != expected || basis != expected)
      res.fail({{"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"expected", expected}, {"tilings", tiling},
                {"basis_change", basis.str()}});
  }
  res.detail["values"] = rows;
  return res;
}

inline CheckResult check_oracle_equivalence(int max_w) {
  CheckResult res{"digraph d equals basis-change coefficient"};
  res.detail["max_w"] = max_w;
  for (int w = 1; w <= max_w; ++w)
    for (const auto& mu : partitions_of(w)) {
      const auto psi = brute_force_psi(mu, w, w);
      for (const auto& lambda : partitions_of(w)) {
        ++res.cases;
        const std::int64_t d = d_coefficient_cached(lambda, mu);
        const BigInt oracle = psi.coefficient(lambda);
        if (oracle != d)
          res.fail({{"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"tilings", d}, {"oracle", oracle.str()}});
      }
    }
  return res;
}

inline CheckResult check_symmetry(int max_w) {
  CheckResult res{"d symmetry"};
  res.detail["max_w"] = max_w;
  for (int w = 1; w <= max_w; ++w) {
    const auto parts = partitions_of(w);
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        ++res.cases;
        const auto x = d_coefficient_cached(parts[a], parts[b]);
        const auto y = d_coefficient_cached(parts[b], parts[a]);
        if (x != y)
          res.fail({{"lambda", parts[a].to_string()}, {"mu", parts[b].to_string()}, {"d_lm", x}, {"d_ml", y}});
      }
  }
  return res;
}

inline CheckResult check_closed_forms(int max_w) {
  CheckResult res{"closed forms agree with enumeration"};
  std::int64_t zero_cases = 0;
  for (int w = 1; w <= max_w; ++w)
    for (const auto& lambda : partitions_of(w))
      for (const auto& mu : partitions_of(w)) {
        const auto closed = d_closed_form(lambda, mu);
        if (!closed) continue;
        ++res.cases;
        const auto d = d_coefficient_cached(lambda, mu);
        if (*closed == 0 && lambda.is_uniform() && mu.is_uniform()) {
          const int u = std::gcd(lambda[0], mu[0]);
          const int v = std::gcd(static_cast<int>(lambda.size()), static_cast<int>(mu.size()));
          if (u < v) ++zero_cases;
        }
        if (*closed != d)
          res.fail({{"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"closed_form", *closed}, {"tilings", d}});
      }
  res.detail["max_w"] = max_w;
  res.detail["u_less_than_v_zero_cases"] = zero_cases;
  if (zero_cases == 0) res.fail({{"reason", "no u < v zero case exercised"}});
  return res;
}

inline CheckResult check_single_cycle_classes(int max_w) {
  CheckResult res{"single-cycle tiling classes number gcd(a,b)"};
  for (int w = 1; w <= max_w; ++w)
    for (int a = 1; a <= w; ++a) {
      if (w % a) continue;
      for (int b = 1; b <= w; ++b) {
        if (w % b) continue;
        ++res.cases;
        const Partition lambda = Partition::uniform(w / a, a), mu = Partition::uniform(w / b, b);
        const auto count = count_tiling_classes(CycleDigraph(Partition{w}), lambda, mu);
        if (count != std::gcd(a, b))
          res.fail({{"w", w}, {"a", a}, {"b", b}, {"classes", count}, {"gcd", std::gcd(a, b)}});
      }
    }
  return res;
}

inline std::vector<CheckResult> suite_kr(const VerifyConfig& cfg) {
  return {check_worked_coefficients(), check_oracle_equivalence(cfg.kr_max_w), check_symmetry(cfg.symmetry_max_w),
          check_closed_forms(cfg.closed_form_max_w), check_single_cycle_classes(12)};
}

// ---------------------------------------------------------------------------
// subrings

inline CheckResult check_power(int max_weight) {
  CheckResult res{"psi of p^j-scaled partitions lies in R_j"};
  for (int p : {2, 3})
    for (int j = 1; j <= 2; ++j)
      for (int w = 1; w <= max_weight; ++w)
        for (const auto& lambda : partitions_of(w)) {
          ++res.cases;
          const auto big = scale(static_cast<int>(checked_pow(p, static_cast<unsigned>(j))), lambda);
          const auto psi = brute_force_psi(big, static_cast<int>(big.size()), big.sum());
          const auto m = rk_membership(to_int_poly(psi), j, p);
          if (!m.member) {
            json ce{{"p", p}, {"j", j}, {"lambda", big.to_string()}, {"level", m.failing_level}};
            if (m.offending_exponent) ce["exponent"] = *m.offending_exponent;
            res.fail(ce);
          }
        }
  res.detail["max_weight"] = max_weight;
  return res;
}

inline CheckResult check_valuation_divisibility(int max_weight) {
  CheckResult res{"p^(t-j) divides d for lambda = p^t * lambda'"};
  for (int p : {2, 3})
    for (int t = 0; t <= 2; ++t) {
      const int pt = static_cast<int>(checked_pow(p, static_cast<unsigned>(t)));
      for (int wp = 1; wp <= max_weight; ++wp)
        for (const auto& lp : partitions_of(wp)) {
          const auto lambda = scale(pt, lp);
          const auto expansion = scaled_monomial_in_elementary(lp, pt);
          for (int j = 0; j <= t; ++j) {
            const int pj1 = static_cast<int>(checked_pow(p, static_cast<unsigned>(j + 1)));
            const BigInt modulus = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(t - j));
            for (const auto& mu : enumerate(lambda.sum())) {
              if (divide_repetition(pj1, mu)) continue;
              ++res.cases;
              auto it = expansion.find(mu);
              if (it != expansion.end() && it->second % modulus != 0)
                res.fail({{"p", p}, {"t", t}, {"j", j}, {"lambda", lambda.to_string()}, {"mu", mu.to_string()},
                          {"d", it->second.str()}});
            }
          }
        }
    }
  res.detail["max_weight"] = max_weight;
  return res;
}

inline CheckResult check_congruence(int max_weight) {
  CheckResult res{"d(p^j*lambda', p^j-fold mu') = d(lambda', mu') mod p^(t+1)"};
  for (int p : {2, 3})
    for (int j = 1; j <= 2; ++j) {
      const int pj = static_cast<int>(checked_pow(p, static_cast<unsigned>(j)));
      for (int wp = 1; wp <= max_weight; ++wp)
        for (const auto& lp : partitions_of(wp)) {
          int t = 64;
          for (int part : lp) t = std::min(t, vp(part, p));
          const BigInt modulus = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(t + 1));
          const auto expansion = scaled_monomial_in_elementary(lp, pj);
          for (const auto& mp : partitions_of(wp)) {
            ++res.cases;
            const auto mu = repeat(pj, mp);
            auto it = expansion.find(mu);
            const BigInt big = it == expansion.end() ? BigInt(0) : it->second;
            const BigInt small = d_coefficient_cached(lp, mp);
            BigInt diff = (big - small) % modulus;
            if (diff != 0)
              res.fail({{"p", p}, {"j", j}, {"t", t}, {"lambda_prime", lp.to_string()}, {"mu_prime", mp.to_string()},
                        {"d_big", big.str()}, {"d_small", small.str()}});
          }
        }
    }
  res.detail["max_weight"] = max_weight;
  return res;
}

inline CheckResult check_power_sum_route(int max_w) {
  CheckResult res{"power-sum expansion agrees with tilings"};
  for (int k = 1; k <= 3; ++k)
    for (int wp = 1; k * wp <= max_w; ++wp)
      for (const auto& lp : partitions_of(wp)) {
        const auto lambda = scale(k, lp);
        const auto expansion = scaled_monomial_in_elementary(lp, k);
        for (const auto& mu : partitions_of(lambda.sum())) {
          ++res.cases;
          auto it = expansion.find(mu);
          const BigInt got = it == expansion.end() ? BigInt(0) : it->second;
          const auto d = d_coefficient_cached(lambda, mu);
          if (got != d)
            res.fail({{"lambda", lambda.to_string()}, {"mu", mu.to_string()}, {"power_sums", got.str()}, {"tilings", d}});
        }
      }
  return res;
}

inline CheckResult check_power_closure(std::uint64_t seed) {
  CheckResult res{"F in R_k implies F^p in R_(k+1)"};
  std::mt19937_64 rng(seed);
  for (int p : {2, 3})
    for (int k = 0; k <= 2; ++k)
      for (int trial = 0; trial < 10; ++trial) {
        ++res.cases;
        std::vector<IntPoly> phi(static_cast<std::size_t>(k) + 1, IntPoly(2));
        for (auto& ph : phi)
          for (int t = 0; t < 2; ++t)
            ph.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)},
                        static_cast<int>(rng() % 7) - 3);
        const IntPoly f = assemble_rk_witness(phi, p);
        if (!rk_membership(f, k, p).member || !rk_membership(f.pow(static_cast<unsigned>(p)), k + 1, p).member)
          res.fail({{"p", p}, {"k", k}, {"F", f.to_string()}});
      }
  return res;
}

inline CheckResult check_newton() {
  CheckResult res{"power sums from Newton identities"};
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 7; ++k) {
      ++res.cases;
      if (!(power_sum_by_newton(k, n) == monomial_sym(Partition{k}, n))) res.fail({{"n", n}, {"k", k}});
    }
  return res;
}

inline std::vector<CheckResult> suite_subrings(const VerifyConfig& cfg) {
  return {check_power(4),        check_valuation_divisibility(4), check_congruence(4),
          check_power_sum_route(9), check_power_closure(cfg.seed), check_newton()};
}

// ---------------------------------------------------------------------------
// fields

template <class T>
std::vector<T> leibniz_charpoly(const Matrix<T>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<T> total(n + 1, zero);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    std::vector<T> prod{one};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<T> entry{-m[i][perm[i]]};
      if (perm[i] == i) entry.push_back(one);
      std::vector<T> next(prod.size() + entry.size() - 1, zero);
      for (std::size_t a = 0; a < prod.size(); ++a)
        for (std::size_t b = 0; b < entry.size(); ++b) next[a + b] += prod[a] * entry[b];
      prod = std::move(next);
    }
    for (std::size_t k = 0; k < prod.size(); ++k) total[k] += inversions % 2 ? -prod[k] : prod[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template <class Ext>
void charpoly_cases(CheckResult& res, const Ext& ext, std::mt19937_64& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    ++res.cases;
    const auto alpha = verify_detail::random_element(ext, rng, -1, ext.n() + 2);
    const auto m = ext.mult_matrix(alpha);
    const auto fast = characteristic_polynomial(m, ext.base().zero(), ext.base().one());
    const auto slow = leibniz_charpoly(m, ext.base().zero(), ext.base().one());
    // fast is k_0..k_n with det(X − M) = Σ k_i X^(n−i); slow is low -> high
    for (std::size_t i = 0; i < fast.size(); ++i)
      if (!(fast[i] == slow[slow.size() - 1 - i])) {
        res.fail({{"field", ext.polynomial_string()}, {"alpha", ext.element_string(alpha)}, {"index", i}});
        break;
      }
  }
}

template <class Ext>
void norm_cases(CheckResult& norm, CheckResult& mult, const Ext& ext, std::mt19937_64& rng, int samples) {
  for (int s = 0; s < samples; ++s) {
    const auto a = verify_detail::random_element(ext, rng, 0, ext.n() + 1);
    const auto b = verify_detail::random_element(ext, rng, 1, ext.n() + 2);
    const Valuation vl = ext.valuation_L(a);
    if (vl.is_finite()) {
      ++norm.cases;
      const Valuation vn = ext.norm(a).valuation();
      if (!(vn.is_finite() && vn.value() == vl.value()))
        norm.fail({{"field", ext.polynomial_string()}, {"alpha", ext.element_string(a)}, {"v_L", vl.to_string()},
                   {"v_K_norm", vn.to_string()}});
    }
    ++mult.cases;
    const auto lhs = ext.norm(ext.multiply(a, b));
    const auto rhs = ext.norm(a) * ext.norm(b);
    if (!(lhs - rhs).is_exact_zero())
      mult.fail({{"field", ext.polynomial_string()}, {"alpha", ext.element_string(a)}, {"beta", ext.element_string(b)}});
  }
}

template <class Ext>
void two_path_cases(CheckResult& res, const Ext& ext, std::mt19937_64& rng, int samples, std::int64_t cap) {
  const auto pr = profile(ext);
  for (int s = 0; s < samples; ++s) {
    const int r = 1 + static_cast<int>(rng() % 2);
    const auto terms = verify_detail::random_terms(ext, rng, r, r + ext.n());
    const auto es = ext.elementary_symmetric_values(ext.from_series(terms));
    for (int h = 1; h <= ext.n(); ++h) {
      ++res.cases;
      const auto lhs = es[static_cast<std::size_t>(h - 1)].truncated(cap);
      const auto rhs = e_h_via_monomials(ext, pr, terms, h, cap);
      if (!(lhs == rhs))
        res.fail({{"field", ext.polynomial_string()}, {"alpha", ext.element_string(ext.from_series(terms))}, {"h", h},
                  {"charpoly", lhs.to_string()}, {"monomials", rhs.to_string()}});
    }
  }
}

inline CheckResult check_precision_honesty(std::uint64_t seed) {
  CheckResult res{"raising precision never changes a determinate valuation"};
  std::mt19937_64 rng(seed);
  const char* poly = "X^3 + t + t^2";
  const auto low = parse_extension(LaurentBase::make(2, 1, {}, 6), poly);
  const auto high = parse_extension(LaurentBase::make(2, 1, {}, 64), poly);
  std::int64_t indeterminate = 0;
  for (int s = 0; s < 20; ++s) {
    const auto terms = verify_detail::random_terms(low, rng, -4, 3);
    const auto el = low.elementary_symmetric_values(low.from_series(terms));
    std::vector<std::pair<std::int64_t, LaurentSeries>> hterms;
    for (const auto& [i, c] : terms) hterms.emplace_back(i, c);
    const auto ehigh = high.elementary_symmetric_values(high.from_series(hterms));
    for (std::size_t h = 0; h < el.size(); ++h) {
      ++res.cases;
      const Valuation a = el[h].valuation(), b = ehigh[h].valuation();
      if (a.is_indeterminate()) {
        ++indeterminate;
        if (!b.at_least_value(a.lower_bound()))
          res.fail({{"h", h + 1}, {"low", a.to_string()}, {"high", b.to_string()}});
        continue;
      }
      if (!(a == b)) res.fail({{"h", h + 1}, {"low", a.to_string()}, {"high", b.to_string()}});
    }
  }
  res.detail["indeterminate_at_low_precision"] = indeterminate;
  return res;
}

inline std::vector<CheckResult> suite_fields(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  CheckResult charpoly{"Berkowitz characteristic polynomial equals Leibniz expansion"};
  charpoly_cases(charpoly, catalog::quartic(cfg.precision), rng, 6);
  charpoly_cases(charpoly, catalog::q3_cubic(cfg.precision), rng, 6);
  charpoly_cases(charpoly, parse_extension(LaurentBase::make(3, 2, {}, cfg.precision), "X^5 + a*t*X + t"), rng, 3);
  CheckResult norm{"v_K(E_n(alpha)) = v_L(alpha)"};
  CheckResult mult{"E_n is multiplicative"};
  norm_cases(norm, mult, catalog::octic(1, cfg.precision), rng, 10);
  norm_cases(norm, mult, catalog::q2_quartic(cfg.precision), rng, 10);
  norm_cases(norm, mult, catalog::q3_cubic(cfg.precision), rng, 10);
  CheckResult two{"E_h from the characteristic polynomial equals the monomial expansion"};
  two.detail["cap"] = cfg.two_path_cap;
  two_path_cases(two, catalog::octic(1, cfg.precision), rng, cfg.two_path_samples, cfg.two_path_cap);
  two_path_cases(two, catalog::q2_quartic(cfg.precision), rng, cfg.two_path_samples, cfg.two_path_cap);
  return {charpoly, norm, mult, two, check_precision_honesty(cfg.seed)};
}

// ---------------------------------------------------------------------------
// insep

inline CheckResult check_example_profile() {
  CheckResult res{"worked octic indices are (3,2,2,0)"};
  res.cases = 1;
  const auto pr = profile(catalog::octic());
  res.detail["i"] = pr.i;
  if (pr.i != std::vector<std::int64_t>{3, 2, 2, 0}) res.fail({{"i", pr.i}});
  return res;
}

template <class Ext>
void lemma_case(CheckResult& res, const Ext& ext, std::optional<std::vector<int>> expected) {
  ++res.cases;
  const auto rep = verify_lemma_bound(ext, profile(ext));
  if (!rep.pass || (expected && rep.equality_at != *expected))
    res.fail({{"field", ext.polynomial_string()}, {"equality_at", rep.equality_at}});
}

inline CheckResult check_lemma_bound() {
  CheckResult res{"v_L(c_h) >= i_j^pi + h with equality exactly at h = b_j"};
  lemma_case(res, catalog::octic(), std::vector<int>{5, 6, 8});
  lemma_case(res, catalog::quartic(), std::vector<int>{3, 4});
  lemma_case(res, catalog::octic_distinct(), std::nullopt);
  lemma_case(res, catalog::q2_quartic(), std::nullopt);
  lemma_case(res, catalog::q3_cubic(), std::nullopt);
  return res;
}

template <class Ext>
void sigma_case(CheckResult& res, const Ext& ext) {
  const auto pr = profile(ext);
  for (int w = 1; w <= 12; ++w)
    for (const auto& lambda : enumerate(w, {.min_part = 1, .max_part = ext.n(), .num_parts = std::nullopt})) {
      ++res.cases;
      if (!sigma_bound_holds(ext, pr, lambda))
        res.fail({{"field", ext.polynomial_string()}, {"lambda", lambda.to_string()}});
    }
}

inline CheckResult check_sigma_bound() {
  CheckResult res{"v_L(c_lambda) >= i_t^pi + sum(lambda)"};
  sigma_case(res, catalog::octic());
  sigma_case(res, catalog::quartic());
  sigma_case(res, catalog::q2_quartic());
  return res;
}

template <class Ext>
void contain_cases(CheckResult& res, const Ext& ext, std::mt19937_64& rng, int samples) {
  const auto pr = profile(ext);
  const int n = ext.n();
  for (int h = 1; h <= n; ++h)
    for (int r = 1; r <= n; ++r) {
      const std::int64_t gamma = gamma_lower_bound(pr, h, r);
      for (int s = 0; s < samples; ++s) {
        ++res.cases;
        const auto alpha = verify_detail::random_element(ext, rng, r, r + n + 2);
        const Valuation v = ext.elementary_symmetric_values(alpha)[static_cast<std::size_t>(h - 1)].valuation();
        if (!v.at_least_value(gamma))
          res.fail({{"field", ext.polynomial_string()}, {"h", h}, {"r", r}, {"alpha", ext.element_string(alpha)},
                    {"valuation", v.to_string()}, {"gamma", gamma}});
      }
    }
}

inline CheckResult check_contain(int samples, std::uint64_t seed) {
  CheckResult res{"v_K(E_h(alpha)) >= ceil((i_j + h r)/n) on random alpha"};
  std::mt19937_64 rng(seed);
  contain_cases(res, catalog::octic(), rng, samples);
  contain_cases(res, catalog::quartic(), rng, samples);
  contain_cases(res, catalog::q2_quartic(), rng, samples);
  res.detail["samples_per_cell"] = samples;
  return res;
}

/// Every (field, j >= 1) with v̄(i_j) >= j: at the breakpoints
/// r = b' + r1·u·p^(ν−j), v_K(E_{p^j}(π^r)) equals both ⌈(i_j + r p^j)/n⌉
/// and (m − j)e_K + a + r1.
template <class Ext>
void distinct_cases(CheckResult& res, const Ext& ext, json& pairs) {
  const auto pr = profile(ext);
  for (int j = 1; j <= pr.nu; ++j) {
    const int m = pr.vbar(pr.index(j));
    if (m < j) continue;
    const std::int64_t pj = checked_pow(pr.p, static_cast<unsigned>(j));
    const auto& bm = pr.b[static_cast<std::size_t>(m)];
    const auto& am = pr.a[static_cast<std::size_t>(m)];
    if (!bm || *bm % pj != 0) {
      res.fail({{"field", ext.polynomial_string()}, {"j", j}, {"reason", "b_m not divisible by p^j"}});
      continue;
    }
    pairs.push_back({{"field", ext.polynomial_string()}, {"j", j}});
    const std::int64_t bprime = *bm / pj;
    const std::int64_t step = pr.u * checked_pow(pr.p, static_cast<unsigned>(pr.nu - j));
    for (std::int64_t r1 = 0; r1 < pj; ++r1) {
      ++res.cases;
      const std::int64_t r = bprime + r1 * step;
      const Valuation v = ext.elementary_symmetric_values(ext.pi_power(r))[static_cast<std::size_t>(pj - 1)].valuation();
      const std::int64_t gamma = gamma_lower_bound(pr, static_cast<int>(pj), r);
      std::optional<std::int64_t> formula;
      if (m == j) formula = *am + r1;
      else if (pr.e_K) formula = (m - j) * *pr.e_K + *am + r1;
      if (!(v.is_finite() && v.value() == gamma && formula && *formula == gamma))
        res.fail({{"field", ext.polynomial_string()}, {"j", j}, {"r", r}, {"valuation", v.to_string()},
                  {"gamma", gamma}});
    }
  }
}

inline CheckResult check_distinct() {
  CheckResult res{"pi^r attains the bound at every breakpoint when vbar(i_j) >= j"};
  json pairs = json::array();
  distinct_cases(res, catalog::octic(), pairs);
  distinct_cases(res, catalog::quartic(), pairs);
  distinct_cases(res, catalog::octic_distinct(), pairs);
  distinct_cases(res, catalog::q2_quartic(), pairs);
  res.detail["qualifying_pairs"] = pairs;
  if (pairs.size() < 2) res.fail({{"reason", "fewer than two qualifying (field, j) pairs"}});
  return res;
}

inline CheckResult check_example_claim() {
  CheckResult res{"E_4(M_L) lies in M_K^2 over F_2, with the symbolic congruence"};
  const auto ext = catalog::octic();
  const auto pr = profile(ext);
  ExhaustiveOptions opts;
  opts.digits = 8;
  opts.stop_at_gamma = false;
  const auto g = g_exact(ext, pr, 4, 1, GMode::exhaustive, opts);
  const std::string symbolic = symbolic_string(e_h_symbolic(ext, pr, 4, 1, 2));
  res.cases = 256;
  res.detail["g"] = g.value;
  res.detail["status"] = to_string(g.status);
  res.detail["gamma"] = g.gamma;
  res.detail["symbolic"] = symbolic;
  if (g.status != GStatus::exact || g.value < 2 || symbolic != "a_1^3*a_2*t + a_1^2*a_2^2*t")
    res.fail({{"g", g.value}, {"status", to_string(g.status)}, {"symbolic", symbolic}});
  return res;
}

inline CheckResult check_multiple() {
  CheckResult res{"over F_4 the bound is attained with beta outside F_2"};
  res.cases = 1;
  const auto ext = catalog::octic(2);
  const auto g = g_exact(ext, profile(ext), 4, 1, GMode::witness);
  res.detail["g"] = g.value;
  res.detail["status"] = to_string(g.status);
  if (g.witness) res.detail["witness"] = ext.element_string(*g.witness);
  bool outside = false;
  if (g.witness)
    for (const auto& c : g.witness->coeffs)
      if (!c.is_zero())
        for (std::int64_t e = c.order(); e < c.end(); ++e)
          if (!ext.base().field->in_prime_field(c.coefficient(e))) outside = true;
  if (g.status != GStatus::exact || g.value != 1 || !outside)
    res.fail({{"g", g.value}, {"status", to_string(g.status)}, {"beta_outside_prime_field", outside}});
  return res;
}

template <class Ext>
void tame_cases(CheckResult& res, const Ext& ext, json& rows) {
  const auto pr = profile(ext);
  const int n = ext.n();
  ExhaustiveOptions opts;
  opts.stop_at_gamma = false;
  for (int h = 1; h <= n; ++h)
    for (int r = 1; r <= n; ++r) {
      if ((h * r) % n) continue;
      ++res.cases;
      const std::int64_t s = h * r / n;
      const int u = std::gcd(r, n), v = std::gcd(h, static_cast<int>(s));
      const bool divides = binomial(u, v) % pr.p == 0;
      const auto w = g_exact(ext, pr, h, r, GMode::witness);
      const auto x = g_exact(ext, pr, h, r, GMode::exhaustive, opts);
      const bool ok = divides ? (w.status == GStatus::lower_bound && w.value == s + 1 && x.value >= s + 1)
                              : (w.status == GStatus::exact && w.value == s && x.status == GStatus::exact && x.value == s);
      rows.push_back({{"field", ext.polynomial_string()}, {"p", pr.p}, {"h", h}, {"r", r}, {"s", s},
                      {"p_divides_binomial", divides}, {"witness_mode", w.value},
                      {"witness_status", to_string(w.status)}, {"exhaustive", x.value},
                      {"exhaustive_status", to_string(x.status)}});
      if (!ok) res.fail(rows.back());
    }
}

inline CheckResult check_tame() {
  CheckResult res{"tame case: g = s iff p does not divide C(u,v)"};
  json rows = json::array();
  tame_cases(res, parse_extension(LaurentBase::make(2), "X^3 + t"), rows);
  tame_cases(res, parse_extension(LaurentBase::make(2), "X^3 + t*X + t"), rows);
  tame_cases(res, parse_extension(LaurentBase::make(2), "X^5 + t"), rows);
  tame_cases(res, parse_extension(LaurentBase::make(3), "X^4 - t"), rows);
  tame_cases(res, parse_extension(LaurentBase::make(3), "X^5 - t"), rows);
  std::int64_t divisible = 0;
  for (const auto& row : rows) divisible += row["p_divides_binomial"].get<bool>();
  res.detail["rows"] = rows;
  res.detail["divisible_cases"] = divisible;
  return res;
}

template <class Ext>
void different_cases(CheckResult& res, const Ext& ext) {
  const auto pr = profile(ext);
  ++res.cases;
  if (higher_different(pr, 0) != pr.index(0) + pr.n - 1)
    res.fail({{"field", ext.polynomial_string()}, {"d0", higher_different(pr, 0)}, {"i0", pr.index(0)}});
  for (int r = 0; r < pr.n; ++r) {
    ++res.cases;
    const auto sweep = trace_sweep(ext, r);
    if (!(sweep.is_finite() && sweep.value() == trace_ideal(pr, r)))
      res.fail({{"field", ext.polynomial_string()}, {"r", r}, {"sweep", sweep.to_string()}, {"formula", trace_ideal(pr, r)}});
  }
}

inline CheckResult check_differents() {
  CheckResult res{"d_0 = i_0 + n - 1 and the trace ideal matches an E_1 sweep"};
  different_cases(res, catalog::octic());
  different_cases(res, catalog::quartic());
  different_cases(res, catalog::q2_quartic());
  different_cases(res, catalog::q3_cubic());
  return res;
}

template <class Ext>
void independence_cases(CheckResult& res, const Ext& ext) {
  const auto base = profile(ext).i;
  for (int k : {2, 3}) {
    ++res.cases;
    const auto other = ext.min_poly_of(ext.add(ext.pi(), ext.pi_power(k)));
    const auto pi = profile(other).i;
    if (pi != base)
      res.fail({{"field", ext.polynomial_string()}, {"k", k}, {"other", other.polynomial_string()}, {"i", pi}, {"expected", base}});
  }
}

inline CheckResult check_independence() {
  CheckResult res{"indices do not depend on the uniformizer"};
  independence_cases(res, catalog::octic());
  independence_cases(res, catalog::quartic());
  independence_cases(res, catalog::q2_quartic());
  independence_cases(res, catalog::q3_cubic());
  return res;
}

inline CheckResult check_periodicity() {
  CheckResult res{"g_h(r + n) = g_h(r) + h and g is nondecreasing"};
  const auto ext = catalog::octic();
  const auto pr = profile(ext);
  for (int h : {1, 2, 8}) {
    std::optional<std::int64_t> prev;
    for (int r = -2; r <= 9; ++r) {
      ++res.cases;
      const auto g = g_exact(ext, pr, h, r, GMode::witness);
      const auto g2 = g_exact(ext, pr, h, r + 8, GMode::witness);
      const bool ok = g.status == GStatus::exact && g2.status == GStatus::exact && g2.value == g.value + h &&
                      (!prev || g.value >= *prev);
      if (!ok) res.fail({{"h", h}, {"r", r}, {"g", g.value}, {"g_shifted", g2.value}});
      prev = g.value;
    }
  }
  return res;
}

inline std::vector<CheckResult> suite_insep(const VerifyConfig& cfg) {
  return {check_example_profile(), check_lemma_bound(), check_sigma_bound(), check_contain(cfg.contain_samples, cfg.seed),
          check_distinct(), check_example_claim(), check_multiple(), check_tame(), check_differents(),
          check_independence(), check_periodicity()};
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kr", "subrings", "fields", "insep"};
  return names;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "kr") return suite_kr(cfg);
  if (name == "subrings") return suite_subrings(cfg);
  if (name == "fields") return suite_fields(cfg);
  if (name == "insep") return suite_insep(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace insep::cli
