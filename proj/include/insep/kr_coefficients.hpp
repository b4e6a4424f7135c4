#pragma once

// Cycle digraphs, (λ,μ)-tilings and the signed tiling counts d_λμ that
// express monomial symmetric polynomials in the elementary basis.
//
// Vertices of a cycle of length c are identified with Z/c, edges run
// i -> i+1. A tiling of one cycle by directed paths is determined by the set
// of path start vertices, stored as a bitmask; path sizes are the cyclic
// gaps between consecutive starts. Aut(Γ) is generated by rotations of each
// cycle and permutations of cycles of equal length.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "insep/arith.hpp"
#include "insep/partition.hpp"

namespace insep {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Isomorphism class of a disjoint union of directed cycles, identified with
/// its multiset of cycle lengths.
class CycleDigraph {
 public:
  CycleDigraph() = default;
  explicit CycleDigraph(Partition lengths) : lengths_(std::move(lengths)) {}

  const Partition& cycle_lengths() const { return lengths_; }
  int vertex_count() const { return lengths_.sum(); }
  int cycle_count() const { return static_cast<int>(lengths_.size()); }
  /// (-1)^(w - c)
  int sign() const { return ((vertex_count() - cycle_count()) % 2 == 0) ? 1 : -1; }

  friend bool operator==(const CycleDigraph&, const CycleDigraph&) = default;

 private:
  Partition lengths_;
};

/// A tiling of one directed cycle: path sizes in cyclic order, the first
/// path starting at vertex `offset`.
struct RootedComposition {
  int offset = 0;
  std::vector<int> parts;
};

/// A (λ,μ)-tiling pair on a cycle digraph. S[i] and T[i] tile the i-th cycle
/// of digraph.cycle_lengths().
struct TilingPair {
  CycleDigraph digraph;
  std::vector<RootedComposition> S;
  std::vector<RootedComposition> T;
};

namespace kr_detail {

using Mask = std::uint64_t;

inline Mask full_mask(int c) { return c == 64 ? ~Mask{0} : ((Mask{1} << c) - 1); }

/// Rotates a start set by k steps (vertex i -> i + k).
inline Mask rotate(Mask m, int k, int c) {
  k %= c;
  if (k == 0) return m;
  return ((m << k) | (m >> (c - k))) & full_mask(c);
}

inline Mask mask_from(const RootedComposition& rc, int c) {
  if (c < 1 || c > 64) throw std::invalid_argument("cycle length out of range [1,64]");
  int total = 0;
  Mask m = 0;
  int pos = static_cast<int>(mod_floor(rc.offset, c));
  for (int part : rc.parts) {
    if (part < 1) throw std::invalid_argument("tiling path sizes must be >= 1");
    m |= Mask{1} << pos;
    pos = (pos + part) % c;
    total += part;
  }
  if (total != c || rc.parts.empty())
    throw std::invalid_argument("tiling path sizes must sum to the cycle length");
  return m;
}

/// Path sizes (cyclic gaps between starts) of a start set.
inline std::vector<int> gaps(Mask m, int c) {
  std::vector<int> starts;
  for (int i = 0; i < c; ++i)
    if (m >> i & 1) starts.push_back(i);
  std::vector<int> out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    int next = (k + 1 < starts.size()) ? starts[k + 1] : starts[0] + c;
    out.push_back(next - starts[k]);
  }
  return out;
}

/// One rotation class of a local (S,T) pair on a c-cycle.
struct LocalClass {
  Mask s = 0;
  Mask t = 0;
  std::vector<int> s_gaps;  // as counts by size
  std::vector<int> t_gaps;
  int rotation_stabilizer = 1;
};

// All start sets on a c-cycle whose path sizes form a sub-multiset of `avail`.
inline std::vector<Mask> start_sets(int c, const std::vector<int>& avail) {
  std::set<Mask> out;
  std::vector<int> remaining(avail);
  std::vector<int> seq;
  // Compositions of c rooted at 0, then every rotation.
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      Mask m = 0;
      int pos = 0;
      for (int part : seq) {
        m |= Mask{1} << pos;
        pos += part;
      }
      for (int k = 0; k < c; ++k) out.insert(rotate(m, k, c));
      return;
    }
    int top = std::min<int>(left, static_cast<int>(remaining.size()) - 1);
    for (int part = 1; part <= top; ++part) {
      if (remaining[static_cast<std::size_t>(part)] == 0) continue;
      --remaining[static_cast<std::size_t>(part)];
      seq.push_back(part);
      self(self, left - part);
      seq.pop_back();
      ++remaining[static_cast<std::size_t>(part)];
    }
  };
  rec(rec, c);
  return {out.begin(), out.end()};
}

inline std::vector<int> gap_counts(Mask m, int c, std::size_t size) {
  std::vector<int> counts(size, 0);
  for (int g : gaps(m, c)) ++counts[static_cast<std::size_t>(g)];
  return counts;
}

/// Representatives of the rotation orbits of (S,T) pairs on a c-cycle with
/// S path sizes inside `lambda_avail` and T path sizes inside `mu_avail`.
/// A representative has S minimal in its rotation orbit and T minimal under
/// the rotations fixing S.
inline std::vector<LocalClass> local_classes(int c, const std::vector<int>& lambda_avail,
                                             const std::vector<int>& mu_avail) {
  std::vector<LocalClass> out;
  const auto s_sets = start_sets(c, lambda_avail);
  const auto t_sets = start_sets(c, mu_avail);
  for (Mask s : s_sets) {
    std::vector<int> stab;
    bool canonical = true;
    for (int k = 0; k < c && canonical; ++k) {
      Mask r = rotate(s, k, c);
      if (r < s) canonical = false;
      if (r == s) stab.push_back(k);
    }
    if (!canonical) continue;
    auto sg = gap_counts(s, c, lambda_avail.size());
    for (Mask t : t_sets) {
      bool minimal = true;
      int fixed = 0;
      for (int k : stab) {
        Mask r = rotate(t, k, c);
        if (r < t) {
          minimal = false;
          break;
        }
        if (r == t) ++fixed;
      }
      if (!minimal) continue;
      out.push_back({s, t, sg, gap_counts(t, c, mu_avail.size()), fixed});
    }
  }
  return out;
}

inline bool take(std::vector<int>& pool, const std::vector<int>& part) {
  for (std::size_t i = 0; i < part.size(); ++i)
    if (part[i] > pool[i]) return false;
  for (std::size_t i = 0; i < part.size(); ++i) pool[i] -= part[i];
  return true;
}

inline void give(std::vector<int>& pool, const std::vector<int>& part) {
  for (std::size_t i = 0; i < part.size(); ++i) pool[i] += part[i];
}

inline std::vector<int> padded_counts(const Partition& p, int w) {
  std::vector<int> c(static_cast<std::size_t>(w) + 1, 0);
  for (int x : p) ++c[static_cast<std::size_t>(x)];
  return c;
}

/// Orbit representatives of (λ,μ)-tilings of Γ under Aut(Γ): one local class
/// per cycle, class indices non-decreasing along each run of equal lengths.
class TilingAssembler {
 public:
  TilingAssembler(const Partition& lambda, const Partition& mu)
      : w_(lambda.sum()),
        lambda_(padded_counts(lambda, lambda.sum())),
        mu_(padded_counts(mu, mu.sum())) {
    if (lambda.sum() != mu.sum())
      throw DimensionMismatch("tiling: lambda and mu must have equal sums");
  }

  const std::vector<LocalClass>& classes(int c) {
    auto it = cache_.find(c);
    if (it == cache_.end()) it = cache_.emplace(c, local_classes(c, lambda_, mu_)).first;
    return it->second;
  }

  /// Calls visit(class_indices) for every orbit representative. With
  /// admissible_only, branches whose partial stabilizer is already
  /// nontrivial are cut (stabilizer orders only grow as cycles are added).
  template <class Visit>
  void for_each(const CycleDigraph& g, bool admissible_only, Visit&& visit) {
    if (g.vertex_count() != w_)
      throw DimensionMismatch("tiling: |V(Gamma)| must equal sum(lambda)");
    const auto& lengths = g.cycle_lengths().parts();
    std::vector<int> chosen(lengths.size(), -1);
    std::vector<int> lam(lambda_), mu(mu_);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == lengths.size()) {
        visit(chosen);
        return;
      }
      const int c = lengths[i];
      const auto& cls = classes(c);
      int start = 0;
      if (i > 0 && lengths[i - 1] == c) start = chosen[i - 1] + (admissible_only ? 1 : 0);
      for (int k = start; k < static_cast<int>(cls.size()); ++k) {
        const auto& lc = cls[static_cast<std::size_t>(k)];
        if (admissible_only && lc.rotation_stabilizer != 1) continue;
        if (!take(lam, lc.s_gaps)) continue;
        if (!take(mu, lc.t_gaps)) {
          give(lam, lc.s_gaps);
          continue;
        }
        chosen[i] = k;
        self(self, i + 1);
        give(lam, lc.s_gaps);
        give(mu, lc.t_gaps);
      }
    };
    rec(rec, 0);
  }

 private:
  int w_;
  std::vector<int> lambda_, mu_;
  std::map<int, std::vector<LocalClass>> cache_;
};

inline RootedComposition composition_of(Mask m, int c) {
  RootedComposition rc;
  rc.offset = std::countr_zero(m);
  auto g = gaps(m, c);
  rc.parts = std::move(g);
  return rc;
}

}  // namespace kr_detail

/// Order of Aut(Γ,S,T): the automorphisms of Γ (a rotation on every cycle
/// and a permutation of equal-length cycles) that carry S to S and T to T.
/// Computed as a product over length groups of the permanent of the matrix
/// counting rotations that map the decorated cycle i onto cycle j.
inline std::int64_t aut_order(const TilingPair& tp) {
  using namespace kr_detail;
  const auto& lengths = tp.digraph.cycle_lengths().parts();
  const std::size_t k = lengths.size();
  if (tp.S.size() != k || tp.T.size() != k)
    throw std::invalid_argument("aut_order: one S and one T composition per cycle required");
  std::vector<Mask> s(k), t(k);
  for (std::size_t i = 0; i < k; ++i) {
    s[i] = mask_from(tp.S[i], lengths[i]);
    t[i] = mask_from(tp.T[i], lengths[i]);
  }
  std::int64_t order = 1;
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j < k && lengths[j] == lengths[i]) ++j;
    const std::size_t m = j - i;
    if (m > 20) throw std::invalid_argument("aut_order: too many isomorphic cycles");
    const int c = lengths[i];
    std::vector<std::vector<std::int64_t>> hits(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (int r = 0; r < c; ++r)
          if (rotate(s[i + a], r, c) == s[i + b] && rotate(t[i + a], r, c) == t[i + b])
            ++hits[a][b];
    // permanent by DP over the set of already-used targets
    std::vector<std::int64_t> dp(std::size_t{1} << m, 0);
    dp[0] = 1;
    for (std::size_t used = 0; used < dp.size(); ++used) {
      if (dp[used] == 0) continue;
      const auto row = static_cast<std::size_t>(std::popcount(used));
      if (row == m) continue;
      for (std::size_t b = 0; b < m; ++b)
        if (!(used >> b & 1) && hits[row][b])
          dp[used | (std::size_t{1} << b)] =
              checked_add(dp[used | (std::size_t{1} << b)], checked_mul(dp[used], hits[row][b]));
    }
    order = checked_mul(order, dp.back());
    i = j;
  }
  return order;
}

/// Representatives of every isomorphism class of (λ,μ)-tilings of Γ
/// (admissible or not).
inline std::vector<TilingPair> tiling_classes(const CycleDigraph& g, const Partition& lambda,
                                              const Partition& mu) {
  using namespace kr_detail;
  TilingAssembler assembler(lambda, mu);
  std::vector<TilingPair> out;
  const auto& lengths = g.cycle_lengths().parts();
  assembler.for_each(g, false, [&](const std::vector<int>& chosen) {
    TilingPair tp{g, {}, {}};
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const auto& lc = assembler.classes(lengths[i])[static_cast<std::size_t>(chosen[i])];
      tp.S.push_back(composition_of(lc.s, lengths[i]));
      tp.T.push_back(composition_of(lc.t, lengths[i]));
    }
    out.push_back(std::move(tp));
  });
  return out;
}

/// Number of isomorphism classes of (λ,μ)-tilings of Γ, admissible or not.
inline std::int64_t count_tiling_classes(const CycleDigraph& g, const Partition& lambda,
                                         const Partition& mu) {
  kr_detail::TilingAssembler assembler(lambda, mu);
  std::int64_t count = 0;
  assembler.for_each(g, false, [&](const std::vector<int>&) { ++count; });
  return count;
}

/// η_λμ(Γ): isomorphism classes of admissible (λ,μ)-tilings of Γ.
inline std::int64_t eta(const CycleDigraph& g, const Partition& lambda, const Partition& mu) {
  if (lambda.sum() != mu.sum() || lambda.sum() != g.vertex_count())
    throw DimensionMismatch("eta: requires sum(lambda) = sum(mu) = |V(Gamma)|");
  kr_detail::TilingAssembler assembler(lambda, mu);
  std::int64_t count = 0;
  assembler.for_each(g, true, [&](const std::vector<int>&) { ++count; });
  return count;
}

/// One nonzero term of the sum defining d_λμ.
struct DigraphContribution {
  CycleDigraph digraph;
  int sign = 1;
  std::int64_t eta = 0;
};

struct DCoefficientTrace {
  std::int64_t value = 0;
  int outer_sign = 1;  // (-1)^(|λ|+|μ|)
  std::vector<DigraphContribution> terms;
};

/// d_λμ together with its per-digraph contributions.
inline DCoefficientTrace d_coefficient_trace(const Partition& lambda, const Partition& mu) {
  const int w = lambda.sum();
  if (w != mu.sum()) throw DimensionMismatch("d_coefficient: sum(lambda) != sum(mu)");
  if (w < 1) throw DimensionMismatch("d_coefficient: partitions must be nonempty");
  DCoefficientTrace out;
  out.outer_sign = ((lambda.size() + mu.size()) % 2 == 0) ? 1 : -1;
  kr_detail::TilingAssembler assembler(lambda, mu);
  // Every cycle carries at least one path of each tiling.
  const int max_cycles = static_cast<int>(std::min(lambda.size(), mu.size()));
  std::int64_t total = 0;
  for (const auto& lengths : enumerate(w)) {
    if (static_cast<int>(lengths.size()) > max_cycles) continue;
    CycleDigraph g(lengths);
    std::int64_t n_adm = 0;
    assembler.for_each(g, true, [&](const std::vector<int>&) { ++n_adm; });
    if (n_adm == 0) continue;
    out.terms.push_back({g, g.sign(), n_adm});
    total = checked_add(total, g.sign() * n_adm);
  }
  out.value = checked_mul(out.outer_sign, total);
  return out;
}

inline std::int64_t d_coefficient(const Partition& lambda, const Partition& mu) {
  return d_coefficient_trace(lambda, mu).value;
}

/// Memoized d_λμ, safe to call from several threads.
inline std::int64_t d_coefficient_cached(const Partition& lambda, const Partition& mu) {
  static std::mutex mu_lock;
  static std::map<std::pair<Partition, Partition>, std::int64_t> cache;
  auto key = lambda <= mu ? std::make_pair(lambda, mu) : std::make_pair(mu, lambda);
  {
    std::lock_guard<std::mutex> lock(mu_lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::int64_t d = d_coefficient(key.first, key.second);
  std::lock_guard<std::mutex> lock(mu_lock);
  cache.emplace(std::move(key), d);
  return d;
}

/// Closed forms for two families:
///  - λ = {w}, μ = m copies of b plus one c != b:  (-1)^(w+m+1) w
///  - λ = ℓ copies of a, μ = m copies of b:        (-1)^(w-v+ℓ+m) C(u,v),
///    u = gcd(a,b), v = gcd(ℓ,m)
inline std::optional<std::int64_t> d_closed_form(const Partition& lambda, const Partition& mu) {
  if (lambda.empty() || mu.empty() || lambda.sum() != mu.sum()) return std::nullopt;
  const std::int64_t w = lambda.sum();
  if (lambda.is_uniform() && mu.is_uniform()) {
    const std::int64_t a = lambda[0], l = static_cast<std::int64_t>(lambda.size());
    const std::int64_t b = mu[0], m = static_cast<std::int64_t>(mu.size());
    const std::int64_t u = std::gcd(a, b), v = std::gcd(l, m);
    const std::int64_t sign = ((w - v + l + m) % 2 == 0) ? 1 : -1;
    return sign * binomial(u, v);
  }
  if (lambda.size() == 1) {
    // μ must be m copies of b and one c != b
    auto counts = mu.counts();
    std::vector<std::pair<int, int>> distinct;  // (value, multiplicity)
    for (std::size_t v = 1; v < counts.size(); ++v)
      if (counts[v]) distinct.emplace_back(static_cast<int>(v), counts[v]);
    if (distinct.size() != 2) return std::nullopt;
    std::int64_t m;
    if (distinct[0].second == 1)
      m = distinct[1].second;
    else if (distinct[1].second == 1)
      m = distinct[0].second;
    else
      return std::nullopt;
    const std::int64_t sign = ((w + m + 1) % 2 == 0) ? 1 : -1;
    return sign * w;
  }
  return std::nullopt;
}

}  // namespace insep
