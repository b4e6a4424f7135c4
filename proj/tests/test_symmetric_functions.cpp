#include <gtest/gtest.h>

#include <random>

#include "insep/kr_coefficients.hpp"
#include "insep/symmetric_functions.hpp"

using namespace insep;

TEST(MonomialSym, Examples) {
  auto m1 = monomial_sym(Partition{1}, 2);
  EXPECT_EQ(m1.terms().size(), 1u);
  EXPECT_EQ(m1.coefficient(Partition{1}), 1);
  EXPECT_EQ(monomial_sym(Partition{2, 1}, 3).coefficient(Partition{2, 1}), 1);
  EXPECT_EQ(monomial_sym(Partition{1, 1}, 2), elementary_sym(2, 2));
  EXPECT_THROW(monomial_sym(Partition{1, 1, 1}, 2), std::invalid_argument);
}

TEST(ElementarySym, Examples) {
  EXPECT_EQ(elementary_sym(1, 3), monomial_sym(Partition{1}, 3));
  EXPECT_EQ(elementary_sym(3, 3), monomial_sym(Partition{1, 1, 1}, 3));
  EXPECT_EQ(elementary_sym(2, 4), monomial_sym(Partition{1, 1}, 4));
  EXPECT_THROW(elementary_sym(0, 3), std::invalid_argument);
  EXPECT_THROW(elementary_sym(4, 3), std::invalid_argument);
}

TEST(MultiSymPoly, SmallProducts) {
  // (x+y)^2 = m_2 + 2 m_11
  auto e1 = elementary_sym(1, 2);
  auto sq = e1 * e1;
  EXPECT_EQ(sq.coefficient(Partition{2}), 1);
  EXPECT_EQ(sq.coefficient(Partition{1, 1}), 2);
  // m_1 * m_1 in 3 variables: m_2 + 2 m_11
  auto s3 = elementary_sym(1, 3) * elementary_sym(1, 3);
  EXPECT_EQ(s3.coefficient(Partition{2}), 1);
  EXPECT_EQ(s3.coefficient(Partition{1, 1}), 2);
  // m_21 * m_1 in 3 vars = m_31 + 2 m_22 + 2 m_211
  auto p = monomial_sym(Partition{2, 1}, 3) * monomial_sym(Partition{1}, 3);
  EXPECT_EQ(p.coefficient(Partition{3, 1}), 1);
  EXPECT_EQ(p.coefficient(Partition{2, 2}), 2);
  EXPECT_EQ(p.coefficient(Partition{2, 1, 1}), 2);
}

TEST(BruteForcePsi, Examples) {
  auto psi2 = brute_force_psi(Partition{2}, 2);
  EXPECT_EQ(psi2.coefficient(Partition{1, 1}), 1);
  EXPECT_EQ(psi2.coefficient(Partition{2}), -2);
  EXPECT_EQ(psi2.terms.size(), 2u);

  auto psi11 = brute_force_psi(Partition{1, 1}, 2);
  EXPECT_EQ(psi11.terms.size(), 1u);
  EXPECT_EQ(psi11.coefficient(Partition{2}), 1);

  auto psi = brute_force_psi(Partition{1, 1, 1, 3}, 6);
  EXPECT_EQ(psi.coefficient(Partition{6}), 6);
}

TEST(BruteForcePsi, Errors) {
  EXPECT_THROW(brute_force_psi(Partition{13}, 13), BoundExceeded);
  EXPECT_THROW(brute_force_psi(Partition{1, 1, 1}, 2), std::invalid_argument);
  EXPECT_NO_THROW(brute_force_psi(Partition{13}, 2, 13));
}

TEST(BruteForcePsi, ParentheticalFormat) {
  auto psi = brute_force_psi(Partition{2}, 2);
  EXPECT_EQ(psi.to_string(), "-2 * X_2\n1 * X_1·X_1\n");
}

TEST(BruteForcePsi, ReconstructsMonomial) {
  for (int w = 1; w <= 8; ++w)
    for (const auto& mu : partitions_of(w))
      for (int n : {static_cast<int>(mu.size()), std::min(w, static_cast<int>(mu.size()) + 2)}) {
        auto psi = brute_force_psi(mu, n);
        EXPECT_EQ(psi.evaluate_on_elementary(), monomial_sym(mu, n)) << mu << " n=" << n;
        for (const auto& [lam, c] : psi.terms) {
          EXPECT_LE(lam.largest(), n);
          EXPECT_EQ(lam.sum(), w);
        }
      }
}

TEST(BruteForcePsi, IndependentOfVariableCountOnSharedTerms) {
  auto big = brute_force_psi(Partition{2, 1, 1}, 4);
  auto small = brute_force_psi(Partition{2, 1, 1}, 3);
  for (const auto& [lam, c] : small.terms) EXPECT_EQ(big.coefficient(lam), c);
}

TEST(NewtonIdentities, PowerSumsMatchMonomial) {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= 7; ++k)
      EXPECT_EQ(power_sum_by_newton(k, n), monomial_sym(Partition{k}, n)) << "n=" << n << " k=" << k;
}

TEST(RkMembership, Examples) {
  IntPoly f(2);
  f.add_term({4, 0}, 1).add_term({0, 2}, 2).add_term({1, 0}, 4);
  auto res = rk_membership(f, 2, 2);
  ASSERT_TRUE(res.member);
  EXPECT_EQ(assemble_rk_witness(res.witness, 2), f);

  IntPoly x(1);
  x.add_term({1}, 1);
  auto bad = rk_membership(x, 1, 2);
  EXPECT_FALSE(bad.member);
  ASSERT_TRUE(bad.offending_exponent);
  EXPECT_EQ(*bad.offending_exponent, std::vector<int>{1});

  for (int n = 2; n <= 4; ++n) {
    auto psi = to_int_poly(brute_force_psi(Partition{2, 2}, n));
    EXPECT_TRUE(rk_membership(psi, 1, 2).member) << "n=" << n;
  }
}

TEST(RkMembership, KZeroAcceptsEverything) {
  IntPoly f(2);
  f.add_term({1, 3}, 7).add_term({0, 1}, -1);
  auto res = rk_membership(f, 0, 3);
  EXPECT_TRUE(res.member);
  EXPECT_EQ(assemble_rk_witness(res.witness, 3), f);
}

TEST(RkMembership, PowerOfScaledPartition) {
  for (int p : {2, 3})
    for (int j = 1; j <= 2; ++j)
      for (int w = 1; w <= 4; ++w)
        for (const auto& lam : partitions_of(w)) {
          int pj = static_cast<int>(checked_pow(p, static_cast<unsigned>(j)));
          if (pj * w > 18) continue;  // larger cases run in the acceptance suite
          auto big = scale(pj, lam);
          auto psi = brute_force_psi(big, static_cast<int>(big.size()), big.sum());
          EXPECT_TRUE(rk_membership(to_int_poly(psi), j, p).member)
              << "p=" << p << " j=" << j << " lambda=" << lam;
        }
}

TEST(RkMembership, LemmaPowerClosure) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3), expo(0, 2);
  for (int p : {2, 3})
    for (int k = 0; k <= 2; ++k)
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<IntPoly> phi(static_cast<std::size_t>(k) + 1, IntPoly(2));
        for (auto& ph : phi)
          for (int t = 0; t < 2; ++t) ph.add_term({expo(rng), expo(rng)}, coef(rng));
        IntPoly f = assemble_rk_witness(phi, p);
        ASSERT_TRUE(rk_membership(f, k, p).member);
        EXPECT_TRUE(rk_membership(f.pow(static_cast<unsigned>(p)), k + 1, p).member)
            << "p=" << p << " k=" << k << " F=" << f.to_string();
        EXPECT_TRUE(rk_membership(BigInt(p) * f, k + 1, p).member);
      }
}

TEST(EhOfSeries, Examples) {
  auto t1 = eh_of_series(2, 4, 1, 3);
  ASSERT_EQ(t1.size(), 2u);
  EXPECT_EQ(t1[0].mu, (Partition{1, 1}));
  EXPECT_EQ(t1[0].coefficient_monomial(), "a_1^2");
  EXPECT_EQ(t1[1].mu, (Partition{2, 1}));
  EXPECT_EQ(t1[1].coefficient_monomial(), "a_1*a_2");

  auto t2 = eh_of_series(1, 4, 2, 4);
  ASSERT_EQ(t2.size(), 3u);
  EXPECT_EQ(t2[0].mu, Partition{2});
  EXPECT_EQ(t2[2].mu, Partition{4});

  EXPECT_TRUE(eh_of_series(3, 4, 2, 5).empty());
}

TEST(PowerSums, NewtonExpansionSmall) {
  const auto p2 = power_sum_in_elementary(2);
  EXPECT_EQ(p2.at(Partition{1, 1}), 1);
  EXPECT_EQ(p2.at(Partition{2}), -2);
  const auto p3 = power_sum_in_elementary(3);
  EXPECT_EQ(p3.at(Partition{1, 1, 1}), 1);
  EXPECT_EQ(p3.at(Partition{2, 1}), -3);
  EXPECT_EQ(p3.at(Partition{3}), 3);
}

TEST(PowerSums, ScaledMonomialMatchesTilingCoefficients) {
  for (int k = 1; k <= 3; ++k)
    for (int wp = 1; k * wp <= 9; ++wp)
      for (const auto& lp : partitions_of(wp)) {
        const auto lambda = scale(k, lp);
        const auto expansion = scaled_monomial_in_elementary(lp, k);
        for (const auto& mu : partitions_of(lambda.sum())) {
          auto it = expansion.find(mu);
          const BigInt got = it == expansion.end() ? BigInt(0) : it->second;
          EXPECT_EQ(got, BigInt(d_coefficient_cached(lambda, mu))) << lambda << ' ' << mu;
        }
      }
}
