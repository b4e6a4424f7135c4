#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "insep/local_fields.hpp"

using namespace insep;

namespace {

LaurentSeries T(const LaurentBase& b, std::int64_t e = 1) { return b.uniformizer_power(e); }

LaurentExtension example_field(int d = 1) {
  // X^8 + t X^3 + t X^2 + t over F_{2^d}((t))
  auto b = LaurentBase::make(2, d);
  std::vector<LaurentSeries> f(9, b.zero());
  f[8] = b.one();
  f[3] = f[2] = f[0] = T(b);
  return LaurentExtension::from_polynomial(b, f);
}

PadicExtension padic_field(std::int64_t p, std::vector<std::int64_t> f_coeffs) {
  auto b = PadicBase::make(p);
  std::vector<PadicNumber> f;
  for (auto c : f_coeffs) f.push_back(b.from_integer(c));
  return PadicExtension::from_polynomial(b, f);
}

// det(X·I − M) by the Leibniz expansion over polynomials in X; coefficient
// vectors low -> high.
template <class Elem>
std::vector<Elem> leibniz_charpoly(const Matrix<Elem>& m, const Elem& zero, const Elem& one) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Elem> total(n + 1, zero);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    std::vector<Elem> prod{one};
    for (std::size_t i = 0; i < n; ++i) {
      // entry (i, perm[i]) of X·I − M
      std::vector<Elem> entry{-m[i][perm[i]]};
      if (perm[i] == i) entry.push_back(one);
      std::vector<Elem> next(prod.size() + entry.size() - 1, zero);
      for (std::size_t a = 0; a < prod.size(); ++a)
        for (std::size_t b = 0; b < entry.size(); ++b) next[a + b] += prod[a] * entry[b];
      prod = std::move(next);
    }
    for (std::size_t k = 0; k < prod.size(); ++k) total[k] += inversions % 2 ? -prod[k] : prod[k];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template <class Ext>
typename Ext::Elt random_element(const Ext& ext, std::mt19937_64& rng, int lo, int hi) {
  const auto reps = ext.base().residue_representatives();
  std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
  std::vector<std::pair<std::int64_t, typename Ext::Element>> terms;
  for (int i = lo; i <= hi; ++i) terms.emplace_back(i, reps[pick(rng)]);
  return ext.from_series(terms);
}

}  // namespace

TEST(ResidueField, BuiltInModuli) {
  EXPECT_EQ(ResidueField(2, 2).modulus(), (fp_poly::Poly{1, 1, 1}));
  EXPECT_EQ(ResidueField(2, 3).modulus(), (fp_poly::Poly{1, 1, 0, 1}));
  EXPECT_EQ(ResidueField(3, 2).modulus(), (fp_poly::Poly{1, 0, 1}));
  EXPECT_THROW(ResidueField(2, 7), std::invalid_argument);
  EXPECT_NO_THROW(ResidueField(2, 7, {1, 1, 0, 0, 0, 0, 0, 1}));
  EXPECT_THROW(ResidueField(2, 2, {1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(ResidueField(4, 1), std::invalid_argument);
}

TEST(ResidueField, FieldAxiomsExhaustive) {
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 1}, {2, 6}}) {
    ResidueField f(p, d);
    const int q = f.q();
    for (int x = 0; x < q; ++x) {
      EXPECT_EQ(f.add(x, f.neg(x)), 0);
      if (x) {
        EXPECT_EQ(f.mul(x, f.inv(x)), 1);
        EXPECT_EQ(f.pow(x, static_cast<std::uint64_t>(q - 1)), 1);
      }
      for (int y = 0; y < q; y += std::max(1, q / 16))
        for (int z = 0; z < q; z += std::max(1, q / 8)) {
          EXPECT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
          EXPECT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        }
    }
  }
}

TEST(ResidueField, LargeFieldWithoutTables) {
  ResidueField f(2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1});  // X^9 + X^4 + 1
  for (int x : {1, 7, 300, 511}) EXPECT_EQ(f.mul(x, f.inv(x)), 1);
}

TEST(LaurentSeries, ValuationExamples) {
  auto b = LaurentBase::make(2);
  auto x = T(b, 3) + T(b, 5);
  EXPECT_EQ(x.valuation(), Valuation::finite(3));
  EXPECT_EQ(b.zero().valuation(), Valuation::infinite());
  LaurentSeries z(b.field, 10);
  EXPECT_EQ(z.valuation(), Valuation::at_least(10));
  EXPECT_EQ(z.valuation().to_string(), "indeterminate(>=10)");
  EXPECT_THROW((void)z.valuation().value(), InsufficientPrecision);
}

TEST(LaurentSeries, InverseAndPrecision) {
  auto b = LaurentBase::make(3);
  auto one_plus_t = b.one() + T(b);
  auto inv = one_plus_t.inverse(20);
  EXPECT_EQ(inv.precision(), 20);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(inv.coefficient(k), k % 2 ? 2 : 1);
  auto prod = inv * one_plus_t;
  EXPECT_EQ(prod.precision(), 20);
  EXPECT_EQ(prod, b.one().truncated(20));
  EXPECT_THROW(inv.coefficient(20), InsufficientPrecision);
  // exact monomials invert exactly
  EXPECT_TRUE(T(b, 3).inverse().is_exact());
  EXPECT_EQ(T(b, 3).inverse(), T(b, -3));
}

TEST(LaurentSeries, PrecisionNeverIncreases) {
  auto b = LaurentBase::make(2);
  LaurentSeries x = (b.one() + T(b)).truncated(8);
  auto y = x * T(b, 2);
  EXPECT_EQ(y.precision(), 10);
  auto s = x + T(b, 20);
  EXPECT_EQ(s.precision(), 8);
  LaurentSeries z(b.field, 5);
  EXPECT_EQ((z * T(b, 3)).valuation(), Valuation::at_least(8));
}

TEST(LaurentSeries, ToString) {
  auto b = LaurentBase::make(2, 2);
  auto a = b.residue(b.field->generator());
  EXPECT_EQ((T(b, 3) + a * T(b, 5)).to_string(), "t^3 + a*t^5");
  EXPECT_EQ(((a + b.one()) * T(b)).to_string(), "(a+1)*t");
  EXPECT_EQ(b.zero().to_string(), "0");
}

TEST(Padic, ArithmeticAndValuation) {
  auto b = PadicBase::make(3);
  auto x = b.from_integer(18);
  EXPECT_EQ(x.valuation(), Valuation::finite(2));
  auto inv = b.from_integer(2).inverse(10);
  EXPECT_EQ(inv.precision(), 10);
  EXPECT_EQ(inv * b.from_integer(2), b.one().truncated(10));
  EXPECT_EQ(b.from_integer(9).inverse().to_string(), "1*3^-2");
  EXPECT_EQ((b.from_integer(5) - b.from_integer(5)).valuation(), Valuation::infinite());
  PadicNumber tiny(3, 0, 7);
  EXPECT_EQ(tiny.valuation(), Valuation::at_least(7));
  EXPECT_EQ((b.from_integer(7) + b.from_integer(2)).valuation(), Valuation::finite(2));
}

TEST(Eisenstein, RejectsNonEisenstein) {
  auto b = LaurentBase::make(2);
  std::vector<LaurentSeries> f{T(b, 2), b.zero(), b.one()};  // X^2 + t^2
  EXPECT_THROW(LaurentExtension::from_polynomial(b, f), NotEisenstein);
  std::vector<LaurentSeries> g{T(b), b.one(), b.one()};  // X^2 + X + t
  EXPECT_THROW(LaurentExtension::from_polynomial(b, g), NotEisenstein);
  EXPECT_THROW(padic_field(2, {2, 0, 2}), NotEisenstein);
}

TEST(Eisenstein, Parameters) {
  auto ext = example_field();
  EXPECT_EQ(ext.n(), 8);
  EXPECT_EQ(ext.u(), 1);
  EXPECT_EQ(ext.nu(), 3);
  EXPECT_FALSE(ext.e_L().has_value());
  auto q3 = padic_field(3, {3, 3, 0, 1});
  EXPECT_EQ(q3.n(), 3);
  EXPECT_EQ(q3.e_L(), 3);
  EXPECT_EQ(q3.c(2).to_string(), "3");
  EXPECT_EQ(q3.c(3).to_string(), "-3");
  EXPECT_EQ(ext.polynomial_string(), "X^8 + t*X^3 + t*X^2 + t");
}

TEST(FromSeries, Examples) {
  auto ext = example_field();
  auto b = ext.base();
  auto pi = ext.from_series({{1, b.one()}});
  EXPECT_EQ(pi, ext.pi());
  EXPECT_EQ(ext.element_string(pi), "1@1");
  auto pi8 = ext.from_series({{8, b.one()}});
  EXPECT_EQ(ext.element_string(pi8), "t@0, t@2, t@3");
  auto s = ext.from_series({{0, b.one()}, {1, b.one()}});
  EXPECT_EQ(ext.element_string(s), "1@0, 1@1");
  EXPECT_EQ(ext.multiply(ext.pi_power(-1), ext.pi()), ext.one());
  EXPECT_EQ(ext.multiply(ext.pi_power(-5), ext.pi_power(7)), ext.pi_power(2));
}

TEST(MultMatrix, Examples) {
  auto ext = example_field();
  auto id = ext.mult_matrix(ext.one());
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(id[i][j], i == j ? ext.base().one() : ext.base().zero());
  // companion matrix: π·π^7 = π^8 = t + tπ^2 + tπ^3
  auto m = ext.mult_matrix(ext.pi());
  for (int i = 0; i < 7; ++i) EXPECT_EQ(m[i + 1][i], ext.base().one());
  EXPECT_EQ(m[0][7], T(ext.base()));
  EXPECT_EQ(m[2][7], T(ext.base()));
  EXPECT_EQ(m[3][7], T(ext.base()));
  EXPECT_TRUE(m[1][7].is_exact_zero());

  auto q = padic_field(3, {3, 6, 1});  // X^2 + 6X + 3: c1 = -6, c2 = 3
  auto mq = q.mult_matrix(q.pi());
  EXPECT_EQ(mq[0][1].to_string(), "-3");
  EXPECT_EQ(mq[1][1].to_string(), "-6");
}

TEST(ElementarySymmetric, OfUniformizerAreCoefficients) {
  auto ext = example_field();
  auto e = ext.elementary_symmetric_values(ext.pi());
  for (int h = 1; h <= 8; ++h) {
    const bool nonzero = h == 5 || h == 6 || h == 8;
    EXPECT_EQ(e[h - 1], nonzero ? T(ext.base()) : ext.base().zero()) << "h=" << h;
  }
  auto q = padic_field(2, {2, 2, 0, 0, 1});
  auto eq = q.elementary_symmetric_values(q.pi());
  for (int h = 1; h <= 4; ++h) EXPECT_EQ(eq[h - 1], q.c(h));
}

TEST(ElementarySymmetric, ScalarsGiveBinomials) {
  auto q = padic_field(3, {3, 3, 0, 1});
  auto e = q.elementary_symmetric_values(q.embed(q.base().from_integer(5)));
  for (int h = 1; h <= 3; ++h)
    EXPECT_EQ(e[h - 1], q.base().from_integer(binomial(3, h) * checked_pow(5, static_cast<unsigned>(h))));
  auto ext = example_field();
  auto c = T(ext.base()) + ext.base().one();
  auto el = ext.elementary_symmetric_values(ext.embed(c));
  LaurentSeries power = ext.base().one();
  for (int h = 1; h <= 8; ++h) {
    power = power * c;
    auto expected = (binomial(8, h) % 2) ? power : ext.base().zero();
    EXPECT_EQ(el[h - 1], expected) << h;
  }
}

TEST(Charpoly, BerkowitzMatchesLeibniz) {
  std::mt19937_64 rng(3);
  auto q = padic_field(2, {2, 2, 0, 0, 1});
  auto lq = LaurentBase::make(3);
  std::vector<LaurentSeries> fl{T(lq), T(lq), T(lq, 2), lq.zero(), lq.one()};
  auto ext = LaurentExtension::from_polynomial(lq, fl);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_element(q, rng, 0, 6);
    auto m = q.mult_matrix(a);
    auto berk = characteristic_polynomial(m, q.base().zero(), q.base().one());
    auto leib = leibniz_charpoly(m, q.base().zero(), q.base().one());
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(berk[k], leib[4 - k]);

    auto b = random_element(ext, rng, -2, 5);
    auto ml = ext.mult_matrix(b);
    auto bl = characteristic_polynomial(ml, lq.zero(), lq.one());
    auto ll = leibniz_charpoly(ml, lq.zero(), lq.one());
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(bl[k], ll[4 - k]);
  }
}

TEST(Norm, ValuationIdentityAndMultiplicativity) {
  std::mt19937_64 rng(5);
  auto ext = example_field();
  auto q = padic_field(3, {3, 3, 0, 1});
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_element(ext, rng, 1, 10);
    auto b = random_element(ext, rng, 0, 6);
    auto va = ext.valuation_L(a);
    if (va.is_finite()) {
      EXPECT_EQ(ext.norm(a).valuation(), va);
    }
    EXPECT_EQ(ext.norm(ext.multiply(a, b)), ext.norm(a) * ext.norm(b));

    auto x = random_element(q, rng, 0, 5);
    auto y = random_element(q, rng, 1, 4);
    if (q.valuation_L(x).is_finite()) {
      EXPECT_EQ(q.norm(x).valuation(), q.valuation_L(x));
    }
    EXPECT_EQ(q.norm(q.multiply(x, y)), q.norm(x) * q.norm(y));
  }
}

TEST(MinPoly, Examples) {
  auto ext = example_field();
  auto same = ext.min_poly_of(ext.pi());
  EXPECT_EQ(same.cs(), ext.cs());
  EXPECT_THROW(ext.min_poly_of(ext.pi_power(2)), NotAUniformizer);
  auto other = ext.min_poly_of(ext.add(ext.pi(), ext.pi_power(2)));
  EXPECT_EQ(other.n(), 8);
  EXPECT_EQ(other.c(8).valuation(), Valuation::finite(1));
}

TEST(Precision, HigherPrecisionKeepsDeterminateValuations) {
  // Inexact input coefficients: valuations that are determinate at low
  // precision must not change at higher precision.
  std::mt19937_64 rng(9);
  auto ext = example_field();
  auto b = ext.base();
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_element(ext, rng, 1, 9);
    auto low = a, high = a;
    auto unit = (b.one() + T(b)).inverse(40);
    for (auto& x : low.coeffs) x = (x * unit).truncated(12);
    for (auto& x : high.coeffs) x = (x * unit).truncated(30);
    auto el = ext.elementary_symmetric_values(low);
    auto eh = ext.elementary_symmetric_values(high);
    for (int h = 0; h < 8; ++h) {
      EXPECT_LE(el[h].precision(), eh[h].precision());
      if (el[h].valuation().is_finite()) {
        EXPECT_EQ(el[h].valuation(), eh[h].valuation());
      }
    }
  }
}
