#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rmprs/bivariate.hpp"
#include "rmprs/polynomial.hpp"
#include "rmprs/random.hpp"

using namespace rmprs;

namespace {

UniPoly random_uni(const FieldPtr& F, std::size_t deg, Rng& rng) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = F->elem(rng.below(F->order()));
  return UniPoly(F, c);
}

}  // namespace

TEST(UniPoly, NormalizesAndReportsDegree) {
  auto F = field_of_order(5);
  EXPECT_EQ(UniPoly(F).degree(), kZeroDegree);
  EXPECT_TRUE(UniPoly(F, {F->zero(), F->zero()}).is_zero());
  EXPECT_EQ(UniPoly(F, {F->one(), F->elem(2), F->zero()}).degree(), 1);
  EXPECT_EQ(UniPoly::monomial(F, F->elem(3), 4).degree(), 4);
}

TEST(UniPoly, EvaluationMatchesTermByTermSum) {
  Rng rng(1);
  for (std::uint64_t q : {7u, 16u, 27u}) {
    auto F = field_of_order(q);
    for (int t = 0; t < 50; ++t) {
      const UniPoly f = random_uni(F, rng.below(9), rng);
      for (auto x : F->elements()) ASSERT_EQ(f(x), oracle::eval_uni(*F, f.coeffs(), x));
    }
  }
}

TEST(UniPoly, RingOperationsAgreePointwise) {
  Rng rng(2);
  auto F = field_of_order(13);
  for (int t = 0; t < 100; ++t) {
    const UniPoly f = random_uni(F, rng.below(6), rng), g = random_uni(F, rng.below(6), rng);
    const Elem c = F->elem(rng.below(13));
    for (auto x : F->elements()) {
      EXPECT_EQ((f + g)(x), F->add(f(x), g(x)));
      EXPECT_EQ((f - g)(x), F->sub(f(x), g(x)));
      EXPECT_EQ((f * g)(x), F->mul(f(x), g(x)));
      EXPECT_EQ(f.scaled(c)(x), F->mul(c, f(x)));
      EXPECT_EQ(f.pow(3)(x), F->pow(f(x), 3));
    }
  }
}

TEST(UniPoly, DivisionWithRemainder) {
  Rng rng(4);
  auto F = field_of_order(9);
  for (int t = 0; t < 100; ++t) {
    const UniPoly a = random_uni(F, rng.below(10), rng);
    UniPoly d = random_uni(F, rng.below(5), rng);
    if (d.is_zero()) d = UniPoly::constant(F, F->one());
    auto [quot, rem] = a.divmod(d);
    EXPECT_EQ(quot * d + rem, a);
    EXPECT_LT(rem.degree(), d.degree() == 0 ? 0 : d.degree());
  }
  EXPECT_THROW(UniPoly::constant(F, F->one()).divmod(UniPoly(F)), DivisionByZero);
}

TEST(UniPoly, LagrangeInterpolationRecoversPolynomial) {
  Rng rng(5);
  auto F = field_of_order(16);
  const auto xs = F->elements();
  for (int t = 0; t < 50; ++t) {
    const std::size_t deg = rng.below(10);
    const UniPoly f = random_uni(F, deg, rng);
    std::vector<std::pair<Elem, Elem>> pts;
    for (std::size_t i = 0; i <= deg; ++i) pts.push_back({xs[i + 3], f(xs[i + 3])});
    EXPECT_EQ(lagrange_interpolate(F, pts), f);
  }
  std::vector<std::pair<Elem, Elem>> dup = {{F->one(), F->one()}, {F->one(), F->zero()}};
  EXPECT_THROW(lagrange_interpolate(F, dup), InvalidArgument);
}

TEST(UniPoly, MixingFieldsThrows) {
  auto F = field_of_order(4), G = field_of_order(4);
  EXPECT_THROW(UniPoly::constant(F, F->one()) + UniPoly::constant(G, G->one()), FieldMismatch);
}

TEST(MultiPoly, TermsAccumulateAndCancel) {
  auto F = field_of_order(3);
  MultiPoly phi(F, 2);
  phi.add_term({1, 0}, F->elem(2));
  phi.add_term({1, 0}, F->elem(1));
  EXPECT_TRUE(phi.is_zero());
  phi.add_term({2, 1}, F->one());
  phi.add_term({0, 3}, F->one());
  EXPECT_EQ(phi.total_degree(), 3);
  EXPECT_EQ(phi.degree_in(0), 2);
  EXPECT_EQ(phi.degree_in(1), 3);
  EXPECT_EQ(MultiPoly(F, 2).total_degree(), kZeroDegree);
}

TEST(MultiPoly, EvaluationAndProductsMatchOracle) {
  Rng rng(6);
  auto F = field_of_order(5);
  const auto basis = monomials_up_to(3, 4, 4);
  for (int t = 0; t < 30; ++t) {
    const MultiPoly a = random_multipoly(F, 3, basis, 6, rng), b = random_multipoly(F, 3, basis, 6, rng);
    for_each_grid_point(*F, 3, [&](std::span<const Elem> x) {
      const std::vector<Elem> v(x.begin(), x.end());
      ASSERT_EQ(a(x), oracle::eval_multi(a, v));
      ASSERT_EQ((a * b)(x), F->mul(a(x), b(x)));
      ASSERT_EQ((a + b)(x), F->add(a(x), b(x)));
    });
  }
}

TEST(MultiPoly, ReductionPreservesTheFunction) {
  Rng rng(7);
  auto F = field_of_order(4);
  const auto basis = monomials_up_to(2, 12, 9);
  for (int t = 0; t < 40; ++t) {
    const MultiPoly phi = random_multipoly(F, 2, basis, 8, rng);
    const MultiPoly red = reduce_functional(phi);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(red.degree_in(j), 3);
    for_each_grid_point(*F, 2, [&](std::span<const Elem> x) { ASSERT_EQ(red(x), phi(x)); });
  }
  // x^q = x, and x^0 stays constant.
  MultiPoly xq(F, 1);
  xq.add_term({4}, F->one());
  MultiPoly x(F, 1);
  x.add_term({1}, F->one());
  EXPECT_EQ(reduce_functional(xq), x);
}

TEST(MultiPoly, GridOrderIsLexicographicFirstCoordinateSlowest) {
  auto F = field_of_order(3);
  std::vector<std::vector<std::uint32_t>> seen;
  for_each_grid_point(*F, 2, [&](std::span<const Elem> x) { seen.push_back({x[0].value, x[1].value}); });
  ASSERT_EQ(seen.size(), 9u);
  EXPECT_EQ(seen[1], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(seen[3], (std::vector<std::uint32_t>{1, 0}));
}

TEST(MultiPoly, MonomialEnumerationCounts) {
  // total degree <= 2 in 2 variables: 6 monomials.
  EXPECT_EQ(monomials_up_to(2, 2, 3).size(), 6u);
  // total degree <= 4 with exponents capped at 2 in 2 variables: 9.
  EXPECT_EQ(monomials_up_to(2, 4, 2).size(), 9u);
  for (const auto& e : monomials_up_to(3, 5, 3)) {
    EXPECT_LE(e[0] + e[1] + e[2], 5u);
    for (auto x : e) EXPECT_LE(x, 3u);
  }
}

TEST(MultiPoly, ZeroCountOfKnownPolynomials) {
  auto F = field_of_order(5);
  MultiPoly xy(F, 2);
  xy.add_term({1, 1}, F->one());  // zero iff x = 0 or y = 0: 9 points
  EXPECT_EQ(count_zeros(xy), 9u);
  MultiPoly c(F, 2);
  c.add_term({0, 0}, F->one());
  EXPECT_EQ(count_zeros(c), 0u);
  EXPECT_EQ(count_zeros(MultiPoly(F, 2)), 25u);
}

TEST(BiPoly, ShiftSubstituteAgreesWithDirectEvaluation) {
  Rng rng(8);
  auto F = field_of_order(7);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::vector<std::uint32_t>> rows(4);
    for (auto& r : rows) {
      r.resize(5);
      for (auto& c : r) c = static_cast<std::uint32_t>(rng.below(7));
    }
    const BiPoly Q(F, rows);
    const std::uint32_t g = static_cast<std::uint32_t>(rng.below(7));
    const BiPoly S = Q.shift_substitute(g);
    for (auto x : F->elements())
      for (auto y : F->elements()) {
        const Elem y2 = F->add(F->mul(x, y), F->elem(g));
        ASSERT_EQ(S(x, y), Q(x, y2));
      }
  }
}

TEST(BiPoly, HasseDerivativeOfPowerProduct) {
  // D_{a,b} of X^i Y^j at (x, y) is C(i,a) C(j,b) x^(i-a) y^(j-b).
  auto F = field_of_order(11);
  const auto binom = binomials_mod_p(20, 11);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<std::vector<std::uint32_t>> rows(j + 1);
      rows[j].assign(i + 1, 0);
      rows[j][i] = 1;
      const BiPoly Q(F, rows);
      const Elem x = F->elem(3), y = F->elem(5);
      for (std::size_t a = 0; a <= i; ++a)
        for (std::size_t b = 0; b <= j; ++b) {
          const Elem expect = F->mul(F->from_int(static_cast<std::int64_t>(binom[i][a] * binom[j][b])),
                                     F->mul(F->pow(x, i - a), F->pow(y, j - b)));
          EXPECT_EQ(Q.hasse(a, b, x, y, binom), expect.value);
        }
    }
}

TEST(BiPoly, SubstituteAndFactorOut) {
  auto F = field_of_order(8);
  const UniPoly f(F, {F->elem(3), F->elem(5), F->one()});
  const BiPoly Q = BiPoly::y_minus(f) * BiPoly::y_power(F, 2);
  EXPECT_TRUE(Q.substitute(f).is_zero());
  EXPECT_EQ(Q.weighted_degree(2), 6);
  // X^2 * (Y + 1) divided by X^2.
  const BiPoly P(F, {{0, 0, 1}, {0, 0, 1}});
  EXPECT_EQ(P.divide_out_x(), BiPoly(F, {{1}, {1}}));
}
