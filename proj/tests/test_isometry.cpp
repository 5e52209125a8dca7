#include <gtest/gtest.h>

#include "arithhyp/complement.hpp"
#include "arithhyp/isometry.hpp"
#include "oracles.hpp"

using namespace arithhyp;

namespace {

Rational evaluate(const std::vector<Rational>& c, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i] * x[i];
  return s;
}

// P^t diag(src) P computed entry by entry, without the library congruence
bool oracle_congruent(const RatMatrix& P, const DiagForm& src, const DiagForm& tgt) {
  const std::size_t n = src.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += P(k, i) * src[k] * P(k, j);
      if (s != (i == j ? tgt[i] : Rational(0))) return false;
    }
  return true;
}

Int rand_nonzero(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  int v = 0;
  while (v == 0) v = d(rng);
  return Int(v);
}

}  // namespace

TEST(Cassels, VectorIsZeroAndWithinBound) {
  std::mt19937_64 rng(41);
  int done = 0;
  for (int it = 0; it < 400 && done < 150; ++it) {
    std::size_t n = 3 + rng() % 3;
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(rand_nonzero(rng, -15, 15));
    DiagForm f(c);
    if (!is_isotropic_Q(f)) {
      EXPECT_THROW(cassels_isotropic_vector(f), std::invalid_argument);
      continue;
    }
    auto r = cassels_isotropic_vector(f);
    std::vector<Rational> y(r.y.begin(), r.y.end());
    ASSERT_EQ(evaluate(c, y), 0) << f.str();
    ASSERT_TRUE(std::any_of(r.y.begin(), r.y.end(), [](const Int& t) { return t != 0; }));
    ASSERT_TRUE(cassels_compliant(r.y, f)) << f.str();
    ++done;
  }
  EXPECT_GT(done, 50);
}

TEST(Cassels, BoundValue) {
  // (3 * 4)^{3/2} squared
  EXPECT_EQ(cassels_bound_sq(DiagForm{1, 1, 1, -1}), Int(12 * 12 * 12));
  EXPECT_TRUE(cassels_compliant({Int(1), Int(0), Int(0), Int(1)}, DiagForm{1, 1, 1, -1}));
}

TEST(Ternary, SolutionsAreZeros) {
  std::mt19937_64 rng(42);
  int solved = 0;
  for (int it = 0; it < 2000; ++it) {
    Int a = rand_nonzero(rng, -500, 500), b = rand_nonzero(rng, -500, 500), c = rand_nonzero(rng, -500, 500);
    auto z = solve_ternary(a, b, c);
    bool iso = is_isotropic_Q(DiagForm(std::vector<Rational>{Rational(a), Rational(b), Rational(c)}));
    ASSERT_EQ(z.has_value(), iso) << a << "," << b << "," << c;
    if (!z) continue;
    ++solved;
    auto& v = *z;
    ASSERT_EQ(a * v[0] * v[0] + b * v[1] * v[1] + c * v[2] * v[2], 0);
    ASSERT_TRUE(v[0] != 0 || v[1] != 0 || v[2] != 0);
  }
  EXPECT_GT(solved, 100);
}

TEST(Ternary, SmallCasesAgainstBoxSearch) {
  for (long long a = 1; a <= 12; ++a)
    for (long long b = 1; b <= 12; ++b)
      for (long long c = -12; c <= -1; ++c) {
        bool want = oracle::has_zero_in_box({a, b, c}, oracle::cassels_box({a, b, c}));
        ASSERT_EQ(solve_ternary(Int(a), Int(b), Int(c)).has_value(), want) << a << "," << b << "," << c;
      }
}

TEST(Ternary, LargeCoefficients) {
  Int p("1000000007"), q("998244353"), r("1000000009");
  std::vector<std::array<Int, 3>> cases{{p, q, -(p + q)}, {p * 5, q * 13, -(r * 2)}, {p * q, r, -(p * r * 3)},
                                        {Int(1), Int(1), -(p * q)}, {Int(7) * p, Int(-3) * q, Int(11) * r}};
  for (auto& [a, b, c] : cases) {
    auto z = solve_ternary(a, b, c);
    bool iso = is_isotropic_Q(DiagForm(std::vector<Rational>{Rational(a), Rational(b), Rational(c)}));
    ASSERT_EQ(z.has_value(), iso) << a << "," << b << "," << c;
    if (z) EXPECT_EQ(a * (*z)[0] * (*z)[0] + b * (*z)[1] * (*z)[1] + c * (*z)[2] * (*z)[2], 0);
  }
  EXPECT_THROW(solve_ternary(Int(0), Int(1), Int(-1)), std::invalid_argument);
  EXPECT_FALSE(solve_ternary(Int(1), Int(2), Int(3)).has_value());
}

TEST(RepresentOne, Represents) {
  std::mt19937_64 rng(43);
  int done = 0;
  for (int it = 0; it < 300 && done < 100; ++it) {
    std::size_t n = 2 + rng() % 4;
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(rand_nonzero(rng, -30, 30));
    DiagForm g(c);
    if (!is_isotropic_Q(g.direct_sum(DiagForm{-1}))) {
      EXPECT_THROW(represent_one(g), std::invalid_argument);
      continue;
    }
    auto r = represent_one(g);
    ASSERT_EQ(evaluate(c, r.x), 1) << g.str();
    if (!r.y.empty()) ASSERT_TRUE(r.constructive || cassels_compliant(r.y, g.direct_sum(DiagForm{-1})));
    ++done;
  }
}

TEST(ReduceOnce, BoundCompliance) {
  std::mt19937_64 rng(44);
  int done = 0;
  for (int it = 0; it < 400 && done < 120; ++it) {
    std::size_t n = 2 + rng() % 4;
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(rand_nonzero(rng, -30, 30));
    DiagForm g(c);
    if (!is_isotropic_Q(g.direct_sum(DiagForm{-1}))) continue;
    auto red = reduce_once(g);
    ASSERT_TRUE(oracle_congruent(red.P, g, red.g_new)) << g.str();
    ASSERT_EQ(red.g_new[0], 1);
    auto B = bound_fns(g);
    ASSERT_LE(red.P.denominator_lcm(), B.E) << g.str();
    ASSERT_LE(abs(red.P1.determinant()), Rational(B.F)) << g.str();
    for (auto& a : red.g_new.coeffs()) ASSERT_EQ(den(a), 1);
    ++done;
  }
  EXPECT_GT(done, 60);
}

TEST(FullIsometry, PublishedSourcesAndShortcut) {
  auto w = full_isometry_to_standard(DiagForm{2, 5, 10, 1, 2, 5, -10});
  EXPECT_TRUE(oracle_congruent(w.P, w.source, DiagForm::standard(6, 1)));
  EXPECT_EQ(w.S, w.P.denominator_lcm());
  auto id = full_isometry_to_standard(DiagForm::standard(6, 1));
  EXPECT_EQ(id.P, RatMatrix::identity(7));
  // leading +1 entries are kept fixed
  auto v = full_isometry_to_standard(DiagForm{1, 1, 1, 1, 1, 7, -7});
  EXPECT_TRUE(oracle_congruent(v.P, v.source, v.target));
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(v.P(i, j), i == j ? 1 : 0);
  }
}

TEST(FullIsometry, RandomRoundTrips) {
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<int> d(1, 20);
  for (int it = 0; it < 40; ++it) {
    DiagForm q{d(rng), d(rng), d(rng), -d(rng)};
    auto c = complementary_form(q);
    auto w = full_isometry_to_standard(c.qc.direct_sum(q));
    ASSERT_TRUE(oracle_congruent(w.P, w.source, w.target)) << q.str();
    for (auto& s : w.steps) {
      ASSERT_TRUE(s.within_E) << q.str();
      ASSERT_TRUE(s.cassels_ok) << q.str();
    }
  }
}

TEST(FullIsometry, Deterministic) {
  DiagForm q{3, 7, 11, -13};
  auto g = complementary_form(q).qc.direct_sum(q);
  auto a = full_isometry_to_standard(g), b = full_isometry_to_standard(g);
  EXPECT_EQ(a.P, b.P);
}

TEST(FullIsometry, Errors) {
  EXPECT_THROW(full_isometry_to_standard(DiagForm{1, 1, 1, 1, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(full_isometry_to_standard(DiagForm{1, 1, 1, 1, 1, 3, -1}), std::invalid_argument);
  EXPECT_THROW(full_isometry_to_standard(DiagForm{-1}), std::invalid_argument);
}

TEST(CongruenceBound, Conventions) {
  auto b = congruence_index_bound(Int(40));
  EXPECT_NEAR(b.log10_S42, 42 * std::log10(40.0), 1e-9);
  EXPECT_NEAR(b.log10_level42, 84 * std::log10(40.0), 1e-9);
  EXPECT_THROW(congruence_index_bound(Int(0)), std::invalid_argument);
}
