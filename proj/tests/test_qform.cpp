#include <gtest/gtest.h>

#include "arithhyp/qform.hpp"
#include "oracles.hpp"

using namespace arithhyp;

namespace {

Int rand_nonzero(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  int v = 0;
  while (v == 0) v = d(rng);
  return Int(v);
}

DiagForm diag_of(const std::vector<Rational>& d) { return DiagForm(d); }

}  // namespace

TEST(Hilbert, AgreesWithLocalFormulas) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 3000; ++i) {
    Int a = rand_nonzero(rng, -200, 200), b = rand_nonzero(rng, -200, 200);
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 97LL, 199LL}) {
      Place v = p == 0 ? Place::infinity() : Place::prime(Int(p));
      ASSERT_EQ(hilbert_symbol(Rational(a), Rational(b), v), oracle::hilbert(a, b, p)) << a << "," << b << " at " << p;
    }
  }
}

TEST(Hilbert, KnownValues) {
  EXPECT_EQ(hilbert_symbol(Rational(-1), Rational(-1), Place::prime(Int(2))), -1);
  EXPECT_EQ(hilbert_symbol(Rational(-1), Rational(-1), Place::infinity()), -1);
  EXPECT_EQ(hilbert_symbol(Rational(2), Rational(5), Place::prime(Int(5))), -1);
  EXPECT_EQ(hilbert_symbol(Rational(3, 4), Rational(7), Place::prime(Int(7))), hilbert_symbol(Rational(3), Rational(7), Place::prime(Int(7))));
  EXPECT_THROW(hilbert_symbol(Rational(0), Rational(1), Place::prime(Int(3))), std::invalid_argument);
  EXPECT_THROW(Place::prime(Int(9)), std::invalid_argument);
}

TEST(Hilbert, Reciprocity) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 500; ++i) {
    Int a = rand_nonzero(rng, -50, 50), b = rand_nonzero(rng, -50, 50);
    DiagForm f{a.convert_to<long long>(), b.convert_to<long long>()};
    int prod = 1;
    for (auto& v : relevant_places(f)) prod *= hilbert_symbol(Rational(a), Rational(b), v);
    ASSERT_EQ(prod, 1) << a << "," << b;
  }
}

TEST(Hilbert, Bimultiplicative) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    Int a = rand_nonzero(rng, -60, 60), a2 = rand_nonzero(rng, -60, 60), b = rand_nonzero(rng, -60, 60);
    for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL, 29LL, 59LL}) {
      Place v = p == 0 ? Place::infinity() : Place::prime(Int(p));
      ASSERT_EQ(hilbert_symbol(Rational(a * a2), Rational(b), v),
                hilbert_symbol(Rational(a), Rational(b), v) * hilbert_symbol(Rational(a2), Rational(b), v));
    }
  }
}

TEST(HasseWitt, MatchesOracleProduct) {
  DiagForm q{1, 2, 5, -10};
  for (long long p : {0LL, 2LL, 3LL, 5LL, 7LL}) {
    Place v = p == 0 ? Place::infinity() : Place::prime(Int(p));
    EXPECT_EQ(hasse_witt(q, v), oracle::hasse(q.coeffs(), p));
  }
  auto prof = invariant_profile(q);
  std::set<Place> want{Place{Int(2)}, Place{Int(5)}};
  EXPECT_EQ(prof.nontrivial_places(), want);
  EXPECT_EQ(prof.disc_class, -1);
  EXPECT_EQ(prof.signature, (std::pair<std::size_t, std::size_t>{3, 1}));
  EXPECT_TRUE(invariant_profile(DiagForm{1, 1, 1, -7}).nontrivial_places().empty());
}

TEST(HasseWitt, CongruenceInvariance) {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 2 + rng() % 4;
    std::vector<Rational> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(rand_nonzero(rng, -20, 20));
    auto U = oracle::random_unimodular(n, rng);
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) A[i][j] += Rational(U[k][i] * U[k][j]) * c[k];
    auto d = oracle::diagonalize(A);
    auto p1 = invariant_profile(DiagForm(c)), p2 = invariant_profile(DiagForm(d));
    ASSERT_EQ(p1.rank, p2.rank);
    ASSERT_EQ(p1.signature, p2.signature);
    ASSERT_EQ(p1.disc_class, p2.disc_class);
    ASSERT_EQ(p1.nontrivial_places(), p2.nontrivial_places());
    ASSERT_TRUE(is_isometric_Q(DiagForm(c), DiagForm(d)));
  }
}

namespace {

// search q(v) = t with v = x/den, den <= D and |x_i| <= X, in integers
std::optional<std::vector<Rational>> represent_small(const std::vector<Rational>& q, const Rational& t) {
  const std::size_t n = q.size();
  const long long D = n == 2 ? 50 : 8, X = n == 2 ? 50 : 10;
  Int L = den(t);
  for (auto& c : q) L = lcm_int(L, den(c));
  std::vector<long long> Q;
  for (auto& c : q) Q.push_back(num(c * L).convert_to<long long>());
  const long long T = num(t * L).convert_to<long long>();
  for (long long d = 1; d <= D; ++d) {
    std::vector<long long> x(n, -X);
    while (true) {
      __int128 s = 0;
      for (std::size_t i = 0; i < n; ++i) s += (__int128)Q[i] * x[i] * x[i];
      if (s == (__int128)T * d * d) {
        std::vector<Rational> v;
        for (auto xi : x) v.emplace_back(xi, d);
        return v;
      }
      std::size_t k = 0;
      while (k < n && ++x[k] > X) x[k++] = -X;
      if (k == n) break;
    }
  }
  return std::nullopt;
}

// explicit isometry <a,b> -> <c,d>: v with q(v) = c, then its orthogonal line
bool explicit_isometry_rank2(const std::vector<Rational>& q, const std::vector<Rational>& r) {
  if (!is_square(oracle::rat_int(q[0] * q[1] * r[0] * r[1]))) return false;
  return represent_small(q, r[0]).has_value();
}

bool explicit_isometry_rank3(const std::vector<Rational>& q, const std::vector<Rational>& r) {
  auto v = represent_small(q, r[0]);
  if (!v) return false;
  // orthogonal complement of v under diag(q), diagonalized
  std::vector<std::vector<Rational>> basis;
  std::size_t piv = 0;
  while ((*v)[piv] == 0) ++piv;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == piv) continue;
    std::vector<Rational> w(3, 0);
    w[j] = q[piv] * (*v)[piv];
    w[piv] = -q[j] * (*v)[j];
    basis.push_back(w);
  }
  std::vector<std::vector<Rational>> G(2, std::vector<Rational>(2, 0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) G[i][j] += q[k] * basis[i][k] * basis[j][k];
  auto d = oracle::diagonalize(G);
  return explicit_isometry_rank2(d, {r[1], r[2]});
}

}  // namespace

TEST(Isometric, AgreesWithExplicitSearchRank2) {
  int found = 0;
  for (long long a = -10; a <= 10; ++a)
    for (long long b = a; b <= 10; ++b)
      for (long long c = -10; c <= 10; c += 3)
        for (long long d = -9; d <= 10; d += 4) {
          if (!a || !b || !c || !d) continue;
          std::vector<Rational> q{a, b}, r{c, d};
          bool hm = is_isometric_Q(DiagForm(q), DiagForm(r));
          if (explicit_isometry_rank2(q, r)) {
            ++found;
            ASSERT_TRUE(hm) << a << "," << b << " vs " << c << "," << d;
          }
          if (hm) ASSERT_EQ(DiagForm(q).disc_class(), DiagForm(r).disc_class());
        }
  EXPECT_GT(found, 50);
}

TEST(Isometric, AgreesWithExplicitSearchRank3) {
  std::mt19937_64 rng(25);
  int found = 0;
  for (int it = 0; it < 150; ++it) {
    std::vector<Rational> q, r;
    for (int i = 0; i < 3; ++i) q.emplace_back(rand_nonzero(rng, -10, 10));
    // r shares the discriminant class of q half the time
    for (int i = 0; i < 2; ++i) r.emplace_back(rand_nonzero(rng, -10, 10));
    if (rng() % 2) r.push_back(q[0] * q[1] * q[2] / (r[0] * r[1]));
    else r.emplace_back(rand_nonzero(rng, -10, 10));
    {
      bool hm = is_isometric_Q(DiagForm(q), DiagForm(r));
      if (explicit_isometry_rank3(q, r)) {
        ++found;
        ASSERT_TRUE(hm);
      }
    }
  }
  EXPECT_GT(found, 5);
}

TEST(Isometric, Examples) {
  EXPECT_TRUE(is_isometric_Q(DiagForm{1, 1}, DiagForm{2, 2}));
  EXPECT_FALSE(is_isometric_Q(DiagForm{1, 1}, DiagForm{3, 3}));
  EXPECT_TRUE(is_isometric_Q(DiagForm{1, 1, 7, 1, 1, 1, -7}, DiagForm::standard(6, 1)));
  EXPECT_FALSE(is_isometric_Q(DiagForm{1, 1, -1}, DiagForm{1, -1, -1}));
  auto l = is_similar(DiagForm{2, 2, 2, -2}, DiagForm{1, 1, 1, -1});
  ASSERT_TRUE(l.has_value());
  EXPECT_TRUE(is_isometric_Q(DiagForm{1, 1, 1, -1}.scaled(Rational(*l)), DiagForm{2, 2, 2, -2}));
}

TEST(Isotropy, CasselsBoxSearch) {
  std::mt19937_64 rng(26);
  int iso = 0, aniso = 0;
  for (int it = 0; it < 120; ++it) {
    std::size_t n = 2 + rng() % 2;
    std::vector<long long> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(rand_nonzero(rng, -15, 15).convert_to<long long>());
    std::vector<Rational> c(a.begin(), a.end());
    bool want = oracle::has_zero_in_box(a, oracle::cassels_box(a));
    ASSERT_EQ(is_isotropic_Q(DiagForm(c)), want);
    (want ? iso : aniso)++;
  }
  EXPECT_GT(iso, 10);
  EXPECT_GT(aniso, 10);
}

TEST(Isotropy, Examples) {
  EXPECT_FALSE(is_isotropic_Q(DiagForm{1, 2, 5, -10}));
  EXPECT_FALSE(is_isotropic_Q(DiagForm{1, 1, 1, -7}));
  EXPECT_TRUE(is_isotropic_Q(DiagForm{1, 1, 1, -1}));
  EXPECT_TRUE(is_isotropic_Q(DiagForm{1, 1, 1, 1, -7}));
  EXPECT_FALSE(is_isotropic_Q(DiagForm{1, 1, 1, 1, 1}));
  EXPECT_TRUE(is_isotropic_Q(DiagForm{3, 5, -7}) == oracle::has_zero_in_box({3, 5, -7}, 45));
  EXPECT_THROW(is_isotropic_Q(DiagForm{1}), std::invalid_argument);
}

TEST(DiagFormBasics, ParseAndErrors) {
  auto q = parse_form("1, 2/3, -5");
  EXPECT_EQ(q.rank(), 3u);
  EXPECT_EQ(q[1], Rational(2, 3));
  EXPECT_THROW(parse_form("1,0,2"), std::invalid_argument);
  EXPECT_THROW(parse_form(""), std::invalid_argument);
  EXPECT_THROW(parse_form("1,x"), std::invalid_argument);
  EXPECT_EQ(diag_of({Rational(2, 3), Rational(6)}).primitive_integral(), (DiagForm{1, 9}));
}
