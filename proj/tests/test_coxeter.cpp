#include <gtest/gtest.h>

#include "arithhyp/coxeter.hpp"
#include "k_oracle.hpp"

using namespace arithhyp;

namespace {

const Real kTol("1e-12");

Real s(int n) { return sqrt(Real(n)); }
Real sq(int a, int b) { return sqrt(Real(a) / b); }

// the published vertex list, x_1 at t = 1
std::vector<RVec> reference_vertices() {
  RVec x2{0, -1 / s(3), 0, -2 / s(15), -sq(2, 5), -sq(2, 3), 2 * sq(2, 3)};
  RVec x1 = x2;
  x1[0] = -1;
  return {x1,
          x2,
          {0, 0, -1 / s(2), -sq(3, 10), -3 / (2 * s(5)), -s(3) / 2, s(3)},
          {0, 0, 0, -1 / s(5), -sq(3, 10), -1 / s(2), s(2)},
          {0, 0, 0, 0, Real(-0.5), -sq(5, 3) / 2, sq(5, 3)},
          {0, 0, 0, 0, 0, -1 / s(3), 2 / s(3)},
          {0, 0, 0, 0, 0, 0, 1}};
}

Real lorentz(const RVec& x, const RVec& y) {
  Real r = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) r += x[i] * y[i];
  return r - x.back() * y.back();
}

}  // namespace

TEST(Gram, FromDiagram) {
  auto A = simplex_gram();
  ASSERT_EQ(A.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(A[i][i], 1);
  EXPECT_LT(abs(A[0][1] + Real(0.5)), kTol);
  EXPECT_LT(abs(A[1][3] + Real(0.5)), kTol);
  EXPECT_LT(abs(A[5][6] + 1 / s(2)), kTol);
  EXPECT_EQ(A[0][2], 0);
  EXPECT_EQ(A[1][2], 0);
  EXPECT_THROW(gram_from_diagram(3, {{{0, 5}, 3}}), std::invalid_argument);
}

TEST(Factor, ResidualAndShape) {
  auto A = simplex_gram();
  auto C = lorentz_gram_factor(A);
  auto R = mat_mul(mat_mul(transpose(C), A), C);
  EXPECT_LT(max_abs_diff(R, lorentz_J(7)), kTol);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(C[i][j], 0);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_GT(C[i][i], 0);
}

TEST(Simplex, NormalsReproduceDisplayedEntries) {
  auto S = p6_simplex();
  const auto& N = S.normals;
  // v_i o v_j = A_ij
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) EXPECT_LT(abs(lorentz(S.normal(i), S.normal(j)) - S.gram[i][j]), kTol);
  EXPECT_LT(abs(N[1][1] - s(3) / 2), kTol);
  EXPECT_LT(abs(N[1][3] + 1 / s(3)), kTol);
  EXPECT_LT(abs(N[3][3] - sq(5, 3) / 2), kTol);
  EXPECT_LT(abs(N[3][4] + sq(3, 5)), kTol);
  EXPECT_LT(abs(N[4][4] - sq(2, 5)), kTol);
  EXPECT_LT(abs(N[4][5] + sq(5, 2) / 2), kTol);
  EXPECT_LT(abs(N[5][5] - sq(3, 2) / 2), kTol);
  EXPECT_LT(abs(N[5][6] + 2 / s(3)), kTol);
  EXPECT_LT(abs(N[6][6] - 1 / s(3)), kTol);
}

TEST(Simplex, VerticesMatchReference) {
  auto S = p6_simplex();
  auto ref = reference_vertices();
  Real t = S.vertices[0][0] / ref[0][0];
  EXPECT_LT(abs(t - 1), kTol);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t k = 0; k < 7; ++k) {
      Real want = i == 0 ? Real(t * ref[i][k]) : ref[i][k];
      EXPECT_LT(abs(S.vertices[i][k] - want), kTol) << i << "," << k;
    }
}

TEST(Simplex, IncidenceAndNormalisation) {
  auto S = p6_simplex();
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j)
      if (i != j) EXPECT_LT(abs(lorentz(S.vertices[i], S.normal(j))), kTol);
    if (i >= 1) EXPECT_LT(abs(lorentz(S.vertices[i], S.vertices[i]) + 1), kTol);
  }
  EXPECT_LT(abs(lorentz(S.vertices[0], S.vertices[0])), kTol);
}

TEST(Horoball, ReferenceFacts) {
  auto S = p6_simplex();
  const auto& x = S.vertices;
  Real best = -1e9;
  for (std::size_t j = 1; j < 7; ++j) best = std::max(best, lorentz(x[j], x[0]));
  EXPECT_LT(abs(best + 1), kTol);
  EXPECT_LT(abs(lorentz(x[1], x[0]) + 1), kTol);
  EXPECT_LT(abs(lorentz(x[1], x[2]) + s(2)), kTol);
  EXPECT_LT(abs(lorentz(x[6], x[2]) + s(3)), kTol);
  EXPECT_TRUE(horoball_contains(x[0], x[1]));
  auto x3p = project_to_horosphere(x[2], x[0]);
  EXPECT_LT(abs(lorentz(x3p, x[0]) + 1), kTol);
  EXPECT_LT(abs(lorentz(x3p, x3p) + 1), kTol);
  Real d = hyp_distance(x[1], x3p);
  EXPECT_LT(abs(cosh(d) - Real(5) / 4), kTol);
  EXPECT_LT(abs(horosphere_chord(d) - 1 / s(2)), kTol);
}

TEST(Distance, Basics) {
  auto S = p6_simplex();
  const auto& x = S.vertices;
  EXPECT_LT(hyp_distance(x[3], x[3]), kTol);
  EXPECT_EQ(hyp_distance(x[2], x[5]), hyp_distance(x[5], x[2]));
  RVec bad{0, 0, 0, 0, 0, 0, Real("0.5")};
  EXPECT_THROW(hyp_distance(bad, bad), std::invalid_argument);
}

TEST(Constants, Values) {
  auto g = p6_constants(p6_simplex());
  EXPECT_LT(abs(g.R - log(s(7) + s(6))), kTol);
  EXPECT_LT(abs(g.d_max - acosh_r(s(3))), kTol);
  EXPECT_LT(abs(g.d_max - Real("1.146215834780588")), Real("1e-14"));
  EXPECT_LT(abs(g.sigma_volume - pow(real_pi(), 3) / 777600), kTol);
  EXPECT_EQ(g.group_order, 51840);
  EXPECT_LT(abs(g.edge - 1 / s(2)), kTol);
  EXPECT_LT(abs(g.cross_section - 1 / (pow(Real(2), Real("9.5")) * 15)), kTol);
  EXPECT_LT(abs(g.V0 - g.V0_closed), kTol);
  EXPECT_LT(abs(g.V0 - Real("1.1124909574181488538")), kTol);
  EXPECT_LT(abs(g.v5 - 8 * real_pi() * real_pi() / 15), kTol);
}

TEST(Slice, BallModelAgreement) {
  EXPECT_EQ(slice_radius_from_height(0), 0);
  EXPECT_LT(abs(slice_radius_from_height(log(Real(2))) - acosh_r(Real(2))), kTol);
  EXPECT_THROW(slice_radius_from_height(-1), std::invalid_argument);
  for (int i = 0; i < 50; ++i) {
    Real r = Real("0.5") + Real(i) * Real("0.499") / 49;
    Real h = log(r / (1 - r));
    Real rho = sqrt(2 * r - 1);
    // hyperbolic distance from 0 to rho in the ball: acosh(1 + 2 rho^2 / (1 - rho^2))
    Real want = acosh_r(1 + 2 * rho * rho / (1 - rho * rho));
    EXPECT_LT(abs(slice_radius_from_height(h) - want), Real("1e-12")) << i;
    EXPECT_LT(abs(ball_model_radius(rho) - want), kTol);
  }
}

TEST(Spherical, BarycenterDistances) {
  EXPECT_LT(abs(spherical_inradius(1) - real_pi() / 4), kTol);
  for (unsigned n = 1; n <= 8; ++n) {
    EXPECT_LT(abs(spherical_inradius(n) - spherical_barycenter_distance(n, n - 1)), kTol);
    RVec vn(n + 1, 1 / sqrt(Real(n + 1)));
    for (unsigned k = 0; k < n; ++k) {
      RVec vk(n + 1, 0);
      for (unsigned i = 0; i <= k; ++i) vk[i] = 1 / sqrt(Real(k + 1));
      Real dot = 0;
      for (unsigned i = 0; i <= n; ++i) dot += vn[i] * vk[i];
      EXPECT_LT(abs(spherical_barycenter_distance(n, k) - acos(dot)), Real("1e-14")) << n << " " << k;
    }
  }
  EXPECT_THROW(spherical_barycenter_distance(3, 3), std::invalid_argument);
}

TEST(Volumes, BallsAndTubes) {
  EXPECT_LT(abs(unit_ball_volume(2) - real_pi()), kTol);
  EXPECT_LT(abs(unit_ball_volume(3) - 4 * real_pi() / 3), kTol);
  EXPECT_EQ(tube_volume(5, Real(1), Real(0)), 0);
  EXPECT_LT(abs(tube_volume(2, Real(1), Real(3)) - real_pi() * pow(sinh(Real(1)), 2) * 3), kTol);
  EXPECT_LT(abs(p_poly(Real(1))), Real("1e-40"));
  EXPECT_LT(abs(ball_volume_h6(Real(0))), Real("1e-40"));
  // pi^3 int_0^r sinh^5, by Simpson
  Real r("1.3"), acc = 0;
  const int M = 2000;
  for (int i = 0; i <= M; ++i) {
    Real t = r * i / M;
    Real w = (i == 0 || i == M) ? 1 : (i % 2 ? 4 : 2);
    acc += w * pow(sinh(t), 5);
  }
  acc *= r / (3 * M) * pow(real_pi(), 3);
  EXPECT_LT(abs(ball_volume_h6(r) - acc), Real("1e-10"));
  Real prev = -1;
  for (int i = 0; i < 50; ++i) {
    Real v = p_poly(1 + Real(i) / 10);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Rmax, Modes) {
  Real vol = 4 * boost::math::constants::catalan<Real>();
  Real x = rmax_bound_from_volume(vol);
  EXPECT_LT(abs(p_poly(x) - vol), Real("1e-30"));
  EXPECT_LT(abs(x - Real("2.1087622746449365665")), Real("1e-15"));
  Real c3 = rmax_bound_from_volume(vol, RmaxMode::dim3);
  Real r3 = acosh_r(c3);
  EXPECT_LT(abs(real_pi() * (sinh(2 * r3) - 2 * r3) - vol), Real("1e-20"));
  EXPECT_THROW(rmax_bound_from_volume(Real(0)), std::invalid_argument);
}

TEST(Growth, Formula) {
  EXPECT_EQ(rf_growth_constant(5, Real(1), Real(0), Real(0)), 0);
  Real a = rf_growth_constant(5, Real(2), Real("0.3"), Real("1.1"));
  Real b = rf_growth_constant(5, Real(4), Real("0.3"), Real("1.1"));
  EXPECT_LT(abs(a - 2 * b), kTol);
  EXPECT_THROW(rf_growth_constant(5, Real(0), Real(0), Real(1)), std::invalid_argument);
}

TEST(K, MatchesMpfrOracleOnPreset) {
  auto g = p6_constants(p6_simplex());
  auto vs = oracle::four_catalan();
  Real vol(vs);
  auto k = effective_K(g, vol, Real(1), log10(Real(16)) - log10(vol), 84 * log10(Real(40)));
  auto o = oracle::k_oracle(vs, oracle::m306_log10_CD());
  double got = k.log10_K.convert_to<double>();
  EXPECT_LT(std::abs(got - o.log10_K) / o.log10_K, 1e-9);
  EXPECT_NEAR(k.sinh_arg.convert_to<double>(), o.sinh_arg, 1e-12);
}

TEST(K, UnitInputsAndMonotone) {
  auto g = p6_constants(p6_simplex());
  auto k = effective_K(g, Real(1), Real(1), Real(0), Real(0));
  auto o = oracle::k_oracle("1", "0");
  EXPECT_LT(std::abs(k.log10_K.convert_to<double>() - o.log10_K), 1e-9 * std::abs(o.log10_K));
  Real prev = -1e9;
  for (int i = 1; i <= 20; ++i) {
    auto kk = effective_K(g, Real(i) / 2, Real("0.5"), Real(3), Real(7));
    EXPECT_GT(kk.log10_K, prev);
    prev = kk.log10_K;
  }
  EXPECT_THROW(effective_K(g, Real(0), Real(1), Real(0), Real(0)), std::invalid_argument);
}

TEST(Determinism, RepeatedEvaluation) {
  auto a = p6_constants(p6_simplex()), b = p6_constants(p6_simplex());
  EXPECT_EQ(a.V0.str(50), b.V0.str(50));
  EXPECT_EQ(a.d_max.str(50), b.d_max.str(50));
}
