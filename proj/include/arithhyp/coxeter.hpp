#pragma once

// Hyperboloid-model geometry of the 7-facet Coxeter simplex in H^6 and the
// constants built from it.  All reals are 50-digit binary floats.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace arithhyp {

using Real = boost::multiprecision::cpp_bin_float_50;
using RVec = std::vector<Real>;
using RMat = std::vector<RVec>;

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real acosh_r(const Real& x) {
  if (x < 1) throw std::domain_error("acosh argument below 1");
  return log(x + sqrt(x * x - 1));
}

// sum_{i<n} x_i y_i - x_n y_n
inline Real lorentz_product(const RVec& x, const RVec& y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("lorentz_product: dimension mismatch");
  Real s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * y[i];
  return s - x.back() * y.back();
}

inline RMat lorentz_J(std::size_t dim) {
  RMat J(dim, RVec(dim, Real(0)));
  for (std::size_t i = 0; i < dim; ++i) J[i][i] = 1;
  J[dim - 1][dim - 1] = -1;
  return J;
}

inline RMat mat_mul(const RMat& a, const RMat& b) {
  RMat c(a.size(), RVec(b[0].size(), Real(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline RMat transpose(const RMat& a) {
  RMat t(a[0].size(), RVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Real max_abs_diff(const RMat& a, const RMat& b) {
  Real m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, Real(abs(a[i][j] - b[i][j])));
  return m;
}

// vertex labels 1..n; edge label 3 -> -1/2, 4 -> -1/sqrt 2, absent -> 0
inline RMat gram_from_diagram(std::size_t n, const std::map<std::pair<int, int>, int>& labels) {
  RMat A(n, RVec(n, Real(0)));
  for (std::size_t i = 0; i < n; ++i) A[i][i] = 1;
  for (auto& [e, m] : labels) {
    auto [i, j] = e;
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n || i == j)
      throw std::invalid_argument("bad diagram edge");
    Real v;
    if (m == 3)
      v = Real(-1) / 2;
    else if (m == 4)
      v = -1 / sqrt(Real(2));
    else
      throw std::invalid_argument("edge labels must be 3 or 4");
    A[i - 1][j - 1] = A[j - 1][i - 1] = v;
  }
  return A;
}

inline RMat simplex_gram() {
  return gram_from_diagram(7, {{{1, 2}, 3}, {{2, 4}, 3}, {{3, 4}, 3}, {{4, 5}, 3}, {{5, 6}, 3}, {{6, 7}, 4}});
}

// Gram-Schmidt on the standard basis for the form A: upper-triangular C with
// positive diagonal and C^t A C = J.  Requires the leading n x n block of A to be
// positive definite and det A < 0.
inline RMat lorentz_gram_factor(const RMat& A) {
  const std::size_t dim = A.size();
  auto form = [&](const RVec& u, const RVec& v) {
    Real s = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) s += u[i] * A[i][j] * v[j];
    return s;
  };
  std::vector<RVec> cols;
  std::vector<Real> norms;
  const Real tiny = Real(1e-40);
  for (std::size_t k = 0; k < dim; ++k) {
    RVec c(dim, Real(0));
    c[k] = 1;
    RVec ek = c;
    for (std::size_t j = 0; j < k; ++j) {
      Real f = form(ek, cols[j]) / norms[j];
      for (std::size_t i = 0; i < dim; ++i) c[i] -= f * cols[j][i];
    }
    Real q = form(c, c);
    const bool last = k + 1 == dim;
    if ((!last && q <= tiny) || (last && q >= -tiny))
      throw std::invalid_argument("lorentz_gram_factor: matrix does not have signature (n,1)");
    Real s = sqrt(abs(q));
    for (auto& t : c) t /= s;
    cols.push_back(c);
    norms.push_back(last ? Real(-1) : Real(1));
  }
  RMat C(dim, RVec(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) C[i][j] = cols[j][i];
  return C;
}

inline RMat upper_triangular_inverse(const RMat& U) {
  const std::size_t n = U.size();
  RMat X(n, RVec(n, Real(0)));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t ii = n; ii-- > 0;) {
      Real s = ii == j ? Real(1) : Real(0);
      for (std::size_t k = ii + 1; k < n; ++k) s -= U[ii][k] * X[k][j];
      X[ii][j] = s / U[ii][ii];
    }
  }
  return X;
}

struct CoxeterSimplex {
  RMat gram;
  RMat C;        // C^t A C = J
  RMat normals;  // C^{-1}; columns v_i with v_i o v_j = A_ij
  std::vector<RVec> vertices;  // x_1 (ideal, scaled) .. x_7
  RVec normal(std::size_t i) const {
    RVec v;
    for (auto& row : normals) v.push_back(row[i]);
    return v;
  }
};

// x_i o v_j = 0 for j != i.  Finite vertices are normalised to x o x = -1 with
// positive last entry; the ideal vertex x_1 is scaled so the largest x_j o x_1
// (j >= 2) equals -1.
inline CoxeterSimplex build_simplex(const RMat& A) {
  CoxeterSimplex s;
  s.gram = A;
  s.C = lorentz_gram_factor(A);
  s.normals = upper_triangular_inverse(s.C);
  const std::size_t dim = A.size();
  const Real tol = Real(1e-30);
  for (std::size_t i = 0; i < dim; ++i) {
    RVec x(s.C[i]);
    x.back() = -x.back();  // J times row i of C
    Real q = lorentz_product(x, x);
    if (q < -tol) {
      Real f = 1 / sqrt(-q);
      for (auto& t : x) t *= f;
    } else if (q > tol) {
      throw std::logic_error("simplex vertex is space-like");
    }
    if (x.back() < 0)
      for (auto& t : x) t = -t;
    s.vertices.push_back(x);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (abs(lorentz_product(s.vertices[i], s.vertices[i])) > tol) continue;
    Real best = -1e30;
    for (std::size_t j = 0; j < dim; ++j)
      if (j != i) best = std::max(best, Real(lorentz_product(s.vertices[j], s.vertices[i])));
    if (best >= 0) throw std::logic_error("ideal vertex normalisation failed");
    for (auto& t : s.vertices[i]) t /= -best;
  }
  return s;
}

inline bool horoball_contains(const RVec& b, const RVec& y, const Real& tol = Real(1e-12)) {
  return lorentz_product(y, b) >= -1 - tol;
}

// gamma(t) = e^{-t} x - (sinh t / (x o b)) b, stopped at t* = ln(-(x o b))
inline RVec project_to_horosphere(const RVec& x, const RVec& b, const Real& tol = Real(1e-12)) {
  Real s = lorentz_product(x, b);
  if (s > -1 + tol) {
    if (s >= -1 - tol && s <= -1 + tol) return x;
    throw std::invalid_argument("point lies inside the horoball");
  }
  Real t = log(-s);
  RVec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = exp(-t) * x[i] - (sinh(t) / s) * b[i];
  return g;
}

inline Real hyp_distance(const RVec& x, const RVec& y, const Real& tol = Real(1e-12)) {
  Real c = -lorentz_product(x, y);
  if (c < 1 - tol) throw std::invalid_argument("hyp_distance: points not on the hyperboloid");
  return c <= 1 ? Real(0) : acosh_r(c);
}

// Euclidean length in the horosphere of a chord of hyperbolic length d
inline Real horosphere_chord(const Real& d) { return 2 * sinh(d / 2); }

inline Real slice_radius_from_height(const Real& h) {
  if (h < 0) throw std::invalid_argument("height must be non-negative");
  return acosh_r(exp(h));
}

// hyperbolic distance from the origin of the ball model to a point at Euclidean norm rho
inline Real ball_model_radius(const Real& rho) {
  if (rho < 0 || rho >= 1) throw std::invalid_argument("rho must lie in [0,1)");
  return acosh_r(1 + 2 * rho * rho / (1 - rho * rho));
}

inline Real spherical_inradius(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return acos(sqrt(Real(n)) / sqrt(Real(n + 1)));
}

inline Real spherical_barycenter_distance(unsigned n, unsigned k) {
  if (k >= n) throw std::invalid_argument("need 0 <= k < n");
  return acos(sqrt(Real(k + 1)) / sqrt(Real(n + 1)));
}

inline Real unit_ball_volume(unsigned n) {
  return pow(real_pi(), Real(n) / 2) / boost::multiprecision::tgamma(Real(n) / 2 + 1);
}

inline Real tube_volume(unsigned n, const Real& R, const Real& ell) {
  if (R < 0 || ell < 0) throw std::invalid_argument("tube_volume needs R, l >= 0");
  return unit_ball_volume(n) * pow(sinh(R), n) * ell;
}

// p(x) = x^5/5 - 2x^3/3 + x - 8/15, so that pi^3 p(cosh r) is the volume of an
// H^6 ball of radius r
inline Real p_poly(const Real& x) {
  Real x2 = x * x;
  return x * x2 * x2 / 5 - 2 * x * x2 / 3 + x - Real(8) / 15;
}

inline Real ball_volume_h6(const Real& r) {
  if (r < 0) throw std::invalid_argument("radius must be non-negative");
  return pow(real_pi(), 3) * p_poly(cosh(r));
}

template <class F>
inline Real bisect_increasing(F f, Real lo, Real hi, const Real& target) {
  while (f(hi) < target) hi *= 2;
  for (int it = 0; it < 400; ++it) {
    Real mid = (lo + hi) / 2;
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

enum class RmaxMode { paper_h6, dim3 };

// cosh r_max bound: p^{-1}(vol) in paper_h6 mode, or cosh r with pi(sinh 2r - 2r) = vol
inline Real rmax_bound_from_volume(const Real& vol, RmaxMode mode = RmaxMode::paper_h6) {
  if (vol <= 0) throw std::invalid_argument("volume must be positive");
  if (mode == RmaxMode::paper_h6) return bisect_increasing(p_poly, Real(1), Real(2), vol);
  Real r = bisect_increasing([](const Real& t) { return real_pi() * (sinh(2 * t) - 2 * t); }, Real(0), Real(1), vol);
  return cosh(r);
}

// (2 v_n(1) / V_core) sinh^n(R + d_core)
inline Real rf_growth_constant(unsigned n, const Real& V_core, const Real& d_core, const Real& R) {
  if (V_core <= 0 || d_core < 0 || R < 0) throw std::invalid_argument("rf_growth_constant: bad arguments");
  return 2 * unit_ball_volume(n) / V_core * pow(sinh(R + d_core), n);
}

struct GeometryConstants {
  unsigned n = 6;
  Real R;
  Real d_max;
  Real sigma_volume;
  std::int64_t group_order = 0;
  Real edge;            // cusp cube edge, from the projected chord
  Real cross_section;   // Euclidean volume of sigma meet the horosphere
  Real V0;              // assembled
  Real V0_closed;       // (2^{2.5} pi^3 - 3^4) / (2^{2.5} 5 3)
  Real v5;              // v_5(1)
  Real cosh_d23;        // cosh d(x_2, x_3')
};

inline CoxeterSimplex p6_simplex() { return build_simplex(simplex_gram()); }

inline GeometryConstants p6_constants(const CoxeterSimplex& s) {
  GeometryConstants g;
  const Real pi = real_pi();
  g.R = log(sqrt(Real(7)) + sqrt(Real(6)));
  // d_max = acosh of the largest -x_7 o x_i over finite vertices
  Real worst = 0;
  for (std::size_t i = 1; i < 7; ++i) worst = std::max(worst, Real(-lorentz_product(s.vertices[6], s.vertices[i])));
  g.d_max = acosh_r(worst);
  g.sigma_volume = pow(pi, 3) / 777600;
  g.group_order = 128 * 81 * 5;
  const RVec& b = s.vertices[0];
  RVec x3p = project_to_horosphere(s.vertices[2], b);
  g.cosh_d23 = -lorentz_product(s.vertices[1], x3p);
  g.edge = horosphere_chord(hyp_distance(s.vertices[1], x3p));
  // sigma' is the double of a fundamental simplex of the 5-cube (2^5 5! flags)
  g.cross_section = pow(g.edge, 5) * 2 / (32 * 120);
  g.V0 = Real(g.group_order) * (g.sigma_volume - g.cross_section / 5);
  Real s25 = pow(Real(2), Real(2.5));
  g.V0_closed = (s25 * pow(pi, 3) - 81) / (s25 * 15);
  g.v5 = unit_ball_volume(5);
  return g;
}

enum class KMode { paper_h6, dim3 };

struct KResult {
  Real log10_K;
  Real sinh_arg;
  Real cosh_rmax;
};

// log10 of 2^7 3^4 5 C D vol^eps (v_5(1)/V_0) sinh^5(2(2R + d_max + ln cosh r_max))
inline KResult effective_K(const GeometryConstants& g, const Real& vol, const Real& eps, const Real& log10_C,
                           const Real& log10_D, KMode mode = KMode::paper_h6) {
  if (vol <= 0) throw std::invalid_argument("volume must be positive");
  KResult k;
  k.cosh_rmax = rmax_bound_from_volume(vol, mode == KMode::paper_h6 ? RmaxMode::paper_h6 : RmaxMode::dim3);
  k.sinh_arg = 2 * (2 * g.R + g.d_max + log(k.cosh_rmax));
  const Real x = k.sinh_arg;
  // ln sinh x = x + ln(1 - e^{-2x}) - ln 2
  Real ln_sinh = x + log(1 - exp(-2 * x)) - log(Real(2));
  k.log10_K = log10(Real(g.group_order)) + log10_C + log10_D + eps * log10(vol) + log10(g.v5 / g.V0) +
              5 * ln_sinh / log(Real(10));
  return k;
}

}  // namespace arithhyp
