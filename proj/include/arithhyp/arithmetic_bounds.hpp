#pragma once

#include "arithhyp/qform.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace arithhyp {

enum class Splitting { split, inert, ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    default: return "ramified";
  }
}

struct ImagQuadField {
  Int d;     // squarefree, positive
  Int disc;  // -d or -4d
  Int d_k;   // |disc|
  long h_k = 0;
  int omega_dk = 0;
  double zeta2 = 0;  // zeta_k(2)
};

// zeta_k(2) = zeta(2) L(2, chi_disc).  chi is real, odd and primitive with root
// number 1, so the theta functional equation gives, with x_n = pi n^2 / d_k,
//   L(2, chi) = sum chi(n) [ G(3/2, x_n) / (G(3/2) n^2) + n E1(x_n) (pi/d_k)^{3/2} / G(3/2) ],
// G(3/2, x) = sqrt(x) e^{-x} + sqrt(pi)/2 erfc(sqrt x).  Terms fall like e^{-x_n}, so
// about sqrt(d_k ln(1/tol)) of them suffice.
inline double zeta_k_2(const Int& disc, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (disc >= 0) throw std::invalid_argument("expected a negative discriminant");
  {
    const Int r = mod_nonneg(disc, Int(4));
    const Int m = r == 0 ? Int(disc / 4) : disc;
    const Int mr = mod_nonneg(m, Int(4));
    bool fundamental = squarefree_int(m) == m && (r == 1 || (r == 0 && (mr == 2 || mr == 3)));
    if (!fundamental) throw std::invalid_argument("not a fundamental discriminant: " + disc.str());
  }
  using LD = long double;
  const LD pi = boost::math::constants::pi<LD>();
  const LD k = abs_int(disc).convert_to<LD>();
  const LD g32 = std::sqrt(pi) / 2;
  const LD scale = std::pow(pi / k, LD(1.5)) / g32;
  const LD x_max = -std::log(static_cast<LD>(tol)) + 25;
  const long N = static_cast<long>(std::ceil(std::sqrt(x_max * k / pi)));
  LD s = 0;
  for (long n = N; n >= 1; --n) {  // small terms first
    int c = kronecker_symbol(disc, Int(n));
    if (!c) continue;
    const LD x = pi * n * n / k;
    const LD rx = std::sqrt(x);
    const LD g = rx * std::exp(-x) + g32 * std::erfc(rx);
    const LD e1 = boost::math::expint(1, x);
    s += c * (g / (g32 * n * n) + n * e1 * scale);
  }
  return static_cast<double>(pi * pi / 6 * s);
}

// reduced primitive forms (a, b, c), b^2 - 4ac = disc, |b| <= a <= c, b >= 0 on the boundary
inline long class_number(const Int& disc) {
  if (disc >= 0 || mod_nonneg(disc, Int(4)) > 1) throw std::invalid_argument("not a negative discriminant");
  const long D = disc.convert_to<long>();
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long t = b * b - D;
      if (t % (4 * a)) continue;
      long c = t / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

inline ImagQuadField make_field(const Int& d_in, double tol = 1e-12) {
  if (d_in <= 0) throw std::invalid_argument("d must be positive");
  ImagQuadField K;
  K.d = squarefree_int(d_in);
  K.disc = mod_nonneg(K.d, Int(4)) == 3 ? Int(-K.d) : Int(-4 * K.d);
  K.d_k = -K.disc;
  K.h_k = class_number(K.disc);
  K.omega_dk = static_cast<int>(prime_divisors(K.d_k).size());
  K.zeta2 = zeta_k_2(K.disc, tol);
  return K;
}

namespace detail {

inline std::vector<Int> form_z(const DiagForm& q) {
  if (q.rank() != 4 || !q.is_integral()) throw std::invalid_argument("expected an integral form <z1,z2,z3,-z4>");
  std::vector<Int> z;
  for (std::size_t i = 0; i < 4; ++i) z.push_back(num(q[i]));
  if (z[0] <= 0 || z[1] <= 0 || z[2] <= 0 || z[3] >= 0)
    throw std::invalid_argument("expected sign pattern <+,+,+,->, got " + q.str());
  z[3] = -z[3];
  return z;
}

}  // namespace detail

struct FieldFromForm {
  Int d_raw;
  ImagQuadField field;
};

inline FieldFromForm field_from_form(const DiagForm& q, double tol = 1e-12) {
  auto z = detail::form_z(q);
  Int d = z[0] * z[1] * z[2] * z[3];
  return {d, make_field(d, tol)};
}

inline Splitting splitting_type(const ImagQuadField& K, const Int& p) {
  if (K.disc % p == 0) return Splitting::ramified;
  return kronecker_symbol(K.disc, p) == 1 ? Splitting::split : Splitting::inert;
}

struct RamifiedPrime {
  Int p;
  int count = 0;  // primes of k over p in Ram_f
  Int norm;
};

struct QuatAlgebra {
  Int a, b;
  ImagQuadField field;
  std::vector<RamifiedPrime> ram_f;
  int r_f = 0;
  std::vector<Int> ram_norms() const {
    std::vector<Int> v;
    for (auto& r : ram_f)
      for (int i = 0; i < r.count; ++i) v.push_back(r.norm);
    return v;
  }
};

// A rational division algebra splits over every quadratic extension of Q_p, so
// only split p with (a,b)_p = -1 contribute, each with both primes above it.
inline std::vector<RamifiedPrime> ramified_primes(const Int& a, const Int& b, const ImagQuadField& K) {
  std::set<Int> ps{Int(2)};
  for (auto& p : prime_divisors(abs_int(a))) ps.insert(p);
  for (auto& p : prime_divisors(abs_int(b))) ps.insert(p);
  std::vector<RamifiedPrime> out;
  for (auto& p : ps) {
    if (hilbert_symbol(Rational(a), Rational(b), Place{p}) == 1) continue;
    if (splitting_type(K, p) != Splitting::split) continue;
    out.push_back({p, 2, p});
  }
  return out;
}

inline QuatAlgebra quaternion_from_form(const DiagForm& q, double tol = 1e-12) {
  auto z = detail::form_z(q);
  QuatAlgebra A;
  A.a = squarefree_int(z[2] * z[3]);
  A.b = squarefree_int(z[1] * z[3]);
  A.field = field_from_form(q, tol).field;
  A.ram_f = ramified_primes(A.a, A.b, A.field);
  for (auto& r : A.ram_f) A.r_f += r.count;
  return A;
}

// prime ideal norms of k up to `bound`, ascending
inline std::vector<Int> prime_ideal_norms(const ImagQuadField& K, const Int& bound) {
  std::vector<Int> out;
  for (Int p(2); p <= bound; p = next_prime_after(p)) {
    switch (splitting_type(K, p)) {
      case Splitting::split: out.push_back(p); out.push_back(p); break;
      case Splitting::ramified: out.push_back(p); break;
      case Splitting::inert:
        if (p * p <= bound) out.push_back(p * p);
        break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double c_prime_eps(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
  return 14.5 + std::pow(2.0, 1.0 / eps + 7.0);
}

inline double c1_eps_log10(const ImagQuadField& K, double eps) {
  return (eps * c_prime_eps(eps) + 2) * std::log10(2.0) + std::log10(121.0) +
         1.5 * std::log10(K.d_k.convert_to<double>());
}

inline double c_eps_log10(const ImagQuadField& K, double eps, double A1) {
  if (!(A1 > 0)) throw std::invalid_argument("A1 must be positive");
  return (eps * c_prime_eps(eps) + 2) * std::log10(2.0) + std::log10(121.0) +
         (A1 * K.omega_dk + 1.5) * std::log10(K.d_k.convert_to<double>());
}

// C_2 = 1 under a type-number-one assertion, else the bound d_k^{omega A1}
inline double c2_log10(const ImagQuadField& K, bool type_number_one, double A1) {
  if (type_number_one) return 0;
  return K.omega_dk * A1 * std::log10(K.d_k.convert_to<double>());
}

struct LevelFactor {
  Int norm;
  unsigned exponent = 1;
};

inline double eichler_covolume(const ImagQuadField& K, const std::vector<Int>& ram_norms,
                               const std::vector<LevelFactor>& level) {
  const double pi = boost::math::constants::pi<double>();
  double v = std::pow(K.d_k.convert_to<double>(), 1.5) * K.zeta2 / (4 * pi * pi);
  for (auto& N : ram_norms) v *= N.convert_to<double>() - 1;
  for (auto& f : level) {
    double N = f.norm.convert_to<double>();
    v *= std::pow(N, f.exponent - 1.0) * (N + 1);
  }
  return v;
}

struct CovolumeParams {
  std::vector<Int> S_norms;
  unsigned m = 0;
  long deg_kA = 1;
};

inline double maximal_covolume(const ImagQuadField& K, const std::vector<Int>& ram_norms, const CovolumeParams& P) {
  if (P.m > P.S_norms.size()) throw std::invalid_argument("m must satisfy 0 <= m <= |S|");
  if (P.deg_kA < 1 || P.deg_kA > K.h_k) throw std::invalid_argument("[k_A:k] must lie in [1, h_k]");
  const double pi = boost::math::constants::pi<double>();
  double v = std::pow(K.d_k.convert_to<double>(), 1.5) * K.zeta2 /
             (8 * pi * pi * static_cast<double>(P.deg_kA) * std::pow(2.0, P.m));
  for (auto& N : ram_norms) v *= (N.convert_to<double>() - 1) / 2;
  for (auto& N : P.S_norms) v *= N.convert_to<double>() + 1;
  return v;
}

struct SharpS {
  bool eps_mode = false;
  long max_S = 0;            // V mode: largest admissible |S|
  long small_count = 0;      // eps mode: prime ideals with (N+1)/2 < 2^{1/eps}
  double coefficient = 0;    // V mode: 2^{|S|+r_f+1}[k_A:k]; eps mode: power-of-two part
  double normalization = 1;  // eps mode: (base * P_j)^{-eps}; the coefficient of V^eps is coefficient * normalization
  std::vector<Int> S_norms;  // V mode: the greedy S
};

namespace detail {

inline std::vector<Int> available_norms(const ImagQuadField& K, std::vector<Int> ram, const Int& bound) {
  auto all = prime_ideal_norms(K, bound);
  std::vector<Int> out;
  for (auto& N : all) {
    auto it = std::find(ram.begin(), ram.end(), N);
    if (it != ram.end()) {
      ram.erase(it);
      continue;
    }
    out.push_back(N);
  }
  return out;
}

}  // namespace detail

// Largest |S| with base * prod_S (N+1)/2 <= V, S disjoint from Ram_f, and the
// resulting index bound 2^{|S|+r_f+1}[k_A:k].  With eps > 0 instead: the j prime
// ideals with (N+1)/2 < 2^{1/eps} are counted separately and every other one costs
// a factor >= 2^{1/eps}, so |S| <= j + eps log2(V / (base P_j)).
inline SharpS sharp_S_enumeration(const ImagQuadField& K, const std::vector<Int>& ram_norms, double V, long deg_kA,
                                  std::optional<double> eps = std::nullopt) {
  if (!(V > 0)) throw std::invalid_argument("V must be positive");
  const int r_f = static_cast<int>(ram_norms.size());
  const double base = maximal_covolume(K, ram_norms, CovolumeParams{{}, 0, deg_kA});
  SharpS out;
  if (!eps) {
    double prod = base;
    for (Int bound(64);; bound *= 4) {
      auto norms = detail::available_norms(K, ram_norms, bound);
      prod = base;
      out.S_norms.clear();
      bool exceeded = false;
      for (auto& N : norms) {
        double f = (N.convert_to<double>() + 1) / 2;
        if (prod * f > V) {
          exceeded = true;
          break;
        }
        prod *= f;
        out.S_norms.push_back(N);
      }
      if (exceeded) break;
    }
    out.max_S = static_cast<long>(out.S_norms.size());
    out.coefficient = std::ldexp(static_cast<double>(deg_kA), static_cast<int>(out.max_S) + r_f + 1);
    return out;
  }
  if (!(*eps > 0)) throw std::invalid_argument("epsilon must be positive");
  out.eps_mode = true;
  const double threshold = std::pow(2.0, 1.0 / *eps);
  double Pj = 1;
  for (Int bound(64);; bound *= 4) {
    auto norms = detail::available_norms(K, ram_norms, bound);
    out.small_count = 0;
    Pj = 1;
    bool done = false;
    for (auto& N : norms) {
      double f = (N.convert_to<double>() + 1) / 2;
      if (f >= threshold) {
        done = true;
        break;
      }
      ++out.small_count;
      Pj *= f;
    }
    if (done) break;
  }
  out.coefficient = std::ldexp(static_cast<double>(deg_kA), static_cast<int>(out.small_count) + r_f + 1);
  out.normalization = std::pow(base * Pj, -*eps);
  return out;
}

inline double generic_S_rf_bound(double eps, double V) {
  if (!(V > 0)) throw std::invalid_argument("V must be positive");
  return eps * c_prime_eps(eps) + eps * std::log2(V);
}

inline double bianchi_special_index_log10(const ImagQuadField& K, double eps, double V, double A1) {
  if (!(V > 0)) throw std::invalid_argument("V must be positive");
  return std::log10(120.0) + c_eps_log10(K, eps, A1) + eps * std::log10(V);
}

inline double log10_51840() { return std::log10(51840.0); }

struct TotalIndex {
  double log10_special = 0;  // C_eps * D * V^eps: index of the special subgroup
  double log10_total = 0;    // with the 2^7 3^4 5 prefactor
};

inline TotalIndex total_index_bound(double log10_C, double log10_D, double eps, double V) {
  if (!(V > 0)) throw std::invalid_argument("V must be positive");
  TotalIndex t;
  t.log10_special = log10_C + log10_D + eps * std::log10(V);
  t.log10_total = log10_51840() + t.log10_special;
  return t;
}

}  // namespace arithhyp
