#pragma once

#include "arithhyp/matrix.hpp"
#include "arithhyp/ternary.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace arithhyp {

// ceil(sqrt(n)) for n >= 0
inline Int ceil_sqrt(const Int& n) {
  Int r = isqrt(n);
  return r * r == n ? r : Int(r + 1);
}

inline Int ipow(Int b, unsigned e) {
  Int r(1);
  mpz_pow_ui(r.backend().data(), b.backend().data(), e);
  return r;
}

struct BoundFns {
  Int E, F, G;
};

namespace detail {

inline std::vector<Int> integral_coeffs(const DiagForm& g, const char* who) {
  if (!g.is_integral()) throw std::invalid_argument(std::string(who) + " needs an integral form, got " + g.str());
  std::vector<Int> a;
  for (auto& c : g.coeffs()) a.push_back(num(c));
  return a;
}

inline Int abs_sum(const std::vector<Int>& a) {
  Int s(0);
  for (auto& x : a) s += abs_int(x);
  return s;
}

}  // namespace detail

// E_n(g) = 2 max|a_i| (3 sum|a_i| + 3)^{n/2}, F = E^{2n} n^{n/2}, G = F^2; rounded up when irrational
inline BoundFns bound_fns(const DiagForm& g) {
  auto a = detail::integral_coeffs(g, "bound_E");
  const unsigned n = static_cast<unsigned>(a.size());
  Int mx(0);
  for (auto& x : a) mx = std::max(mx, abs_int(x));
  Int X = 3 * detail::abs_sum(a) + 3;
  BoundFns b;
  b.E = ceil_sqrt(4 * mx * mx * ipow(X, n));
  b.F = ceil_sqrt(ipow(b.E, 4 * n) * ipow(Int(n), n));
  b.G = b.F * b.F;
  return b;
}

inline Int bound_E(const DiagForm& g) { return bound_fns(g).E; }

// square of the Cassels bound (3 sum|a_i|)^{(m-1)/2}
inline Int cassels_bound_sq(const DiagForm& f) {
  auto a = detail::integral_coeffs(f, "cassels bound");
  return ipow(3 * detail::abs_sum(a), static_cast<unsigned>(a.size() - 1));
}

inline bool cassels_compliant(const std::vector<Int>& y, const DiagForm& f) {
  Int b2 = cassels_bound_sq(f);
  for (auto& t : y)
    if (t * t > b2) return false;
  return true;
}

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline bool exact_sqrt(const i128& v, i128& r) {
  if (v < 0) return false;
  // squares mod 64
  constexpr std::uint64_t mask = 0x0202021202030213ULL;
  if (!((mask >> static_cast<unsigned>(v & 63)) & 1)) return false;
  u128 uv = static_cast<u128>(v);
  u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(uv)));
  while (x * x > uv) --x;
  while ((x + 1) * (x + 1) <= uv) ++x;
  if (x * x != uv) return false;
  r = static_cast<i128>(x);
  return true;
}

inline bool exact_sqrt(const Int& v, Int& r) {
  if (!is_square(v)) return false;
  r = isqrt(v);
  return true;
}

inline bool fits_i128(const Int& x) {
  return abs_int(x) < (Int(1) << 125);
}

inline i128 to_i128(const Int& x) {
  Int ax = abs_int(x);
  u128 lo = mpz_getlimbn(ax.backend().data(), 0);
  u128 hi = mpz_size(ax.backend().data()) > 1 ? mpz_getlimbn(ax.backend().data(), 1) : 0;
  i128 v = static_cast<i128>((hi << 64) | lo);
  return x < 0 ? -v : v;
}

inline Int from_i128(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
  Int r(static_cast<unsigned long long>(u >> 64));
  r <<= 64;
  r += Int(static_cast<unsigned long long>(u & ~std::uint64_t(0)));
  return neg ? Int(-r) : r;
}

// Nonnegative prefixes with max entry exactly N, in lexicographic order; the last
// coordinate s is solved from A.y + L s^2 = 0.
template <class T>
struct ShellSearch {
  std::vector<T> A;
  T L;
  T s_bound_sq;
  long N = 0;
  std::vector<long> y;
  T s{};
  std::uint64_t budget = 0;  // 0: unlimited
  std::uint64_t used = 0;
  bool exhausted = false;

  bool test(const T& v) {
    if (v % L != 0) return false;
    T t = -(v / L);
    if (t < 0 || t > s_bound_sq) return false;
    return exact_sqrt(t, s);
  }

  bool rec(std::size_t i, const T& partial, bool has_n) {
    if (i == A.size()) {
      if (budget && ++used > budget) {
        exhausted = true;
        return false;
      }
      return has_n && test(partial);
    }
    const bool last = i + 1 == A.size();
    for (long v = (last && !has_n) ? N : 0; v <= N; ++v) {
      y[i] = v;
      T tv(v);
      if (rec(i + 1, partial + A[i] * tv * tv, has_n || v == N)) return true;
      if (exhausted) return false;
    }
    return false;
  }

  bool level(long n) {
    N = n;
    y.assign(A.size(), 0);
    return rec(0, T(0), false);
  }
};

}  // namespace detail

struct CasselsResult {
  std::vector<Int> y;
  long norm = 0;  // max-norm level of the free coordinates at which y was found
};

// Isotropic vector of an integral form, last coordinate solved for.
// Order: nonnegative free coordinates by increasing max-norm, then lexicographic.
// Sign changes never create or destroy zeros, so this is the first hit of the
// signed enumeration with value order 0, 1, -1, 2, -2, ...
namespace detail {

inline std::optional<CasselsResult> shell_search(const DiagForm& f, std::uint64_t budget) {
  auto a = detail::integral_coeffs(f, "cassels_isotropic_vector");
  if (a.size() < 2) throw std::invalid_argument("isotropic search needs rank >= 2");
  std::vector<Int> A(a.begin(), a.end() - 1);
  Int L = a.back();
  Int b2 = cassels_bound_sq(f);
  Int nmax = isqrt(b2);
  Int sum = detail::abs_sum(A);
  CasselsResult res;
  detail::ShellSearch<detail::i128> fast;
  detail::ShellSearch<Int> slow;
  bool fast_ok = detail::fits_i128(L) && detail::fits_i128(sum);
  if (fast_ok) {
    for (auto& x : A) fast.A.push_back(detail::to_i128(x));
    fast.L = detail::to_i128(L);
  }
  slow.A = A;
  slow.L = L;
  fast.budget = slow.budget = budget;
  for (long n = 1; Int(n) <= nmax; ++n) {
    Int top = sum * n * n;
    bool found;
    if (fast_ok && detail::fits_i128(top)) {
      fast.s_bound_sq = detail::fits_i128(b2) ? detail::to_i128(b2) : (detail::i128(1) << 125);
      found = fast.level(n);
      if (found) {
        for (long v : fast.y) res.y.emplace_back(v);
        res.y.push_back(detail::from_i128(fast.s));
      }
    } else {
      slow.s_bound_sq = b2;
      found = slow.level(n);
      if (found) {
        for (long v : slow.y) res.y.emplace_back(v);
        res.y.push_back(slow.s);
      }
    }
    if (found) {
      res.norm = n;
      return res;
    }
    if (fast.exhausted || slow.exhausted) return std::nullopt;
  }
  throw std::invalid_argument("no isotropic vector within the Cassels bound: " + f.str() + " is anisotropic");
}

}  // namespace detail

inline CasselsResult cassels_isotropic_vector(const DiagForm& f) {
  if (f.rank() >= 2 && !is_isotropic_Q(f))
    throw std::invalid_argument("no isotropic vector: " + f.str() + " is anisotropic");
  return *detail::shell_search(f, 0);
}

// leaf evaluations the shell search may spend inside represent_one
inline constexpr std::uint64_t kShellBudget = 2'000'000;

namespace detail {

// Isotropic vector of an isotropic integral form of rank >= 3 built from ternary
// zeros: the two largest coefficients take (y_i, y_j) and the remaining ones a
// fixed small vector u scaled by w, where a_i y_i^2 + a_j y_j^2 + t w^2 = 0 and t is
// the value of the remaining coefficients at u.
inline std::vector<Int> constructive_isotropic(const std::vector<Int>& a) {
  const std::size_t m = a.size();
  if (m == 3) {
    auto z = solve_ternary(a[0], a[1], a[2]);
    if (!z) throw std::logic_error("ternary solver found no zero of an isotropic form");
    return {(*z)[0], (*z)[1], (*z)[2]};
  }
  std::vector<std::size_t> ord(m);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(), [&](auto p, auto q) { return abs_int(a[p]) > abs_int(a[q]); });
  const std::size_t i = ord[0], j = ord[1];
  std::vector<std::size_t> rest(ord.begin() + 2, ord.end());
  std::vector<long> u(rest.size(), 0);
  for (long N = 1;; ++N) {
    // nonnegative u with max entry N, lexicographic
    std::function<std::optional<std::vector<Int>>(std::size_t, bool)> rec =
        [&](std::size_t k, bool has_n) -> std::optional<std::vector<Int>> {
      if (k == rest.size()) {
        if (!has_n) return std::nullopt;
        Int t(0);
        for (std::size_t r = 0; r < rest.size(); ++r) t += a[rest[r]] * u[r] * u[r];
        std::vector<Int> y(m, Int(0));
        if (t == 0) {
          for (std::size_t r = 0; r < rest.size(); ++r) y[rest[r]] = u[r];
          return y;
        }
        if (!is_isotropic_Q(DiagForm(std::vector<Rational>{Rational(a[i]), Rational(a[j]), Rational(t)})))
          return std::nullopt;
        auto z = solve_ternary(a[i], a[j], t);
        if (!z) return std::nullopt;
        y[i] = (*z)[0];
        y[j] = (*z)[1];
        for (std::size_t r = 0; r < rest.size(); ++r) y[rest[r]] = (*z)[2] * u[r];
        return y;
      }
      for (long v = (k + 1 == rest.size() && !has_n) ? N : 0; v <= N; ++v) {
        u[k] = v;
        if (auto y = rec(k + 1, has_n || v == N)) return y;
      }
      return std::nullopt;
    };
    if (auto y = rec(0, false)) {
      Int g(0);
      for (auto& t : *y) g = gcd_int(g, t);
      for (auto& t : *y) t /= g;
      return *y;
    }
  }
}

}  // namespace detail

struct Representation {
  std::vector<Rational> x;
  std::vector<Int> y;  // isotropic vector of g + <-1>; empty for the shortcut
  int method = 0;      // 0 shortcut a_i = 1, 1 divide by y_{n+1}, 2 tangent correction
  long norm = 0;       // search level, 0 when y came from the ternary construction
  bool constructive = false;
};

inline Representation represent_one(const DiagForm& g) {
  auto a = detail::integral_coeffs(g, "represent_one");
  const std::size_t n = a.size();
  Representation r;
  r.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] == 1) {
      r.x[i] = 1;
      return r;
    }
  DiagForm f = g.direct_sum(DiagForm{-1});
  if (!is_isotropic_Q(f)) throw std::invalid_argument(g.str() + " does not represent 1");
  if (auto cr = detail::shell_search(f, kShellBudget)) {
    r.y = cr->y;
    r.norm = cr->norm;
  } else {
    r.y = detail::constructive_isotropic(detail::integral_coeffs(f, "represent_one"));
    r.constructive = true;
  }
  const auto& y = r.y;
  const Int& s = y[n];
  if (s != 0) {
    r.method = 1;
    for (std::size_t i = 0; i < n; ++i) r.x[i] = Rational(y[i], s);
  } else {
    r.method = 2;
    std::size_t i = 0;
    while (y[i] == 0) ++i;
    Rational alpha = Rational(1 - a[i]) / Rational(2 * a[i] * y[i]);
    for (std::size_t j = 0; j < n; ++j) r.x[j] = alpha * Rational(y[j]);
    r.x[i] += 1;
  }
  if (g.evaluate(r.x) != 1) throw std::logic_error("represent_one produced g(x) != 1");
  return r;
}

struct Reduction {
  RatMatrix P;   // P1 * P2 * P3
  RatMatrix P1;  // x followed by the primitive complement basis
  DiagForm g_new;
  Representation rep;
  std::vector<std::pair<std::size_t, std::size_t>> swaps;
};

namespace detail {

inline std::vector<Rational> primitive_integral(const std::vector<Rational>& v) {
  Int l(1), g(0);
  for (auto& t : v) l = lcm_int(l, den(t));
  std::vector<Rational> out;
  for (auto& t : v) {
    out.emplace_back(t * l);
    g = gcd_int(g, num(out.back()));
  }
  for (auto& t : out) t /= g;
  return out;
}

}  // namespace detail

inline Reduction reduce_once(const DiagForm& g) {
  auto a = detail::integral_coeffs(g, "reduce_once");
  const std::size_t n = a.size();
  Reduction red;
  red.rep = represent_one(g);
  const auto& x = red.rep.x;

  // Step 1: x, then a primitive integral basis of its orthogonal complement
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = Rational(a[i]) * x[i];
  std::size_t piv = 0;
  while (r[piv] == 0) ++piv;
  std::vector<std::vector<Rational>> cols{x};
  for (std::size_t j = 0; j < n; ++j) {
    if (j == piv) continue;
    std::vector<Rational> v(n, Rational(0));
    v[j] = 1;
    v[piv] = -r[j] / r[piv];
    cols.push_back(detail::primitive_integral(v));
  }

  // Step 2: upper-triangular diagonalization from the leading minors
  auto gram = [&] { return congruence(RatMatrix::from_columns(cols), g); };
  RatMatrix Z = gram();
  for (std::size_t k = 1; k <= n; ++k) {
    if (Z.leading_block(k).determinant() != 0) continue;
    bool fixed = false;
    for (std::size_t j = k; j < n && !fixed; ++j) {
      std::swap(cols[k - 1], cols[j]);
      RatMatrix Zt = gram();
      if (Zt.leading_block(k).determinant() != 0) {
        Z = Zt;
        red.swaps.emplace_back(k - 1, j);
        fixed = true;
      } else {
        std::swap(cols[k - 1], cols[j]);
      }
    }
    if (!fixed) throw std::logic_error("no basis transposition restores a nonsingular minor");
  }
  red.P1 = RatMatrix::from_columns(cols);

  RatMatrix P2(n, n);
  std::vector<Rational> b(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Rational> e(k, Rational(0));
    e[k - 1] = 1;
    auto w = Z.leading_block(k).solve(e);
    Int c(1);
    for (auto& t : w) c = lcm_int(c, den(t));
    if (w[k - 1] < 0) c = -c;
    for (std::size_t i = 0; i < k; ++i) P2(i, k - 1) = w[i] * Rational(c);
    b[k - 1] = Rational(c * c) * w[k - 1];
  }
  red.P = red.P1 * P2;
  red.g_new = DiagForm(b);
  if (congruence(red.P, g) != RatMatrix::diagonal(b)) throw std::logic_error("reduce_once congruence check failed");
  return red;
}

inline bool verify_isometry(const RatMatrix& P, const DiagForm& g, const DiagForm& target) {
  if (P.rows() != g.rank() || P.cols() != target.rank()) return false;
  return congruence(P, g) == RatMatrix::diagonal(target.coeffs());
}

struct CongruenceBound {
  double log10_S42 = 0;      // S^42
  double log10_level42 = 0;  // (S^2)^42
};

inline double log10_int(const Int& n) {
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, n.backend().data());
  return std::log10(m) + static_cast<double>(exp) * std::log10(2.0);
}

inline CongruenceBound congruence_index_bound(const Int& S) {
  if (S < 1) throw std::invalid_argument("S must be positive");
  CongruenceBound b;
  b.log10_S42 = 42 * log10_int(S);
  b.log10_level42 = 84 * log10_int(S);
  return b;
}

struct IsometryStep {
  std::string kind;  // "scale", "reduce", "permute"
  std::vector<std::size_t> block;
  DiagForm before, after;
  Representation rep;
  Int denom_lcm{1};
  bool within_E = true;
  bool cassels_ok = true;
};

struct IsometryWitness {
  RatMatrix P;
  DiagForm source, target;
  Int S{1};
  CongruenceBound D;
  std::vector<IsometryStep> steps;
};

namespace detail {

// scale columns so every coefficient in idx becomes squarefree
inline void squarefree_step(std::vector<Rational>& cur, RatMatrix& P, const std::vector<std::size_t>& idx,
                            std::vector<IsometryStep>& log) {
  IsometryStep st;
  st.kind = "scale";
  st.block = idx;
  st.before = DiagForm(cur);
  bool changed = false;
  for (auto i : idx) {
    auto [s, t] = squarefree_part(cur[i]);
    if (t == 1) continue;
    changed = true;
    for (std::size_t r = 0; r < P.rows(); ++r) P(r, i) /= t;
    cur[i] = Rational(s);
  }
  st.after = DiagForm(cur);
  if (changed) log.push_back(std::move(st));
}

// Smallest sub-block of the non-unit coordinates that represents 1.
inline std::vector<std::size_t> choose_block(const std::vector<Rational>& cur, const std::vector<std::size_t>& R) {
  for (std::size_t s = 2; s <= R.size(); ++s) {
    std::vector<std::pair<Int, std::vector<std::size_t>>> cands;
    std::vector<bool> pick(R.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
    do {
      std::vector<std::size_t> I;
      for (std::size_t k = 0; k < R.size(); ++k)
        if (pick[k]) I.push_back(R[k]);
      Int key(0);
      if (s == 2)
        key = abs_int(squarefree_int(num(cur[I[0]] * cur[I[1]])));
      else
        for (auto i : I) key += abs_int(num(cur[i]));
      cands.emplace_back(key, I);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::stable_sort(cands.begin(), cands.end(), [](auto& u, auto& v) { return u.first < v.first; });
    for (auto& [key, I] : cands) {
      std::vector<Rational> c;
      for (auto i : I) c.push_back(cur[i]);
      c.emplace_back(-1);
      if (is_isotropic_Q(DiagForm(c))) return I;
    }
  }
  throw std::logic_error("residual form does not represent 1");
}

}  // namespace detail

using StepHook = std::function<void(const std::vector<Rational>&, const std::vector<std::size_t>&)>;

inline IsometryWitness full_isometry_to_standard(const DiagForm& g, const StepHook& on_block = {}) {
  const std::size_t n = g.rank();
  if (n < 2) throw std::invalid_argument("isometry pipeline needs rank >= 2");
  DiagForm target = DiagForm::standard(n - 1, 1);
  if (!is_isometric_Q(g, target)) throw std::invalid_argument(g.str() + " is not isometric to " + target.str());
  IsometryWitness w;
  w.source = g;
  w.target = target;
  w.P = RatMatrix::identity(n);
  std::vector<Rational> cur = g.coeffs();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  detail::squarefree_step(cur, w.P, all, w.steps);

  while (true) {
    std::vector<std::size_t> R;
    for (std::size_t i = 0; i < n; ++i)
      if (cur[i] != 1) R.push_back(i);
    if (R.size() <= 1) break;
    auto I = detail::choose_block(cur, R);
    if (on_block) on_block(cur, I);
    std::vector<Rational> bc;
    for (auto i : I) bc.push_back(cur[i]);
    DiagForm block(bc);
    Reduction red = reduce_once(block);
    RatMatrix E = RatMatrix::identity(n);
    for (std::size_t r = 0; r < I.size(); ++r)
      for (std::size_t c = 0; c < I.size(); ++c) E(I[r], I[c]) = red.P(r, c);
    w.P = w.P * E;
    IsometryStep st;
    st.kind = "reduce";
    st.block = I;
    st.before = DiagForm(cur);
    for (std::size_t r = 0; r < I.size(); ++r) cur[I[r]] = red.g_new[r];
    st.after = DiagForm(cur);
    st.rep = red.rep;
    st.denom_lcm = red.P.denominator_lcm();
    st.within_E = st.denom_lcm <= bound_E(block);
    st.cassels_ok = red.rep.y.empty() || cassels_compliant(red.rep.y, block.direct_sum(DiagForm{-1}));
    w.steps.push_back(std::move(st));
    detail::squarefree_step(cur, w.P, I, w.steps);
  }

  std::size_t neg = 0;
  while (neg < n && cur[neg] == 1) ++neg;
  if (neg == n) throw std::logic_error("no negative coefficient left");
  auto root = rational_sqrt(-cur[neg]);
  if (!root) throw std::logic_error("final coefficient is not minus a square");
  for (std::size_t r = 0; r < n; ++r) w.P(r, neg) /= *root;
  cur[neg] = -1;
  if (neg != n - 1) {
    IsometryStep st;
    st.kind = "permute";
    st.block = {neg, n - 1};
    st.before = DiagForm(cur);
    for (std::size_t r = 0; r < n; ++r) std::swap(w.P(r, neg), w.P(r, n - 1));
    std::swap(cur[neg], cur[n - 1]);
    st.after = DiagForm(cur);
    w.steps.push_back(std::move(st));
  }
  if (!verify_isometry(w.P, g, target)) throw std::logic_error("isometry witness failed exact verification");
  w.S = w.P.denominator_lcm();
  w.D = congruence_index_bound(w.S);
  return w;
}

}  // namespace arithhyp
