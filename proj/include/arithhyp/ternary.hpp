#pragma once

// Small nonzero solutions of a x^2 + b y^2 + c z^2 = 0.  For pairwise coprime
// squarefree a, b, c every primitive zero lies in one of the index-|abc| lattices
// cut out by square roots of -bc, -ca, -ab; a zero below Holzer's bound
// (|x| <= sqrt|bc| and cyclically) is found by enumerating short vectors of
// the LLL-reduced lattices.

#include "arithhyp/exact_arith.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace arithhyp {

using Triple = std::array<Int, 3>;
using Vec3 = std::array<Int, 3>;

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

inline Int round_rat(const Rational& r) { return floor_div(num(r) * 2 + den(r), den(r) * 2); }

inline std::optional<Int> sqrt_mod_prime(const Int& a0, const Int& p) {
  Int a = mod_nonneg(a0, p);
  if (a == 0) return Int(0);
  if (p == 2) return a;
  if (kronecker_symbol(a, p) != 1) return std::nullopt;
  Int q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Int z(2);
  while (kronecker_symbol(z, p) != -1) ++z;
  unsigned m = s;
  Int c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    Int b = c;
    for (unsigned j = 0; j + 1 + i < m; ++j) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}



inline Int qdot(const Vec3& u, const Vec3& v, const Vec3& w) {
  return w[0] * u[0] * v[0] + w[1] * u[1] * v[1] + w[2] * u[2] * v[2];
}

// LLL (delta = 3/4) of three vectors for the positive diagonal form w
inline void lll3(std::array<Vec3, 3>& B, const Vec3& w) {
  auto gso = [&](std::array<std::array<Rational, 3>, 3>& mu, std::array<Rational, 3>& bn) {
    std::array<std::array<Rational, 3>, 3> bs;
    for (int i = 0; i < 3; ++i) {
      for (int t = 0; t < 3; ++t) bs[i][t] = Rational(B[i][t]);
      for (int j = 0; j < i; ++j) {
        Rational ip(0);
        for (int t = 0; t < 3; ++t) ip += Rational(w[t]) * Rational(B[i][t]) * bs[j][t];
        mu[i][j] = ip / bn[j];
        for (int t = 0; t < 3; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      bn[i] = 0;
      for (int t = 0; t < 3; ++t) bn[i] += Rational(w[t]) * bs[i][t] * bs[i][t];
    }
  };
  std::array<std::array<Rational, 3>, 3> mu;
  std::array<Rational, 3> bn;
  int k = 1;
  while (k < 3) {
    gso(mu, bn);
    for (int j = k - 1; j >= 0; --j) {
      Int q = round_rat(mu[k][j]);
      if (q != 0) {
        for (int t = 0; t < 3; ++t) B[k][t] -= q * B[j][t];
        gso(mu, bn);
      }
    }
    if (bn[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      k = std::max(k - 1, 1);
    }
  }
}

// basis of {v in Z^3 : l.v = 0 mod N}
inline std::array<Vec3, 3> congruence_kernel(const Vec3& l, const Int& N) {
  // unimodular column operations on (l0, l1, l2, N) until one entry remains
  std::array<Int, 4> row{l[0], l[1], l[2], N};
  std::array<std::array<Int, 4>, 4> U{};
  for (int i = 0; i < 4; ++i) U[i][i] = 1;
  for (int j = 1; j < 4; ++j) {
    if (row[j] == 0) continue;
    Int g, s, t;
    mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), row[0].backend().data(),
               row[j].backend().data());
    Int p = row[0] / g, q = row[j] / g;
    for (int i = 0; i < 4; ++i) {
      Int c0 = U[i][0], cj = U[i][j];
      U[i][0] = s * c0 + t * cj;
      U[i][j] = -q * c0 + p * cj;
    }
    row[0] = g;
    row[j] = 0;
  }
  std::array<Vec3, 3> B;
  for (int j = 1; j < 4; ++j)
    for (int i = 0; i < 3; ++i) B[j - 1][i] = U[i][j];
  return B;
}

// vectors of the lattice with w-norm <= R, Fincke-Pohst over the reduced basis
template <class Visit>
inline bool short_vectors(const std::array<Vec3, 3>& B, const Vec3& w, const Int& R, Visit&& visit) {
  long double G[3][3];
  const long double scale = static_cast<long double>(R.convert_to<double>());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G[i][j] = qdot(B[i], B[j], w).convert_to<long double>() / scale;
  // Q(u) = sum_i q[i][i] (u_i + sum_{j>i} q[i][j] u_j)^2
  long double q[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) q[i][j] = G[i][j];
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < 3; ++k)
      for (int l = k; l < 3; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  const long double slack = 1.0L + 1e-9L;
  std::array<long, 3> u{};
  auto center = [&](int i) {
    long double c = 0;
    for (int j = i + 1; j < 3; ++j) c -= q[i][j] * u[j];
    return c;
  };
  std::function<bool(int, long double)> rec = [&](int i, long double rem) -> bool {
    long double c = center(i);
    long double r = std::sqrt(std::max<long double>(rem, 0) / q[i][i]);
    long lo = static_cast<long>(std::ceil(c - r - 1e-9L)), hi = static_cast<long>(std::floor(c + r + 1e-9L));
    for (long v = lo; v <= hi; ++v) {
      u[i] = v;
      long double d = v - c;
      long double nrem = rem - q[i][i] * d * d;
      if (nrem < -1e-9L) continue;
      if (i == 0) {
        Vec3 x;
        for (int t = 0; t < 3; ++t) x[t] = Int(u[0]) * B[0][t] + Int(u[1]) * B[1][t] + Int(u[2]) * B[2][t];
        if ((x[0] != 0 || x[1] != 0 || x[2] != 0) && qdot(x, x, w) <= R && visit(x)) return true;
      } else if (rec(i - 1, nrem)) {
        return true;
      }
    }
    return false;
  };
  return rec(2, slack);
}

}  // namespace detail

// Legendre-normal case: a, b, c squarefree, pairwise coprime, not all of one sign.
inline std::optional<Triple> solve_ternary_normal(const Int& a, const Int& b, const Int& c) {
  const Vec3 coef{a, b, c};
  const Vec3 w{abs_int(a), abs_int(b), abs_int(c)};
  // per prime: which pair of coordinates it links, and a root
  struct Link {
    Int p, r;
    int i, j;  // v_i = r v_j mod p
  };
  std::vector<Link> links;
  auto add = [&](const Int& m, int i, int j, const Int& num_, const Int& den_) -> bool {
    for (auto& pe : factorize(abs_int(m))) {
      const Int& p = pe.p;
      // v_i^2 = -(num/den) v_j^2 with coef[i] v_i^2 + coef[j] v_j^2 = 0 mod p
      Int inv;
      mpz_invert(inv.backend().data(), mod_nonneg(den_, p).backend().data(), p.backend().data());
      auto r = detail::sqrt_mod_prime(mod_nonneg(-num_ * inv, p), p);
      if (!r) return false;
      links.push_back({p, *r, i, j});
    }
    return true;
  };
  // mod p | a: b y^2 + c z^2 = 0 -> y = r z with r^2 = -c/b
  if (!add(a, 1, 2, c, b) || !add(b, 2, 0, a, c) || !add(c, 0, 1, b, a)) return std::nullopt;
  const Int N = abs_int(a * b * c);
  const Int R = 3 * N;
  std::vector<std::size_t> flip_sites;
  for (std::size_t k = 0; k < links.size(); ++k)
    if (links[k].r != 0 && links[k].p != 2) flip_sites.push_back(k);
  if (flip_sites.size() > 24) throw std::runtime_error("solve_ternary: too many prime factors");
  std::optional<Triple> best;
  for (unsigned long mask = 0; mask < (1UL << flip_sites.size()); ++mask) {
    // combined congruence sum_p e_p (v_i - r v_j) = 0 mod N
    Vec3 l{Int(0), Int(0), Int(0)};
    for (std::size_t k = 0; k < links.size(); ++k) {
      Int r = links[k].r;
      auto pos = std::find(flip_sites.begin(), flip_sites.end(), k);
      if (pos != flip_sites.end() && ((mask >> (pos - flip_sites.begin())) & 1)) r = links[k].p - r;
      Int cof = N / links[k].p, inv;
      mpz_invert(inv.backend().data(), mod_nonneg(cof, links[k].p).backend().data(), links[k].p.backend().data());
      Int e = cof * inv;
      l[links[k].i] += e;
      l[links[k].j] -= e * r;
    }
    for (auto& t : l) t = mod_nonneg(t, N);
    auto B = detail::congruence_kernel(l, N);
    detail::lll3(B, w);
    detail::short_vectors(B, w, R, [&](const Vec3& x) {
      if (detail::qdot(x, x, coef) != 0) return false;
      Triple s{abs_int(x[0]), abs_int(x[1]), abs_int(x[2])};
      Int g = gcd_int(gcd_int(s[0], s[1]), s[2]);
      for (auto& v : s) v /= g;
      auto key = [](const Triple& t) { return std::max({t[0], t[1], t[2]}); };
      if (!best || key(s) < key(*best) || (key(s) == key(*best) && s < *best)) best = s;
      return false;
    });
    if (best) return best;
  }
  return std::nullopt;
}

// Nonnegative primitive (x, y, z) != 0 with a x^2 + b y^2 + c z^2 = 0, or nullopt.
inline std::optional<Triple> solve_ternary(const Int& a, const Int& b, const Int& c) {
  if (a == 0 || b == 0 || c == 0) throw std::invalid_argument("solve_ternary needs nonzero coefficients");
  if ((a > 0) == (b > 0) && (b > 0) == (c > 0)) return std::nullopt;
  Int g = gcd_int(gcd_int(a, b), c);
  auto sa = squarefree_part(Rational(a / g)), sb = squarefree_part(Rational(b / g)), sc = squarefree_part(Rational(c / g));
  Int qa = num(sa.second), qb = num(sb.second), qc = num(sc.second);
  Int A = sa.first, Bc = sb.first, C = sc.first;
  // make pairwise coprime: p | A, B  ->  (A/p, B/p, C p) with (x, y) scaled by p
  Triple mult{Int(1), Int(1), Int(1)};
  for (int round = 0; round < 3; ++round) {
    Int p = gcd_int(A, Bc);
    if (p > 1) { A /= p; Bc /= p; C *= p; mult[2] *= p; }
    p = gcd_int(Bc, C);
    if (p > 1) { Bc /= p; C /= p; A *= p; mult[0] *= p; }
    p = gcd_int(A, C);
    if (p > 1) { A /= p; C /= p; Bc *= p; mult[1] *= p; }
  }
  auto s = solve_ternary_normal(A, Bc, C);
  if (!s) return std::nullopt;
  // A' X^2 + ... = 0 with X = x_prev * (product of primes moved out of that coefficient's partners)
  // undo: coordinate i of the previous system is s_i times the primes moved into coefficient i
  Triple t{(*s)[0] * mult[0], (*s)[1] * mult[1], (*s)[2] * mult[2]};
  Int L = lcm_int(lcm_int(qa, qb), qc);
  t[0] = t[0] * L / qa;
  t[1] = t[1] * L / qb;
  t[2] = t[2] * L / qc;
  Int h = gcd_int(gcd_int(t[0], t[1]), t[2]);
  for (auto& v : t) v /= h;
  if (a * t[0] * t[0] + b * t[1] * t[1] + c * t[2] * t[2] != 0)
    throw std::logic_error("solve_ternary produced a non-solution");
  return t;
}

}  // namespace arithhyp
