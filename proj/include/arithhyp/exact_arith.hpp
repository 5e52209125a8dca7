#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arithhyp {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

struct PrimePower {
  Int p;
  unsigned e = 0;
  bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

// floor square root of a non-negative integer
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  Int r;
  mpz_sqrt(r.backend().data(), n.backend().data());
  return r;
}

inline bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.backend().data()) != 0;
}

inline Int powm(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.backend().data(), b.backend().data(), e.backend().data(), m.backend().data());
  return r;
}

inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// v_p(n) and the p-free part; n != 0
inline std::pair<unsigned, Int> split_valuation(Int n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return {k, n};
}

namespace detail {

inline bool miller_rabin_round(const Int& n, const Int& d, unsigned s, unsigned base) {
  Int a(base);
  if (a % n == 0) return true;
  Int x = powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

inline const Int& mr_deterministic_limit() {
  // bases 2..41 are exact below this bound
  static const Int lim("3317044064679887385961981");
  return lim;
}

}  // namespace detail

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 43 * 43) return true;
  if (n >= detail::mr_deterministic_limit())
    return mpz_probab_prime_p(n.backend().data(), 50) != 0;
  Int d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned b : small)
    if (!detail::miller_rabin_round(n, d, s, b)) return false;
  return true;
}

inline bool is_prime(long long n) { return is_prime(Int(n)); }

namespace detail {

// Brent's variant; deterministic sequence of constants
inline Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return Int(2);
  for (unsigned c = 1;; ++c) {
    Int y(2), x, g(1), q(1), ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Int& v) { return (v * v + c) % n; };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = f(y);
          q = (q * abs_int(x - y)) % n;
        }
        g = gcd_int(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_int(abs_int(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int r = isqrt(n);
  if (r * r == n) {
    split_into(r, out);
    split_into(r, out);
    return;
  }
  Int g = pollard_brent(n);
  split_into(g, out);
  split_into(n / g, out);
}

}  // namespace detail

// trial division first, Pollard-Brent for whatever survives
inline Factorization factorize(Int n) {
  if (n < 1) throw std::invalid_argument("factorize expects n >= 1");
  Factorization f;
  auto take = [&](const Int& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.push_back({p, e});
  };
  take(Int(2));
  take(Int(3));
  for (unsigned long p = 5; p <= 100000; p += 6) {
    if (Int(p) * p > n) break;
    take(Int(p));
    take(Int(p + 2));
  }
  if (n == 1) return f;
  std::vector<Int> rest;
  detail::split_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    while (j < rest.size() && rest[j] == rest[i]) ++j;
    f.push_back({rest[i], static_cast<unsigned>(j - i)});
    i = j;
  }
  return f;
}

inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> ps;
  if (n == 0) return ps;
  for (auto& pe : factorize(abs_int(n))) ps.push_back(pe.p);
  return ps;
}

// r = s * t^2 with s squarefree
inline std::pair<Int, Rational> squarefree_part(const Rational& r) {
  if (r == 0) throw std::invalid_argument("squarefree_part of zero");
  Int n = num(r), d = den(r);
  // s(n/d) = s(n*d); t = root / d
  Int m = abs_int(n) * d;
  Int s(1), t(1);
  for (auto& pe : factorize(m)) {
    if (pe.e % 2) s *= pe.p;
    for (unsigned i = 0; i < pe.e / 2; ++i) t *= pe.p;
  }
  if (n < 0) s = -s;
  return {s, Rational(t, d)};
}

inline Int squarefree_int(const Int& n) { return squarefree_part(Rational(n)).first; }

inline int kronecker_symbol(const Int& a, const Int& n) {
  if (n == 0) throw std::invalid_argument("kronecker symbol with n = 0");
  return mpz_kronecker(a.backend().data(), n.backend().data());
}

inline Int crt_solve(const std::vector<std::pair<Int, Int>>& congruences) {
  Int x(0), m(1);
  for (auto& [r, mi] : congruences) {
    if (mi < 1) throw std::invalid_argument("crt modulus must be positive");
    if (gcd_int(m, mi) != 1) throw std::invalid_argument("crt moduli not coprime");
    Int inv;
    mpz_invert(inv.backend().data(), Int(m % mi).backend().data(), mi.backend().data());
    if (mi == 1) inv = 0;
    Int t = mod_nonneg((r - x) * inv, mi);
    x += m * t;
    m *= mi;
    x = mod_nonneg(x, m);
  }
  return x;
}

inline Int next_prime_after(const Int& n) {
  Int p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

inline Int smallest_nonresidue_prime(const Int& p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("smallest_nonresidue_prime expects an odd prime");
  for (Int l(2);; l = next_prime_after(l))
    if (kronecker_symbol(l, p) == -1) return l;
}

inline Int least_prime_in_ap(const Int& a, const Int& m) {
  if (m < 1) throw std::invalid_argument("modulus must be positive");
  if (gcd_int(mod_nonneg(a, m), m) != 1 && m != 1)
    throw std::invalid_argument("least_prime_in_ap needs gcd(a, m) = 1");
  Int r = mod_nonneg(a, m);
  if (r == 0) r = m;  // only reachable for m = 1
  for (Int c = r;; c += m)
    if (is_prime(c)) return c;
}

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) throw std::domain_error("rational_sqrt of negative value");
  Int n = num(r), d = den(r);
  if (!is_square(n) || !is_square(d)) return std::nullopt;
  return Rational(isqrt(n), isqrt(d));
}

inline std::string to_string(const Int& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rational parse_rational(const std::string& s) {
  auto digits = [&](const std::string& t) {
    if (t.empty() || t == "-" || t == "+") throw std::invalid_argument("not a rational: " + s);
    return t;
  };
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(digits(s)));
    Int d(digits(s.substr(slash + 1)));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(Int(digits(s.substr(0, slash))), d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + s);
  }
}

}  // namespace arithhyp
