#pragma once

#include "arithhyp/qform.hpp"

namespace arithhyp {

// Local targets and auxiliary data of the x search, kept for reporting.
struct ComplementTrace {
  std::map<Int, int> eps_prime;       // (c,-d)_p * eps_p(q) on the prime set
  std::map<Int, Int> local_targets;   // residue class of x at p (mod 8 at p = 2)
  Int x_lift{1};                      // CRT lift x'
  std::vector<Int> bad_primes;        // primes outside the set where (x',-cd) = -1
  Int a{1}, m{1}, aux_prime{1};       // x = (x'/a) * aux_prime, aux_prime = a mod m
};

struct ComplementWitness {
  DiagForm q;
  DiagForm qc;      // squarefree-reduced
  DiagForm qc_raw;  // <x, c, cdx>
  Int c, x, d;
  Int alpha_beta_gamma;
  ComplementTrace trace;
};

namespace detail {

inline void require_sig31(const DiagForm& q) {
  if (q.rank() != 4 || q.signature() != std::make_pair<std::size_t, std::size_t>(3, 1))
    throw std::invalid_argument("expected a rank 4 form of signature (3,1), got " + q.str());
  if (!q.is_integral()) throw std::invalid_argument("expected an integral form, got " + q.str());
}

inline Int form_d(const DiagForm& q) { return num(-q.determinant()); }

inline std::vector<Int> prime_set_2d(const Int& d) {
  auto ps = prime_divisors(2 * d);
  return ps;
}

}  // namespace detail

inline Int choose_c(const DiagForm& q) {
  detail::require_sig31(q);
  Int d = detail::form_d(q), c(1);
  for (auto& p : detail::prime_set_2d(d))
    if (split_valuation(d, p).first % 2 == 0) c *= p;
  return c;
}

inline Int choose_x(const DiagForm& q, const Int& c, ComplementTrace* trace = nullptr) {
  detail::require_sig31(q);
  ComplementTrace tr;
  Int d = detail::form_d(q);
  Int b = -c * d;
  auto P = detail::prime_set_2d(d);
  bool trivial = true;
  for (auto& p : P) {
    Place v{p};
    int e = hilbert_symbol(Rational(c), Rational(-d), v) * hasse_witt(q, v);
    tr.eps_prime[p] = e;
    trivial = trivial && e == 1;
  }
  if (trivial) {
    if (trace) *trace = tr;
    return Int(1);
  }
  std::vector<std::pair<Int, Int>> cong;
  for (auto& p : P) {
    Int t(1);
    if (tr.eps_prime[p] == -1) {
      if (p == 2) {
        // mod 8 classes; 3 alone is not enough when the unit part of b is 3 mod 4
        for (int cand : {3, 5, 7})
          if (hilbert_symbol(Rational(cand), Rational(b), Place{p}) == -1) {
            t = cand;
            break;
          }
      } else {
        t = smallest_nonresidue_prime(p);
      }
      if (hilbert_symbol(Rational(t), Rational(b), Place{p}) != -1)
        throw std::logic_error("no local target at p = " + p.str());
    }
    tr.local_targets[p] = t;
    cong.emplace_back(t, p == 2 ? Int(8) : p);
  }
  Int x1 = crt_solve(cong);
  Int m(1);
  for (auto& [r, mod] : cong) m *= mod;
  if (x1 == 0) x1 = m;
  tr.x_lift = x1;
  tr.m = m;
  for (auto& l : prime_divisors(x1)) {
    if (std::find(P.begin(), P.end(), l) != P.end()) continue;
    if (hilbert_symbol(Rational(x1), Rational(b), Place{l}) == -1) {
      tr.bad_primes.push_back(l);
      tr.a *= l;
    }
  }
  Int x = x1;
  if (tr.a != 1) {
    Int r = mod_nonneg(tr.a, m);
    for (Int cand = r == 0 ? m : r;; cand += m) {
      if (!is_prime(cand)) continue;
      if (std::find(tr.bad_primes.begin(), tr.bad_primes.end(), cand) != tr.bad_primes.end()) continue;
      tr.aux_prime = cand;
      break;
    }
    x = x1 / tr.a * tr.aux_prime;
  }
  if (trace) *trace = tr;
  return x;
}

inline bool verify_complement(const DiagForm& q, const DiagForm& qc) {
  if (q.rank() != 4 || qc.rank() != 3) return false;
  if (qc.signature().second != 0) return false;
  if (qc.disc_class() != -q.disc_class()) return false;
  auto places = relevant_places(q);
  for (auto& v : relevant_places(qc)) places.insert(v);
  for (auto& v : places)
    if (hasse_witt(q, v) != hasse_witt(qc, v)) return false;
  return is_isometric_Q(qc.direct_sum(q), DiagForm::standard(6, 1));
}

inline ComplementWitness complementary_form(const DiagForm& q) {
  detail::require_sig31(q);
  ComplementWitness w;
  w.q = q;
  w.d = detail::form_d(q);
  w.c = choose_c(q);
  w.x = choose_x(q, w.c, &w.trace);
  w.qc_raw = DiagForm({Rational(w.x), Rational(w.c), Rational(w.c * w.d * w.x)});
  w.qc = w.qc_raw.squarefree_reduced();
  w.alpha_beta_gamma = w.x * w.x * w.c * w.c * w.d;
  if (!verify_complement(q, w.qc_raw))
    throw std::logic_error("complement construction failed for " + q.str());
  return w;
}

}  // namespace arithhyp
