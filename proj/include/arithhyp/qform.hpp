#pragma once

#include "arithhyp/exact_arith.hpp"

#include <map>
#include <set>
#include <sstream>

namespace arithhyp {

// A place of Q: a rational prime, or the real place (stored as p = 0).
struct Place {
  Int p;

  static Place infinity() { return Place{Int(0)}; }
  static Place prime(const Int& q) {
    if (!is_prime(q)) throw std::invalid_argument("place must be a prime: " + q.str());
    return Place{q};
  }
  bool is_infinite() const { return p == 0; }
  std::string str() const { return is_infinite() ? std::string("inf") : p.str(); }

  bool operator==(const Place& o) const { return p == o.p; }
  // primes ascending, then the real place
  bool operator<(const Place& o) const {
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return p < o.p;
  }
};

class DiagForm {
 public:
  DiagForm() = default;
  explicit DiagForm(std::vector<Rational> c) : coeffs_(std::move(c)) {
    if (coeffs_.empty()) throw std::invalid_argument("a form needs rank >= 1");
    for (auto& a : coeffs_)
      if (a == 0) throw std::invalid_argument("degenerate form: zero coefficient");
  }
  DiagForm(std::initializer_list<long long> c) : DiagForm(std::vector<Rational>(c.begin(), c.end())) {}

  static DiagForm standard(std::size_t n_plus, std::size_t n_minus) {
    std::vector<Rational> c(n_plus, Rational(1));
    c.insert(c.end(), n_minus, Rational(-1));
    return DiagForm(std::move(c));
  }

  std::size_t rank() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  std::pair<std::size_t, std::size_t> signature() const {
    std::size_t pos = 0;
    for (auto& a : coeffs_) pos += a > 0;
    return {pos, rank() - pos};
  }
  bool is_definite() const {
    auto [p, m] = signature();
    return p == 0 || m == 0;
  }
  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& a) { return den(a) == 1; });
  }

  Rational determinant() const {
    Rational d(1);
    for (auto& a : coeffs_) d *= a;
    return d;
  }
  Int disc_class() const { return squarefree_part(determinant()).first; }

  Rational evaluate(const std::vector<Rational>& x) const {
    if (x.size() != rank()) throw std::invalid_argument("vector length does not match rank");
    Rational s(0);
    for (std::size_t i = 0; i < rank(); ++i) s += coeffs_[i] * x[i] * x[i];
    return s;
  }

  DiagForm direct_sum(const DiagForm& o) const {
    auto c = coeffs_;
    c.insert(c.end(), o.coeffs_.begin(), o.coeffs_.end());
    return DiagForm(std::move(c));
  }
  DiagForm scaled(const Rational& l) const {
    auto c = coeffs_;
    for (auto& a : c) a *= l;
    return DiagForm(std::move(c));
  }
  // each coefficient replaced by its squarefree integer class; isometric to *this
  DiagForm squarefree_reduced() const {
    std::vector<Rational> c;
    for (auto& a : coeffs_) c.emplace_back(squarefree_part(a).first);
    return DiagForm(std::move(c));
  }
  // clear denominators and divide by the content
  DiagForm primitive_integral() const {
    Int l(1), g(0);
    for (auto& a : coeffs_) l = lcm_int(l, den(a));
    std::vector<Rational> c;
    for (auto& a : coeffs_) {
      c.emplace_back(a * l);
      g = gcd_int(g, num(c.back()));
    }
    for (auto& a : c) a /= g;
    return DiagForm(std::move(c));
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (auto& a : coeffs_) out.push_back(to_string(a));
    return out;
  }
  std::string str() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? "," : "") << to_string(coeffs_[i]);
    os << ">";
    return os.str();
  }

  bool operator==(const DiagForm&) const = default;

 private:
  std::vector<Rational> coeffs_;
};

inline DiagForm parse_form(const std::string& s) {
  std::vector<Rational> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (!tok.empty()) c.push_back(parse_rational(tok));
  }
  return DiagForm(std::move(c));
}

namespace detail {

inline int hilbert_int(const Int& a, const Int& b, const Int& p) {
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  auto [al, u] = split_valuation(a, p);
  auto [be, v] = split_valuation(b, p);
  if (p != 2) {
    int r = ((al * be) % 2 == 1 && mod_nonneg(p, Int(4)) == 3) ? -1 : 1;
    if (be % 2) r *= kronecker_symbol(u, p);
    if (al % 2) r *= kronecker_symbol(v, p);
    return r;
  }
  auto eps = [](const Int& x) { return static_cast<int>(mod_nonneg(x, Int(4)) == 3); };
  auto omega = [](const Int& x) {
    Int m = mod_nonneg(x, Int(8));
    return static_cast<int>(m == 3 || m == 5);
  };
  int e = eps(u) * eps(v) + static_cast<int>(al % 2) * omega(v) + static_cast<int>(be % 2) * omega(u);
  return e % 2 ? -1 : 1;
}

// integer in the same square class
inline Int int_rep(const Rational& r) { return num(r) * den(r); }

inline bool local_square(const Rational& r, const Place& v) {
  if (v.is_infinite()) return r > 0;
  auto [k, u] = split_valuation(int_rep(r), v.p);
  if (k % 2) return false;
  if (v.p == 2) return mod_nonneg(u, Int(8)) == 1;
  return kronecker_symbol(u, v.p) == 1;
}

}  // namespace detail

inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  return detail::hilbert_int(detail::int_rep(a), detail::int_rep(b), v.p);
}

inline int hasse_witt(const DiagForm& q, const Place& v) {
  int r = 1;
  for (std::size_t i = 0; i < q.rank(); ++i)
    for (std::size_t j = i + 1; j < q.rank(); ++j) r *= hilbert_symbol(q[i], q[j], v);
  return r;
}

inline std::set<Place> relevant_places(const DiagForm& q) {
  std::set<Place> s{Place{Int(2)}, Place::infinity()};
  for (auto& a : q.coeffs()) {
    for (auto& p : prime_divisors(num(a))) s.insert(Place{p});
    for (auto& p : prime_divisors(den(a))) s.insert(Place{p});
  }
  return s;
}

struct InvariantProfile {
  std::size_t rank = 0;
  std::pair<std::size_t, std::size_t> signature;
  Int disc_class;
  std::map<Place, int> hasse_witt;

  // only the places where the invariant is -1 matter for comparison
  std::set<Place> nontrivial_places() const {
    std::set<Place> s;
    for (auto& [v, e] : hasse_witt)
      if (e == -1) s.insert(v);
    return s;
  }
};

inline InvariantProfile invariant_profile(const DiagForm& q) {
  InvariantProfile prof;
  prof.rank = q.rank();
  prof.signature = q.signature();
  prof.disc_class = q.disc_class();
  for (auto& v : relevant_places(q)) prof.hasse_witt[v] = hasse_witt(q, v);
  return prof;
}

inline bool is_isometric_Q(const DiagForm& q, const DiagForm& r) {
  if (q.rank() != r.rank() || q.signature() != r.signature()) return false;
  if (q.disc_class() != r.disc_class()) return false;
  auto places = relevant_places(q);
  for (auto& v : relevant_places(r)) places.insert(v);
  for (auto& v : places)
    if (!v.is_infinite() && hasse_witt(q, v) != hasse_witt(r, v)) return false;
  return true;
}

inline std::optional<Int> is_similar(const DiagForm& q, const DiagForm& r) {
  if (q.rank() != r.rank()) throw std::invalid_argument("is_similar needs equal ranks");
  std::set<Int> primes;
  for (auto& v : relevant_places(q))
    if (!v.is_infinite()) primes.insert(v.p);
  for (auto& v : relevant_places(r))
    if (!v.is_infinite()) primes.insert(v.p);
  std::vector<Int> ps(primes.begin(), primes.end());
  std::vector<Int> divisors{Int(1)};
  for (auto& p : ps) {
    auto n = divisors.size();
    for (std::size_t i = 0; i < n; ++i) divisors.push_back(divisors[i] * p);
  }
  std::sort(divisors.begin(), divisors.end());
  for (auto& d : divisors)
    for (int sgn : {1, -1}) {
      Int l = sgn * d;
      if (is_isometric_Q(r.scaled(Rational(l)), q)) return l;
    }
  return std::nullopt;
}

inline bool is_locally_isotropic(const DiagForm& q, const Place& v) {
  auto n = q.rank();
  if (n < 2) return false;
  if (v.is_infinite()) return !q.is_definite();
  if (n >= 5) return true;
  Rational d = q.determinant();
  if (n == 2) return detail::local_square(-d, v);
  int e = hasse_witt(q, v);
  if (n == 3) return e == hilbert_symbol(Rational(-1), -d, v);
  return !detail::local_square(d, v) || e == hilbert_symbol(Rational(-1), Rational(-1), v);
}

// Hasse-Minkowski: global isotropy is local isotropy everywhere
inline bool is_isotropic_Q(const DiagForm& q) {
  if (q.rank() < 2) throw std::invalid_argument("isotropy needs rank >= 2");
  if (q.is_definite()) return false;
  if (q.rank() == 2) return is_square(detail::int_rep(-q.determinant()));
  for (auto& v : relevant_places(q))
    if (!is_locally_isotropic(q, v)) return false;
  return true;
}

}  // namespace arithhyp
