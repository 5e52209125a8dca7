#pragma once

#include "arithhyp/qform.hpp"

namespace arithhyp {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, Rational(0)) {
    if (r == 0 || c == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMatrix diagonal(const std::vector<Rational>& d) {
    RatMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    RatMatrix m(rows.size(), rows.at(0).size());
    for (std::size_t i = 0; i < m.r_; ++i) {
      if (rows[i].size() != m.c_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static RatMatrix from_columns(const std::vector<std::vector<Rational>>& cols) {
    return from_rows(cols).transpose();
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  RatMatrix transpose() const {
    RatMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product dimension mismatch");
    RatMatrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
      }
    return p;
  }

  // determinant by plain Gaussian elimination over Q
  Rational determinant() const {
    if (r_ != c_) throw std::invalid_argument("determinant of a non-square matrix");
    RatMatrix m = *this;
    Rational det(1);
    for (std::size_t k = 0; k < r_; ++k) {
      std::size_t piv = k;
      while (piv < r_ && m(piv, k) == 0) ++piv;
      if (piv == r_) return Rational(0);
      if (piv != k) {
        for (std::size_t j = 0; j < c_; ++j) std::swap(m(k, j), m(piv, j));
        det = -det;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i < r_; ++i) {
        if (m(i, k) == 0) continue;
        Rational f = m(i, k) / m(k, k);
        for (std::size_t j = k; j < c_; ++j) m(i, j) -= f * m(k, j);
      }
    }
    return det;
  }

  // solve M w = b for square nonsingular M
  std::vector<Rational> solve(std::vector<Rational> b) const {
    if (r_ != c_ || b.size() != r_) throw std::invalid_argument("solve dimension mismatch");
    RatMatrix m = *this;
    const std::size_t n = r_;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) throw std::domain_error("singular system");
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
        std::swap(b[k], b[piv]);
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m(i, k) == 0) continue;
        Rational f = m(i, k) / m(k, k);
        for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        b[i] -= f * b[k];
      }
    }
    std::vector<Rational> w(n);
    for (std::size_t k = n; k-- > 0;) {
      Rational s = b[k];
      for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * w[j];
      w[k] = s / m(k, k);
    }
    return w;
  }

  RatMatrix leading_block(std::size_t k) const {
    RatMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
    return b;
  }

  Int denominator_lcm() const {
    Int l(1);
    for (auto& x : a_) l = lcm_int(l, den(x));
    return l;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i].push_back(to_string((*this)(i, j)));
    return out;
  }

  bool operator==(const RatMatrix&) const = default;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

// P^t diag(g) P
inline RatMatrix congruence(const RatMatrix& P, const DiagForm& g) {
  if (P.rows() != g.rank()) throw std::invalid_argument("congruence dimension mismatch");
  return P.transpose() * RatMatrix::diagonal(g.coeffs()) * P;
}

}  // namespace arithhyp
