#pragma once

#include "xxz/common.hpp"

namespace xxz {

/// Dense row-major complex matrix, sized at construction.
template <class Real>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(std::size_t(rows) * std::size_t(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative size");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Cplx<Real>(Real(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Cplx<Real>& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Cplx<Real>& operator()(int i, int j) const {
    return a_[std::size_t(i) * cols_ + j];
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        Cplx<Real> aik = (*this)(i, k);
        if (aik == Cplx<Real>(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Real max_abs() const {
    Real m = 0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  CVec<Real> a_;
};

template <class Real>
struct DetResult {
  Cplx<Real> value{};
  /// Cheap conditioning estimate min|U_ii| / max|U_ii| from the LU factors.
  Real rcond = 0;
};

/// Determinant by LU with partial pivoting.
template <class Real>
DetResult<Real> determinant(Matrix<Real> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix must be square");
  const int n = m.rows();
  if (n == 0) return {Cplx<Real>(Real(1)), Real(1)};
  Cplx<Real> det(Real(1));
  Real dmin = std::numeric_limits<Real>::infinity(), dmax = 0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    Real best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      Real v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    Cplx<Real> pivot = m(k, k);
    Real pa = std::abs(pivot);
    dmin = std::min(dmin, pa);
    dmax = std::max(dmax, pa);
    if (pa == Real(0)) return {Cplx<Real>(Real(0)), Real(0)};
    det *= pivot;
    for (int i = k + 1; i < n; ++i) {
      Cplx<Real> f = m(i, k) / pivot;
      m(i, k) = f;
      if (f == Cplx<Real>(0)) continue;
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return {det, dmax > 0 ? dmin / dmax : Real(0)};
}

/// Records the worst determinant conditioning seen along a computation.
template <class Real>
struct CondTracker {
  Real worst = Real(1);
  void update(Real r) { worst = std::min(worst, r); }
};

/// Determinant that records conditioning and, for double precision, escalates
/// to long double when the rcond estimate falls below `min_rcond`.
template <class Real>
DetResult<Real> determinant_tracked(const Matrix<Real>& m, double min_rcond,
                                    CondTracker<Real>* tracker = nullptr) {
  DetResult<Real> r = determinant(m);
  if (tracker) tracker->update(r.rcond);
  if constexpr (std::is_same_v<Real, double>) {
    if (r.rcond < Real(min_rcond)) {
      Matrix<long double> hi(m.rows(), m.cols());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          hi(i, j) = Cplx<long double>(m(i, j).real(), m(i, j).imag());
      DetResult<long double> rh = determinant(hi);
      r.value = Cplx<Real>(double(rh.value.real()), double(rh.value.imag()));
    }
  }
  return r;
}

/// Solve A x = b by LU with partial pivoting; throws on numerically singular A.
template <class Real>
CVec<Real> solve(Matrix<Real> a, CVec<Real> b) {
  const int n = a.rows();
  if (a.cols() != n || int(b.size()) != n)
    throw std::invalid_argument("solve: shape mismatch");
  for (int k = 0; k < n; ++k) {
    int piv = k;
    Real best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      Real v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == Real(0)) throw std::runtime_error("solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      Cplx<Real> f = a(i, k) / a(k, k);
      if (f == Cplx<Real>(0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    Cplx<Real> s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return b;
}

/// Cofactor-expansion determinant; exponential cost, used as a cross-check
/// oracle on small matrices only.
template <class Real>
Cplx<Real> determinant_cofactor(const Matrix<Real>& m) {
  const int n = m.rows();
  if (n == 0) return Cplx<Real>(Real(1));
  if (n == 1) return m(0, 0);
  Cplx<Real> acc(Real(0));
  for (int j = 0; j < n; ++j) {
    Matrix<Real> sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = m(r, c);
      }
    }
    acc += Real(parity_sign(j)) * m(0, j) * determinant_cofactor(sub);
  }
  return acc;
}

/// prod_{i<j} (x_j - x_i): determinant of the Vandermonde matrix in x.
template <class Real>
Cplx<Real> vandermonde(const CVec<Real>& xs) {
  Cplx<Real> p(Real(1));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) p *= xs[j] - xs[i];
  return p;
}

}  // namespace xxz
