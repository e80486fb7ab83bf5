#pragma once

#include "xxz/linalg.hpp"
#include "xxz/partitions.hpp"

namespace xxz {

/// e_0..e_kmax of the given variables (zero beyond the variable count).
template <class Real>
CVec<Real> elementary_table(const CVec<Real>& xs, int kmax) {
  CVec<Real> e(kmax + 1);
  e[0] = Cplx<Real>(Real(1));
  int cap = std::min<int>(kmax, int(xs.size()));
  for (const auto& x : xs)
    for (int k = cap; k >= 1; --k) e[k] += x * e[k - 1];
  return e;
}

/// h_0..h_kmax (complete homogeneous) of the given variables.
template <class Real>
CVec<Real> homogeneous_table(const CVec<Real>& xs, int kmax) {
  CVec<Real> h(kmax + 1);
  h[0] = Cplx<Real>(Real(1));
  for (const auto& x : xs)
    for (int k = 1; k <= kmax; ++k) h[k] += x * h[k - 1];
  return h;
}

template <class Real>
Cplx<Real> elementary(int k, const CVec<Real>& xs) {
  if (k < 0) return Cplx<Real>(Real(0));
  return elementary_table(xs, k)[k];
}

template <class Real>
Cplx<Real> homogeneous(int k, const CVec<Real>& xs) {
  if (k < 0) return Cplx<Real>(Real(0));
  return homogeneous_table(xs, k)[k];
}

enum class SchurMethod { jacobi_trudi, dual_jacobi_trudi, bialternant };

/// Schur polynomial of `lam` in the variables `xs`.
///
/// jacobi_trudi: det h_{lam_i - i + j} over the declared length of lam.
/// dual_jacobi_trudi: det e_{lam'_i - i + j} over lam_1 rows of the conjugate.
/// bialternant: det x_j^{lam_i + m - 1 - i} / prod_{i<j}(x_i - x_j); requires
/// pairwise-distinct variables (throws domain_error when two nearly coincide).
template <class Real>
Cplx<Real> schur(const Partition& lam, const CVec<Real>& xs,
                 SchurMethod method = SchurMethod::bialternant) {
  switch (method) {
    case SchurMethod::jacobi_trudi: {
      int l = lam.length();
      if (l == 0) return Cplx<Real>(Real(1));
      int kmax = lam.first() + l;
      CVec<Real> h = homogeneous_table(xs, kmax);
      auto hh = [&](int k) -> Cplx<Real> {
        if (k < 0 || k > kmax) return Cplx<Real>(Real(0));
        return h[k];
      };
      Matrix<Real> m(l, l);
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) m(i, j) = hh(lam.parts[i] - i + j);
      return determinant(m).value;
    }
    case SchurMethod::dual_jacobi_trudi: {
      Partition cj = lam.conjugate();
      int p = cj.length();
      if (p == 0) return Cplx<Real>(Real(1));
      int kmax = cj.first() + p;
      CVec<Real> e = elementary_table(xs, kmax);
      auto ee = [&](int k) -> Cplx<Real> {
        if (k < 0 || k > kmax) return Cplx<Real>(Real(0));
        return e[k];
      };
      Matrix<Real> m(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) m(i, j) = ee(cj.parts[i] - i + j);
      return determinant(m).value;
    }
    case SchurMethod::bialternant: {
      int mv = int(xs.size());
      Partition t = lam.trimmed();
      if (t.length() > mv) return Cplx<Real>(Real(0));
      Partition pl = t.padded(mv);
      for (int i = 0; i < mv; ++i)
        for (int j = i + 1; j < mv; ++j)
          if (std::abs(xs[i] - xs[j]) <
              Real(1e-10) * std::max<Real>(Real(1), std::abs(xs[i])))
            throw std::domain_error(
                "schur(bialternant): nearly coincident variables; use jacobi_trudi");
      Matrix<Real> m(mv, mv);
      for (int i = 0; i < mv; ++i)
        for (int j = 0; j < mv; ++j)
          m(i, j) = ipow(xs[j], pl.parts[i] + mv - 1 - i);
      Cplx<Real> v(Real(1));
      for (int i = 0; i < mv; ++i)
        for (int j = i + 1; j < mv; ++j) v *= xs[i] - xs[j];
      return determinant(m).value / v;
    }
  }
  throw std::logic_error("schur: unknown method");
}

/// Truncated product of two coefficient sequences: c_k = sum_i a_i b_{k-i}.
template <class Real>
CVec<Real> series_multiply(const CVec<Real>& a, const CVec<Real>& b, int kmax) {
  CVec<Real> c(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    Cplx<Real> s(Real(0));
    int lo = std::max(0, k - int(b.size()) + 1);
    int hi = std::min(k, int(a.size()) - 1);
    for (int i = lo; i <= hi; ++i) s += a[i] * b[k - i];
    c[k] = s;
  }
  return c;
}

/// Reciprocal series: d with sum_i c_i d_{k-i} = [k == 0]; needs c_0 != 0.
template <class Real>
CVec<Real> series_inverse(const CVec<Real>& c, int kmax) {
  if (c.empty() || c[0] == Cplx<Real>(Real(0)))
    throw std::domain_error("series_inverse: leading coefficient must be nonzero");
  CVec<Real> d(kmax + 1);
  d[0] = Cplx<Real>(Real(1)) / c[0];
  for (int k = 1; k <= kmax; ++k) {
    Cplx<Real> s(Real(0));
    int hi = std::min(k, int(c.size()) - 1);
    for (int i = 1; i <= hi; ++i) s += c[i] * d[k - i];
    d[k] = -s / c[0];
  }
  return d;
}

enum class SymCoeffKind { elementary, homogeneous, gamma, delta, f, g };

/// A named coefficient family c_0, c_1, ...; out-of-range lookups return 0.
template <class Real>
struct SymCoeffTable {
  SymCoeffKind kind;
  CVec<Real> values;

  Cplx<Real> at(int k) const {
    if (k < 0 || k >= int(values.size())) return Cplx<Real>(Real(0));
    return values[k];
  }
};

/// det_{1<=i,j<=k} c_{shift-i+j} (banded Toeplitz; k = 0 gives 1).
template <class Real>
Cplx<Real> toeplitz_band_det(const CVec<Real>& c, int k, int shift = 1) {
  if (k == 0) return Cplx<Real>(Real(1));
  Matrix<Real> m(k, k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      int idx = shift - i + j;
      if (0 <= idx && idx < int(c.size())) m(i - 1, j - 1) = c[idx];
    }
  return determinant(m).value;
}

/// Bordered-determinant form of the series quotient (a/c)_k: the (k+1)x(k+1)
/// determinant with top row a_0..a_k / c_0 and banded c rows below, times (-1)^k.
template <class Real>
Cplx<Real> triangular_quotient_entry(const CVec<Real>& a, const CVec<Real>& c, int k) {
  if (c.empty() || c[0] == Cplx<Real>(Real(0)))
    throw std::domain_error("triangular_quotient_entry: c_0 must be nonzero");
  Matrix<Real> m(k + 1, k + 1);
  for (int j = 0; j <= k; ++j)
    m(0, j) = (j < int(a.size()) ? a[j] : Cplx<Real>(Real(0))) / c[0];
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      int idx = j - i + 1;
      if (0 <= idx && idx < int(c.size())) m(i, j) = c[idx] / c[0];
    }
  return Real(parity_sign(k)) * determinant(m).value;
}

/// Solve the triangular convolution system c * d = a for d_0..d_size
/// (forward substitution; agrees with triangular_quotient_entry term by term).
template <class Real>
SymCoeffTable<Real> dual_triangular_solve(const CVec<Real>& a, const CVec<Real>& c,
                                          int size, SymCoeffKind kind = SymCoeffKind::f) {
  if (c.empty() || c[0] == Cplx<Real>(Real(0)))
    throw std::domain_error("dual_triangular_solve: c_0 must be nonzero");
  CVec<Real> d(size + 1);
  for (int k = 0; k <= size; ++k) {
    Cplx<Real> s = k < int(a.size()) ? a[k] : Cplx<Real>(Real(0));
    int lo = std::max(0, k - int(c.size()) + 1);
    for (int i = lo; i < k; ++i) s -= d[i] * c[k - i];
    d[k] = s / c[0];
  }
  return {kind, std::move(d)};
}

/// det_{1<=i,j<=s} t_{nu_i - i + j} over the declared length s of nu,
/// with t looked up as a table (0 outside range).
template <class Real>
Cplx<Real> partition_minor_det(const SymCoeffTable<Real>& t, const Partition& nu) {
  int s = nu.length();
  if (s == 0) return Cplx<Real>(Real(1));
  Matrix<Real> m(s, s);
  for (int i = 1; i <= s; ++i)
    for (int j = 1; j <= s; ++j) m(i - 1, j - 1) = t.at(nu.parts[i - 1] - i + j);
  return determinant(m).value;
}

}  // namespace xxz
