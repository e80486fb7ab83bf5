#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "xxz/common.hpp"

namespace xxz {

/// Dense univariate polynomial, coefficients stored in ascending degree order.
template <class Real>
struct Poly {
  CVec<Real> c;  // c[k] multiplies x^k; empty means the zero polynomial

  Poly() = default;
  explicit Poly(CVec<Real> coeffs) : c(std::move(coeffs)) {}

  int degree() const { return int(c.size()) - 1; }

  Cplx<Real> eval(Cplx<Real> x) const {
    Cplx<Real> acc(Real(0));
    for (int k = degree(); k >= 0; --k) acc = acc * x + c[k];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly(CVec<Real>{Cplx<Real>(Real(0))});
    CVec<Real> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = Real(k) * c[k];
    return Poly(std::move(d));
  }

  /// Monic polynomial prod_i (x - r_i).
  static Poly from_roots(const CVec<Real>& roots) {
    CVec<Real> p{Cplx<Real>(Real(1))};
    for (const auto& r : roots) {
      CVec<Real> q(p.size() + 1);
      for (std::size_t k = 0; k < p.size(); ++k) {
        q[k + 1] += p[k];
        q[k] -= r * p[k];
      }
      p = std::move(q);
    }
    return Poly(std::move(p));
  }

  Poly operator*(const Poly& o) const {
    if (c.empty() || o.c.empty()) return Poly();
    CVec<Real> r(c.size() + o.c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == Cplx<Real>(0)) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    }
    return Poly(std::move(r));
  }

  Poly scaled(Cplx<Real> s) const {
    Poly r = *this;
    for (auto& x : r.c) x *= s;
    return r;
  }

  Poly operator-(const Poly& o) const {
    CVec<Real> r(std::max(c.size(), o.c.size()));
    for (std::size_t k = 0; k < r.size(); ++k) {
      Cplx<Real> a = k < c.size() ? c[k] : Cplx<Real>(0);
      Cplx<Real> b = k < o.c.size() ? o.c[k] : Cplx<Real>(0);
      r[k] = a - b;
    }
    return Poly(std::move(r));
  }

  /// Drop trailing coefficients with magnitude <= tol (keeps at least one).
  Poly trimmed(Real tol) const {
    CVec<Real> r = c;
    while (r.size() > 1 && std::abs(r.back()) <= tol) r.pop_back();
    return Poly(std::move(r));
  }
};

/// Synthetic long division: returns {quotient, remainder} with
/// num = quotient * den + remainder, deg(remainder) < deg(den).
template <class Real>
std::pair<Poly<Real>, Poly<Real>> poly_divide(const Poly<Real>& num,
                                              const Poly<Real>& den) {
  int dd = den.degree();
  while (dd >= 0 && den.c[dd] == Cplx<Real>(0)) --dd;
  if (dd < 0) throw std::invalid_argument("poly_divide: zero divisor");
  CVec<Real> rem = num.c;
  int dn = int(rem.size()) - 1;
  if (dn < dd) return {Poly<Real>(CVec<Real>{Cplx<Real>(0)}), Poly<Real>(rem)};
  CVec<Real> quo(dn - dd + 1);
  for (int k = dn - dd; k >= 0; --k) {
    Cplx<Real> f = rem[k + dd] / den.c[dd];
    quo[k] = f;
    if (f == Cplx<Real>(0)) continue;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= f * den.c[j];
  }
  rem.resize(std::max(dd, 1));
  return {Poly<Real>(std::move(quo)), Poly<Real>(std::move(rem))};
}

/// All roots of p: eigenvalues of the monic companion matrix, each refined by
/// a few Newton steps on the original coefficients.
template <class Real>
CVec<Real> poly_roots(const Poly<Real>& p, int polish_iters = 12) {
  int d = p.degree();
  while (d >= 0 && p.c[d] == Cplx<Real>(0)) --d;
  if (d < 0) throw std::invalid_argument("poly_roots: zero polynomial");
  if (d == 0) return {};
  using EMat =
      Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  EMat comp = EMat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = Cplx<Real>(Real(1));
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p.c[i] / p.c[d];
  Eigen::ComplexEigenSolver<EMat> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("poly_roots: eigenvalue iteration failed");
  CVec<Real> roots(d);
  Poly<Real> dp = p.derivative();
  for (int i = 0; i < d; ++i) {
    Cplx<Real> r = es.eigenvalues()(i);
    for (int it = 0; it < polish_iters; ++it) {
      Cplx<Real> fv = p.eval(r);
      Cplx<Real> dv = dp.eval(r);
      if (std::abs(dv) == Real(0)) break;
      Cplx<Real> step = fv / dv;
      r -= step;
      if (std::abs(step) <= Real(1e-16) * (Real(1) + std::abs(r))) break;
    }
    roots[i] = r;
  }
  std::sort(roots.begin(), roots.end(), [](const Cplx<Real>& a, const Cplx<Real>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace xxz
