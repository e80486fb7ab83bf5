#pragma once

#include "xxz/linalg.hpp"
#include "xxz/polynomial.hpp"

namespace xxz {

/// Vertex weights in the multiplicative parametrization: the a weight has a
/// simple pole at mu = t, the b weight is identically 1, and the c weight
/// carries principal square roots of both arguments.
template <class Real>
Cplx<Real> weight_a(Cplx<Real> q, Cplx<Real> mu, Cplx<Real> t) {
  return (q * q * mu - t) / (q * (mu - t));
}

template <class Real>
Cplx<Real> weight_c(Cplx<Real> q, Cplx<Real> mu, Cplx<Real> t) {
  return (q * q - Cplx<Real>(Real(1))) * std::sqrt(mu) * std::sqrt(t) /
         (q * (mu - t));
}

/// Chain data: N sites with inhomogeneities z, anisotropy parameter q, twist
/// kappa, and an n-magnon sector.  Square roots of z are fixed at construction
/// so every half-integer power downstream uses one consistent branch.
template <class Real>
struct ModelParams {
  int N = 0;
  int n = 0;
  Cplx<Real> q{};
  Cplx<Real> kappa{};
  CVec<Real> z;
  CVec<Real> sqrt_z;
  Tolerances tol;

  ModelParams() = default;

  ModelParams(int N_, int n_, Cplx<Real> q_, Cplx<Real> kappa_, CVec<Real> z_,
              Tolerances tol_ = {})
      : N(N_), n(n_), q(q_), kappa(kappa_), z(std::move(z_)), tol(tol_) {
    if (N < 1 || N > 30) throw std::invalid_argument("ModelParams: N out of range");
    if (n < 0 || n > N) throw std::invalid_argument("ModelParams: need 0 <= n <= N");
    if (int(z.size()) != N)
      throw std::invalid_argument("ModelParams: z must have N entries");
    if (q == Cplx<Real>(Real(0)) || std::abs(q * q - Cplx<Real>(Real(1))) < Real(1e-14))
      throw std::invalid_argument("ModelParams: q must satisfy q != 0, q^2 != 1");
    if (kappa == Cplx<Real>(Real(0)))
      throw std::invalid_argument("ModelParams: kappa must be nonzero");
    for (int i = 0; i < N; ++i) {
      if (z[i] == Cplx<Real>(Real(0)))
        throw std::invalid_argument("ModelParams: inhomogeneities must be nonzero");
      for (int j = i + 1; j < N; ++j)
        if (std::abs(z[i] - z[j]) < Real(1e-12))
          throw std::invalid_argument("ModelParams: inhomogeneities must be distinct");
    }
    sqrt_z.resize(N);
    for (int i = 0; i < N; ++i) sqrt_z[i] = std::sqrt(z[i]);
  }
};

/// Vacuum eigenvalue a(mu) = prod_j weight_a(q, mu, z_j); the companion
/// eigenvalue d(mu) is identically 1 in this normalization.
template <class Real>
Cplx<Real> vacuum_a(const ModelParams<Real>& p, Cplx<Real> mu) {
  Cplx<Real> r(Real(1));
  for (const auto& z : p.z) r *= weight_a(p.q, mu, z);
  return r;
}

/// F(x) = prod_j (x - q^2 z_j) and its derivative.
template <class Real>
Cplx<Real> f_function(const ModelParams<Real>& p, Cplx<Real> x) {
  Cplx<Real> r(Real(1));
  for (const auto& z : p.z) r *= x - p.q * p.q * z;
  return r;
}

template <class Real>
Cplx<Real> f_derivative(const ModelParams<Real>& p, Cplx<Real> x) {
  Cplx<Real> s(Real(0));
  for (int i = 0; i < p.N; ++i) {
    Cplx<Real> t(Real(1));
    for (int l = 0; l < p.N; ++l)
      if (l != i) t *= x - p.q * p.q * p.z[l];
    s += t;
  }
  return s;
}

/// Q(x) = prod_i (x - zeta_i) and its derivative.
template <class Real>
Cplx<Real> q_function(const CVec<Real>& zetas, Cplx<Real> x) {
  Cplx<Real> r(Real(1));
  for (const auto& zt : zetas) r *= x - zt;
  return r;
}

template <class Real>
Cplx<Real> q_derivative(const CVec<Real>& zetas, Cplx<Real> x) {
  Cplx<Real> s(Real(0));
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    Cplx<Real> t(Real(1));
    for (std::size_t l = 0; l < zetas.size(); ++l)
      if (l != i) t *= x - zetas[l];
    s += t;
  }
  return s;
}

/// 4x4 two-site vertex matrix in the basis (uu, ud, du, dd):
/// diag blocks a, antidiagonal mixing block [[b, c], [c, b]] with b = 1.
template <class Real>
Matrix<Real> r_matrix(Cplx<Real> q, Cplx<Real> x, Cplx<Real> y) {
  Cplx<Real> a = weight_a(q, x, y), b(Real(1)), c = weight_c(q, x, y);
  Matrix<Real> r(4, 4);
  r(0, 0) = a;
  r(1, 1) = b;
  r(1, 2) = c;
  r(2, 1) = c;
  r(2, 2) = b;
  r(3, 3) = a;
  return r;
}

/// Kronecker product (used to embed two-site operators into larger spaces).
template <class Real>
Matrix<Real> kron(const Matrix<Real>& a, const Matrix<Real>& b) {
  Matrix<Real> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

}  // namespace xxz
