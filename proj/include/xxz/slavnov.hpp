#pragma once

#include "xxz/bethe.hpp"
#include "xxz/oracle.hpp"

namespace xxz {

/// Analytic derivative of the transfer eigenvalue with respect to root j,
/// evaluated at spectral point mu:
/// (q^2-1) mu / (q (mu - zeta_j)^2) * (kappa prod' wa(mu, zeta_i) - a(mu) prod' wa(zeta_i, mu)).
template <class Real>
Cplx<Real> dtau_dzeta(const ModelParams<Real>& p, const CVec<Real>& zetas, int j,
                      Cplx<Real> mu) {
  const int n = int(zetas.size());
  Cplx<Real> t1 = vacuum_a(p, mu);
  Cplx<Real> t2 = p.kappa;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    t1 *= weight_a(p.q, zetas[i], mu);
    t2 *= weight_a(p.q, mu, zetas[i]);
  }
  return (p.q * p.q - Cplx<Real>(Real(1))) * mu /
         (p.q * (mu - zetas[j]) * (mu - zetas[j])) * (t2 - t1);
}

/// The derivative-matrix scalar product: prefactor times det of the matrix
/// with entries dtau_dzeta(j, mu_k) stripped of their c-weight column factors.
/// This assembly reproduces the full-space bilinear scalar product exactly
/// (constant 1), for any N and on-shell zetas.
template <class Real>
Cplx<Real> slavnov_omega(const ModelParams<Real>& p, const CVec<Real>& mus,
                         const CVec<Real>& zetas,
                         CondTracker<Real>* tracker = nullptr) {
  const int n = int(zetas.size());
  if (int(mus.size()) != n)
    throw std::invalid_argument("slavnov_omega: need as many mus as zetas");
  Matrix<Real> om(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Cplx<Real> cinv(Real(1));
      for (int i = 0; i < n; ++i)
        cinv *= p.q * (zetas[i] - mus[k]) /
                ((p.q * p.q - Cplx<Real>(Real(1))) * std::sqrt(zetas[i]) *
                 std::sqrt(mus[k]));
      om(j, k) = dtau_dzeta(p, zetas, j, mus[k]) * cinv;
    }
  Cplx<Real> pref = ipow((Cplx<Real>(Real(1)) - p.q * p.q) / p.q, n);
  for (int i = 0; i < n; ++i) pref *= zetas[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pref *= weight_c(p.q, mus[j], mus[i]) * weight_c(p.q, zetas[i], zetas[j]);
  return pref * determinant_tracked(om, p.tol.min_rcond, tracker).value;
}

/// One entry of the rational kernel matrix:
/// c_j(mu) = [A(mu)/(mu - q^2 zeta_j) + B(mu)/(zeta_j - q^2 mu)] / (mu - zeta_j)
/// with A(x) = q^{2n-N} Q(x/q^2) F(q^4 x) and B(x) = kappa Q(q^2 x) F(q^2 x).
/// At mu -> zeta_j the bracket vanishes on shell; the removable limit is taken
/// analytically whenever mu falls within pole_gap of zeta_j.
template <class Real>
Cplx<Real> cjk_entry(const ModelParams<Real>& p, const CVec<Real>& zetas, int j,
                     Cplx<Real> mu) {
  const int n = int(zetas.size());
  const Cplx<Real> q2 = p.q * p.q;
  const Cplx<Real> zj = zetas[j];
  auto av = [&](Cplx<Real> x) {
    return ipow(p.q, 2 * n - p.N) * q_function(zetas, x / q2) *
           f_function(p, ipow(p.q, 4) * x);
  };
  auto ad = [&](Cplx<Real> x) {
    return ipow(p.q, 2 * n - p.N) *
           (q_derivative(zetas, x / q2) / q2 * f_function(p, ipow(p.q, 4) * x) +
            q_function(zetas, x / q2) * ipow(p.q, 4) *
                f_derivative(p, ipow(p.q, 4) * x));
  };
  auto bv = [&](Cplx<Real> x) {
    return p.kappa * q_function(zetas, q2 * x) * f_function(p, q2 * x);
  };
  auto bd = [&](Cplx<Real> x) {
    return p.kappa * q2 *
           (q_derivative(zetas, q2 * x) * f_function(p, q2 * x) +
            q_function(zetas, q2 * x) * f_derivative(p, q2 * x));
  };
  if (std::abs(mu - zj) < Real(p.tol.pole_gap) * std::max<Real>(Real(1), std::abs(zj))) {
    Cplx<Real> x = zj;
    Cplx<Real> t1 = (ad(x) * (x - q2 * zj) - av(x)) / ((x - q2 * zj) * (x - q2 * zj));
    Cplx<Real> t2 = (bd(x) * (zj - q2 * x) + q2 * bv(x)) / ((zj - q2 * x) * (zj - q2 * x));
    return t1 + t2;
  }
  return (av(mu) / (mu - q2 * zj) + bv(mu) / (zj - q2 * mu)) / (mu - zj);
}

/// Kernel matrix column-by-column over a list of spectral points.
template <class Real>
Matrix<Real> cjk_matrix(const ModelParams<Real>& p, const CVec<Real>& zetas,
                        const CVec<Real>& points) {
  const int n = int(zetas.size());
  Matrix<Real> c(n, int(points.size()));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < int(points.size()); ++k)
      c(j, k) = cjk_entry(p, zetas, j, points[k]);
  return c;
}

/// Scalar product assembled from the kernel determinant.  Equal to
/// slavnov_omega (and hence to the full-space oracle) through the column
/// extraction Omega_{jk} = P_k c_{jk} with
/// P_k = (-1)^{n+1} (q^2-1)^{1-n} mu_k sqrt(mu_k)^{-n} / (F(q^2 mu_k) prod_i sqrt(zeta_i)).
template <class Real>
Cplx<Real> slavnov_c(const ModelParams<Real>& p, const CVec<Real>& mus,
                     const CVec<Real>& zetas, CondTracker<Real>* tracker = nullptr) {
  const int n = int(zetas.size());
  Cplx<Real> detc =
      determinant_tracked(cjk_matrix(p, zetas, mus), p.tol.min_rcond, tracker).value;
  Cplx<Real> sqz(Real(1));
  for (const auto& zt : zetas) sqz *= std::sqrt(zt);
  Cplx<Real> pk(Real(1));
  for (int k = 0; k < n; ++k) {
    Cplx<Real> mu = mus[k];
    Cplx<Real> halfpow = mu * ipow(std::sqrt(mu), -n);
    pk *= Real(parity_sign(n + 1)) * ipow(p.q * p.q - Cplx<Real>(Real(1)), 1 - n) *
          halfpow / (f_function(p, p.q * p.q * mu) * sqz);
  }
  Cplx<Real> pref = ipow((Cplx<Real>(Real(1)) - p.q * p.q) / p.q, n);
  for (int i = 0; i < n; ++i) pref *= zetas[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pref *= weight_c(p.q, mus[j], mus[i]) * weight_c(p.q, zetas[i], zetas[j]);
  return pref * pk * detc;
}

/// Vandermonde-reduced kernel determinant: det c / (V(zeta) V(mu)).
template <class Real>
Cplx<Real> stilde_from_c(const ModelParams<Real>& p, const CVec<Real>& mus,
                         const CVec<Real>& zetas, CondTracker<Real>* tracker = nullptr) {
  Cplx<Real> detc =
      determinant_tracked(cjk_matrix(p, zetas, mus), p.tol.min_rcond, tracker).value;
  return detc / (vandermonde(zetas) * vandermonde(mus));
}

/// Symmetrized determinant form that touches the roots only through the
/// transfer eigenvalue values tau(mu_k).  Row i = 1..n, column k:
/// mu_k^{i-2} (q^{2-2i} q^{2n-N} F(q^4 mu_k)/F(q^2 mu_k) + q^{2i-2} kappa - q^n tau_k),
/// the determinant divided by V(mu).
template <class Real>
Cplx<Real> symmetric_tau_form(const ModelParams<Real>& p, const CVec<Real>& mus,
                              const CVec<Real>& tau_values,
                              CondTracker<Real>* tracker = nullptr) {
  const int n = int(mus.size());
  if (int(tau_values.size()) != n)
    throw std::invalid_argument("symmetric_tau_form: one tau value per mu");
  Matrix<Real> m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int k = 0; k < n; ++k) {
      Cplx<Real> mu = mus[k];
      Cplx<Real> term = ipow(p.q, 2 - 2 * i) * ipow(p.q, 2 * n - p.N) *
                            f_function(p, ipow(p.q, 4) * mu) /
                            f_function(p, p.q * p.q * mu) +
                        ipow(p.q, 2 * i - 2) * p.kappa - ipow(p.q, n) * tau_values[k];
      m(i - 1, k) = ipow(mu, i - 2) * term;
    }
  return determinant_tracked(m, p.tol.min_rcond, tracker).value / vandermonde(mus);
}

/// Conversion constant linking the two reduced determinants:
/// stilde_from_c = symmetric_form_prefactor * symmetric_tau_form.
template <class Real>
Cplx<Real> symmetric_form_prefactor(const ModelParams<Real>& p, const CVec<Real>& mus) {
  const int n = int(mus.size());
  Cplx<Real> f = Real(parity_sign(n * (n - 1) / 2)) *
                 ipow(p.q * p.q - Cplx<Real>(Real(1)), -n);
  for (const auto& mu : mus) f *= f_function(p, p.q * p.q * mu);
  return f;
}

/// Lagrange-interpolation weight matrix rho_{i,j} = zeta_j^{i-1} / prod_{l != j}(zeta_j - zeta_l).
/// Row sums against powers reproduce complete homogeneous functions of the roots.
template <class Real>
Matrix<Real> rho_matrix(const CVec<Real>& zetas) {
  const int n = int(zetas.size());
  Matrix<Real> r(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < n; ++j) {
      Cplx<Real> den(Real(1));
      for (int l = 0; l < n; ++l)
        if (l != j) den *= zetas[j] - zetas[l];
      r(i - 1, j) = ipow(zetas[j], i - 1) / den;
    }
  return r;
}

/// Row-symmetrized kernel entry in its Q-polynomial form (row index i in
/// [0, n)): the closed form of (rho * c)_{i, mu},
///   mu^{i-1}/(q^2-1) * [ q^{2n-N} F(q^4 mu)/Q(mu) * (q^{-2i} Q(mu) - Q(mu/q^2))
///                        - kappa F(q^2 mu)/Q(mu) * (Q(q^2 mu) - q^{2i} Q(mu)) ].
template <class Real>
Cplx<Real> symmetrized_c_q_entry(const ModelParams<Real>& p, const CVec<Real>& zetas,
                                 int i, Cplx<Real> mu) {
  const int n = int(zetas.size());
  const Cplx<Real> q2 = p.q * p.q;
  const Cplx<Real> qm = q_function(zetas, mu);
  Cplx<Real> t1 = ipow(p.q, 2 * n - p.N) * f_function(p, ipow(p.q, 4) * mu) / qm *
                  (ipow(p.q, -2 * i) * qm - q_function(zetas, mu / q2));
  Cplx<Real> t2 = p.kappa * f_function(p, q2 * mu) / qm *
                  (q_function(zetas, q2 * mu) - ipow(p.q, 2 * i) * qm);
  return ipow(mu, i - 1) / (q2 - Cplx<Real>(Real(1))) * (t1 - t2);
}

/// The same symmetrized entry with the Q-polynomials eliminated through the
/// transfer eigenvalue (row index i in [0, n)); multiplying by F(q^2 mu)
/// recovers symmetrized_c_q_entry whenever tau_mu satisfies the
/// eigenvalue-Q relation:
///   mu^{i-1}/(q^2-1) * (q^{-2i} q^{2n-N} F(q^4 mu)/F(q^2 mu) + q^{2i} kappa - q^n tau_mu).
template <class Real>
Cplx<Real> symmetrized_c_tau_entry(const ModelParams<Real>& p, int n, int i,
                                   Cplx<Real> mu, Cplx<Real> tau_mu) {
  const Cplx<Real> q2 = p.q * p.q;
  Cplx<Real> bracket = ipow(p.q, -2 * i) * ipow(p.q, 2 * n - p.N) *
                           f_function(p, ipow(p.q, 4) * mu) /
                           f_function(p, q2 * mu) +
                       ipow(p.q, 2 * i) * p.kappa - ipow(p.q, n) * tau_mu;
  return ipow(mu, i - 1) / (q2 - Cplx<Real>(Real(1))) * bracket;
}

/// Normalized-convention scalar product via the kernel determinant.  The
/// per-point factor has the F(q^2 x) pole cancelled analytically,
/// Ptil(x) = (-1)^{n+1} (q^2-1)^{1-n} x sqrt(x)^{-n} q^N / (F(q^4 x) prod_i sqrt(zeta_i)),
/// so spectral points sitting exactly on an inhomogeneity are legal inputs.
template <class Real>
Cplx<Real> scalar_product_normalized(const ModelParams<Real>& p, const CVec<Real>& xs,
                                     const CVec<Real>& zetas,
                                     CondTracker<Real>* tracker = nullptr) {
  const int n = int(zetas.size());
  if (int(xs.size()) != n)
    throw std::invalid_argument("scalar_product_normalized: need n spectral points");
  Cplx<Real> sqz(Real(1));
  for (const auto& zt : zetas) sqz *= std::sqrt(zt);
  auto a_of = [&](Cplx<Real> x) {
    return ipow(p.q, -p.N) * f_function(p, ipow(p.q, 4) * x) /
           f_function(p, p.q * p.q * x);
  };
  Cplx<Real> cmu(Real(1)), cze(Real(1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cmu *= weight_c(p.q, xs[j], xs[i]);
      cze *= weight_c(p.q, zetas[i], zetas[j]);
    }
  Cplx<Real> pt(Real(1));
  for (const auto& x : xs)
    pt *= Real(parity_sign(n + 1)) * ipow(p.q * p.q - Cplx<Real>(Real(1)), 1 - n) * x *
          ipow(std::sqrt(x), -n) * ipow(p.q, p.N) /
          (f_function(p, ipow(p.q, 4) * x) * sqz);
  Cplx<Real> detc =
      determinant_tracked(cjk_matrix(p, zetas, xs), p.tol.min_rcond, tracker).value;
  Cplx<Real> pref = ipow((Cplx<Real>(Real(1)) - p.q * p.q) / p.q, n);
  for (const auto& zt : zetas) pref *= zt;
  Cplx<Real> aprod(Real(1));
  for (const auto& zt : zetas) aprod *= a_of(zt);
  return pref * cmu * cze * pt * detc / aprod;
}

/// Bilinear norm of the Bethe state in the normalized convention: all kernel
/// columns sit on shell and take their diagonal limits.
template <class Real>
Cplx<Real> norm_normalized(const ModelParams<Real>& p, const CVec<Real>& zetas,
                           CondTracker<Real>* tracker = nullptr) {
  return scalar_product_normalized(p, zetas, zetas, tracker);
}

/// Raw-convention norm: the normalized norm restored by the vacuum eigenvalues
/// of both state factors.
template <class Real>
Cplx<Real> norm_raw(const ModelParams<Real>& p, const CVec<Real>& zetas,
                    CondTracker<Real>* tracker = nullptr) {
  Cplx<Real> ap(Real(1));
  for (const auto& zt : zetas) ap *= vacuum_a(p, zt);
  return norm_normalized(p, zetas, tracker) * ap * ap;
}

}  // namespace xxz
