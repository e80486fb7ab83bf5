#pragma once

#include "xxz/combinatorial.hpp"
#include "xxz/slavnov.hpp"

namespace xxz {

namespace detail {

/// Exchange coefficient of the commutation expansion at site m:
/// beta_i = 2 prod_k wa(zeta_k, z_m)^{-1} * wc(zeta_i, z_m) * prod_{j != i} wa(zeta_j, zeta_i).
template <class Real>
Cplx<Real> site_exchange_beta(const ModelParams<Real>& p, const CVec<Real>& zetas,
                              int m, int i) {
  const int n = int(zetas.size());
  Cplx<Real> b(Real(2));
  for (const auto& zk : zetas) b /= weight_a(p.q, zk, p.z[m]);
  b *= weight_c(p.q, zetas[i], p.z[m]);
  for (int j = 0; j < n; ++j)
    if (j != i) b *= weight_a(p.q, zetas[j], zetas[i]);
  return b;
}

/// Pole-cancelled column factor of the normalized kernel assembly.
template <class Real>
Cplx<Real> ptil(const ModelParams<Real>& p, Cplx<Real> sqrt_zeta_prod, int n,
                Cplx<Real> x) {
  return Real(parity_sign(n + 1)) * ipow(p.q * p.q - Cplx<Real>(Real(1)), 1 - n) * x *
         ipow(std::sqrt(x), -n) * ipow(p.q, p.N) /
         (f_function(p, ipow(p.q, 4) * x) * sqrt_zeta_prod);
}

template <class Real>
Cplx<Real> ordered_c_product(const ModelParams<Real>& p, const CVec<Real>& xs) {
  Cplx<Real> c(Real(1));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      c *= weight_c(p.q, xs[j], xs[i]);
  return c;
}

}  // namespace detail

/// One-point function by the commutation sum: for each site,
/// <sigma^z_m> = 1 - sum_i beta_i S_i / Nnorm, where S_i is the normalized
/// scalar product with root i replaced by the inhomogeneity z_m.  Valid for
/// any on-shell root set at generic q and kappa.
template <class Real>
CVec<Real> sigma_z_root_sum(const ModelParams<Real>& p, const CVec<Real>& zetas,
                            CondTracker<Real>* tracker = nullptr) {
  const int n = int(zetas.size());
  Cplx<Real> nn = norm_normalized(p, zetas, tracker);
  CVec<Real> out(p.N);
  for (int m = 0; m < p.N; ++m) {
    Cplx<Real> acc(Real(0));
    for (int i = 0; i < n; ++i) {
      CVec<Real> swapped{p.z[m]};
      for (int j = 0; j < n; ++j)
        if (j != i) swapped.push_back(zetas[j]);
      Cplx<Real> si = scalar_product_normalized(p, swapped, zetas, tracker);
      acc += detail::site_exchange_beta(p, zetas, m, i) * si / nn;
    }
    out[m] = Cplx<Real>(Real(1)) - acc;
  }
  return out;
}

/// The same one-point function collapsed to a single determinant ratio per
/// site: rank-one column updates of the on-shell kernel matrix, divided by its
/// unmodified determinant.
template <class Real>
CVec<Real> sigma_z_single_det(const ModelParams<Real>& p, const CVec<Real>& zetas,
                              CondTracker<Real>* tracker = nullptr) {
  const int n = int(zetas.size());
  Cplx<Real> sqz(Real(1));
  for (const auto& zt : zetas) sqz *= std::sqrt(zt);
  Matrix<Real> c0 = cjk_matrix(p, zetas, zetas);
  Cplx<Real> det0 = determinant_tracked(c0, p.tol.min_rcond, tracker).value;
  Cplx<Real> cmu0 = detail::ordered_c_product(p, zetas);
  CVec<Real> out(p.N);
  for (int m = 0; m < p.N; ++m) {
    CVec<Real> colz(n);
    for (int j = 0; j < n; ++j) colz[j] = cjk_entry(p, zetas, j, p.z[m]);
    Cplx<Real> pz = detail::ptil(p, sqz, n, p.z[m]);
    Matrix<Real> cmod = c0;
    for (int i = 0; i < n; ++i) {
      CVec<Real> ki = zetas;
      ki[i] = p.z[m];
      Cplx<Real> alpha = -detail::site_exchange_beta(p, zetas, m, i) *
                         (detail::ordered_c_product(p, ki) / cmu0) *
                         (pz / detail::ptil(p, sqz, n, zetas[i]));
      for (int j = 0; j < n; ++j) cmod(j, i) += alpha * colz[j];
    }
    out[m] = determinant_tracked(cmod, p.tol.min_rcond, tracker).value / det0;
  }
  return out;
}

/// Cube-root-point site profile via the single-pole resummation factor
/// 1 + 6 q Q(z_m) Q(q^2 z_m) / F(q z_m) * G, with G a one-fold sum over the
/// roots.  Proportional to the one-point function (site-independent constant).
template <class Real>
CVec<Real> sigma_z_g_factor(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  if (!at_cube_root_point(p))
    throw std::domain_error("sigma_z_g_factor: requires the cube-root point");
  const int n = int(zetas.size());
  CVec<Real> out(p.N);
  for (int m = 0; m < p.N; ++m) {
    Cplx<Real> zm = p.z[m];
    Cplx<Real> g(Real(0));
    for (int i = 0; i < n; ++i) {
      Cplx<Real> zi = zetas[i];
      Cplx<Real> den = (zi - zm) * (p.q * zi - zm) * (zi - p.q * zm) *
                       q_function(zetas, p.q * p.q * zi);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= zi - zetas[j];
      g += zi * zm * f_function(p, p.q * zi) / den;
    }
    out[m] = Cplx<Real>(Real(1)) + Real(6) * p.q * q_function(zetas, zm) *
                                       q_function(zetas, p.q * p.q * zm) /
                                       f_function(p, p.q * zm) * g;
  }
  return out;
}

/// Cube-root-point site profile as a cube-power alternant determinant over the
/// roots, reduced by the Vandermonde (proportional route; the proportionality
/// constant depends on the inhomogeneities but not on the site).
template <class Real>
CVec<Real> sigma_z_comb_det(const ModelParams<Real>& p, const CVec<Real>& zetas,
                            CondTracker<Real>* tracker = nullptr) {
  if (!at_cube_root_point(p))
    throw std::domain_error("sigma_z_comb_det: requires the cube-root point");
  const int n = int(zetas.size());
  CVec<Real> out(p.N);
  for (int m = 0; m < p.N; ++m) {
    Cplx<Real> zm = p.z[m];
    Cplx<Real> w = f_function(p, p.q * zm) * q_function(zetas, p.q * zm);
    Matrix<Real> m1(n, n);
    for (int j = 1; j <= n; ++j)
      for (int k = 0; k < n; ++k)
        m1(j - 1, k) =
            ipow(zetas[k], 3 * j - 2) / f_function(p, p.q * zetas[k]) -
            Real(2) * ipow(zm, 3 * j - 2) * q_function(zetas, p.q * zetas[k]) / w;
    out[m] = determinant_tracked(m1, p.tol.min_rcond, tracker).value /
             vandermonde(zetas);
  }
  return out;
}

/// Fully root-free one-point function at the cube-root point.  Everything is
/// evaluated from the coefficient polynomial FQ and the inhomogeneities: the
/// h-functions of the roots arrive through f_k, the norm through the
/// root-elimination identity, and the answer is exact (constant 1 against the
/// full-space oracle).
template <class Real>
CVec<Real> sigma_z_symmetrized(const ModelParams<Real>& p,
                               CondTracker<Real>* tracker = nullptr) {
  if (!at_cube_root_point(p))
    throw std::domain_error("sigma_z_symmetrized: requires the cube-root point");
  const int n = p.n, K = 3 * n;
  CVec<Real> co = fq_coefficients(p);
  SymCoeffTable<Real> gam = gamma_from_fq(co);
  SymCoeffTable<Real> dlt = delta_from_gamma(gam, K);
  SymCoeffTable<Real> f = f_table(p, dlt, K);
  auto hq = [&](int i) -> Cplx<Real> {
    if (i < 0 || i > K) return Cplx<Real>(Real(0));
    return ipow(-p.q * p.q, i) * f.values[i];
  };
  Cplx<Real> znorm = ipow(p.q - Cplx<Real>(Real(1)), -n) *
                     ipow(-p.q, -(long long)(n) * (n - 1) / 2) *
                     q_product_root_free(p, co);
  CVec<Real> out(p.N);
  for (int m = 0; m < p.N; ++m) {
    Cplx<Real> zm = p.z[m];
    Cplx<Real> wfree = eval_coeffs(co, p.q * p.q * zm);
    Matrix<Real> m3(n, n);
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        Cplx<Real> t1 = hq(j + 3 * k - 2 - n) * wfree;
        Cplx<Real> s(Real(0));
        for (int i = 0; i <= K; ++i) {
          int idx = 2 * n + j - i;
          if (idx < 0 || idx > K) continue;
          s += ipow(-p.q, i) * hq(idx) * gam.at(i);
        }
        m3(j - 1, k - 1) = t1 - Real(2) * ipow(zm, 3 * k - 2) * s;
      }
    out[m] = Real(parity_sign((long long)(n) * (n - 1) / 2)) *
             determinant_tracked(m3, p.tol.min_rcond, tracker).value /
             (ipow(wfree, n) * znorm);
  }
  return out;
}

}  // namespace xxz
