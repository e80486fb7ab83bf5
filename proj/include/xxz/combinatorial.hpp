#pragma once

#include "xxz/bethe.hpp"
#include "xxz/symfunc.hpp"

namespace xxz {

/// Primitive cube root of unity (or its conjugate) used by the closed-form
/// evaluations; the twist is locked to kappa = q^2 there.
template <class Real = double>
Cplx<Real> cube_root_q(bool conjugate = false) {
  Real th = Real(2) * Real(RandomDraw::kPi) / Real(3);
  if (conjugate) th = -th;
  return Cplx<Real>(std::cos(th), std::sin(th));
}

template <class Real>
bool at_cube_root_point(const ModelParams<Real>& p, Real tol = Real(1e-12)) {
  bool qcube = std::abs(ipow(p.q, 3) - Cplx<Real>(Real(1))) < tol &&
               std::abs(p.q - Cplx<Real>(Real(1))) > Real(0.5);
  return qcube && std::abs(p.kappa - p.q * p.q) < tol && p.N == 2 * p.n;
}

template <class Real>
ModelParams<Real> make_cube_root_params(int n, CVec<Real> zs, bool conjugate = false,
                                        Tolerances tol = {}) {
  Cplx<Real> q = cube_root_q<Real>(conjugate);
  return ModelParams<Real>(2 * n, n, q, q * q, std::move(zs), tol);
}

/// Transfer eigenvalue of the distinguished half-filled state at the cube-root
/// point: tau(mu) = -q^{2n+1} F(mu) / F(q^2 mu), independent of the roots.
template <class Real>
Cplx<Real> ground_state_tau(const ModelParams<Real>& p, Cplx<Real> mu) {
  if (!at_cube_root_point(p))
    throw std::domain_error("ground_state_tau: requires the cube-root point");
  return -ipow(p.q, 2 * p.n + 1) * f_function(p, mu) / f_function(p, p.q * p.q * mu);
}

/// Exponents 0 <= e <= 3n with e mod 3 != 1, descending (2n+1 of them).
inline std::vector<int> fq_exponents(int n) {
  std::vector<int> es;
  for (int e = 3 * n; e >= 0; --e)
    if (e % 3 != 1) es.push_back(e);
  return es;
}

/// Coefficients (ascending, degree 3n) of the combined polynomial
/// FQ(t) = F(q^2 t) Q(q^2 t), produced without knowing the roots: each
/// coefficient is an alternant minor over the inhomogeneities divided by the
/// top minor, i.e. a ratio of Schur polynomials of staircase-type shapes.
template <class Real>
CVec<Real> fq_coefficients(const ModelParams<Real>& p) {
  if (!at_cube_root_point(p))
    throw std::domain_error("fq_coefficients: requires the cube-root point");
  const int n = p.n, m = 2 * n;
  std::vector<int> es = fq_exponents(n);
  auto schur_of = [&](const Partition& lam) {
    try {
      return schur(lam, p.z, SchurMethod::bialternant);
    } catch (const std::domain_error&) {
      return schur(lam, p.z, SchurMethod::jacobi_trudi);
    }
  };
  Cplx<Real> s_top = schur_of(staircase_partitions(n).y_tilde);
  CVec<Real> co(3 * n + 1);
  for (std::size_t r = 0; r < es.size(); ++r) {
    std::vector<int> rem;
    for (int e : es)
      if (e != es[r]) rem.push_back(e);  // still descending, 2n entries
    std::vector<int> lam(m);
    for (int i = 0; i < m; ++i) lam[i] = rem[i] - (m - 1 - i);
    co[es[r]] = Real(parity_sign(long(r))) * schur_of(Partition(lam)) / s_top;
  }
  return co;
}

/// The same polynomial evaluated directly as the ratio of the two alternant
/// determinants (literal route; the coefficient route must agree).
template <class Real>
Cplx<Real> fq_determinant_ratio(const ModelParams<Real>& p, Cplx<Real> t,
                                CondTracker<Real>* tracker = nullptr) {
  if (!at_cube_root_point(p))
    throw std::domain_error("fq_determinant_ratio: requires the cube-root point");
  const int n = p.n, m = 2 * n;
  std::vector<int> es = fq_exponents(n);
  Matrix<Real> num(m + 1, m + 1);
  for (int c = 0; c <= m; ++c) num(0, c) = ipow(t, es[c]);
  for (int r = 1; r <= m; ++r)
    for (int c = 0; c <= m; ++c) num(r, c) = ipow(p.z[r - 1], es[c]);
  Matrix<Real> den(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) den(r, c) = ipow(p.z[r], es[c + 1]);
  return determinant_tracked(num, p.tol.min_rcond, tracker).value /
         determinant_tracked(den, p.tol.min_rcond, tracker).value;
}

template <class Real>
Cplx<Real> eval_coeffs(const CVec<Real>& co, Cplx<Real> t) {
  Cplx<Real> acc(Real(0));
  for (int k = int(co.size()) - 1; k >= 0; --k) acc = acc * t + co[k];
  return acc;
}

/// Bethe roots at the cube-root point, extracted from the coefficient
/// polynomial: divide out F, take the companion-matrix roots of the quotient,
/// rotate by q^2 and polish with Newton on the Bethe equations.
template <class Real>
std::optional<BetheRoots<Real>> combinatorial_roots(const ModelParams<Real>& p) {
  const int n = p.n;
  CVec<Real> co = fq_coefficients(p);
  Poly<Real> fq(co);
  Poly<Real> fpart = Poly<Real>::from_roots(p.z).scaled(ipow(p.q, 4 * n));
  auto [quo, rem] = poly_divide(fq, fpart);
  Real remmag = 0, nummag = 0;
  for (const auto& c : rem.c) remmag = std::max(remmag, std::abs(c));
  for (const auto& c : fq.c) nummag = std::max(nummag, std::abs(c));
  if (remmag > Real(1e-8) * nummag) return std::nullopt;
  CVec<Real> ts = poly_roots(quo.trimmed(Real(1e-13) * nummag));
  if (int(ts.size()) != n) return std::nullopt;
  CVec<Real> zet(n);
  for (int i = 0; i < n; ++i) zet[i] = p.q * p.q * ts[i];
  BetheRoots<Real> sol = solve_newton(p, zet);
  if (!sol.diag.converged || !roots_distinct(sol.roots)) return std::nullopt;
  sol.diag.method = "fq-coefficients";
  return sol;
}

/// Coefficient-level consistency: rebuild F(q^2 t) Q(q^2 t) from the given
/// roots and compare against the root-free coefficients (max scaled deviation).
template <class Real>
Real roots_to_inhomogeneities_check(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  CVec<Real> co = fq_coefficients(p);
  Poly<Real> fpart = Poly<Real>::from_roots(p.z).scaled(ipow(p.q, 4 * p.n));
  CVec<Real> rot(zetas.size());
  for (std::size_t i = 0; i < zetas.size(); ++i) rot[i] = zetas[i] / (p.q * p.q);
  Poly<Real> qpart = Poly<Real>::from_roots(rot).scaled(ipow(p.q, 2 * p.n));
  Poly<Real> prod = fpart * qpart;
  Real scale = 0, dev = 0;
  for (const auto& c : co) scale = std::max(scale, std::abs(c));
  for (std::size_t k = 0; k < co.size(); ++k) {
    Cplx<Real> other = k < prod.c.size() ? prod.c[k] : Cplx<Real>(Real(0));
    dev = std::max(dev, std::abs(co[k] - other));
  }
  return dev / scale;
}

/// Closed-form scalar product at the cube-root point (equal to the full-space
/// bilinear oracle, constant exactly 1):
/// 3^n q^n q^{4n^2} prod sqrt(mu_i) sqrt(zeta_i) / prod F(q^2 mu_i)
///   * s_Y(mu) * s_Ytilde(z).
template <class Real>
Cplx<Real> closed_form_scalar_product(const ModelParams<Real>& p, const CVec<Real>& mus,
                                      const CVec<Real>& zetas) {
  if (!at_cube_root_point(p))
    throw std::domain_error("closed_form_scalar_product: requires the cube-root point");
  const int n = p.n;
  Cplx<Real> v = ipow(Cplx<Real>(Real(3)), n) * ipow(p.q, n) * ipow(p.q, 4 * n * n);
  for (const auto& mu : mus) v *= std::sqrt(mu) / f_function(p, p.q * p.q * mu);
  for (const auto& zt : zetas) v *= std::sqrt(zt);
  StaircaseFamily fam = staircase_partitions(n);
  v *= schur(fam.y, mus, SchurMethod::bialternant);
  v *= schur(fam.y_tilde, p.z, SchurMethod::bialternant);
  return v;
}

/// Fully root-free closed-form norm (equal to the raw bilinear norm):
/// 3^n q^{2n} s_Ytilde(z)^2 s_Yprime(z)^2 / ((prod z)^2 s_Y2n(z)).
template <class Real>
Cplx<Real> norm_closed_form(const ModelParams<Real>& p) {
  if (!at_cube_root_point(p))
    throw std::domain_error("norm_closed_form: requires the cube-root point");
  const int n = p.n;
  StaircaseFamily fam = staircase_partitions(n);
  Cplx<Real> syt = schur(fam.y_tilde, p.z, SchurMethod::bialternant);
  Cplx<Real> syp = schur(fam.y_prime_even, p.z, SchurMethod::bialternant);
  Cplx<Real> sy2n = schur(even_staircase(2 * n), p.z, SchurMethod::bialternant);
  Cplx<Real> e2n(Real(1));
  for (const auto& z : p.z) e2n *= z;
  return ipow(Cplx<Real>(Real(3)), n) * ipow(p.q, 2 * n) * syt * syt * syp * syp /
         (e2n * e2n * sy2n);
}

/// Mixed norm form using the roots once: 3^n q^n prod zeta / prod_j Q(z_j)
///   * s_Y(zeta) * s_Ytilde(z).
template <class Real>
Cplx<Real> norm_root_form(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  const int n = p.n;
  Cplx<Real> v = ipow(Cplx<Real>(Real(3)), n) * ipow(p.q, n);
  for (const auto& zt : zetas) v *= zt;
  for (const auto& z : p.z) v /= q_function(zetas, z);
  v *= schur(staircase_partitions(n).y, zetas, SchurMethod::bialternant);
  v *= schur(staircase_partitions(n).y_tilde, p.z, SchurMethod::bialternant);
  return v;
}

/// Residual of the root-side identity
/// s_Y(zeta) prod zeta = (q-1)^{-n} (-q)^{-n(n-1)/2} prod_i Q(q zeta_i).
template <class Real>
Real norm_root_identity_residual(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  const int n = p.n;
  Cplx<Real> lhs = schur(staircase_partitions(n).y, zetas, SchurMethod::bialternant);
  for (const auto& zt : zetas) lhs *= zt;
  Cplx<Real> rhs = ipow(p.q - Cplx<Real>(Real(1)), -n) *
                   ipow(-p.q, -(long long)(n) * (n - 1) / 2);
  for (const auto& zt : zetas) rhs *= q_function(zetas, p.q * zt);
  return rel_err(lhs, rhs);
}

/// Constant in the root-elimination identity for prod_i Q(q zeta_i).
template <class Real>
Cplx<Real> q_product_constant(const ModelParams<Real>& p) {
  const long long n = p.n;
  return ipow(p.q, 2 * n * n - n) * ipow(Cplx<Real>(Real(1)) - p.q, n) *
         ipow(Cplx<Real>(Real(3)), n) * Real(parity_sign(n * (n + 1) / 2)) *
         ipow(p.q, n * n);
}

/// Root-free value of prod_i Q(q zeta_i), via Schur-function data of the
/// inhomogeneities and the root-free values Q(z_j) = FQ(q z_j) / F(z_j).
template <class Real>
Cplx<Real> q_product_root_free(const ModelParams<Real>& p, const CVec<Real>& fq_co) {
  Cplx<Real> e2n(Real(1));
  for (const auto& z : p.z) e2n *= z;
  StaircaseFamily fam = staircase_partitions(p.n);
  Cplx<Real> syt = schur(fam.y_tilde, p.z, SchurMethod::bialternant);
  Cplx<Real> syp = schur(fam.y_prime_even, p.z, SchurMethod::bialternant);
  Cplx<Real> st = syt * syp * syp / e2n;
  for (const auto& z : p.z)
    st *= eval_coeffs(fq_co, p.q * z) / f_function(p, z) / f_function(p, z);
  return q_product_constant(p) * st;
}

/// Residual of the root-elimination identity against the root-side product.
template <class Real>
Real q_product_residual(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  Cplx<Real> lhs(Real(1));
  for (const auto& zt : zetas) lhs *= q_function(zetas, p.q * zt);
  return rel_err(lhs, q_product_root_free(p, fq_coefficients(p)));
}

/// gamma_k = (-1)^k [t^{3n-k}] FQ(t): the reversed, sign-alternated
/// coefficient family of the combined polynomial.
template <class Real>
SymCoeffTable<Real> gamma_from_fq(const CVec<Real>& fq_co) {
  const int K = int(fq_co.size()) - 1;
  CVec<Real> g(K + 1);
  for (int k = 0; k <= K; ++k) g[k] = Real(parity_sign(k)) * fq_co[K - k];
  return {SymCoeffKind::gamma, std::move(g)};
}

/// The same family via single Schur ratios of the interpolating shapes
/// (gamma_{3j+2} = 0; the two nonzero threads carry alternating signs).
template <class Real>
SymCoeffTable<Real> gamma_schur(const ModelParams<Real>& p) {
  if (!at_cube_root_point(p))
    throw std::domain_error("gamma_schur: requires the cube-root point");
  const int n = p.n, K = 3 * n;
  Cplx<Real> syt = schur(staircase_partitions(n).y_tilde, p.z, SchurMethod::bialternant);
  CVec<Real> g(K + 1);
  for (int j = 0; j <= n; ++j)
    g[3 * j] = Real(parity_sign(j)) *
               schur(pi_partition(n, 2 * j), p.z, SchurMethod::bialternant) / syt;
  for (int j = 0; j < n; ++j)
    g[3 * j + 1] = Real(parity_sign(j)) *
                   schur(pi_partition(n, 2 * j + 1), p.z, SchurMethod::bialternant) / syt;
  return {SymCoeffKind::gamma, std::move(g)};
}

/// delta = reciprocal of the sign-flipped gamma series: sum_i (-1)^i gamma_i
/// delta_{k-i} = [k == 0].
template <class Real>
SymCoeffTable<Real> delta_from_gamma(const SymCoeffTable<Real>& gam, int kmax) {
  CVec<Real> flipped(gam.values.size());
  for (std::size_t k = 0; k < gam.values.size(); ++k)
    flipped[k] = Real(parity_sign(long(k))) * gam.values[k];
  return {SymCoeffKind::delta, series_inverse(flipped, kmax)};
}

/// f_k = sum_j (-1)^j e_{k-j}(z) delta_j: inhomogeneity-only data that equals
/// (-q)^k h_k(zeta) on the root side.
template <class Real>
SymCoeffTable<Real> f_table(const ModelParams<Real>& p, const SymCoeffTable<Real>& delta,
                            int kmax) {
  CVec<Real> es = elementary_table(p.z, kmax);
  CVec<Real> f(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    Cplx<Real> s(Real(0));
    for (int j = 0; j <= k; ++j)
      s += Real(parity_sign(j)) * es[k - j] * delta.at(j);
    f[k] = s;
  }
  return {SymCoeffKind::f, std::move(f)};
}

/// g_k = sum_j (-1)^{k-j} h_{k-j}(z) gamma_j: equals q^k e_k(zeta) on the root
/// side, and vanishes for k > n.
template <class Real>
SymCoeffTable<Real> g_table(const ModelParams<Real>& p, const SymCoeffTable<Real>& gam,
                            int kmax) {
  CVec<Real> hs = homogeneous_table(p.z, kmax);
  CVec<Real> g(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    Cplx<Real> s(Real(0));
    for (int j = 0; j <= k; ++j)
      s += Real(parity_sign(k - j)) * hs[k - j] * gam.at(j);
    g[k] = s;
  }
  return {SymCoeffKind::g, std::move(g)};
}

template <class Real>
struct GammaFamily {
  SymCoeffTable<Real> gamma, delta, f, g;
  Real gamma_route_residual = 0;  // coefficient route vs Schur-ratio route
  Real delta_route_residual = 0;  // series inverse vs Toeplitz determinants
  Real f_route_residual = 0;      // convolution sum vs bordered determinants
  Real g_route_residual = 0;      // convolution sum vs bordered determinants
};

/// All four coefficient families plus the cross-route consistency errors that
/// gate their use downstream.  Each table is produced by two independent
/// routes (series vs determinant); disagreement beyond 1e-9 throws, since
/// every later identity would silently inherit the inconsistency.
template <class Real>
GammaFamily<Real> gamma_delta_f_g(const ModelParams<Real>& p) {
  const int K = 3 * p.n;
  GammaFamily<Real> fam;
  CVec<Real> co = fq_coefficients(p);
  fam.gamma = gamma_from_fq(co);
  SymCoeffTable<Real> gs = gamma_schur(p);
  Real scale = std::max(max_abs(fam.gamma.values), Real(1e-300));
  for (int k = 0; k <= K; ++k)
    fam.gamma_route_residual =
        std::max(fam.gamma_route_residual,
                 std::abs(fam.gamma.at(k) - gs.at(k)) / scale);
  fam.delta = delta_from_gamma(fam.gamma, K);
  for (int k = 0; k <= K; ++k) {
    Cplx<Real> det_val = toeplitz_band_det(fam.gamma.values, k, 1);
    fam.delta_route_residual = std::max(
        fam.delta_route_residual,
        std::abs(det_val - fam.delta.at(k)) / std::max(max_abs(fam.delta.values), Real(1e-300)));
  }
  fam.f = f_table(p, fam.delta, K);
  fam.g = g_table(p, fam.gamma, K);
  CVec<Real> es = elementary_table(p.z, K);
  Real fscale = std::max(max_abs(fam.f.values), Real(1e-300));
  Real gscale = std::max(max_abs(fam.g.values), Real(1e-300));
  for (int k = 0; k <= K; ++k) {
    if (k <= 2 * p.n)
      fam.f_route_residual = std::max(
          fam.f_route_residual,
          std::abs(triangular_quotient_entry(es, fam.gamma.values, k) - fam.f.at(k)) / fscale);
    fam.g_route_residual = std::max(
        fam.g_route_residual,
        std::abs(triangular_quotient_entry(fam.gamma.values, es, k) - fam.g.at(k)) / gscale);
  }
  const Real gate = Real(1e-9);
  if (fam.gamma_route_residual > gate || fam.delta_route_residual > gate ||
      fam.f_route_residual > gate || fam.g_route_residual > gate)
    throw std::runtime_error(
        "gamma_delta_f_g: the series and determinant routes disagree beyond 1e-9");
  return fam;
}

}  // namespace xxz
