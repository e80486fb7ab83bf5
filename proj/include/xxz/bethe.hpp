#pragma once

#include <optional>

#include "xxz/model.hpp"
#include "xxz/polynomial.hpp"

namespace xxz {

/// Transfer eigenvalue in weight form:
/// tau(mu) = a(mu) prod_i wa(zeta_i, mu) + kappa prod_i wa(mu, zeta_i).
template <class Real>
Cplx<Real> tau_eigenvalue(const ModelParams<Real>& p, const CVec<Real>& zetas,
                          Cplx<Real> mu) {
  Cplx<Real> t1 = vacuum_a(p, mu);
  Cplx<Real> t2 = p.kappa;
  for (const auto& zt : zetas) {
    t1 *= weight_a(p.q, zt, mu);
    t2 *= weight_a(p.q, mu, zt);
  }
  return t1 + t2;
}

/// Normalized transfer eigenvalue at mu = z_m (the a-divided convention):
/// only the creation branch survives, giving prod_i wa(zeta_i, z_m).
template <class Real>
Cplx<Real> tau_normalized_at_site(const ModelParams<Real>& p, const CVec<Real>& zetas,
                                  int m) {
  Cplx<Real> t(Real(1));
  for (const auto& zt : zetas) t *= weight_a(p.q, zt, p.z[m]);
  return t;
}

/// Scaled residual of the functional relation
/// tau(mu) Q(mu) = q^{n-N} (F(q^4 mu)/F(q^2 mu)) Q(mu/q^2) + q^{-n} kappa Q(q^2 mu),
/// which vanishes exactly when zetas solve the Bethe equations.
template <class Real>
Real tq_residual(const ModelParams<Real>& p, const CVec<Real>& zetas, Cplx<Real> mu) {
  const int n = int(zetas.size());
  Cplx<Real> lhs = tau_eigenvalue(p, zetas, mu) * q_function(zetas, mu);
  Cplx<Real> t1 = ipow(p.q, n - p.N) * f_function(p, ipow(p.q, 4) * mu) /
                  f_function(p, p.q * p.q * mu) *
                  q_function(zetas, mu / (p.q * p.q));
  Cplx<Real> t2 = ipow(p.q, -n) * p.kappa * q_function(zetas, p.q * p.q * mu);
  Real scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), Real(1e-300)});
  return std::abs(lhs - t1 - t2) / scale;
}

/// Worst relative violation of the Bethe equations over all roots.
template <class Real>
Real bethe_residual(const ModelParams<Real>& p, const CVec<Real>& zetas) {
  const int n = int(zetas.size());
  Real worst = 0;
  for (int k = 0; k < n; ++k) {
    Cplx<Real> lhs = vacuum_a(p, zetas[k]);
    Cplx<Real> rhs = p.kappa;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      lhs *= weight_a(p.q, zetas[i], zetas[k]);
      rhs *= weight_a(p.q, zetas[k], zetas[i]);
    }
    Real scale = std::max({std::abs(lhs), std::abs(rhs), Real(1e-300)});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

struct BetheDiagnostics {
  bool converged = false;
  int iterations = 0;
  std::string method;
};

template <class Real>
struct BetheRoots {
  CVec<Real> roots;
  Real residual = 0;
  BetheDiagnostics diag;
};

/// All single-root solutions: zeros of
/// prod_j (q^2 zeta - z_j) - kappa q^N prod_j (zeta - z_j).
template <class Real>
CVec<Real> solve_single_root(const ModelParams<Real>& p) {
  CVec<Real> shifted(p.z.size());
  for (std::size_t i = 0; i < p.z.size(); ++i) shifted[i] = p.z[i] / (p.q * p.q);
  Poly<Real> p1 = Poly<Real>::from_roots(shifted).scaled(ipow(p.q, 2 * p.N));
  Poly<Real> p2 = Poly<Real>::from_roots(p.z).scaled(p.kappa * ipow(p.q, p.N));
  return poly_roots((p1 - p2).trimmed(Real(0)));
}

/// Damped Newton iteration on the log form of the Bethe equations, with a
/// forward-difference Jacobian and per-component step clipping.
template <class Real>
BetheRoots<Real> solve_newton(const ModelParams<Real>& p, const CVec<Real>& start,
                              int max_iters = 60) {
  const int n = int(start.size());
  CVec<Real> zet = start;
  auto log_system = [&](const CVec<Real>& zs) {
    CVec<Real> f(n);
    for (int k = 0; k < n; ++k) {
      Cplx<Real> lhs = vacuum_a(p, zs[k]);
      Cplx<Real> rhs = p.kappa;
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        lhs *= weight_a(p.q, zs[i], zs[k]);
        rhs *= weight_a(p.q, zs[k], zs[i]);
      }
      f[k] = std::log(lhs / rhs);
    }
    return f;
  };
  BetheRoots<Real> out;
  out.diag.method = "newton";
  for (int it = 0; it < max_iters; ++it) {
    CVec<Real> f = log_system(zet);
    bool finite = true;
    for (const auto& v : f)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) finite = false;
    if (!finite) {
      out.roots = zet;
      out.residual = std::numeric_limits<Real>::infinity();
      out.diag.iterations = it;
      return out;
    }
    if (max_abs(f) < Real(1e-13)) {
      out.roots = zet;
      out.residual = bethe_residual(p, zet);
      out.diag.converged = true;
      out.diag.iterations = it;
      return out;
    }
    Matrix<Real> jac(n, n);
    for (int j = 0; j < n; ++j) {
      Real eps = Real(1e-7) * std::max<Real>(Real(1), std::abs(zet[j]));
      CVec<Real> zp = zet;
      zp[j] += eps;
      CVec<Real> fp = log_system(zp);
      for (int i = 0; i < n; ++i) jac(i, j) = (fp[i] - f[i]) / eps;
    }
    CVec<Real> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -f[i];
    CVec<Real> d;
    try {
      d = solve(jac, rhs);
    } catch (const std::runtime_error&) {
      out.roots = zet;
      out.residual = bethe_residual(p, zet);
      out.diag.iterations = it;
      return out;
    }
    for (int j = 0; j < n; ++j) {
      Real cap = Real(0.5) * std::abs(zet[j]);
      if (std::abs(d[j]) > cap && cap > Real(0)) d[j] *= cap / std::abs(d[j]);
    }
    for (int j = 0; j < n; ++j) zet[j] += d[j];
  }
  out.roots = zet;
  out.residual = bethe_residual(p, zet);
  out.diag.converged = max_abs(log_system(zet)) < Real(1e-11);
  out.diag.iterations = max_iters;
  return out;
}

template <class Real>
bool roots_distinct(const CVec<Real>& zs, Real gap = Real(1e-8)) {
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = i + 1; j < zs.size(); ++j)
      if (std::abs(zs[i] - zs[j]) <= gap) return false;
  return true;
}

/// Continue a known root set from (q0, kappa0) to the target parameters of
/// `p_target` along a log-space path, re-solving with Newton at each step and
/// adapting the step size.  Returns nullopt when tracking fails.
template <class Real>
std::optional<BetheRoots<Real>> track_roots(const ModelParams<Real>& p_target,
                                            Cplx<Real> q0, Cplx<Real> kappa0,
                                            const CVec<Real>& start_roots) {
  const int n = int(start_roots.size());
  CVec<Real> zet = start_roots;
  Cplx<Real> lq0 = std::log(q0), lq1 = std::log(p_target.q);
  Cplx<Real> lk0 = std::log(kappa0), lk1 = std::log(p_target.kappa);
  Real t = 0, dt = Real(1) / Real(8);
  while (t < Real(1) - Real(1e-12)) {
    Real tn = std::min<Real>(Real(1), t + dt);
    Cplx<Real> qq = std::exp(lq0 + (lq1 - lq0) * Cplx<Real>(tn));
    Cplx<Real> kk = std::exp(lk0 + (lk1 - lk0) * Cplx<Real>(tn));
    ModelParams<Real> step(p_target.N, n, qq, kk, p_target.z, p_target.tol);
    BetheRoots<Real> sol = solve_newton(step, zet);
    if (sol.diag.converged && roots_distinct(sol.roots)) {
      zet = sol.roots;
      t = tn;
      dt = std::min<Real>(2 * dt, Real(1) / Real(8));
    } else {
      dt /= 2;
      if (dt < Real(1) / Real(4096)) return std::nullopt;
    }
  }
  BetheRoots<Real> out;
  out.roots = zet;
  out.residual = bethe_residual(p_target, zet);
  out.diag.converged = out.residual <= Real(1e-9);
  out.diag.method = "homotopy";
  if (!out.diag.converged) return std::nullopt;
  return out;
}

}  // namespace xxz
