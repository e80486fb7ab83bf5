// Walkthrough: solve the on-shell system for a small twisted chain, then
// evaluate the scalar product along every implemented route and show that
// they agree.

#include <cstdio>
#include <optional>

#include "xxz/xxz.hpp"

using Real = double;
using C = xxz::Cplx<Real>;
using V = xxz::CVec<Real>;

static void show(const char* label, C v) {
  std::printf("  %-28s % .12e %+.12e i\n", label, v.real(), v.imag());
}

int main() {
  // A generic 4-site chain with two excitations.
  xxz::RandomDraw rng(42);
  const int N = 4, n = 2;
  C q = rng.annulus<Real>(0.7, 1.4);
  C kappa = rng.annulus<Real>(0.5, 2.0);
  V z = rng.distinct_annulus<Real>(N, 0.5, 2.0, 0.05);
  xxz::ModelParams<Real> p(N, n, q, kappa, z);

  std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
  if (!sol || !sol->diag.converged) {
    std::printf("no converged root set found\n");
    return 1;
  }
  std::printf("on-shell system (N=%d, n=%d), method %s, residual %.2e\n", N, n,
              sol->diag.method.c_str(), double(sol->residual));

  V mus = xxz::detail::draw_generic_mus(p, sol->roots, rng);
  C oracle = xxz::scalar_product_direct(p, xxz::as_points(mus), xxz::as_points(sol->roots));
  C omega = xxz::slavnov_omega(p, mus, sol->roots);
  C kernel = xxz::slavnov_c(p, mus, sol->roots);
  C symmetric = xxz::scalar_product_symmetric_route(p, mus, sol->roots);

  std::printf("scalar product of the on-shell state with a generic dual state:\n");
  show("brute force", oracle);
  show("determinant (derivative)", omega);
  show("determinant (kernel)", kernel);
  show("symmetrized determinant", symmetric);
  std::printf("  largest deviation from brute force: %.2e\n",
              double(std::max({xxz::rel_err(omega, oracle), xxz::rel_err(kernel, oracle),
                               xxz::rel_err(symmetric, oracle)})));

  // The same quantities at the special coupling, where a closed form exists.
  xxz::RandomDraw rng2(7);
  V z2 = rng2.distinct_annulus<Real>(2 * n, 0.5, 2.0, 0.05);
  xxz::ModelParams<Real> pc = xxz::make_cube_root_params<Real>(n, z2);
  std::optional<xxz::BetheRoots<Real>> solc = xxz::combinatorial_roots(pc);
  if (!solc || !solc->diag.converged) {
    std::printf("no converged root set at the special coupling\n");
    return 1;
  }
  V mus2 = xxz::detail::draw_generic_mus(pc, solc->roots, rng2);
  C det2 = xxz::slavnov_c(pc, mus2, solc->roots);
  C closed = xxz::closed_form_scalar_product(pc, mus2, solc->roots);
  std::printf("special coupling (roots from polynomial coefficients, residual %.2e):\n",
              double(solc->residual));
  show("determinant (kernel)", det2);
  show("closed form", closed);
  std::printf("  deviation: %.2e\n", double(xxz::rel_err(closed, det2)));
  return 0;
}
