// Walkthrough: site-resolved magnetization of the special-coupling ground
// state, computed by brute force and by the root-free determinant route.

#include <cstdio>
#include <optional>

#include "xxz/xxz.hpp"

using Real = double;
using V = xxz::CVec<Real>;

int main() {
  const int n = 3;
  xxz::RandomDraw rng(11);
  V z = rng.distinct_annulus<Real>(2 * n, 0.5, 2.0, 0.05);
  xxz::ModelParams<Real> p = xxz::make_cube_root_params<Real>(n, z);

  std::optional<xxz::BetheRoots<Real>> sol = xxz::combinatorial_roots(p);
  if (!sol || !sol->diag.converged) {
    std::printf("no converged root set found\n");
    return 1;
  }
  std::printf("chain of %d sites at the special coupling, residual %.2e\n", p.N,
              double(sol->residual));

  xxz::SigmaZDirect<Real> direct = xxz::sigma_z_direct(p, sol->roots);
  V by_sum = xxz::sigma_z_root_sum(p, sol->roots);
  V root_free = xxz::sigma_z_symmetrized(p);

  std::printf("%-6s %-26s %-26s %-26s\n", "site", "brute force", "determinant sum",
              "root-free (rescaled)");
  // The root-free profile is proportional to the normalized one; rescale by
  // the first well-separated site for display.
  int ref = 0;
  for (int m = 0; m < p.N; ++m)
    if (std::abs(direct.site_values[m]) > std::abs(direct.site_values[ref])) ref = m;
  auto scale = direct.site_values[ref] / root_free[ref];
  double sum = 0;
  for (int m = 0; m < p.N; ++m) {
    auto rf = root_free[m] * scale;
    std::printf("%-6d % .6f%+.6fi     % .6f%+.6fi     % .6f%+.6fi\n", m,
                direct.site_values[m].real(), direct.site_values[m].imag(),
                by_sum[m].real(), by_sum[m].imag(), rf.real(), rf.imag());
    sum += direct.site_values[m].real();
  }
  std::printf("site sum %.3e (zero for a half-filled chain)\n", sum);
  return 0;
}
