#pragma once

#include "xxz/model.hpp"

namespace xxz {

/// State vector in the 2^N spin space.  Bit j of a basis index is the
/// occupation of site j (1 = flipped spin).
template <class Real>
using SpinState = CVec<Real>;

template <class Real>
SpinState<Real> vacuum_state(int N) {
  SpinState<Real> v(std::size_t(1) << N);
  v[0] = Cplx<Real>(Real(1));
  return v;
}

/// raw: vertex weights (a, 1, c) as given.  normalized: divided by a per site,
/// so the local triple becomes (1, 1/a, c/a) and limits exist at mu = z_m.
enum class WeightConvention { raw, normalized };

/// Spectral argument that may coincide exactly with an inhomogeneity.  The
/// coincident site index selects the limiting local weights (1, 0, 1) there,
/// which only exist in the normalized convention.
template <class Real>
struct SpectralPoint {
  Cplx<Real> value{};
  int coincident_site = -1;

  SpectralPoint() = default;
  SpectralPoint(Cplx<Real> v) : value(v) {}
  static SpectralPoint at_site(const ModelParams<Real>& p, int m) {
    SpectralPoint s;
    s.value = p.z[m];
    s.coincident_site = m;
    return s;
  }
};

namespace detail {

/// One site factor applied in place to the auxiliary pair (su, sd).  On each
/// index pair (i0: bit j clear, i1: bit j set) the map is the symmetric 4x4
/// [[a,0,0,0],[0,b,c,0],[0,c,b,0],[0,0,0,a]] acting on (su0, su1, sd0, sd1).
template <class Real>
void site_update(int j, Cplx<Real> a, Cplx<Real> b, Cplx<Real> c,
                 SpinState<Real>& su, SpinState<Real>& sd) {
  const std::size_t dim = su.size();
  const std::size_t bit = std::size_t(1) << j;
  for (std::size_t base = 0; base < dim; base += 2 * bit)
    for (std::size_t off = 0; off < bit; ++off) {
      const std::size_t i0 = base + off, i1 = i0 + bit;
      const Cplx<Real> su0 = su[i0], su1 = su[i1], sd0 = sd[i0], sd1 = sd[i1];
      su[i0] = a * su0;
      su[i1] = b * su1 + c * sd0;
      sd[i0] = c * su1 + b * sd0;
      sd[i1] = a * sd1;
    }
}

template <class Real>
void site_weights(const ModelParams<Real>& p, const SpectralPoint<Real>& x,
                  WeightConvention conv, int j, Cplx<Real>& a, Cplx<Real>& b,
                  Cplx<Real>& c) {
  if (x.coincident_site == j) {
    if (conv != WeightConvention::normalized)
      throw std::domain_error(
          "monodromy: a spectral point on an inhomogeneity requires the "
          "normalized convention");
    a = Cplx<Real>(Real(1));
    b = Cplx<Real>(Real(0));
    c = Cplx<Real>(Real(1));
    return;
  }
  if (x.value == p.z[j])
    throw std::domain_error(
        "monodromy: spectral point sits exactly on an inhomogeneity; mark it "
        "with its coincident site and use the normalized convention");
  Cplx<Real> aw = weight_a(p.q, x.value, p.z[j]);
  Cplx<Real> cw = weight_c(p.q, x.value, p.z[j]);
  if (conv == WeightConvention::normalized) {
    a = Cplx<Real>(Real(1));
    b = Cplx<Real>(Real(1)) / aw;
    c = cw / aw;
  } else {
    a = aw;
    b = Cplx<Real>(Real(1));
    c = cw;
  }
}

/// Sweep all site factors over (su, sd); site 1 acts first.  With
/// reverse = true the sites are applied in the opposite order, which realizes
/// the transposed monodromy (each site factor is symmetric).
template <class Real>
void monodromy_pass(const ModelParams<Real>& p, const SpectralPoint<Real>& x,
                    WeightConvention conv, SpinState<Real>& su,
                    SpinState<Real>& sd, bool reverse = false) {
  Cplx<Real> a, b, c;
  if (!reverse) {
    for (int j = 0; j < p.N; ++j) {
      site_weights(p, x, conv, j, a, b, c);
      site_update(j, a, b, c, su, sd);
    }
  } else {
    for (int j = p.N - 1; j >= 0; --j) {
      site_weights(p, x, conv, j, a, b, c);
      site_update(j, a, b, c, su, sd);
    }
  }
}

}  // namespace detail

/// Apply the (untwisted) creation block B(x): inject into the lower auxiliary
/// slot, sweep, read out the upper slot.
template <class Real>
SpinState<Real> apply_b(const ModelParams<Real>& p, const SpectralPoint<Real>& x,
                        const SpinState<Real>& psi,
                        WeightConvention conv = WeightConvention::raw) {
  SpinState<Real> su(psi.size()), sd = psi;
  detail::monodromy_pass(p, x, conv, su, sd);
  return su;
}

/// Apply the transposed annihilation block C(x)^T (used to build the bilinear
/// dual state): same injection/readout as B but with the site order reversed.
template <class Real>
SpinState<Real> apply_c_transpose(const ModelParams<Real>& p,
                                  const SpectralPoint<Real>& x,
                                  const SpinState<Real>& psi,
                                  WeightConvention conv = WeightConvention::raw) {
  SpinState<Real> su(psi.size()), sd = psi;
  detail::monodromy_pass(p, x, conv, su, sd, /*reverse=*/true);
  return su;
}

/// Apply the twisted transfer operator A(x) + kappa D(x).
template <class Real>
SpinState<Real> transfer_apply(const ModelParams<Real>& p,
                               const SpectralPoint<Real>& x,
                               const SpinState<Real>& psi,
                               WeightConvention conv = WeightConvention::raw) {
  SpinState<Real> su = psi, sd(psi.size());
  detail::monodromy_pass(p, x, conv, su, sd);  // su out = A psi
  SpinState<Real> su2(psi.size()), sd2 = psi;
  detail::monodromy_pass(p, x, conv, su2, sd2);  // sd2 out = D psi
  for (std::size_t i = 0; i < su.size(); ++i) su[i] += p.kappa * sd2[i];
  return su;
}

enum class MonodromyBlock { A, B, C, D };

/// Dense 2^N x 2^N block, column by column (test/inspection use; the fast path
/// is the matrix-free application above).
template <class Real>
Matrix<Real> monodromy_block_dense(const ModelParams<Real>& p,
                                   const SpectralPoint<Real>& x,
                                   MonodromyBlock which,
                                   WeightConvention conv = WeightConvention::raw) {
  const std::size_t dim = std::size_t(1) << p.N;
  const int d = int(dim);
  Matrix<Real> out(d, d);
  for (std::size_t col = 0; col < dim; ++col) {
    SpinState<Real> su(dim), sd(dim);
    if (which == MonodromyBlock::A || which == MonodromyBlock::C)
      su[col] = Cplx<Real>(Real(1));
    else
      sd[col] = Cplx<Real>(Real(1));
    detail::monodromy_pass(p, x, conv, su, sd);
    const SpinState<Real>& res =
        (which == MonodromyBlock::A || which == MonodromyBlock::B) ? su : sd;
    for (std::size_t row = 0; row < dim; ++row) out(int(row), int(col)) = res[row];
  }
  return out;
}

/// Bilinear pairing (transpose duality, no conjugation).
template <class Real>
Cplx<Real> bilinear(const SpinState<Real>& u, const SpinState<Real>& v) {
  Cplx<Real> s(Real(0));
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// Brute-force scalar product <0| prod_k C(mu_k) prod_i B(zeta_i) |0> in the
/// full spin space.  Both argument lists are applied left to right.
template <class Real>
Cplx<Real> scalar_product_direct(const ModelParams<Real>& p,
                                 const std::vector<SpectralPoint<Real>>& mus,
                                 const std::vector<SpectralPoint<Real>>& zetas,
                                 WeightConvention conv = WeightConvention::raw) {
  SpinState<Real> ket = vacuum_state<Real>(p.N);
  for (const auto& zt : zetas) ket = apply_b(p, zt, ket, conv);
  SpinState<Real> bra = vacuum_state<Real>(p.N);
  for (const auto& mu : mus) bra = apply_c_transpose(p, mu, bra, conv);
  return bilinear(bra, ket);
}

template <class Real>
std::vector<SpectralPoint<Real>> as_points(const CVec<Real>& xs) {
  std::vector<SpectralPoint<Real>> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.emplace_back(x);
  return pts;
}

template <class Real>
struct SigmaZDirect {
  CVec<Real> site_values;  // <sigma^z_m> per site, normalized by the norm
  Cplx<Real> norm{};       // bilinear norm of the Bethe state
};

/// Brute-force one-point function: build the Bethe state and its bilinear
/// dual from the same roots, then evaluate sigma^z site by site.
template <class Real>
SigmaZDirect<Real> sigma_z_direct(const ModelParams<Real>& p, const CVec<Real>& zetas,
                                  WeightConvention conv = WeightConvention::raw) {
  SpinState<Real> ket = vacuum_state<Real>(p.N);
  SpinState<Real> bra = vacuum_state<Real>(p.N);
  for (const auto& zt : zetas) {
    ket = apply_b(p, SpectralPoint<Real>(zt), ket, conv);
    bra = apply_c_transpose(p, SpectralPoint<Real>(zt), bra, conv);
  }
  Cplx<Real> den = bilinear(bra, ket);
  if (std::abs(den) == Real(0))
    throw std::runtime_error("sigma_z_direct: state has zero bilinear norm");
  SigmaZDirect<Real> out;
  out.norm = den;
  out.site_values.resize(p.N);
  const std::size_t dim = std::size_t(1) << p.N;
  for (int m = 0; m < p.N; ++m) {
    Cplx<Real> num(Real(0));
    for (std::size_t i = 0; i < dim; ++i) {
      Real sign = ((i >> m) & 1) ? Real(-1) : Real(1);
      num += bra[i] * sign * ket[i];
    }
    out.site_values[m] = num / den;
  }
  return out;
}

}  // namespace xxz
