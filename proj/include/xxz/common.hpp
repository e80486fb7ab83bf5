#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace xxz {

template <class Real>
using Cplx = std::complex<Real>;

template <class Real>
using CVec = std::vector<Cplx<Real>>;

/// Tolerance bundle threaded through every numerical routine.  Residual checks
/// use `residual`, cross-method comparisons use `compare`, and `pole_gap` is the
/// distance below which removable-singularity limits replace direct evaluation.
struct Tolerances {
  double residual = 1e-10;
  double compare = 1e-9;
  double pole_gap = 1e-7;
  double min_rcond = 1e-13;
};

/// Integer power with exact branch behaviour (no log/exp round trip).
template <class Real>
Cplx<Real> ipow(Cplx<Real> base, long long e) {
  if (e < 0) return Cplx<Real>(Real(1)) / ipow(base, -e);
  Cplx<Real> r(Real(1));
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// (-1)^k for any integer k.
inline int parity_sign(long long k) { return (k % 2 == 0) ? 1 : -1; }

/// Relative distance |a-b| / max(|a|,|b|), zero when both vanish.
template <class Real>
Real rel_err(Cplx<Real> a, Cplx<Real> b) {
  Real den = std::max(std::abs(a), std::abs(b));
  if (den == Real(0)) return Real(0);
  return std::abs(a - b) / den;
}

template <class Real>
Real max_abs(const CVec<Real>& v) {
  Real m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Scientific-notation formatting with 17 significant digits (report output).
inline std::string format_sci17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

/// Shortest round-trip-exact decimal for a double.
inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Seedable random source.  All stochastic tests and the CLI draw through this
/// class only, so a fixed seed reproduces every report byte for byte.
class RandomDraw {
 public:
  explicit RandomDraw(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0,1) built from the top 53 bits of the generator word.
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Point in the annulus lo <= |x| <= hi (uniform radius, uniform angle).
  template <class Real = double>
  Cplx<Real> annulus(double lo = 0.5, double hi = 2.0) {
    double r = uniform(lo, hi);
    double th = uniform(0.0, 2.0 * kPi);
    return Cplx<Real>(Real(r * std::cos(th)), Real(r * std::sin(th)));
  }

  /// `count` annulus points, redrawn until pairwise gaps exceed `min_gap`.
  template <class Real = double>
  CVec<Real> distinct_annulus(int count, double lo = 0.5, double hi = 2.0,
                              double min_gap = 0.05) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      CVec<Real> zs;
      zs.reserve(count);
      for (int i = 0; i < count; ++i) zs.push_back(annulus<Real>(lo, hi));
      bool ok = true;
      for (int i = 0; i < count && ok; ++i)
        for (int j = i + 1; j < count; ++j)
          if (std::abs(zs[i] - zs[j]) < Real(min_gap)) {
            ok = false;
            break;
          }
      if (ok) return zs;
    }
    throw std::runtime_error("distinct_annulus: could not satisfy gap constraint");
  }

  std::uint64_t raw() { return gen_(); }

  static constexpr double kPi = 3.14159265358979323846;

 private:
  std::mt19937_64 gen_;
};

}  // namespace xxz
