#include "test_support.hpp"

using namespace ts;

namespace {

xxz::Matrix<double> random_matrix(int n, xxz::RandomDraw& rng) {
  xxz::Matrix<double> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = C(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

}  // namespace

TEST_CASE("determinant of small fixed matrices") {
  CHECK(std::abs(xxz::determinant(xxz::Matrix<double>::identity(3)).value - C(1.0)) <
        1e-14);
  xxz::Matrix<double> m(2, 2);
  m(0, 0) = C(1.0);
  m(0, 1) = C(2.0);
  m(1, 0) = C(3.0);
  m(1, 1) = C(4.0);
  CHECK(std::abs(xxz::determinant(m).value - C(-2.0)) < 1e-13);
}

TEST_CASE("determinant agrees with cofactor expansion on random 5x5") {
  xxz::RandomDraw rng(101);
  for (int t = 0; t < 3; ++t) {
    xxz::Matrix<double> m = random_matrix(5, rng);
    C lu = xxz::determinant(m).value;
    C cof = xxz::determinant_cofactor(m);
    CHECK(xxz::rel_err(lu, cof) <= 1e-12);
  }
}

TEST_CASE("determinant is multiplicative") {
  xxz::RandomDraw rng(102);
  xxz::Matrix<double> a = random_matrix(4, rng);
  xxz::Matrix<double> b = random_matrix(4, rng);
  C lhs = xxz::determinant(a * b).value;
  C rhs = xxz::determinant(a).value * xxz::determinant(b).value;
  CHECK(xxz::rel_err(lhs, rhs) <= 1e-10);
}

TEST_CASE("row permutation flips the determinant sign") {
  xxz::RandomDraw rng(103);
  xxz::Matrix<double> m = random_matrix(4, rng);
  xxz::Matrix<double> sw = m;
  for (int j = 0; j < 4; ++j) {
    C tmp = sw(1, j);
    sw(1, j) = sw(3, j);
    sw(3, j) = tmp;
  }
  CHECK(xxz::rel_err(xxz::determinant(sw).value, -xxz::determinant(m).value) <= 1e-12);
}

TEST_CASE("determinant reports conditioning") {
  CHECK(xxz::determinant(xxz::Matrix<double>::identity(4)).rcond > 0.1);
  xxz::RandomDraw rng(104);
  xxz::Matrix<double> m = random_matrix(4, rng);
  for (int j = 0; j < 4; ++j) m(2, j) = m(0, j) + C(1e-12) * m(1, j);
  CHECK(xxz::determinant(m).rcond < 1e-8);
}

TEST_CASE("linear solve") {
  xxz::RandomDraw rng(105);
  xxz::Matrix<double> a = random_matrix(4, rng);
  V x_true;
  for (int i = 0; i < 4; ++i) x_true.push_back(C(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
  V b(4, C(0.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b[i] += a(i, j) * x_true[j];
  V x = xxz::solve(a, b);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] - x_true[i]) <= 1e-10);

  xxz::Matrix<double> sing(2, 2);
  sing(0, 0) = sing(0, 1) = sing(1, 0) = sing(1, 1) = C(1.0);
  CHECK_THROWS_AS(xxz::solve(sing, V{C(1.0), C(2.0)}), std::runtime_error);
}

TEST_CASE("vandermonde products") {
  CHECK(std::abs(xxz::vandermonde(V{C(2.5)}) - C(1.0)) < 1e-15);
  CHECK(std::abs(xxz::vandermonde(V{C(1.0), C(2.0), C(4.0)}) - C(6.0)) < 1e-13);
  CHECK(std::abs(xxz::vandermonde(V{C(0.7), C(0.7), C(1.3)})) < 1e-15);

  xxz::RandomDraw rng(106);
  V xs = rng.distinct_annulus<double>(5);
  xxz::Matrix<double> m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = xxz::ipow(xs[j], i);
  CHECK(xxz::rel_err(xxz::determinant(m).value, xxz::vandermonde(xs)) <= 1e-10);
}

TEST_CASE("polynomial root extraction on fixed cases") {
  xxz::Poly<double> p1(V{C(-1.0), C(0.0), C(1.0)});  // x^2 - 1
  V r1 = xxz::poly_roots(p1);
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0] - C(-1.0)) <= 1e-12);
  CHECK(std::abs(r1[1] - C(1.0)) <= 1e-12);

  V want{C(2.0), C(0.0, 3.0)};
  V r2 = xxz::poly_roots(xxz::Poly<double>::from_roots(want));
  REQUIRE(r2.size() == 2);
  for (const auto& w : want) {
    double best = 1e9;
    for (const auto& r : r2) best = std::min(best, std::abs(r - w));
    CHECK(best <= 1e-12);
  }
}

TEST_CASE("polynomial root extraction recovers a random degree-6 set") {
  xxz::RandomDraw rng(107);
  V want = rng.distinct_annulus<double>(6, 0.5, 2.0, 0.1);
  xxz::Poly<double> p = xxz::Poly<double>::from_roots(want).scaled(C(0.3, -1.1));
  V got = xxz::poly_roots(p);
  REQUIRE(got.size() == 6);
  for (const auto& w : want) {
    double best = 1e9;
    for (const auto& r : got) best = std::min(best, std::abs(r - w));
    CHECK(best <= 1e-10);
  }
  // re-expansion reproduces the monic coefficients
  xxz::Poly<double> re = xxz::Poly<double>::from_roots(got);
  for (int k = 0; k <= 6; ++k) {
    C monic = p.c[k] / p.c[6];
    CHECK(std::abs(re.c[k] - monic) <= 1e-9 * std::max(1.0, std::abs(monic)));
  }
}

TEST_CASE("polynomial division") {
  // (x^3 - 1) / (x - 1) = x^2 + x + 1, remainder 0
  xxz::Poly<double> num(V{C(-1.0), C(0.0), C(0.0), C(1.0)});
  xxz::Poly<double> den(V{C(-1.0), C(1.0)});
  auto [quo, rem] = xxz::poly_divide(num, den);
  REQUIRE(quo.degree() == 2);
  CHECK(std::abs(quo.c[0] - C(1.0)) < 1e-14);
  CHECK(std::abs(quo.c[1] - C(1.0)) < 1e-14);
  CHECK(std::abs(quo.c[2] - C(1.0)) < 1e-14);
  for (const auto& r : rem.c) CHECK(std::abs(r) < 1e-14);

  xxz::RandomDraw rng(108);
  xxz::Poly<double> a = xxz::Poly<double>::from_roots(rng.distinct_annulus<double>(5));
  xxz::Poly<double> b = xxz::Poly<double>::from_roots(rng.distinct_annulus<double>(2));
  auto [q2, r2] = xxz::poly_divide(a, b);
  xxz::Poly<double> back = q2 * b;
  for (int k = 0; k <= a.degree(); ++k) {
    C rk = k <= r2.degree() && k < int(r2.c.size()) ? r2.c[k] : C(0.0);
    C bk = k < int(back.c.size()) ? back.c[k] : C(0.0);
    CHECK(std::abs(a.c[k] - bk - rk) <= 1e-12);
  }
}

TEST_CASE("polynomial evaluation and derivative") {
  xxz::Poly<double> p(V{C(1.0), C(-2.0), C(0.0), C(4.0)});  // 1 - 2x + 4x^3
  C x(0.3, 0.7);
  CHECK(std::abs(p.eval(x) - (C(1.0) - C(2.0) * x + C(4.0) * x * x * x)) < 1e-14);
  xxz::Poly<double> d = p.derivative();
  CHECK(std::abs(d.eval(x) - (C(-2.0) + C(12.0) * x * x)) < 1e-14);
}

TEST_CASE("integer powers handle negative exponents") {
  C q(0.8, 0.4);
  CHECK(xxz::rel_err(xxz::ipow(q, -3), C(1.0) / (q * q * q)) <= 1e-14);
  CHECK(std::abs(xxz::ipow(q, 0) - C(1.0)) < 1e-15);
  CHECK(xxz::rel_err(xxz::ipow(q, 5), q * q * q * q * q) <= 1e-14);
}
