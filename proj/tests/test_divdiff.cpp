#include "secantk/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"

using namespace secantk;

namespace {

// Dense polynomial helpers (ascending coefficients) used as an
// independent oracle for the Newton-form evaluations.
using Poly = std::vector<Complex>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Complex(0.0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly poly_scale(Poly a, Complex c) {
  for (Complex& x : a) x *= c;
  return a;
}

Poly poly_derivative(const Poly& a) {
  if (a.size() <= 1) return {Complex(0.0)};
  Poly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = double(i) * a[i];
  return out;
}

Complex poly_eval(const Poly& a, Complex z) {
  Complex acc(0.0);
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
  return acc;
}

// Expands the Newton form of a table into dense coefficients.
Poly expand_newton(const DivDiffTable& table) {
  Poly result = {table.coeffs()[0]};
  Poly basis = {Complex(1.0)};
  for (std::size_t i = 1; i < table.size(); ++i) {
    basis = poly_mul(basis, Poly{-table.points()[i - 1], Complex(1.0)});
    result = poly_add(result, poly_scale(basis, table.coeffs()[i]));
  }
  return result;
}

std::mt19937& rng() {
  static std::mt19937 gen(20240809);
  return gen;
}

Complex random_point(double radius) {
  std::uniform_real_distribution<double> unit(-radius, radius);
  return Complex(unit(rng()), unit(rng()));
}

std::vector<Complex> random_distinct_points(std::size_t count, double radius) {
  std::vector<Complex> points;
  while (points.size() < count) {
    Complex z = random_point(radius);
    if (std::none_of(points.begin(), points.end(),
                     [&](Complex p) { return p == z; })) {
      points.push_back(z);
    }
  }
  return points;
}

} // namespace

TEST_CASE("first divided difference of the cubic") {
  // f[a,b] = (a^3 - b^3)/(a - b) = a^2 + ab + b^2 for f(z) = z^3 - 8
  Complex a(0, 2), b(-2, 2);
  auto f = [](Complex z) { return z * z * z - 8.0; };
  auto table = DivDiffTable::build({a, b}, {f(a), f(b)});
  Complex oracle = a * a + a * b + b * b;
  CHECK(oracle == Complex(-8, -12));
  CHECK(table.coeffs()[1] == oracle);
  CHECK(table.coeffs()[0] == f(a));
}

TEST_CASE("coefficients of z^2 over 0,1,2") {
  auto table = DivDiffTable::build({{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {4, 0}});
  REQUIRE(table.size() == 3);
  CHECK(table.coeffs()[0] == Complex(0, 0));
  CHECK(table.coeffs()[1] == Complex(1, 0));
  CHECK(table.coeffs()[2] == Complex(1, 0));  // leading coefficient
}

TEST_CASE("single point table") {
  auto table = DivDiffTable::build({{3, 1}}, {{7, -2}});
  CHECK(table.coeffs().size() == 1);
  CHECK(table.coeffs()[0] == Complex(7, -2));
  CHECK(table.newton_eval(Complex(100, 0)) == Complex(7, -2));
  CHECK_THROWS_AS(table.derivative_at_newest(), TableTooSmallError);
}

TEST_CASE("duplicate abscissae are rejected with the offending pair") {
  try {
    DivDiffTable::build({{1, 1}, {2, 0}, {1, 1}}, {{0, 0}, {0, 0}, {0, 0}});
    FAIL("expected DuplicateAbscissaError");
  } catch (const DuplicateAbscissaError& e) {
    CHECK(e.first_index() == 0);
    CHECK(e.second_index() == 2);
    CHECK(e.value() == Complex(1, 1));
  }
  CHECK_THROWS_AS(DivDiffTable::build({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(DivDiffTable::build({{1, 0}}, {{1, 0}, {2, 0}}),
                  std::invalid_argument);
}

TEST_CASE("push_newest grows and slides the window") {
  // identity map: f[0,1] = 1
  auto t0 = DivDiffTable::build({{0, 0}}, {{0, 0}});
  auto t1 = t0.push_newest(Complex(1, 0), Complex(1, 0), 2);
  REQUIRE(t1.size() == 2);
  CHECK(t1.coeffs()[0] == Complex(1, 0));
  CHECK(t1.coeffs()[1] == Complex(1, 0));

  // pushing onto a full 3-point window drops the oldest point
  auto t3 = DivDiffTable::build({{2, 0}, {1, 0}, {0, 0}}, {{4, 0}, {1, 0}, {0, 0}});
  auto t4 = t3.push_newest(Complex(3, 0), Complex(9, 0), 3);
  REQUIRE(t4.size() == 3);
  CHECK(t4.points()[0] == Complex(3, 0));
  CHECK(t4.points()[2] == Complex(1, 0));
  CHECK_THROWS_AS(t3.push_newest(Complex(1, 0), Complex(1, 0), 3),
                  DuplicateAbscissaError);
}

TEST_CASE("push_newest is bit-identical to a fresh build") {
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> size_dist(1, 6);
    std::size_t size = size_dist(rng());
    auto points = random_distinct_points(size + 1, 3.0);
    std::vector<Complex> values;
    for (std::size_t i = 0; i <= size; ++i) values.push_back(random_point(5.0));

    Complex q = points.back(), fq = values.back();
    points.pop_back();
    values.pop_back();
    auto base = DivDiffTable::build(points, values);

    std::uniform_int_distribution<std::size_t> window_dist(1, size + 1);
    std::size_t window = window_dist(rng());
    auto pushed = base.push_newest(q, fq, window);

    std::vector<Complex> expect_points = {q};
    std::vector<Complex> expect_values = {fq};
    for (std::size_t i = 0; i + 1 < window && i < points.size(); ++i) {
      expect_points.push_back(points[i]);
      expect_values.push_back(values[i]);
    }
    auto rebuilt = DivDiffTable::build(expect_points, expect_values);

    REQUIRE(pushed.size() == rebuilt.size());
    for (std::size_t i = 0; i < pushed.size(); ++i) {
      CHECK(pushed.points()[i].real() == rebuilt.points()[i].real());
      CHECK(pushed.points()[i].imag() == rebuilt.points()[i].imag());
      CHECK(pushed.coeffs()[i].real() == rebuilt.coeffs()[i].real());
      CHECK(pushed.coeffs()[i].imag() == rebuilt.coeffs()[i].imag());
    }
  }
}

TEST_CASE("newton_eval interpolates exactly") {
  auto quad = DivDiffTable::build({{0, 0}, {1, 0}, {2, 0}}, {{0, 0}, {1, 0}, {4, 0}});
  CHECK(quad.newton_eval(Complex(3, 0)) == Complex(9, 0));

  // nodes reproduce stored values
  auto f = [](Complex z) { return z * z * z - 8.0; };
  Complex z0(0, 2), z1(-2, 2);
  Complex z2 = z1 - f(z1) / ((f(z0) - f(z1)) / (z0 - z1));
  auto table = DivDiffTable::build({z2, z1, z0}, {f(z2), f(z1), f(z0)});
  for (std::size_t i = 0; i < table.size(); ++i) {
    Complex got = table.newton_eval(table.points()[i]);
    Complex want = table.values()[i];
    CHECK(std::abs(got - want) <= 1e-13 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("derivative_at_newest matches the expanded interpolant") {
  // secant line through (0,0),(1,1): slope 1 at the newest point 1
  auto line = DivDiffTable::build({{1, 0}, {0, 0}}, {{1, 0}, {0, 0}});
  CHECK(line.derivative_at_newest() == Complex(1, 0));

  // f(z) = z^3 over 1,2,3: f[1,2] + f[1,2,3]*(1-2) = 7 - 6 = 1
  auto cubic3 = DivDiffTable::build({{1, 0}, {2, 0}, {3, 0}},
                                    {{1, 0}, {8, 0}, {27, 0}});
  CHECK(cubic3.derivative_at_newest() == Complex(1, 0));

  // cross-check against symbolic differentiation of the interpolant
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> size_dist(2, 6);
    auto points = random_distinct_points(size_dist(rng()), 2.0);
    std::vector<Complex> values;
    for (std::size_t i = 0; i < points.size(); ++i) values.push_back(random_point(4.0));
    auto table = DivDiffTable::build(points, values);
    Poly dense = expand_newton(table);
    Complex oracle = poly_eval(poly_derivative(dense), points[0]);
    Complex got = table.derivative_at_newest();
    CHECK(std::abs(got - oracle) <= 1e-10 * (1.0 + std::abs(oracle)));
  }
}

TEST_CASE("interpolating a low-degree polynomial reproduces its derivative") {
  std::uniform_int_distribution<int> deg_dist(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    int degree = deg_dist(rng());
    Poly poly(degree + 1);
    for (Complex& c : poly) c = random_point(3.0);
    if (poly.back() == Complex(0.0)) poly.back() = Complex(1.0);

    std::uniform_int_distribution<std::size_t> extra(1, 2);
    std::size_t count = degree + extra(rng());  // >= degree+1 points
    auto points = random_distinct_points(count, 2.0);
    std::vector<Complex> values;
    for (Complex p : points) values.push_back(poly_eval(poly, p));

    auto table = DivDiffTable::build(points, values);
    Complex want = poly_eval(poly_derivative(poly), points[0]);
    Complex got = table.derivative_at_newest();
    CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("top coefficient is symmetric under point permutations") {
  std::uniform_int_distribution<std::size_t> size_dist(2, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t size = size_dist(rng());
    auto points = random_distinct_points(size, 2.0);
    std::vector<Complex> values;
    for (std::size_t i = 0; i < size; ++i) values.push_back(random_point(4.0));

    auto reference = DivDiffTable::build(points, values);
    Complex top = reference.coeffs().back();

    std::vector<std::size_t> perm(size);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng());
    std::vector<Complex> shuffled_points, shuffled_values;
    for (std::size_t idx : perm) {
      shuffled_points.push_back(points[idx]);
      shuffled_values.push_back(values[idx]);
    }
    Complex permuted = DivDiffTable::build(shuffled_points, shuffled_values)
                           .coeffs()
                           .back();
    CHECK(std::abs(permuted - top) <= 1e-12 * std::abs(top) + 1e-300);
  }
}

TEST_CASE("polynomial exactness of divided differences") {
  std::uniform_int_distribution<int> deg_dist(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    int degree = deg_dist(rng());
    Poly poly(degree + 1);
    for (Complex& c : poly) c = random_point(3.0);
    while (std::abs(poly.back()) < 0.1) poly.back() = random_point(3.0);

    // order-m difference over m+1 points equals the leading coefficient
    auto points = random_distinct_points(degree + 2, 2.0);
    std::vector<Complex> values;
    for (Complex p : points) values.push_back(poly_eval(poly, p));

    auto exact = DivDiffTable::build(
        std::vector<Complex>(points.begin(), points.end() - 1),
        std::vector<Complex>(values.begin(), values.end() - 1));
    CHECK(std::abs(exact.coeffs().back() - poly.back()) <=
          1e-12 * std::abs(poly.back()) + 1e-12);

    // one order higher over m+2 points vanishes (relative to value scale)
    auto zero = DivDiffTable::build(points, values);
    double scale = 0.0;
    for (Complex v : values) scale = std::max(scale, std::abs(v));
    CHECK(std::abs(zero.coeffs().back()) <= 1e-12 * std::max(scale, 1.0));
  }
}

TEST_CASE("confluent limit of exp approaches the scaled derivative") {
  // order-m divided difference over points collapsing onto zhat tends to
  // exp(zhat)/m!, with error O(delta): about 10x smaller per decade.
  const Complex zhat(0.3, 0.2);
  const int m = 3;
  std::vector<Complex> offsets;
  for (int j = 0; j <= m; ++j) offsets.push_back(Complex(j, 0.7 * j * j - 1.0));

  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  Complex target = std::exp(zhat) / factorial;

  std::vector<double> errors;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    std::vector<Complex> points, values;
    for (Complex u : offsets) {
      points.push_back(zhat + delta * u);
      values.push_back(std::exp(points.back()));
    }
    auto table = DivDiffTable::build(points, values);
    errors.push_back(std::abs(table.coeffs().back() - target));
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    double shrink = errors[i] / errors[i + 1];
    CHECK(shrink > 7.0);
    CHECK(shrink < 13.5);
  }
}

TEST_CASE("divided differences of exp respect the derivative bound") {
  // |exp[p0..pm]| <= max_{|z|<=r} |exp(z)| / m! = e^r / m!
  for (double radius : {0.5, 2.0}) {
    double bound_scale = std::exp(radius);
    std::uniform_int_distribution<std::size_t> size_dist(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t size = size_dist(rng());
      std::vector<Complex> points;
      while (points.size() < size) {
        Complex z = random_point(radius);
        if (std::abs(z) <= radius &&
            std::none_of(points.begin(), points.end(),
                         [&](Complex p) { return p == z; })) {
          points.push_back(z);
        }
      }
      std::vector<Complex> values;
      for (Complex p : points) values.push_back(std::exp(p));
      auto table = DivDiffTable::build(points, values);
      double factorial = 1.0;
      for (std::size_t i = 2; i < size; ++i) factorial *= double(i);
      CHECK(std::abs(table.coeffs().back()) <=
            bound_scale / factorial * (1.0 + 1e-9));
    }
  }
}
