#include "secantk/problems.hpp"

#include <cmath>
#include <numbers>

namespace secantk {

Problem make_problem(std::string name, Expression expr) {
  Problem p;
  p.name = std::move(name);
  p.formula = expr.source();
  p.f = [e = std::move(expr)](Complex z) { return e.eval(z); };
  return p;
}

namespace {

std::vector<Problem> make_builtins() {
  using std::numbers::pi;
  std::vector<Problem> problems;

  {
    Problem cubic;
    cubic.name = "cubic";
    cubic.formula = "z^3-8";
    cubic.f = [](Complex z) { return z * z * z - 8.0; };
    const double s3 = std::sqrt(3.0);
    // 2 e^{i 2 pi r / 3}, r = 0, 1, 2
    cubic.known_roots = {Complex(2.0, 0.0), Complex(-1.0, s3), Complex(-1.0, -s3)};
    cubic.suggested_start = {Complex(0.0, 2.0), Complex(-2.0, 2.0)};
    cubic.derivative = [](int m, Complex z) -> Complex {
      switch (m) {
        case 1: return 3.0 * z * z;
        case 2: return 6.0 * z;
        case 3: return Complex(6.0, 0.0);
        default: return Complex(0.0, 0.0);
      }
    };
    problems.push_back(std::move(cubic));
  }

  {
    Problem trig;
    trig.name = "trig";
    trig.formula = "sin(i*z)-cos(z)";
    const Complex j(0.0, 1.0);
    trig.f = [j](Complex z) { return std::sin(j * z) - std::cos(z); };
    // (1 - i)(pi/4 + r pi); residuals degrade via cosh for large |r|,
    // so only the nearby roots are listed.
    for (int r = -2; r <= 2; ++r) {
      trig.known_roots.push_back(Complex(1.0, -1.0) * (pi / 4.0 + r * pi));
    }
    trig.suggested_start = {Complex(1.5, -1.3), Complex(0.6, -0.5)};
    // Derivatives cycle with period 4:
    //   f'   =  i cos(iz) + sin z
    //   f''  =    sin(iz) + cos z
    //   f''' =  i cos(iz) - sin z
    //   f'''' = f
    trig.derivative = [j](int m, Complex z) -> Complex {
      switch (((m % 4) + 4) % 4) {
        case 0: return std::sin(j * z) - std::cos(z);
        case 1: return j * std::cos(j * z) + std::sin(z);
        case 2: return std::sin(j * z) + std::cos(z);
        default: return j * std::cos(j * z) - std::sin(z);
      }
    };
    problems.push_back(std::move(trig));
  }

  return problems;
}

} // namespace

const std::vector<Problem>& builtin_problems() {
  static const std::vector<Problem> problems = make_builtins();
  return problems;
}

const Problem* find_problem(std::string_view name) {
  for (const Problem& p : builtin_problems()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::optional<Complex> nearest_known_root(const Problem& problem, Complex z) {
  std::optional<Complex> best;
  double best_dist = 0.0;
  for (Complex root : problem.known_roots) {
    double d = std::abs(z - root);
    if (!best || d < best_dist) {
      best = root;
      best_dist = d;
    }
  }
  return best;
}

} // namespace secantk
