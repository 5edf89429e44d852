// Root-finding problems: a function f, optional known roots, and optional
// closed-form derivatives used by the diagnostics.

#pragma once

#include "secantk/complex.hpp"
#include "secantk/expr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace secantk {

struct Problem {
  std::string name;
  std::string formula;  // parseable form of f, for display
  std::function<Complex(Complex)> f;
  std::vector<Complex> known_roots;  // may be empty
  std::optional<std::pair<Complex, Complex>> suggested_start;  // (z0, z1)
  // m-th derivative of f at z, m >= 1; null when no closed form is known.
  std::function<Complex(int, Complex)> derivative;
};

/// Wraps a parsed expression as an anonymous problem (no known roots).
Problem make_problem(std::string name, Expression expr);

/// Built-in registry. Contains at least "cubic" (z^3 - 8) and
/// "trig" (sin(i*z) - cos(z)).
const std::vector<Problem>& builtin_problems();

/// Case-sensitive lookup by name; nullptr when absent.
const Problem* find_problem(std::string_view name);

/// Known root closest to z, when any are known.
std::optional<Complex> nearest_known_root(const Problem& problem, Complex z);

} // namespace secantk
