// Generalized secant iteration with memory depth k:
//
//   z_{n+1} = z_n - f(z_n) / p'_{n,k}(z_n),   n = k, k+1, ...
//
// where p_{n,k} interpolates f at the last k+1 iterates. k = 1 is the
// classical secant method. The first k+1 iterates are produced by a
// bootstrap that raises the interpolation degree one step at a time:
// z_2 is a plain secant step from (z_0, z_1), z_3 uses the quadratic
// through z_0..z_2, and so on.
//
// Each iteration costs exactly one new evaluation of f; earlier values
// are reused from the window.

#pragma once

#include "secantk/complex.hpp"

#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace secantk {

using Func = std::function<Complex(Complex)>;

enum class SolveStatus {
  Converged,
  MaxIterations,
  SingularDerivative,  // |p'| below the guard threshold
  NonFiniteValue,      // f or an iterate became NaN/Inf
  Stagnated,           // an abscissa repeated exactly without convergence
};

std::string_view to_string(SolveStatus status);

/// How to obtain z1 from z0 when the caller does not supply it.
struct Z1Policy {
  enum class Kind { Given, Brin, Steffensen };
  Kind kind = Kind::Given;
  Complex value;  // Given only

  static Z1Policy given(Complex z1) { return {Kind::Given, z1}; }
  static Z1Policy brin() { return {Kind::Brin, {}}; }        // z0 + f(z0)
  static Z1Policy steffensen() { return {Kind::Steffensen, {}}; }
};

class SteffensenDenominatorZeroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonFiniteValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SingularDerivativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  int k = 1;                        // memory depth, >= 1
  Complex z0;
  Z1Policy z1;
  double tol_residual = 1e-13;      // stop when |f(z_n)| <= tol_residual
  double tol_step = 1e-13;          // ... or |z_n - z_{n-1}| <= tol_step * max(1, |z_n|)
  int max_iter = 100;               // largest iterate index n; must be >= k+1
  double guard_min_denominator = 1e-290;

  void validate() const;  // throws std::invalid_argument
};

/// Full history of a run. iterates[n] is z_n; residuals[n] is f(z_n).
/// k_used_per_step[n] is the interpolation degree that produced z_n
/// (0 for starting points). f_evaluations counts calls made by the run:
/// one per iterate, so it equals iterates.size() when z1 is Given.
struct SolverTrace {
  std::vector<Complex> iterates;
  std::vector<Complex> residuals;
  std::vector<int> k_used_per_step;
  SolveStatus status = SolveStatus::MaxIterations;
  std::size_t f_evaluations = 0;
};

struct SolveResult {
  Complex root;  // last iterate; meaningful when converged
  SolverTrace trace;
  bool converged() const { return trace.status == SolveStatus::Converged; }
};

/// Resolves a Z1Policy: Given passes through, Brin returns z0 + f(z0),
/// Steffensen returns z0 - f(z0)^2 / (f(z0 + f(z0)) - f(z0)).
/// Throws NonFiniteValueError or SteffensenDenominatorZeroError.
Complex generate_z1(const Func& f, Complex z0, const Z1Policy& policy);

/// Runs only the initialization phase and returns [z_0, ..., z_k].
/// Throws SingularDerivativeError, DuplicateAbscissaError (an iterate
/// repeated exactly), or NonFiniteValueError.
std::vector<Complex> bootstrap(const Func& f, Complex z0, Complex z1, int k);

/// Runs bootstrap plus main iteration until a stopping rule fires.
/// Never throws past this boundary for numerical trouble; failures are
/// carried in trace.status. Config errors still throw invalid_argument.
SolverTrace iterate(const Func& f, const SolverConfig& config);

/// iterate() plus root extraction.
SolveResult solve(const Func& f, const SolverConfig& config);

} // namespace secantk
