#include "secantk/solver.hpp"

#include "secantk/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace secantk {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::SingularDerivative: return "singular-derivative";
    case SolveStatus::NonFiniteValue: return "non-finite-value";
    case SolveStatus::Stagnated: return "stagnated";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(tol_residual > 0.0) || !(tol_step > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (max_iter < k + 1) throw std::invalid_argument("max_iter must be >= k+1");
  if (!(guard_min_denominator > 0.0)) {
    throw std::invalid_argument("guard_min_denominator must be positive");
  }
}

Complex generate_z1(const Func& f, Complex z0, const Z1Policy& policy) {
  switch (policy.kind) {
    case Z1Policy::Kind::Given:
      return policy.value;
    case Z1Policy::Kind::Brin: {
      Complex f0 = f(z0);
      if (!is_finite(f0)) throw NonFiniteValueError("f(z0) is not finite");
      return z0 + f0;
    }
    case Z1Policy::Kind::Steffensen: {
      Complex f0 = f(z0);
      if (!is_finite(f0)) throw NonFiniteValueError("f(z0) is not finite");
      Complex f1 = f(z0 + f0);
      if (!is_finite(f1)) throw NonFiniteValueError("f(z0 + f(z0)) is not finite");
      Complex denom = f1 - f0;
      if (denom == Complex(0.0)) {
        throw SteffensenDenominatorZeroError("f(z0 + f(z0)) equals f(z0)");
      }
      return z0 - f0 * f0 / denom;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// One run's mutable state. The main loop and the bootstrap share step();
// the window is all iterates so far during bootstrap and the last k+1
// afterwards.
struct Engine {
  const Func& f;
  const SolverConfig& config;
  SolverTrace trace;

  Complex eval(Complex z) {
    ++trace.f_evaluations;
    return f(z);
  }

  // Appends an already-evaluated iterate and applies the stopping rules.
  // Returns true when the run is over.
  bool append(Complex z, Complex fz, int degree) {
    trace.iterates.push_back(z);
    trace.residuals.push_back(fz);
    trace.k_used_per_step.push_back(degree);
    if (!is_finite(fz)) {
      trace.status = SolveStatus::NonFiniteValue;
      return true;
    }
    if (std::abs(fz) <= config.tol_residual) {
      trace.status = SolveStatus::Converged;
      return true;
    }
    std::size_t n = trace.iterates.size();
    if (n >= 2) {
      double step = std::abs(z - trace.iterates[n - 2]);
      if (step <= config.tol_step * std::max(1.0, std::abs(z))) {
        trace.status = SolveStatus::Converged;
        return true;
      }
    }
    if (static_cast<int>(n) - 1 >= config.max_iter) {
      trace.status = SolveStatus::MaxIterations;
      return true;
    }
    return false;
  }

  // Window of the last `count` iterates, newest first.
  void window(std::size_t count, std::vector<Complex>& pts,
              std::vector<Complex>& vals) const {
    pts.clear();
    vals.clear();
    std::size_t n = trace.iterates.size();
    for (std::size_t i = 0; i < count; ++i) {
      pts.push_back(trace.iterates[n - 1 - i]);
      vals.push_back(trace.residuals[n - 1 - i]);
    }
  }

  // One step over the last `count` iterates. Returns true when done.
  bool step(std::size_t count) {
    std::vector<Complex> pts, vals;
    window(count, pts, vals);

    Complex derivative;
    Complex z_top, f_top;
    try {
      DivDiffTable table = DivDiffTable::build(std::move(pts), std::move(vals));
      derivative = table.derivative_at_newest();
      z_top = table.points()[0];
      f_top = table.values()[0];
    } catch (const DuplicateAbscissaError&) {
      trace.status = SolveStatus::Stagnated;
      return true;
    }
    if (!is_finite(derivative) ||
        std::abs(derivative) < config.guard_min_denominator) {
      trace.status = SolveStatus::SingularDerivative;
      return true;
    }

    Complex z_new = z_top - f_top / derivative;
    if (!is_finite(z_new)) {
      trace.status = SolveStatus::NonFiniteValue;
      return true;
    }

    // An exact repeat of a point that stays in the next window means no
    // new information is extractable in this arithmetic. A repeat of the
    // immediate predecessor is a zero step and converges above instead.
    std::size_t next_window = std::min<std::size_t>(count, config.k);
    std::size_t n = trace.iterates.size();
    Complex fz_new;
    bool duplicate = false;
    for (std::size_t i = 0; i < next_window; ++i) {
      if (z_new == trace.iterates[n - 1 - i]) {
        duplicate = true;
        fz_new = trace.residuals[n - 1 - i];
        break;
      }
    }
    if (!duplicate) fz_new = eval(z_new);

    int degree = static_cast<int>(count) - 1;
    bool zero_step = (z_new == trace.iterates[n - 1]);
    if (duplicate && !zero_step) {
      // Would collide inside the next window: stop before appending.
      trace.status = SolveStatus::Stagnated;
      return true;
    }
    return append(z_new, fz_new, degree);
  }

  void run() {
    Complex f0 = eval(config.z0);
    if (append(config.z0, f0, 0)) return;

    Complex z1 = config.z1.value;
    if (config.z1.kind != Z1Policy::Kind::Given) {
      try {
        z1 = generate_z1([this](Complex z) { return eval(z); }, config.z0,
                         config.z1);
      } catch (const SteffensenDenominatorZeroError&) {
        trace.status = SolveStatus::SingularDerivative;
        return;
      } catch (const NonFiniteValueError&) {
        trace.status = SolveStatus::NonFiniteValue;
        return;
      }
    }
    if (!is_finite(z1)) {
      trace.status = SolveStatus::NonFiniteValue;
      return;
    }
    if (z1 == config.z0) {
      trace.status = SolveStatus::Stagnated;
      return;
    }
    if (append(z1, eval(z1), 0)) return;

    // Bootstrap: degree grows with the iterate count until it reaches k.
    while (trace.iterates.size() < static_cast<std::size_t>(config.k) + 1) {
      if (step(trace.iterates.size())) return;
    }
    // Main recursion over the fixed window of k+1 points.
    for (;;) {
      if (step(static_cast<std::size_t>(config.k) + 1)) return;
    }
  }
};

} // namespace

std::vector<Complex> bootstrap(const Func& f, Complex z0, Complex z1, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (z0 == z1) throw DuplicateAbscissaError(z0, 0, 1);

  std::vector<Complex> zs = {z0, z1};
  std::vector<Complex> fs = {f(z0), f(z1)};
  if (!is_finite(fs[0]) || !is_finite(fs[1])) {
    throw NonFiniteValueError("f is not finite at a starting point");
  }
  while (zs.size() < static_cast<std::size_t>(k) + 1) {
    std::vector<Complex> pts(zs.rbegin(), zs.rend());
    std::vector<Complex> vals(fs.rbegin(), fs.rend());
    DivDiffTable table = DivDiffTable::build(std::move(pts), std::move(vals));
    Complex derivative = table.derivative_at_newest();
    if (std::abs(derivative) < 1e-290) {
      throw SingularDerivativeError("interpolant derivative below guard in bootstrap");
    }
    Complex z_new = zs.back() - fs.back() / derivative;
    if (!is_finite(z_new)) throw NonFiniteValueError("bootstrap iterate is not finite");
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (z_new == zs[i]) {
        throw DuplicateAbscissaError(z_new, i, zs.size());
      }
    }
    Complex f_new = f(z_new);
    if (!is_finite(f_new)) throw NonFiniteValueError("f is not finite at a bootstrap iterate");
    zs.push_back(z_new);
    fs.push_back(f_new);
  }
  return zs;
}

SolverTrace iterate(const Func& f, const SolverConfig& config) {
  config.validate();
  Engine engine{f, config, {}};
  engine.run();
  return std::move(engine.trace);
}

SolveResult solve(const Func& f, const SolverConfig& config) {
  SolveResult result;
  result.trace = iterate(f, config);
  result.root = result.trace.iterates.empty() ? config.z0
                                              : result.trace.iterates.back();
  return result;
}

} // namespace secantk
