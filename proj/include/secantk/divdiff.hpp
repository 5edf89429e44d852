// Newton divided differences over a sliding window of interpolation
// points, stored newest first.

#pragma once

#include "secantk/complex.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace secantk {

/// Two abscissae in the same table compare exactly equal.
class DuplicateAbscissaError : public std::invalid_argument {
 public:
  DuplicateAbscissaError(Complex value, std::size_t first, std::size_t second)
      : std::invalid_argument("duplicate abscissa " + format_complex(value, 17) +
                              " at indices " + std::to_string(first) + " and " +
                              std::to_string(second)),
        value_(value), first_(first), second_(second) {}
  Complex value() const { return value_; }
  std::size_t first_index() const { return first_; }
  std::size_t second_index() const { return second_; }

 private:
  Complex value_;
  std::size_t first_, second_;
};

class TableTooSmallError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Divided-difference table over the points p0, p1, ..., pm (newest
/// first). coeffs()[i] is the order-i divided difference over the newest
/// i+1 points, i.e. the Newton coefficients of the interpolating
/// polynomial written from the newest point down.
///
/// Tables are immutable values; every operation is a pure function, so
/// concurrent use needs no synchronization.
class DivDiffTable {
 public:
  /// Builds the full coefficient diagonal by the standard triangular
  /// recurrence. Points must be pairwise distinct and match values in
  /// length (nonempty). Throws DuplicateAbscissaError naming the
  /// offending pair.
  static DivDiffTable build(std::vector<Complex> points, std::vector<Complex> values);

  /// New table over [z, existing points...] truncated to the newest
  /// `window` entries. Bit-identical to build() on the truncated lists.
  DivDiffTable push_newest(Complex z, Complex fz, std::size_t window) const;

  /// Interpolating polynomial evaluated at z (Newton form, newest first).
  Complex newton_eval(Complex z) const;

  /// Derivative of the interpolating polynomial at the newest point.
  /// Requires at least two points.
  Complex derivative_at_newest() const;

  std::span<const Complex> points() const { return points_; }
  std::span<const Complex> values() const { return values_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::size_t size() const { return points_.size(); }

 private:
  DivDiffTable() = default;
  std::vector<Complex> points_;
  std::vector<Complex> values_;
  std::vector<Complex> coeffs_;
};

} // namespace secantk
