#include "secantk/divdiff.hpp"

#include <algorithm>
#include <utility>

namespace secantk {

DivDiffTable DivDiffTable::build(std::vector<Complex> points,
                                 std::vector<Complex> values) {
  if (points.empty() || points.size() != values.size()) {
    throw std::invalid_argument("divided differences need equal-length nonempty lists");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw DuplicateAbscissaError(points[i], i, j);
    }
  }

  DivDiffTable table;
  table.points_ = std::move(points);
  table.values_ = std::move(values);

  // Triangular recurrence; after level m, scratch[i] holds the order-m
  // divided difference over points i..i+m. The table keeps the diagonal
  // anchored at the newest point.
  std::size_t n = table.points_.size();
  std::vector<Complex> scratch = table.values_;
  table.coeffs_.reserve(n);
  table.coeffs_.push_back(scratch[0]);
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      scratch[i] = (scratch[i] - scratch[i + 1]) /
                   (table.points_[i] - table.points_[i + m]);
    }
    table.coeffs_.push_back(scratch[0]);
  }
  return table;
}

DivDiffTable DivDiffTable::push_newest(Complex z, Complex fz,
                                       std::size_t window) const {
  if (window == 0) throw std::invalid_argument("window must be positive");
  std::vector<Complex> points;
  std::vector<Complex> values;
  points.reserve(window);
  values.reserve(window);
  points.push_back(z);
  values.push_back(fz);
  for (std::size_t i = 0; i < points_.size() && points.size() < window; ++i) {
    points.push_back(points_[i]);
    values.push_back(values_[i]);
  }
  return build(std::move(points), std::move(values));
}

Complex DivDiffTable::newton_eval(Complex z) const {
  Complex result = coeffs_[0];
  Complex product(1.0);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    product *= (z - points_[i - 1]);
    result += coeffs_[i] * product;
  }
  return result;
}

Complex DivDiffTable::derivative_at_newest() const {
  if (size() < 2) throw TableTooSmallError("derivative needs at least two points");
  // p'(p0) = c1 + sum_{i>=2} c_i * prod_{j=1}^{i-1} (p0 - p_j); the
  // product skips the newest point, whose factor vanishes at p0.
  Complex result = coeffs_[1];
  Complex product(1.0);
  for (std::size_t i = 2; i < coeffs_.size(); ++i) {
    product *= (points_[0] - points_[i - 1]);
    result += coeffs_[i] * product;
  }
  return result;
}

} // namespace secantk
