#include "secantk/order.hpp"

#include <cmath>

namespace secantk {

double order_equation_residual(int k, double s) {
  double power = 1.0;  // s^i
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    sum += power;
    power *= s;
  }
  return power - sum;  // power is now s^{k+1}
}

OrderInfo order_of_method(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  // g(1) = 1 - (k+1) < 0 and g(2) = 1 > 0, so [1,2] always brackets.
  double lo = 1.0, hi = 2.0;
  while (hi - lo > 1e-14) {
    double mid = 0.5 * (lo + hi);
    if (order_equation_residual(k, mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double s = 0.5 * (lo + hi);

  // Two Newton polish steps on g(s) = s^{k+1} - sum s^i.
  for (int pass = 0; pass < 2; ++pass) {
    double gp = 0.0;  // g'(s)
    double power = 1.0;
    for (int i = 1; i <= k; ++i) {
      gp -= i * power;  // d/ds of -s^i contributes -i s^{i-1}
      power *= s;
    }
    gp += (k + 1) * power;  // d/ds of s^{k+1}
    double g = order_equation_residual(k, s);
    if (gp != 0.0) s -= g / gp;
  }

  OrderInfo info;
  info.k = k;
  info.s_k = s;
  double scale = std::ldexp(1.0, -k - 1);  // 2^{-k-1}
  info.lower_bound = 2.0 - scale * std::exp(1.0);
  info.upper_bound = 2.0 - scale;
  return info;
}

Complex asymptotic_error_constant(Complex f_prime_at_root, Complex f_k1_at_root,
                                  int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (f_prime_at_root == Complex(0.0)) {
    throw ZeroFirstDerivativeError("f'(root) must be nonzero for a simple root");
  }
  double factorial = 1.0;
  for (int i = 2; i <= k + 1; ++i) factorial *= i;
  double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  return sign / factorial * (f_k1_at_root / f_prime_at_root);
}

std::optional<double> order_estimate_at(std::span<const double> abs_errors,
                                        std::size_t n) {
  if (n < 1 || n + 2 > abs_errors.size()) return std::nullopt;
  double prev = abs_errors[n - 1];
  double cur = abs_errors[n];
  double next = abs_errors[n + 1];
  if (!(prev > 0.0) || !(cur > 0.0) || !(next > 0.0)) return std::nullopt;
  if (next == cur || cur == prev) return std::nullopt;  // a log argument is 1
  return std::log(next / cur) / std::log(cur / prev);
}

std::vector<std::optional<double>> estimate_order(std::span<const double> abs_errors) {
  if (abs_errors.size() < 3) {
    throw std::invalid_argument("order estimation needs at least three errors");
  }
  for (std::size_t i = 0; i < abs_errors.size(); ++i) {
    if (!(abs_errors[i] > 0.0)) {
      throw NonPositiveError("error magnitude at index " + std::to_string(i) +
                             " is not positive");
    }
  }
  std::vector<std::optional<double>> estimates(abs_errors.size());
  for (std::size_t n = 1; n + 2 <= abs_errors.size(); ++n) {
    estimates[n] = order_estimate_at(abs_errors, n);
  }
  return estimates;
}

std::optional<Complex> sigma_ratio_at(std::span<const Complex> errors, int k,
                                      std::size_t n) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n < static_cast<std::size_t>(k) || n + 2 > errors.size()) return std::nullopt;
  if (errors[n + 1] == Complex(0.0)) return std::nullopt;
  Complex denom(1.0);
  for (int i = 0; i <= k; ++i) {
    Complex factor = errors[n - i];
    if (factor == Complex(0.0)) return std::nullopt;
    denom *= factor;
  }
  return errors[n + 1] / denom;
}

std::vector<std::optional<Complex>> sigma_ratios(std::span<const Complex> errors,
                                                 int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (errors.size() < static_cast<std::size_t>(k) + 2) {
    throw std::invalid_argument("sigma ratios need at least k+2 errors");
  }
  std::vector<std::optional<Complex>> ratios(errors.size());
  for (std::size_t n = static_cast<std::size_t>(k); n + 2 <= errors.size(); ++n) {
    for (std::size_t used = n - k; used <= n + 1; ++used) {
      if (errors[used] == Complex(0.0)) {
        throw ZeroErrorFactorError("zero error at index " + std::to_string(used));
      }
    }
    ratios[n] = sigma_ratio_at(errors, k, n);
  }
  return ratios;
}

} // namespace secantk
