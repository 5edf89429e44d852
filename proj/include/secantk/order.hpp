// Convergence-order theory for the memory-k secant iteration: the order
// s_k (unique positive root of s^{k+1} = 1 + s + ... + s^k), its bounds,
// the asymptotic error constant, and empirical estimators over error
// sequences.

#pragma once

#include "secantk/complex.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace secantk {

class ZeroFirstDerivativeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NonPositiveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class ZeroErrorFactorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct OrderInfo {
  int k = 1;
  double s_k = 0.0;          // in (1, 2); s_1 is the golden ratio
  double lower_bound = 0.0;  // 2 - 2^{-k-1} e   (meaningful for k >= 2)
  double upper_bound = 0.0;  // 2 - 2^{-k-1}
};

/// Order of the depth-k method, solved on [1,2] by bisection to 1e-14
/// and polished with two Newton steps. The efficiency index equals s_k
/// since each iteration costs one function evaluation.
OrderInfo order_of_method(int k);

/// Residual of the defining polynomial, s^{k+1} - sum_{i=0}^{k} s^i.
double order_equation_residual(int k, double s);

/// L = (-1)^{k+1} / (k+1)! * f^{(k+1)}(root) / f'(root), the limit of
/// eps_{n+1} / (eps_n eps_{n-1} ... eps_{n-k}).
Complex asymptotic_error_constant(Complex f_prime_at_root, Complex f_k1_at_root, int k);

/// Empirical order at row n: log(e_{n+1}/e_n) / log(e_n/e_{n-1}).
/// Defined for 1 <= n <= size-2; entries where a log argument is 1 (or
/// an error is zero) come back disengaged. The strict batch form demands
/// all entries positive and at least three of them.
std::optional<double> order_estimate_at(std::span<const double> abs_errors, std::size_t n);
std::vector<std::optional<double>> estimate_order(std::span<const double> abs_errors);

/// sigma_n = eps_{n+1} / (eps_n eps_{n-1} ... eps_{n-k}), reported at
/// row n (the numerator belongs to the next row). Defined for
/// k <= n <= size-2. The strict batch form demands size >= k+2 and no
/// zero entry among the used factors.
std::optional<Complex> sigma_ratio_at(std::span<const Complex> errors, int k, std::size_t n);
std::vector<std::optional<Complex>> sigma_ratios(std::span<const Complex> errors, int k);

} // namespace secantk
