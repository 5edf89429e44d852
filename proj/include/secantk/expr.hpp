// Recursive-descent parser and evaluator for complex-valued expressions
// in one variable z.
//
// Grammar (infix, conventional precedence):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?            (right-associative)
//   atom    := number | 'z' | constant | name '(' sum (',' sum)* ')'
//            | '(' sum ')'
// Functions: sin cos tan sinh cosh tanh exp log sqrt (all unary).
// Constants: i, pi, e. Numeric literals are decimal with an optional
// exponent. There is no implicit multiplication: write 2*z, not 2z.

#pragma once

#include "secantk/complex.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace secantk {

/// Parse failure; column() is the 1-based offset of the offending
/// character in the source string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : std::runtime_error(message + " (column " + std::to_string(column) + ")"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Immutable expression tree. Evaluation is pure and reentrant; a parsed
/// Expression may be shared and evaluated from any number of threads.
/// Evaluation never throws: division by zero, overflow, and domain
/// problems propagate as non-finite values (see is_finite).
class Expression {
 public:
  struct Node;

  /// Value at the given z, using principal branches for log, sqrt, and
  /// non-integer powers. Powers with an integer exponent are computed by
  /// repeated squaring.
  Complex eval(Complex z) const;

  const std::string& source() const { return source_; }

 private:
  friend Expression parse(std::string_view source);
  std::shared_ptr<const Node> root_;
  std::string source_;
};

/// Parses source text into an Expression. Throws ParseError on a syntax
/// error, an unknown identifier, or a call with the wrong argument count.
Expression parse(std::string_view source);

/// z^n by repeated squaring (n may be negative; z^0 == 1).
Complex pow_integer(Complex z, long long n);

} // namespace secantk
