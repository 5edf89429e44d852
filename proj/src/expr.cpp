#include "secantk/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace secantk {

namespace {

enum class Op {
  kConstant,
  kVariable,
  kNegate,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kSin,
  kCos,
  kTan,
  kSinh,
  kCosh,
  kTanh,
  kExp,
  kLog,
  kSqrt,
};

struct Function {
  std::string_view name;
  Op op;
};

constexpr std::array<Function, 9> kFunctions{{
    {"sin", Op::kSin},
    {"cos", Op::kCos},
    {"tan", Op::kTan},
    {"sinh", Op::kSinh},
    {"cosh", Op::kCosh},
    {"tanh", Op::kTanh},
    {"exp", Op::kExp},
    {"log", Op::kLog},
    {"sqrt", Op::kSqrt},
}};

} // namespace

struct Expression::Node {
  Op op;
  Complex value;  // kConstant only
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Complex pow_integer(Complex z, long long n) {
  if (n < 0) return Complex(1.0) / pow_integer(z, -n);
  Complex result(1.0);
  Complex base = z;
  unsigned long long e = static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1ull) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

namespace {

Complex eval_pow(Complex base, Complex exponent) {
  // Integer exponents (detected at runtime) avoid the exp/log branch cut.
  double n = exponent.real();
  if (exponent.imag() == 0.0 && n == std::nearbyint(n) && std::abs(n) <= 1e15) {
    return pow_integer(base, static_cast<long long>(n));
  }
  return std::exp(exponent * std::log(base));
}

Complex eval_node(const Expression::Node& node, Complex z) {
  switch (node.op) {
    case Op::kConstant: return node.value;
    case Op::kVariable: return z;
    // 0 - v rather than -v: negated real literals keep a +0 imaginary
    // part and land on the principal side of the log/sqrt branch cut.
    case Op::kNegate: return Complex(0.0) - eval_node(*node.lhs, z);
    case Op::kAdd: return eval_node(*node.lhs, z) + eval_node(*node.rhs, z);
    case Op::kSub: return eval_node(*node.lhs, z) - eval_node(*node.rhs, z);
    case Op::kMul: return eval_node(*node.lhs, z) * eval_node(*node.rhs, z);
    case Op::kDiv: return eval_node(*node.lhs, z) / eval_node(*node.rhs, z);
    case Op::kPow: return eval_pow(eval_node(*node.lhs, z), eval_node(*node.rhs, z));
    case Op::kSin: return std::sin(eval_node(*node.lhs, z));
    case Op::kCos: return std::cos(eval_node(*node.lhs, z));
    case Op::kTan: return std::tan(eval_node(*node.lhs, z));
    case Op::kSinh: return std::sinh(eval_node(*node.lhs, z));
    case Op::kCosh: return std::cosh(eval_node(*node.lhs, z));
    case Op::kTanh: return std::tanh(eval_node(*node.lhs, z));
    case Op::kExp: return std::exp(eval_node(*node.lhs, z));
    case Op::kLog: return std::log(eval_node(*node.lhs, z));
    case Op::kSqrt: return std::sqrt(eval_node(*node.lhs, z));
  }
  return Complex(std::nan(""), std::nan(""));
}

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr,
                  Complex value = Complex()) {
  auto node = std::make_shared<Expression::Node>();
  node->op = op;
  node->value = value;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr root = parse_sum();
    skip_spaces();
    if (pos_ != src_.size()) fail("unexpected trailing input", pos_);
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::size_t pos) const {
    throw ParseError(message, pos + 1);  // 1-based column
  }

  void skip_spaces() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_spaces();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_spaces();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::kAdd, lhs, parse_product());
      } else if (accept('-')) {
        lhs = make_node(Op::kSub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_node(Op::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make_node(Op::kNegate, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (accept('^')) {
      // '^' binds tighter than unary minus on its left but accepts a
      // signed exponent on its right: -z^2 == -(z^2), z^-2 == z^(-2).
      return make_node(Op::kPow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_spaces();
    if (pos_ >= src_.size()) fail("expected expression, found end of input", pos_);
    char c = src_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      NodePtr inner = parse_sum();
      if (!accept(')')) fail("unbalanced '('", open);
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      return parse_identifier();
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("malformed number", pos_);
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return make_node(Op::kConstant, nullptr, nullptr, Complex(value, 0.0));
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = src_.substr(start, pos_ - start);

    if (name == "z") return make_node(Op::kVariable);
    if (name == "i") return make_node(Op::kConstant, nullptr, nullptr, Complex(0.0, 1.0));
    if (name == "pi") return make_node(Op::kConstant, nullptr, nullptr, Complex(std::numbers::pi, 0.0));
    if (name == "e") return make_node(Op::kConstant, nullptr, nullptr, Complex(std::numbers::e, 0.0));

    for (const Function& fn : kFunctions) {
      if (name == fn.name) {
        if (!accept('(')) fail("expected '(' after function name", pos_);
        std::vector<NodePtr> args;
        if (peek() == ')') {
          ++pos_;
          fail(std::string(fn.name) + " takes 1 argument, got 0", start);
        }
        args.push_back(parse_sum());
        while (accept(',')) args.push_back(parse_sum());
        if (!accept(')')) fail("unbalanced '(' in call", pos_);
        if (args.size() != 1) {
          fail(std::string(fn.name) + " takes 1 argument, got " +
                   std::to_string(args.size()),
               start);
        }
        return make_node(fn.op, args[0]);
      }
    }
    fail("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

} // namespace

Complex Expression::eval(Complex z) const {
  return eval_node(*root_, z);
}

Expression parse(std::string_view source) {
  Expression expr;
  expr.root_ = Parser(source).run();
  expr.source_ = std::string(source);
  return expr;
}

} // namespace secantk
