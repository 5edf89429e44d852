#include "secantk/complex.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace secantk {

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace {

// Parses a decimal number starting at pos; advances pos past it.
// Accepts an optional leading sign, digits, '.', and exponent.
std::optional<double> parse_number(std::string_view text, std::size_t& pos) {
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  if (begin == end) return std::nullopt;
  // std::from_chars does not accept a leading '+'.
  bool plus = (*begin == '+');
  if (plus) ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin) return std::nullopt;
  pos = static_cast<std::size_t>(ptr - text.data());
  return value;
}

} // namespace

std::optional<Complex> parse_complex_literal(std::string_view text) {
  if (text.empty()) return std::nullopt;

  std::size_t pos = 0;
  auto read_part = [&](double& out_value, bool& out_imag) -> bool {
    // A part is either a number (optionally followed by 'i') or a bare
    // signed 'i'.
    std::size_t start = pos;
    if (auto num = parse_number(text, pos)) {
      out_value = *num;
      out_imag = pos < text.size() && text[pos] == 'i';
      if (out_imag) ++pos;
      return true;
    }
    pos = start;
    double sign = 1.0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -1.0;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      ++pos;
      out_value = sign;
      out_imag = true;
      return true;
    }
    pos = start;
    return false;
  };

  double first = 0.0;
  bool first_imag = false;
  if (!read_part(first, first_imag)) return std::nullopt;
  if (pos == text.size()) {
    return first_imag ? Complex(0.0, first) : Complex(first, 0.0);
  }

  // Second part must be imaginary and explicitly signed.
  if (first_imag) return std::nullopt;
  if (text[pos] != '+' && text[pos] != '-') return std::nullopt;
  double second = 0.0;
  bool second_imag = false;
  if (!read_part(second, second_imag)) return std::nullopt;
  if (!second_imag || pos != text.size()) return std::nullopt;
  return Complex(first, second);
}

std::string format_double(double x, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

std::string format_complex(Complex z, int significant_digits) {
  std::string out = format_double(z.real(), significant_digits);
  double im = z.imag();
  out += std::signbit(im) ? '-' : '+';
  out += format_double(std::abs(im), significant_digits);
  out += 'i';
  return out;
}

} // namespace secantk
