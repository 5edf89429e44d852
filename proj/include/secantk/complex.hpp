// Shared complex scalar type plus small parsing/formatting helpers.

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace secantk {

using Complex = std::complex<double>;

/// True when both components are finite (no NaN, no infinity).
bool is_finite(Complex z);

/// Parses a complex literal of the form "a+bi", "a-bi", "bi", or "a"
/// (no spaces, '.' radix point, optional exponent). "i" and "-i" are
/// accepted as shorthands for the unit imaginary. Returns nullopt on
/// any malformed or trailing input.
std::optional<Complex> parse_complex_literal(std::string_view text);

/// Formats z in the same "a+bi" literal form, with the given number of
/// significant digits per component. parse_complex_literal() accepts the
/// result; at 17 digits the round trip is bit-exact.
std::string format_complex(Complex z, int significant_digits);

/// Locale-independent double formatting ("%.*g" with C semantics).
std::string format_double(double x, int significant_digits);

} // namespace secantk
