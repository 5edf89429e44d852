// Diagnostics: turns a solver trace (plus a known root, when available)
// into per-iteration records mirroring the reference table layout, and
// renders them as a text table, CSV, or JSON lines.

#pragma once

#include "secantk/complex.hpp"
#include "secantk/solver.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace secantk {

class ZeroRootError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class ZeroErrorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Record flags (bitmask).
inline constexpr std::uint8_t kFlagRoundoffSuspect = 1u << 0;
inline constexpr std::uint8_t kFlagUnavailable = 1u << 1;

std::string flags_to_string(std::uint8_t flags);
std::uint8_t flags_from_string(std::string_view text);

/// One diagnostics row. The error columns are present only when the run
/// was built against a known root. sigma and order_est follow the table
/// conventions: both start at row n = k, sigma at row n uses eps_{n+1}
/// in the numerator, and the order estimate at row n uses errors
/// n-1, n, n+1. Rows whose defining quantities degenerate (a zero error
/// factor, a unit log argument) carry kFlagUnavailable instead of a
/// value. Rows with |eps| at or below the roundoff threshold carry
/// kFlagRoundoffSuspect.
struct IterationRecord {
  int n = 0;
  Complex z;
  Complex f_z;
  std::optional<Complex> eps;      // z_n - root
  std::optional<double> abs_eps;   // |eps|
  std::optional<Complex> sigma;
  std::optional<double> order_est;
  std::uint8_t flags = 0;

  bool roundoff_suspect() const { return flags & kFlagRoundoffSuspect; }
  bool unavailable() const { return flags & kFlagUnavailable; }
};

/// 50 x machine-epsilon x max(1, |root|): below this, |eps| is dominated
/// by binary64 noise and the row is excluded from value comparisons.
double roundoff_threshold(Complex root);

std::vector<IterationRecord> build_report(const SolverTrace& trace, Complex known_root, int k);
std::vector<IterationRecord> build_report(const SolverTrace& trace, int k);  // no known root

/// Correct significant decimal digits, -log10(|eps| / |root|).
/// When the leading constant of the error recursion is O(1), successive
/// counts grow by the factor s_k: q_{n+1} ~ s_k * q_n.
double significant_digits(const IterationRecord& record, Complex root);

enum class RenderFormat { TextTable, Csv, Jsonl };

/// Renders records; requires a nonempty list. The text table uses 4
/// significant digits; CSV and JSONL carry full precision (17 digits).
/// CSV columns, in order:
///   n, re_z, im_z, re_f, im_f, abs_eps, re_sigma, im_sigma, order_est, flags
/// with empty fields for values that are not available.
std::string render(std::span<const IterationRecord> records, RenderFormat format);

/// Inverse of render(..., Csv); numeric fields round-trip bit-exactly.
std::vector<IterationRecord> parse_csv(std::string_view csv);

/// Index of the last row whose sigma (resp. order estimate) is present
/// and built solely from rows above the roundoff threshold.
std::optional<std::size_t> last_reliable_sigma_row(std::span<const IterationRecord> records, int k);
std::optional<std::size_t> last_reliable_order_row(std::span<const IterationRecord> records);

} // namespace secantk
