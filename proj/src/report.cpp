#include "secantk/report.hpp"

#include "secantk/order.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace secantk {

namespace {

constexpr const char* kCsvHeader =
    "n,re_z,im_z,re_f,im_f,abs_eps,re_sigma,im_sigma,order_est,flags";

std::string num17(double x) { return format_double(x, 17); }

double parse_field_double(std::string_view field) {
  double value = 0.0;
  const char* begin = field.data();
  auto [ptr, ec] = std::from_chars(begin, begin + field.size(), value);
  if (ec != std::errc{} || ptr != begin + field.size()) {
    throw std::invalid_argument("bad numeric CSV field: " + std::string(field));
  }
  return value;
}

} // namespace

std::string flags_to_string(std::uint8_t flags) {
  std::string out;
  if (flags & kFlagRoundoffSuspect) out += "roundoff";
  if (flags & kFlagUnavailable) {
    if (!out.empty()) out += '|';
    out += "unavailable";
  }
  return out;
}

std::uint8_t flags_from_string(std::string_view text) {
  std::uint8_t flags = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t bar = text.find('|', pos);
    std::string_view token = text.substr(pos, bar == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : bar - pos);
    if (token == "roundoff") {
      flags |= kFlagRoundoffSuspect;
    } else if (token == "unavailable") {
      flags |= kFlagUnavailable;
    } else if (!token.empty()) {
      throw std::invalid_argument("unknown flag: " + std::string(token));
    }
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  return flags;
}

double roundoff_threshold(Complex root) {
  return 50.0 * std::numeric_limits<double>::epsilon() *
         std::max(1.0, std::abs(root));
}

namespace {

std::vector<IterationRecord> build_records(const SolverTrace& trace,
                                           const std::optional<Complex>& root,
                                           int k) {
  if (trace.iterates.empty()) {
    throw std::invalid_argument("trace is empty");
  }
  std::size_t count = trace.iterates.size();
  std::vector<IterationRecord> records(count);

  std::vector<Complex> eps;
  double threshold = 0.0;
  if (root) {
    threshold = roundoff_threshold(*root);
    eps.reserve(count);
    for (Complex z : trace.iterates) eps.push_back(z - *root);
  }

  std::vector<double> abs_eps(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) abs_eps[i] = std::abs(eps[i]);

  for (std::size_t i = 0; i < count; ++i) {
    IterationRecord& rec = records[i];
    rec.n = static_cast<int>(i);
    rec.z = trace.iterates[i];
    rec.f_z = trace.residuals[i];
    if (!root) continue;

    rec.eps = eps[i];
    rec.abs_eps = abs_eps[i];
    if (abs_eps[i] <= threshold) rec.flags |= kFlagRoundoffSuspect;

    // Both derived columns start at row k, like the reference tables.
    if (i >= static_cast<std::size_t>(k) && i + 2 <= count) {
      rec.sigma = sigma_ratio_at(eps, k, i);
      rec.order_est = order_estimate_at(abs_eps, i);
      if (!rec.sigma || !rec.order_est) rec.flags |= kFlagUnavailable;
    }
  }
  return records;
}

} // namespace

std::vector<IterationRecord> build_report(const SolverTrace& trace,
                                          Complex known_root, int k) {
  return build_records(trace, known_root, k);
}

std::vector<IterationRecord> build_report(const SolverTrace& trace, int k) {
  return build_records(trace, std::nullopt, k);
}

double significant_digits(const IterationRecord& record, Complex root) {
  if (root == Complex(0.0)) throw ZeroRootError("root is zero");
  if (!record.abs_eps || !(*record.abs_eps > 0.0)) {
    throw ZeroErrorError("record has no positive error magnitude");
  }
  return -std::log10(*record.abs_eps / std::abs(root));
}

namespace {

std::string render_text(std::span<const IterationRecord> records) {
  bool with_eps = records[0].abs_eps.has_value();
  char line[256];
  std::string out;
  if (with_eps) {
    out = "   n           z_n                |f|      |eps|        sigma                 order   flags\n";
  } else {
    out = "   n           z_n                |f|\n";
  }
  for (const IterationRecord& rec : records) {
    std::snprintf(line, sizeof line, "%4d  %22s  %9.3e", rec.n,
                  format_complex(rec.z, 7).c_str(), std::abs(rec.f_z));
    out += line;
    if (with_eps) {
      if (rec.abs_eps) {
        std::snprintf(line, sizeof line, "  %9.3e", *rec.abs_eps);
        out += line;
      } else {
        out += "          -";
      }
      if (rec.sigma) {
        std::snprintf(line, sizeof line, "  %+.3e %+.3ei", rec.sigma->real(),
                      rec.sigma->imag());
        out += line;
      } else {
        out += "            -            ";
      }
      if (rec.order_est) {
        std::snprintf(line, sizeof line, "  %6.3f", *rec.order_est);
        out += line;
      } else {
        out += "       -";
      }
      std::string flags = flags_to_string(rec.flags);
      if (!flags.empty()) {
        out += "   ";
        out += flags;
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(std::span<const IterationRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const IterationRecord& rec : records) {
    out += std::to_string(rec.n);
    out += ',';
    out += num17(rec.z.real());
    out += ',';
    out += num17(rec.z.imag());
    out += ',';
    out += num17(rec.f_z.real());
    out += ',';
    out += num17(rec.f_z.imag());
    out += ',';
    if (rec.abs_eps) out += num17(*rec.abs_eps);
    out += ',';
    if (rec.sigma) out += num17(rec.sigma->real());
    out += ',';
    if (rec.sigma) out += num17(rec.sigma->imag());
    out += ',';
    if (rec.order_est) out += num17(*rec.order_est);
    out += ',';
    out += flags_to_string(rec.flags);
    out += '\n';
  }
  return out;
}

std::string render_jsonl(std::span<const IterationRecord> records) {
  std::string out;
  for (const IterationRecord& rec : records) {
    nlohmann::json row;
    row["n"] = rec.n;
    row["z"] = {{"re", rec.z.real()}, {"im", rec.z.imag()}};
    row["f"] = {{"re", rec.f_z.real()}, {"im", rec.f_z.imag()}};
    if (rec.abs_eps) row["abs_eps"] = *rec.abs_eps;
    if (rec.eps) row["eps"] = {{"re", rec.eps->real()}, {"im", rec.eps->imag()}};
    if (rec.sigma) row["sigma"] = {{"re", rec.sigma->real()}, {"im", rec.sigma->imag()}};
    if (rec.order_est) row["order_est"] = *rec.order_est;
    if (rec.flags) row["flags"] = flags_to_string(rec.flags);
    out += row.dump();
    out += '\n';
  }
  return out;
}

} // namespace

std::string render(std::span<const IterationRecord> records, RenderFormat format) {
  if (records.empty()) throw std::invalid_argument("no records to render");
  switch (format) {
    case RenderFormat::TextTable: return render_text(records);
    case RenderFormat::Csv: return render_csv(records);
    case RenderFormat::Jsonl: return render_jsonl(records);
  }
  throw std::logic_error("unreachable");
}

std::vector<IterationRecord> parse_csv(std::string_view csv) {
  std::vector<IterationRecord> records;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    std::string_view line =
        csv.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                      : eol - pos);
    pos = (eol == std::string_view::npos) ? csv.size() : eol + 1;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
      header_seen = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 10) throw std::invalid_argument("bad CSV row");

    IterationRecord rec;
    rec.n = static_cast<int>(parse_field_double(fields[0]));
    rec.z = Complex(parse_field_double(fields[1]), parse_field_double(fields[2]));
    rec.f_z = Complex(parse_field_double(fields[3]), parse_field_double(fields[4]));
    if (!fields[5].empty()) rec.abs_eps = parse_field_double(fields[5]);
    if (!fields[6].empty() || !fields[7].empty()) {
      rec.sigma = Complex(parse_field_double(fields[6]), parse_field_double(fields[7]));
    }
    if (!fields[8].empty()) rec.order_est = parse_field_double(fields[8]);
    rec.flags = flags_from_string(fields[9]);
    records.push_back(rec);
  }
  return records;
}

std::optional<std::size_t> last_reliable_sigma_row(
    std::span<const IterationRecord> records, int k) {
  std::optional<std::size_t> best;
  for (std::size_t n = 0; n < records.size(); ++n) {
    if (!records[n].sigma) continue;
    if (n < static_cast<std::size_t>(k) || n + 1 >= records.size()) continue;
    bool clean = true;
    for (std::size_t used = n - k; used <= n + 1; ++used) {
      if (records[used].roundoff_suspect()) clean = false;
    }
    if (clean) best = n;
  }
  return best;
}

std::optional<std::size_t> last_reliable_order_row(
    std::span<const IterationRecord> records) {
  std::optional<std::size_t> best;
  for (std::size_t n = 1; n + 1 < records.size(); ++n) {
    if (!records[n].order_est) continue;
    if (records[n - 1].roundoff_suspect() || records[n].roundoff_suspect() ||
        records[n + 1].roundoff_suspect()) {
      continue;
    }
    best = n;
  }
  return best;
}

} // namespace secantk
