#include "secantk/cli.hpp"

#include "secantk/complex.hpp"
#include "secantk/expr.hpp"
#include "secantk/order.hpp"
#include "secantk/problems.hpp"
#include "secantk/report.hpp"
#include "secantk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <numbers>

#include "CLI11.hpp"

namespace secantk {

namespace {

// ---------------------------------------------------------------------------
// Embedded reference tables for the `reproduce` subcommand. Values beyond
// double precision are kept for display but excluded from the checks.

struct RefRow {
  int n;
  double abs_eps;
  double tol_rel;  // relative tolerance on the |eps| comparison
  bool excluded;   // requires more than 16 significant digits
  std::optional<Complex> sigma;      // compared to 2 significant digits
  std::optional<double> order_est;   // compared to +-0.02
};

struct ReferenceTable {
  int id;
  const char* problem;
  int k;
  Complex z0, z1;
  Complex root;
  std::vector<RefRow> rows;
};

const ReferenceTable& reference_table(int id) {
  static const ReferenceTable table1{
      1,
      "cubic",
      2,
      Complex(0.0, 2.0),
      Complex(-2.0, 2.0),
      Complex(-1.0, std::sqrt(3.0)),
      {
          {0, 1.035e+00, 5e-3, false, std::nullopt, std::nullopt},
          {1, 1.035e+00, 5e-3, false, std::nullopt, std::nullopt},
          {2, 4.808e-01, 5e-3, false, Complex(-8.972e-2, +1.015e-1), 2.516},
          {3, 6.979e-02, 5e-3, false, Complex(+1.224e-1, -2.727e-2), 1.437},
          {4, 4.355e-03, 5e-3, false, Complex(+1.009e-1, -4.079e-2), 2.023},
          {5, 1.591e-05, 5e-3, false, Complex(+4.561e-2, -9.794e-2), 1.839},
          // sigma/order on row 6 need row 7, which is below the binary64
          // floor; |eps_6| itself is still comparable at 10%.
          {6, 5.223e-10, 1e-1, false, std::nullopt, std::nullopt},
          {7, 2.967e-18, 0.0, true, std::nullopt, std::nullopt},
          {8, 2.083e-33, 0.0, true, std::nullopt, std::nullopt},
          {9, 0.0, 0.0, true, std::nullopt, std::nullopt},
      }};
  // The z0 below is the value that actually generates this data; see the
  // row-0 error magnitude, which pins it.
  static const ReferenceTable table2{
      2,
      "trig",
      2,
      Complex(1.2, -1.3),
      Complex(0.6, -0.5),
      Complex(1.0, -1.0) * (std::numbers::pi / 4.0),
      {
          {0, 6.608e-01, 5e-3, false, std::nullopt, std::nullopt},
          {1, 3.403e-01, 5e-3, false, std::nullopt, std::nullopt},
          {2, 1.341e-01, 5e-3, false, Complex(+3.163e-1, +1.397e-1), 2.743},
          {3, 1.043e-02, 5e-3, false, Complex(+1.466e-1, -1.846e-1), 1.774},
          {4, 1.122e-04, 5e-3, false, Complex(-2.943e-3, -1.117e-1), 1.934},
          // sigma/order on row 5 need row 6, which is flagged as roundoff
          // suspect at double precision.
          {5, 1.755e-08, 5e-3, false, std::nullopt, std::nullopt},
          {6, 3.320e-15, 0.0, true, std::nullopt, std::nullopt},
          {7, 1.084e-27, 0.0, true, std::nullopt, std::nullopt},
          {8, 9.630e-35, 0.0, true, std::nullopt, std::nullopt},
      }};
  return id == 1 ? table1 : table2;
}

// True when x agrees with ref to `digits` significant digits (of ref).
bool agrees_sig(double x, double ref, int digits) {
  if (ref == 0.0) return x == 0.0;
  double ulp = std::pow(10.0, std::floor(std::log10(std::abs(ref))) - (digits - 1));
  return std::abs(x - ref) <= 0.5 * ulp;
}

bool within_rel(double x, double ref, double tol) {
  return std::abs(x - ref) <= tol * std::abs(ref);
}

// ---------------------------------------------------------------------------

std::optional<RenderFormat> parse_render_format(const std::string& name) {
  if (name == "table") return RenderFormat::TextTable;
  if (name == "csv") return RenderFormat::Csv;
  if (name == "jsonl") return RenderFormat::Jsonl;
  return std::nullopt;
}

// Emits to --out FILE when given, otherwise to the stream.
bool emit(const std::string& text, const std::string& out_path,
          std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "secantk: cannot open output file '" << out_path << "'\n";
    return false;
  }
  file << text;
  return true;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Complex require_complex(const std::string& text, const char* flag) {
  auto value = parse_complex_literal(text);
  if (!value) {
    throw UsageError(std::string("invalid complex literal for ") + flag + ": '" +
                     text + "' (use forms like 1.5-1.3i, 2i, 0.5)");
  }
  return *value;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string problem;
  std::string function;
  std::string z0, z1, z1_policy;
  int k = 2;
  double tol_residual = 1e-13;
  double tol_step = 1e-13;
  int max_iter = 100;
  std::string format = "table";
  std::string out_path;
};

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  const Problem* registered = nullptr;
  Problem parsed;
  if (!opt.problem.empty()) {
    registered = find_problem(opt.problem);
    if (!registered) throw UsageError("unknown problem '" + opt.problem + "'");
  } else {
    try {
      parsed = make_problem("cli", parse(opt.function));
    } catch (const ParseError& e) {
      throw UsageError(std::string("cannot parse --function: ") + e.what());
    }
  }
  const Problem& problem = registered ? *registered : parsed;

  SolverConfig config;
  config.k = opt.k;
  config.tol_residual = opt.tol_residual;
  config.tol_step = opt.tol_step;
  config.max_iter = opt.max_iter;

  if (!opt.z0.empty()) {
    config.z0 = require_complex(opt.z0, "--z0");
  } else if (problem.suggested_start) {
    config.z0 = problem.suggested_start->first;
  } else {
    throw UsageError("--z0 is required (no suggested start available)");
  }

  if (!opt.z1.empty()) {
    config.z1 = Z1Policy::given(require_complex(opt.z1, "--z1"));
  } else if (opt.z1_policy == "brin") {
    config.z1 = Z1Policy::brin();
  } else if (opt.z1_policy == "steffensen") {
    config.z1 = Z1Policy::steffensen();
  } else if (!opt.z1_policy.empty()) {
    throw UsageError("unknown --z1-policy '" + opt.z1_policy + "'");
  } else if (problem.suggested_start && opt.z0.empty()) {
    config.z1 = Z1Policy::given(problem.suggested_start->second);
  } else {
    throw UsageError("provide --z1 or --z1-policy");
  }

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  SolveResult result = solve(problem.f, config);

  std::vector<IterationRecord> records;
  std::optional<Complex> root_for_eps;
  if (result.converged() && !problem.known_roots.empty()) {
    root_for_eps = nearest_known_root(problem, result.root);
  }
  if (root_for_eps) {
    records = build_report(result.trace, *root_for_eps, config.k);
  } else {
    records = build_report(result.trace, config.k);
  }

  auto format = parse_render_format(opt.format);
  if (!format) throw UsageError("unknown --format '" + opt.format + "'");

  std::string body;
  if (*format == RenderFormat::TextTable) {
    std::ostringstream head;
    head << "problem: " << problem.formula << "   k=" << config.k
         << "   z0=" << format_complex(config.z0, 7) << "\n"
         << "status: " << to_string(result.trace.status)
         << "   iterations: " << result.trace.iterates.size() - 1
         << "   f-evaluations: " << result.trace.f_evaluations << "\n";
    if (result.converged()) {
      head << "root: " << format_complex(result.root, 17) << "\n";
    }
    body = head.str() + render(records, *format);
  } else {
    body = render(records, *format);
  }
  if (!emit(body, opt.out_path, out, err)) return 1;
  return result.converged() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceOptions {
  int table = 0;
  std::string format = "table";
  std::string out_path;
};

int cmd_reproduce(const ReproduceOptions& opt, std::ostream& out,
                  std::ostream& err) {
  if (opt.table != 1 && opt.table != 2) {
    throw UsageError("--table must be 1 or 2");
  }
  const ReferenceTable& ref = reference_table(opt.table);
  const Problem* problem = find_problem(ref.problem);

  SolverConfig config;
  config.k = ref.k;
  config.z0 = ref.z0;
  config.z1 = Z1Policy::given(ref.z1);
  SolveResult result = solve(problem->f, config);
  std::vector<IterationRecord> records =
      build_report(result.trace, ref.root, ref.k);

  int checked = 0, passed = 0;
  std::ostringstream text;
  text << "reproduction of reference table " << ref.id << " (problem "
       << ref.problem << ", k=" << ref.k << ", z0=" << format_complex(ref.z0, 7)
       << ", z1=" << format_complex(ref.z1, 7) << ")\n";
  char line[256];
  text << "   n  |eps| run     |eps| ref     sigma         order   note\n";
  for (const RefRow& row : ref.rows) {
    const IterationRecord* rec =
        static_cast<std::size_t>(row.n) < records.size() ? &records[row.n] : nullptr;

    std::string note;
    if (row.excluded) {
      note = "excluded (beyond double precision)";
    } else if (!rec) {
      ++checked;
      note = "FAIL: row not reached";
    } else {
      std::vector<std::string> misses;
      ++checked;
      if (rec->abs_eps && within_rel(*rec->abs_eps, row.abs_eps, row.tol_rel)) {
        ++passed;
      } else {
        misses.push_back("|eps|");
      }
      if (row.sigma) {
        ++checked;
        if (rec->sigma && agrees_sig(rec->sigma->real(), row.sigma->real(), 2) &&
            agrees_sig(rec->sigma->imag(), row.sigma->imag(), 2)) {
          ++passed;
        } else {
          misses.push_back("sigma");
        }
      }
      if (row.order_est) {
        ++checked;
        if (rec->order_est && std::abs(*rec->order_est - *row.order_est) <= 0.02) {
          ++passed;
        } else {
          misses.push_back("order");
        }
      }
      if (misses.empty()) {
        note = "ok";
      } else {
        note = "FAIL:";
        for (const std::string& miss : misses) note += " " + miss;
      }
    }

    std::snprintf(line, sizeof line, "%4d  %-12s  %-12s", row.n,
                  rec && rec->abs_eps ? format_double(*rec->abs_eps, 4).c_str() : "-",
                  format_double(row.abs_eps, 4).c_str());
    text << line;
    if (row.sigma && rec && rec->sigma) {
      std::snprintf(line, sizeof line, "  %-20s", format_complex(*rec->sigma, 4).c_str());
      text << line;
    } else {
      text << "  -                   ";
    }
    if (row.order_est && rec && rec->order_est) {
      std::snprintf(line, sizeof line, "  %6.3f", *rec->order_est);
      text << line;
    } else {
      text << "       -";
    }
    text << "   " << note << "\n";
  }
  bool all_ok = (passed == checked);
  text << "result: " << passed << "/" << checked
       << " compared values within tolerance\n";

  auto format = parse_render_format(opt.format);
  if (!format) throw UsageError("unknown --format '" + opt.format + "'");
  std::string body = (*format == RenderFormat::TextTable)
                         ? text.str()
                         : render(records, *format);
  if (!emit(body, opt.out_path, out, err)) return 1;
  return all_ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// order-table

int cmd_order_table(int k_max, std::ostream& out) {
  out << "   k     s_k     lower    upper\n";
  char line[128];
  for (int k = 1; k <= k_max; ++k) {
    OrderInfo info = order_of_method(k);
    std::snprintf(line, sizeof line, "%4d   %-6s  %-7s  %-7s\n", k,
                  format_double(info.s_k, 4).c_str(),
                  format_double(info.lower_bound, 4).c_str(),
                  format_double(info.upper_bound, 4).c_str());
    out << line;
  }
  out << "(the efficiency index per function evaluation equals s_k)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string problem;
  std::vector<int> ks;
  std::vector<std::string> z0s, z1s;
  int max_iter = 100;
  std::string format = "csv";
  std::string out_path;
};

struct SweepRow {
  int k = 0;
  int start_index = 0;
  Complex z0, z1;
  SolveStatus status = SolveStatus::MaxIterations;
  std::size_t iterations = 0;
  std::size_t f_evaluations = 0;
  Complex root;
  double abs_f_final = 0.0;
  std::optional<double> order_est;
};

SweepRow run_sweep_case(const Problem& problem, int k, int start_index,
                        Complex z0, Complex z1, int max_iter) {
  SweepRow row;
  row.k = k;
  row.start_index = start_index;
  row.z0 = z0;
  row.z1 = z1;

  SolverConfig config;
  config.k = k;
  config.z0 = z0;
  config.z1 = Z1Policy::given(z1);
  config.max_iter = std::max(max_iter, k + 1);
  SolveResult result = solve(problem.f, config);

  row.status = result.trace.status;
  row.iterations = result.trace.iterates.size() - 1;
  row.f_evaluations = result.trace.f_evaluations;
  row.root = result.root;
  row.abs_f_final = std::abs(result.trace.residuals.back());

  if (result.converged() && !problem.known_roots.empty()) {
    Complex root = *nearest_known_root(problem, result.root);
    auto records = build_report(result.trace, root, k);
    if (auto n = last_reliable_order_row(records)) {
      row.order_est = records[*n].order_est;
    }
  }
  return row;
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  const Problem* problem = find_problem(opt.problem);
  if (!problem) throw UsageError("unknown problem '" + opt.problem + "'");
  if (opt.ks.empty()) throw UsageError("--k requires at least one value");
  for (int k : opt.ks) {
    if (k < 1) throw UsageError("--k values must be >= 1");
  }
  if (opt.z0s.size() != opt.z1s.size()) {
    throw UsageError("--z0 and --z1 must be given the same number of times");
  }

  std::vector<std::pair<Complex, Complex>> starts;
  if (opt.z0s.empty()) {
    if (!problem->suggested_start) {
      throw UsageError("problem has no suggested start; give --z0/--z1");
    }
    starts.push_back(*problem->suggested_start);
  } else {
    for (std::size_t i = 0; i < opt.z0s.size(); ++i) {
      starts.emplace_back(require_complex(opt.z0s[i], "--z0"),
                          require_complex(opt.z1s[i], "--z1"));
    }
  }

  std::vector<int> ks = opt.ks;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  // Independent solves share no state; run them concurrently and then
  // assemble rows in deterministic (k, start index) order.
  std::vector<std::future<SweepRow>> futures;
  for (int k : ks) {
    for (std::size_t s = 0; s < starts.size(); ++s) {
      futures.push_back(std::async(std::launch::async, run_sweep_case,
                                   std::cref(*problem), k, static_cast<int>(s),
                                   starts[s].first, starts[s].second,
                                   opt.max_iter));
    }
  }

  std::string body;
  auto format = parse_render_format(opt.format);
  if (!format) throw UsageError("unknown --format '" + opt.format + "'");
  if (*format == RenderFormat::Csv) {
    body = "k,start_index,re_z0,im_z0,re_z1,im_z1,status,iterations,"
           "f_evaluations,re_root,im_root,abs_f_final,order_est\n";
  }
  for (auto& future : futures) {
    SweepRow row = future.get();
    switch (*format) {
      case RenderFormat::Csv: {
        std::ostringstream os;
        os << row.k << ',' << row.start_index << ','
           << format_double(row.z0.real(), 17) << ','
           << format_double(row.z0.imag(), 17) << ','
           << format_double(row.z1.real(), 17) << ','
           << format_double(row.z1.imag(), 17) << ',' << to_string(row.status)
           << ',' << row.iterations << ',' << row.f_evaluations << ','
           << format_double(row.root.real(), 17) << ','
           << format_double(row.root.imag(), 17) << ','
           << format_double(row.abs_f_final, 17) << ',';
        if (row.order_est) os << format_double(*row.order_est, 17);
        os << '\n';
        body += os.str();
        break;
      }
      case RenderFormat::Jsonl: {
        std::ostringstream os;
        os << "{\"k\":" << row.k << ",\"start_index\":" << row.start_index
           << ",\"status\":\"" << to_string(row.status)
           << "\",\"iterations\":" << row.iterations;
        if (row.order_est) os << ",\"order_est\":" << format_double(*row.order_est, 17);
        os << "}\n";
        body += os.str();
        break;
      }
      case RenderFormat::TextTable: {
        std::ostringstream os;
        os << "k=" << row.k << " start=" << row.start_index << " status="
           << to_string(row.status) << " iterations=" << row.iterations
           << " root=" << format_complex(row.root, 7);
        if (row.order_est) os << " order_est=" << format_double(*row.order_est, 4);
        os << '\n';
        body += os.str();
        break;
      }
    }
  }
  if (!emit(body, opt.out_path, out, err)) return 1;
  return 0;
}

} // namespace

// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"root finding for complex-valued f(z) by the generalized "
               "secant method (memory depth k)"};
  app.name("secantk");
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "solve f(z) = 0 for a built-in problem or a parsed expression");
  auto* problem_opt = solve_cmd->add_option("--problem", solve_opt.problem,
                                            "built-in problem name (cubic, trig)");
  auto* function_opt = solve_cmd->add_option("--function", solve_opt.function,
                                             "expression in z, e.g. \"z^2+1\"");
  problem_opt->excludes(function_opt);
  function_opt->excludes(problem_opt);
  solve_cmd->add_option("--z0", solve_opt.z0, "first starting point (complex literal)");
  auto* z1_opt = solve_cmd->add_option("--z1", solve_opt.z1, "second starting point");
  auto* policy_opt =
      solve_cmd
          ->add_option("--z1-policy", solve_opt.z1_policy,
                       "derive z1 from z0: brin (z0 + f(z0)) or steffensen")
          ->check(CLI::IsMember({"brin", "steffensen"}));
  z1_opt->excludes(policy_opt);
  policy_opt->excludes(z1_opt);
  solve_cmd->add_option("--k", solve_opt.k, "memory depth k >= 1");
  solve_cmd->add_option("--tol-residual", solve_opt.tol_residual, "residual tolerance");
  solve_cmd->add_option("--tol-step", solve_opt.tol_step, "step tolerance");
  solve_cmd->add_option("--max-iter", solve_opt.max_iter, "largest iterate index");
  solve_cmd->add_option("--format", solve_opt.format, "table, csv, or jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  solve_cmd->add_option("--out", solve_opt.out_path, "write output to this file");

  ReproduceOptions repro_opt;
  CLI::App* repro_cmd = app.add_subcommand(
      "reproduce", "re-run a built-in reference computation and compare");
  repro_cmd->add_option("--table", repro_opt.table, "reference table id (1 or 2)")
      ->required();
  repro_cmd->add_option("--format", repro_opt.format, "table, csv, or jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  repro_cmd->add_option("--out", repro_opt.out_path, "write output to this file");

  int k_max = 7;
  CLI::App* order_cmd =
      app.add_subcommand("order-table", "theoretical order s_k and bounds");
  order_cmd->add_option("--k-max", k_max, "largest k (default 7)");

  SweepOptions sweep_opt;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "run one problem over several k values and summarize");
  sweep_cmd->add_option("--problem", sweep_opt.problem, "built-in problem name")
      ->required();
  sweep_cmd->add_option("--k", sweep_opt.ks, "k values (repeat or comma-separate)")
      ->delimiter(',');
  sweep_cmd->add_option("--z0", sweep_opt.z0s, "starting z0 (repeatable)");
  sweep_cmd->add_option("--z1", sweep_opt.z1s, "starting z1 (repeatable)");
  sweep_cmd->add_option("--max-iter", sweep_opt.max_iter, "largest iterate index");
  sweep_cmd->add_option("--format", sweep_opt.format, "csv, jsonl, or table")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  sweep_cmd->add_option("--out", sweep_opt.out_path, "write output to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "secantk: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve_cmd->parsed()) {
      if (solve_opt.problem.empty() && solve_opt.function.empty()) {
        throw UsageError("give --problem or --function");
      }
      return cmd_solve(solve_opt, out, err);
    }
    if (repro_cmd->parsed()) return cmd_reproduce(repro_opt, out, err);
    if (order_cmd->parsed()) {
      if (k_max < 1) throw UsageError("--k-max must be >= 1");
      return cmd_order_table(k_max, out);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opt, out, err);
  } catch (const UsageError& e) {
    err << "secantk: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace secantk
