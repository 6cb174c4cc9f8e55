// opcalc: solve, evaluate and verify Bessel-type operator equations from JSON.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opcalc/json_io.hpp"

namespace {

using opcalc::Error;
using opcalc::ErrorCode;
using opcalc::json_io::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerification = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

std::optional<int> truncation_from_env() {
  const char* raw = std::getenv("OPCALC_TRUNCATION");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > 100000) {
    throw UsageError(std::string("OPCALC_TRUNCATION must be a positive integer, got '") + raw + "'");
  }
  return static_cast<int>(value);
}

opcalc::json_io::ProblemFile load_problem(const std::string& path) {
  return opcalc::json_io::parse_problem(read_json(path), truncation_from_env());
}

opcalc::TransformOptions options_for(const opcalc::json_io::ProblemFile& problem, bool real_flag) {
  opcalc::TransformOptions options;
  options.truncation = problem.truncation;
  options.real_form = problem.real_form || real_flag;
  return options;
}

opcalc::AnySolveReport solve_problem(const opcalc::json_io::ProblemFile& problem, const opcalc::TransformOptions& options) {
  if (const auto* exact = std::get_if<opcalc::EquationSpec<opcalc::ExactComplex>>(&problem.spec)) {
    return opcalc::solve_with_fallback(*exact, options);
  }
  return opcalc::solve(std::get<opcalc::EquationSpec<opcalc::Complex>>(problem.spec), options);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

// Real values print as one number; a visible imaginary part as re+imi.
std::string format_value(opcalc::Complex z) {
  if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real()))) return format_double(z.real());
  std::string im = format_double(z.imag());
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + im + "i";
}

std::vector<double> parse_t_list(const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad sample point '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_range(const std::string& raw) {
  double a = 0.0, b = 0.0;
  int n = 0;
  char tail = 0;
  if (std::sscanf(raw.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3 || n < 1) {
    throw UsageError("--range expects a:b:n with n >= 1, got '" + raw + "'");
  }
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

int report_error(const Error& e) {
  std::cerr << "opcalc: error: " << e.what() << "\n";
  json out = {{"error", {{"code", opcalc::error_code_name(e.code())}, {"message", e.what()}}}};
  std::cout << out.dump(2) << "\n";
  return e.code() == ErrorCode::kNegativeValuation ? kExitVerification : kExitError;
}

int cmd_solve(const std::string& path, bool real_flag) {
  const auto problem = load_problem(path);
  const auto report = solve_problem(problem, options_for(problem, real_flag));
  bool ok = false;
  std::visit(
      [&](const auto& r) {
        const json out = opcalc::json_io::report_to_json(r, problem.tolerance);
        ok = out.at("verified").get<bool>();
        std::cout << out.dump(2) << "\n";
      },
      report);
  if (!ok) std::cerr << "opcalc: verification failed\n";
  return ok ? kExitOk : kExitVerification;
}

// A series document (no "operator" field) is evaluated as given; a problem
// file is solved first and its expanded series evaluated.
int cmd_eval(const std::string& path, const std::vector<double>& samples) {
  if (samples.empty()) throw UsageError("no sample points given; use --t t1,t2,... or --range a:b:n");
  const json doc = read_json(path);
  opcalc::FormalSeries<opcalc::Complex> series;
  if (doc.is_object() && !doc.contains("operator")) {
    const int truncation = truncation_from_env().value_or(opcalc::kDefaultTruncation);
    series = opcalc::json_io::series_from_json<opcalc::Complex>(doc, truncation);
  } else {
    const auto problem = opcalc::json_io::parse_problem(doc, truncation_from_env());
    const auto report = solve_problem(problem, options_for(problem, false));
    std::visit(
        [&](const auto& r) {
          if (r.solution.non_evaluable_residual) {
            throw Error(ErrorCode::kNegativeValuation, "solution has a negative-index residual and no realization");
          }
          series = opcalc::convert_series<opcalc::Complex>(r.series);
        },
        report);
  }
  std::vector<opcalc::EvalResult> rows;
  for (double t : samples) rows.push_back(opcalc::eval_series(series, series.nu(), t));
  std::cout << "t,value,bound\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::cout << format_double(samples[i]) << "," << format_value(rows[i].value) << ","
              << format_double(rows[i].truncation_bound) << "\n";
  }
  return kExitOk;
}

int cmd_table(double nu) {
  json out = {{"nu", nu}, {"rows", opcalc::json_io::table_rows(nu)}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

template <opcalc::Coefficient C>
opcalc::VerifyResult verify_as(const opcalc::EquationSpec<C>& spec, const json& series_doc, int truncation) {
  const auto kind = opcalc::json_io::detect_kind(series_doc);
  if (kind == opcalc::json_io::CoefficientKind::kFloating && opcalc::CoefficientTraits<C>::kExact) {
    auto floating_spec = opcalc::convert_spec<opcalc::Complex>(spec);
    return opcalc::verify(floating_spec,
                          opcalc::json_io::series_from_json<opcalc::Complex>(series_doc, truncation, spec.nu));
  }
  return opcalc::verify(spec, opcalc::json_io::series_from_json<C>(series_doc, truncation, spec.nu));
}

int cmd_verify(const std::string& problem_path, const std::string& series_path) {
  const auto problem = load_problem(problem_path);
  const json series_doc = read_json(series_path);
  bool exact = problem.exact();
  opcalc::VerifyResult result;
  std::visit(
      [&](const auto& spec) {
        if (exact && opcalc::json_io::detect_kind(series_doc) == opcalc::json_io::CoefficientKind::kFloating) {
          exact = false;
        }
        result = verify_as(spec, series_doc, problem.truncation);
      },
      problem.spec);
  // An exact problem checked against a floating series is held to the
  // floating default unless the file sets its own tolerance.
  const double tolerance = problem.exact() && !exact && problem.tolerance == 0.0 ? 1e-10 : problem.tolerance;
  const bool ok = opcalc::json_io::metrics_pass(result, exact, tolerance);
  json out = opcalc::json_io::metrics_to_json(result);
  out["tolerance"] = tolerance;
  out["verified"] = ok;
  std::cout << out.dump(2) << "\n";
  if (!ok) std::cerr << "opcalc: verification failed\n";
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational-calculus solver for Bessel-type equations"};
  app.require_subcommand(1);

  std::string solve_path;
  bool real_flag = false;
  auto* solve = app.add_subcommand("solve", "Solve a problem file and print the report as JSON");
  solve->add_option("file", solve_path, "Problem JSON")->required();
  solve->add_flag("--real", real_flag, "Rewrite atoms into J/ber/bei form where the roots permit");

  std::string eval_path, t_list, range;
  auto* eval = app.add_subcommand("eval", "Evaluate the solution series at sample points (CSV)");
  eval->add_option("file", eval_path, "Problem or series JSON")->required();
  auto* t_opt = eval->add_option("--t", t_list, "Comma-separated sample points");
  auto* range_opt = eval->add_option("--range", range, "Evenly spaced samples a:b:n");
  t_opt->excludes(range_opt);

  double table_nu = 0.0;
  auto* table = app.add_subcommand("table", "Print the transform table with nu substituted");
  table->add_option("--nu", table_nu, "Order nu")->required();

  std::string verify_problem, verify_series;
  auto* verify = app.add_subcommand("verify", "Check a series against a problem's equation");
  verify->add_option("file", verify_problem, "Problem JSON")->required();
  verify->add_option("series", verify_series, "Series JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_path, real_flag);
    if (*eval) {
      std::vector<double> samples;
      if (*t_opt) samples = parse_t_list(t_list);
      if (*range_opt) samples = parse_range(range);
      return cmd_eval(eval_path, samples);
    }
    if (*table) return cmd_table(table_nu);
    if (*verify) return cmd_verify(verify_problem, verify_series);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const UsageError& e) {
    std::cerr << "opcalc: usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "opcalc: error: " << e.what() << "\n";
    std::cout << json{{"error", {{"code", "parse_error"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kExitError;
  }
  return kExitError;
}
