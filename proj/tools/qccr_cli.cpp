// qccr: verification suites, parameter tables, a Wick-ordering calculator and
// representation export. Output is deterministic: it embeds the resolved
// configuration and never includes timings.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 budget exceeded.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qccr/boundary.hpp"
#include "qccr/checks.hpp"
#include "qccr/fock.hpp"
#include "qccr/io.hpp"
#include "qccr/parse.hpp"
#include "qccr/single_mode.hpp"
#include "qccr/wick.hpp"

namespace {

using nlohmann::json;
using qccr::Complex;
using qccr::QParam;
namespace checks = qccr::checks;
namespace fock = qccr::fock;
namespace wick = qccr::wick;

constexpr const char* kReportSchema = "qccr.report/1";
constexpr const char* kTableSchema = "qccr.table/1";
constexpr const char* kCalcSchema = "qccr.calc/1";

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------- options

struct Options {
  std::vector<std::string> suites;
  std::vector<double> q;
  std::string q_grid;
  std::optional<std::size_t> d;
  std::optional<int> N;
  int L = 4;
  std::string phi;
  std::string theta_file;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  unsigned jobs = 1;
  std::optional<std::size_t> budget;
  std::string expression;
  std::string kind = "fock";
};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(x)) throw UsageError(what + ": '" + text + "' is not a finite number");
  return x;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

/// a:b:step, inclusive of b up to rounding.
std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--q-grid expects a:b:step");
  const double a = parse_double(parts[0], "--q-grid");
  const double b = parse_double(parts[1], "--q-grid");
  const double step = parse_double(parts[2], "--q-grid");
  if (step <= 0.0 || b < a) throw UsageError("--q-grid needs a <= b and step > 0");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw UsageError("--q-grid has too many points");
  std::vector<double> out;
  for (long k = 0; k < count; ++k) {
    double q = a + static_cast<double>(k) * step;
    if (std::abs(q) < 1e-12 * std::max(1.0, step)) q = 0.0;
    // Drop accumulated rounding so -0.9:0.9:0.3 gives -0.6, not -0.6000000000000001.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", q);
    out.push_back(std::min(std::strtod(buf, nullptr), b));
  }
  return out;
}

std::vector<double> q_values(const Options& o, std::vector<double> fallback) {
  std::vector<double> out = o.q;
  if (!o.q_grid.empty()) {
    const auto g = parse_grid(o.q_grid);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out.empty() ? fallback : out;
}

/// "x1,y1,x2,y2,..." gives complex components. With an explicit --d, d real
/// values are also accepted. A lone "0" is the zero vector.
wick::ModeVector<Complex> parse_phi(const std::string& text, std::optional<std::size_t> explicit_d,
                                    std::size_t default_d) {
  const auto parts = split(text, ',');
  std::vector<double> x;
  for (const auto& p : parts) x.push_back(parse_double(p, "--phi"));
  if (x.size() == 1 && x[0] == 0.0) return wick::ModeVector<Complex>(explicit_d.value_or(default_d), 0.0);
  if (explicit_d && x.size() == *explicit_d) return {x.begin(), x.end()};
  if (x.size() % 2 != 0) throw UsageError("--phi expects re,im pairs (or d real values with --d)");
  if (explicit_d && x.size() != 2 * *explicit_d)
    throw UsageError("--phi has " + std::to_string(x.size()) + " values; --d " + std::to_string(*explicit_d) +
                     " needs " + std::to_string(*explicit_d) + " or " + std::to_string(2 * *explicit_d));
  wick::ModeVector<Complex> phi;
  for (std::size_t k = 0; k < x.size(); k += 2) phi.emplace_back(x[k], x[k + 1]);
  return phi;
}

Complex json_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_object()) return {v.value("re", 0.0), v.value("im", 0.0)};
  throw UsageError("theta entries must be numbers, [re, im] pairs or {\"re\", \"im\"} objects");
}

qccr::boundary::BilinearForm read_theta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open theta file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("theta file " + path + ": " + e.what());
  }
  const json& m = doc.is_object() ? doc.at("theta") : doc;
  if (!m.is_array() || m.empty()) throw UsageError("theta must be a non-empty d x d matrix");
  const auto d = static_cast<Eigen::Index>(m.size());
  qccr::boundary::BilinearForm b;
  b.theta = qccr::boundary::Matrix(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) throw UsageError("theta must be square");
    for (Eigen::Index j = 0; j < d; ++j) b.theta(i, j) = json_complex(row[static_cast<std::size_t>(j)]);
  }
  return b;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::size_t resolve_budget(const Options& o) {
  if (o.budget) return *o.budget;
  if (auto v = env("QCCR_BUDGET")) {
    const double x = parse_double(*v, "QCCR_BUDGET");
    if (x < 1 || x != std::floor(x)) throw UsageError("QCCR_BUDGET must be a positive integer");
    return static_cast<std::size_t>(x);
  }
  return fock::kDefaultBudget;
}

double resolve_tol(const Options& o) {
  double t = 1e-12;
  if (o.tol) {
    t = *o.tol;
  } else if (auto v = env("QCCR_TOL")) {
    t = parse_double(*v, "QCCR_TOL");
  }
  if (t <= 0.0) throw UsageError("tolerance must be positive");
  return t;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const wick::ModeVector<Complex>& f) {
  json out = json::array();
  for (const Complex& z : f) out.push_back(complex_json(z));
  return out;
}

json matrix_json(const qccr::boundary::Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

// ------------------------------------------------------------- output

std::string number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out += ',';
    out += csv_field(fields[k]);
  }
  return out + "\r\n";
}

constexpr int kCsvDigits = 15;

/// JSON numbers use the shortest representation that reads back exactly;
/// non-finite values become strings, since JSON has no literal for them.
json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return number(x, 17);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (o.format == a) return;
  throw UsageError("unsupported --format " + o.format);
}

// ------------------------------------------------------------- verify

int cmd_verify(const Options& o) {
  require_format(o, {"json", "csv"});
  if (o.suites.empty()) throw UsageError("select at least one --suite");
  std::vector<checks::Suite> suites;
  for (const auto& name : o.suites) {
    if (name == "all") {
      for (auto s : {checks::Suite::Wick, checks::Suite::SingleMode, checks::Suite::Fock, checks::Suite::Boundary,
                     checks::Suite::Acceptance})
        suites.push_back(s);
      continue;
    }
    const auto s = checks::parse_suite(name);
    if (!s) throw UsageError("unknown suite '" + name + "' (wick, fock, single-mode, boundary, acceptance, all)");
    suites.push_back(*s);
  }

  checks::SuiteConfig cfg;
  cfg.q_values = q_values(o, {0.5});
  cfg.L = o.L;
  cfg.N = o.N.value_or(6);
  cfg.tol = resolve_tol(o);
  cfg.budget = resolve_budget(o);
  if (!o.theta_file.empty()) cfg.theta = read_theta(o.theta_file);
  const std::size_t d_default = cfg.theta ? cfg.theta->modes() : 2;
  if (o.d && cfg.theta && *o.d != cfg.theta->modes()) throw UsageError("--d does not match the theta file");
  if (!o.phi.empty()) cfg.phi = parse_phi(o.phi, o.d, d_default);
  cfg.d = o.d.value_or(cfg.phi ? cfg.phi->size() : d_default);
  if (cfg.d < 1 || cfg.d > 64) throw UsageError("--d must be between 1 and 64");
  if (cfg.phi && cfg.phi->size() != cfg.d) throw UsageError("--phi dimension does not match --d");
  if (cfg.N < 1 || cfg.L < 0) throw UsageError("--N must be positive and --L non-negative");
  for (double q : cfg.q_values) {
    if (std::abs(q) >= 1.0) throw UsageError("verify needs -1 < q < 1 (got " + number(q, 17) + ")");
  }

  json config{{"command", "verify"},
              {"suites", o.suites},
              {"q", cfg.q_values},
              {"d", cfg.d},
              {"N", cfg.N},
              {"L", cfg.L},
              {"tol", cfg.tol},
              {"budget", cfg.budget},
              {"seed", cfg.seed}};
  config["phi"] = cfg.phi ? vector_json(*cfg.phi) : json(nullptr);
  config["theta"] = cfg.theta ? matrix_json(cfg.theta->theta) : json(nullptr);

  std::vector<std::pair<std::string, checks::CheckResult>> results;
  std::string status = "pass";
  std::string error;
  for (auto s : suites) {
    std::vector<checks::CheckResult> out;
    try {
      checks::run_suite(s, cfg, out);
    } catch (const fock::BudgetExceeded& e) {
      status = "budget_exceeded";
      error = e.what();
    }
    for (auto& r : out) results.emplace_back(checks::suite_name(s), std::move(r));
    if (status == "budget_exceeded") break;
  }
  std::size_t failed = 0;
  for (const auto& [suite, r] : results) failed += r.passed() ? 0 : 1;
  if (status == "pass" && failed > 0) status = "fail";

  if (o.format == "json") {
    json checks_json = json::array();
    for (const auto& [suite, r] : results) {
      json ms = json::array();
      for (const auto& m : r.measurements) {
        ms.push_back({{"label", m.label},
                      {"measured", finite_or_string(m.measured)},
                      {"relation", m.relation == checks::Relation::AtMost ? "<=" : ">="},
                      {"bound", finite_or_string(m.bound)},
                      {"tolerance", m.tolerance},
                      {"passed", m.passed}});
      }
      checks_json.push_back(
          {{"suite", suite}, {"id", r.id}, {"description", r.description}, {"passed", r.passed()}, {"measurements", ms}});
    }
    json report{{"schema", kReportSchema},
                {"config", config},
                {"status", status},
                {"checks", checks_json},
                {"summary", {{"checks", results.size()}, {"failed", failed}}}};
    if (!error.empty()) report["error"] = error;
    emit(o, report.dump(2) + "\n");
  } else {
    std::string text = "# schema: " + std::string(kReportSchema) + "\r\n# config: " + config.dump() + "\r\n# status: " +
                       status + (error.empty() ? "" : " (" + error + ")") + "\r\n";
    text += csv_row({"suite", "id", "check_passed", "label", "measured", "relation", "bound", "tolerance", "passed"});
    for (const auto& [suite, r] : results) {
      for (const auto& m : r.measurements) {
        text += csv_row({suite, r.id, r.passed() ? "true" : "false", m.label, number(m.measured, kCsvDigits),
                         m.relation == checks::Relation::AtMost ? "<=" : ">=", number(m.bound, kCsvDigits),
                         number(m.tolerance, kCsvDigits), m.passed ? "true" : "false"});
      }
    }
    emit(o, text);
  }
  if (status == "budget_exceeded") return kBudget;
  return status == "pass" ? kPass : kCheckFailed;
}

// ------------------------------------------------------------- table

struct TableRow {
  double q = 0.0;
  bool defined = false;
  double norm_closed = 0.0;
  double norm_numeric = 0.0;
  double beta_minus = 0.0;
  double beta_plus = 0.0;
  double epsilon = 0.0;
  double bound = 0.0;
};

TableRow table_row(double q, int N) {
  namespace sm = qccr::single_mode;
  TableRow row;
  row.q = q;
  if (std::abs(q) >= 1.0) return row;
  const QParam qp = QParam::numeric(q);
  const auto norm = sm::shift_norm(qp, N);
  const auto beta = sm::beta_bounds(qp, 1e-15);
  row.defined = true;
  row.norm_closed = norm.closed_form;
  row.norm_numeric = norm.numeric;
  row.beta_minus = beta.minus.value;
  row.beta_plus = beta.plus.value;
  row.epsilon = sm::epsilon(std::abs(q), 1e-15).value;
  row.bound = (1.0 - q) / (1.0 - std::abs(q)) * row.epsilon;
  return row;
}

int cmd_table(const Options& o) {
  require_format(o, {"json", "csv"});
  const auto grid = q_values(o, {});
  if (grid.empty()) throw UsageError("table needs --q or --q-grid");
  for (double q : grid)
    if (std::abs(q) > 1.0) throw UsageError("table needs |q| <= 1 (got " + number(q, 17) + ")");
  const int N = o.N.value_or(60);
  if (N < 1) throw UsageError("--N must be positive");
  const unsigned jobs = std::max(1u, o.jobs);

  // Workers take grid indices in any order; rows land at their own index.
  std::vector<TableRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) rows[k] = table_row(grid[k], N);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, grid.size()); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  const double threshold = qccr::single_mode::epsilon_threshold(1e-12);
  const json config{{"command", "table"}, {"q", grid}, {"N", N}, {"jobs", jobs}};
  const std::vector<std::string> columns{"q",        "norm_closed", "norm_numeric", "beta_minus",
                                         "beta_plus", "epsilon",     "block_bound"};
  if (o.format == "json") {
    json out_rows = json::array();
    for (const auto& r : rows) {
      const json undefined = "undefined";
      out_rows.push_back({{"q", r.q},
                          {"norm_closed", r.defined ? json(r.norm_closed) : undefined},
                          {"norm_numeric", r.defined ? json(r.norm_numeric) : undefined},
                          {"beta_minus", r.defined ? json(r.beta_minus) : undefined},
                          {"beta_plus", r.defined ? json(r.beta_plus) : undefined},
                          {"epsilon", r.defined ? json(r.epsilon) : undefined},
                          {"block_bound", r.defined ? json(r.bound) : undefined}});
    }
    const json doc{{"schema", kTableSchema},
                   {"config", config},
                   {"columns", columns},
                   {"rows", out_rows},
                   {"threshold", {{"q_star", threshold}, {"defined_by", "epsilon(q) = q^2"}}}};
    emit(o, doc.dump(2) + "\n");
  } else {
    std::string text = "# schema: " + std::string(kTableSchema) + "\r\n# config: " + config.dump() +
                       "\r\n# threshold q_star (epsilon(q) = q^2): " + number(threshold, kCsvDigits) + "\r\n";
    text += csv_row(columns);
    for (const auto& r : rows) {
      auto cell = [&](double x) { return r.defined ? number(x, kCsvDigits) : std::string("undefined"); };
      text += csv_row({number(r.q, kCsvDigits), cell(r.norm_closed), cell(r.norm_numeric), cell(r.beta_minus),
                       cell(r.beta_plus), cell(r.epsilon), cell(r.bound)});
    }
    emit(o, text);
  }
  return kPass;
}

// ------------------------------------------------------------- calc

int cmd_calc(const Options& o) {
  require_format(o, {"text", "json"});
  if (o.q.size() > 1 || !o.q_grid.empty()) throw UsageError("calc takes at most one --q");
  const bool exact = o.q.empty();
  std::optional<wick::ModeVector<Complex>> phi;
  std::size_t modes = o.d.value_or(0);
  if (!o.phi.empty()) {
    phi = parse_phi(o.phi, o.d, 0);
    if (!phi->empty()) modes = std::max(modes, phi->size());
  }
  json config{{"command", "calc"}, {"expression", o.expression}, {"mode", exact ? "exact" : "float"}};
  std::string normal;
  std::optional<std::string> value_text;
  json value_json;
  try {
    if (exact) {
      auto p = qccr::parse_polynomial(o.expression, modes);
      const auto n = wick::normalize(p);
      normal = qccr::to_string(n);
      if (phi) {
        if (phi->empty()) phi = wick::ModeVector<Complex>(n.modes(), 0.0);
        if (phi->size() != n.modes()) throw UsageError("--phi dimension does not match the expression");
        wick::ModeVector<qccr::RationalFunction> exact_phi;
        for (const Complex& z : *phi) exact_phi.emplace_back(qccr::GaussianRational::from_complex(z));
        value_text = qccr::to_string(wick::coherent_expectation(n, exact_phi));
        value_json = *value_text;
      }
    } else {
      const double q = o.q.front();
      const auto p = qccr::parse_float_polynomial(o.expression, q, modes);
      const auto n = wick::normalize(p, QParam::numeric(q));
      normal = qccr::to_string(n);
      config["q"] = q;
      if (phi) {
        if (phi->empty()) phi = wick::ModeVector<Complex>(n.modes(), 0.0);
        if (phi->size() != n.modes()) throw UsageError("--phi dimension does not match the expression");
        const Complex v = wick::coherent_expectation(n, *phi, QParam::numeric(q));
        value_text = v.imag() == 0.0 ? number(v.real(), 17) : "(" + number(v.real(), 17) + "," + number(v.imag(), 17) + ")";
        value_json = complex_json(v);
      }
    }
  } catch (const qccr::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n  " + o.expression + "\n  " + std::string(e.column() - 1, ' ') + "^");
  }
  config["phi"] = phi ? vector_json(*phi) : json(nullptr);
  if (o.format == "text") {
    emit(o, normal + "\n" + (value_text ? *value_text + "\n" : ""));
  } else {
    json doc{{"schema", kCalcSchema}, {"config", config}, {"normal_form", normal}};
    doc["expectation"] = value_text ? value_json : json(nullptr);
    emit(o, doc.dump(2) + "\n");
  }
  return kPass;
}

// ------------------------------------------------------------- export

int cmd_export(const Options& o) {
  require_format(o, {"json"});
  json doc;
  if (o.kind == "fock") {
    if (o.q.size() != 1 || !o.q_grid.empty()) throw UsageError("export --kind fock needs exactly one --q");
    const double q = o.q.front();
    if (std::abs(q) >= 1.0) throw UsageError("export needs -1 < q < 1");
    const std::size_t d = o.d.value_or(2);
    const int N = o.N.value_or(4);
    if (d < 1 || N < 0) throw UsageError("--d must be positive and --N non-negative");
    fock::BuildOptions opts;
    opts.budget = resolve_budget(o);
    const auto rep = fock::build_fock_rep(d, QParam::numeric(q), N, opts);
    if (!rep.has_matrices()) throw UsageError("basis too large for dense export; lower --N or --d");
    doc = qccr::io::export_fock(rep);
    doc["config"] = {{"command", "export"}, {"kind", "fock"}, {"q", q}, {"d", d}, {"N", N}, {"budget", opts.budget}};
  } else if (o.kind == "clifford") {
    qccr::boundary::BilinearForm theta;
    if (!o.theta_file.empty()) {
      theta = read_theta(o.theta_file);
    } else if (!o.phi.empty()) {
      theta = qccr::boundary::coherent_theta(parse_phi(o.phi, o.d, o.d.value_or(2)));
    } else {
      throw UsageError("export --kind clifford needs --theta or --phi");
    }
    doc = qccr::io::export_clifford(qccr::boundary::clifford_rep(theta));
    doc["config"] = {{"command", "export"}, {"kind", "clifford"}, {"theta", matrix_json(theta.theta)}};
  } else {
    throw UsageError("--kind must be fock or clifford");
  }
  emit(o, doc.dump(2) + "\n");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed CCR toolkit: Wick ordering, truncated Fock representations, boundary cases"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* c) {
    c->add_option("--q", o.q, "deformation parameter (repeatable)");
    c->add_option("--q-grid", o.q_grid, "grid a:b:step of q values");
    c->add_option("--d", o.d, "number of modes");
    c->add_option("--N", o.N, "truncation degree");
    c->add_option("--phi", o.phi, "coherent-state vector re1,im1,re2,im2,...");
    c->add_option("--format", o.format, "output format");
    c->add_option("--out", o.out, "write output to this file");
  };

  auto* verify = app.add_subcommand("verify", "run invariant suites and acceptance criteria");
  common(verify);
  verify->add_option("--suite", o.suites, "wick, fock, single-mode, boundary, acceptance or all (repeatable)")
      ->required();
  verify->add_option("--L", o.L, "maximal word length for GNS and Gram checks");
  verify->add_option("--theta", o.theta_file, "JSON file with a complex symmetric d x d matrix");
  verify->add_option("--tol", o.tol, "tolerance for exact-in-principle residuals (env QCCR_TOL)");
  verify->add_option("--budget", o.budget, "largest admissible basis size (env QCCR_BUDGET)");
  verify->add_option("--jobs", o.jobs, "worker threads");

  auto* table = app.add_subcommand("table", "single-mode constants over a q grid");
  common(table);
  table->add_option("--jobs", o.jobs, "worker threads");

  auto* calc = app.add_subcommand("calc", "normal-order an expression and evaluate a coherent state");
  common(calc);
  calc->add_option("expression", o.expression, "expression such as \"a1 c1 c2\"")->required();

  auto* exp = app.add_subcommand("export", "write a representation as JSON with base64 matrix blobs");
  common(exp);
  exp->add_option("--kind", o.kind, "fock or clifford");
  exp->add_option("--theta", o.theta_file, "JSON file with a complex symmetric d x d matrix");
  exp->add_option("--budget", o.budget, "largest admissible basis size (env QCCR_BUDGET)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (calc->parsed() && o.format == "json" && calc->count("--format") == 0) o.format = "text";

  try {
    if (verify->parsed()) return cmd_verify(o);
    if (table->parsed()) return cmd_table(o);
    if (calc->parsed()) return cmd_calc(o);
    if (exp->parsed()) return cmd_export(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fock::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
