#include "baskafuzz/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "baskafuzz/corpus.hpp"
#include "baskafuzz/float_format.hpp"
#include "baskafuzz/fuzzy_approx.hpp"
#include "baskafuzz/moduli.hpp"
#include "baskafuzz/shape_analysis.hpp"

namespace baskafuzz {

namespace {

// ---------------------------------------------------------------- schema

class SchemaReader {
 public:
  explicit SchemaReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    std::ostringstream msg;
    msg << "field '" << path << "'";
    // Missing keys and array indices fall back to the nearest ancestor key.
    std::string rest = path;
    while (!rest.empty()) {
      const auto slash = rest.find_last_of('/');
      if (const auto line = line_of_key(rest.substr(slash == std::string::npos ? 0 : slash + 1))) {
        msg << " (line " << *line << ")";
        break;
      }
      rest.resize(slash == std::string::npos ? 0 : slash);
    }
    msg << ": " << what;
    throw Error(ErrorKind::SchemaError, msg.str());
  }

  const Json& require(const Json& obj, const std::string& path, const std::string& key) const {
    if (!obj.contains(key)) fail(path + "/" + key, "is required");
    return obj.at(key);
  }

  double number(const Json& value, const std::string& path) const {
    if (!value.is_number()) fail(path, "must be a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
  }

  int integer(const Json& value, const std::string& path, int minimum) const {
    if (!value.is_number_integer()) fail(path, "must be an integer");
    const auto v = value.get<long long>();
    if (v < minimum || v > 1'000'000'000) {
      fail(path, "must be an integer >= " + std::to_string(minimum));
    }
    return static_cast<int>(v);
  }

  std::string string(const Json& value, const std::string& path) const {
    if (!value.is_string()) fail(path, "must be a string");
    return value.get<std::string>();
  }

  std::vector<double> numbers(const Json& value, const std::string& path) const {
    if (!value.is_array()) fail(path, "must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(number(value[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  std::vector<std::pair<double, double>> pairs(const Json& value, const std::string& path) const {
    if (!value.is_array() || value.size() < 2) fail(path, "must be an array of at least two [x, y] pairs");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const auto item = numbers(value[i], path + "/" + std::to_string(i));
      if (item.size() != 2) fail(path + "/" + std::to_string(i), "must be an [x, y] pair");
      out.emplace_back(item[0], item[1]);
    }
    return out;
  }

  void only_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys) const {
    if (!obj.is_object()) fail(path.empty() ? "/" : path, "must be an object");
    for (const auto& item : obj.items()) {
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        fail(path + "/" + item.key(), "is not a recognized field");
      }
    }
  }

 private:
  std::optional<int> line_of_key(const std::string& key) const {
    if (key.empty()) return std::nullopt;
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return std::nullopt;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  std::string_view text_;
};

FuzzyNumber parse_fuzzy(const SchemaReader& r, const Json& node) {
  const std::string path = "/fuzzy";
  r.only_keys(node, path, {"type", "points", "knots"});
  const std::string type = r.string(r.require(node, path, "type"), path + "/type");
  if (type == "triangular" || type == "trapezoidal") {
    const auto p = r.numbers(r.require(node, path, "points"), path + "/points");
    const std::size_t want = type == "triangular" ? 3 : 4;
    if (p.size() != want) r.fail(path + "/points", "needs " + std::to_string(want) + " numbers");
    return type == "triangular" ? FuzzyNumber::triangular(p[0], p[1], p[2])
                                : FuzzyNumber::trapezoidal(p[0], p[1], p[2], p[3]);
  }
  if (type == "piecewise_linear") {
    std::vector<Knot> knots;
    for (const auto& [x, mu] : r.pairs(r.require(node, path, "knots"), path + "/knots")) {
      knots.push_back({x, mu});
    }
    return FuzzyNumber::piecewise_linear(std::move(knots));
  }
  r.fail(path + "/type", "must be triangular, trapezoidal or piecewise_linear");
}

std::pair<double, double> parse_interval(const SchemaReader& r, const Json& doc) {
  const auto v = r.numbers(r.require(doc, "", "interval"), "/interval");
  if (v.size() != 2 || !(v[0] < v[1])) r.fail("/interval", "must be [a, b] with a < b");
  return {v[0], v[1]};
}

FunctionInput polynomial(std::vector<double> coeffs, double lo, double hi) {
  auto eval = [coeffs](double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  std::function<double(double)> modulus;
  if (coeffs.size() <= 2) {
    modulus = moduli::lipschitz(coeffs.size() == 2 ? coeffs[1] : 0.0);
  } else if (coeffs.size() == 3) {
    const double vertex = std::clamp(-coeffs[1] / (2.0 * coeffs[2]), lo, hi);
    modulus = coeffs[2] < 0.0 ? moduli::concave(eval, lo, hi, vertex) : moduli::convex(eval, lo, hi, vertex);
  }
  return {{eval, modulus, "poly"}, lo, hi, std::nullopt};
}

FunctionInput parse_function(const SchemaReader& r, const Json& doc) {
  const Json& node = doc.at("function");
  const std::string path = "/function";
  r.only_keys(node, path, {"type", "coeffs", "knots", "name"});
  const std::string type = r.string(r.require(node, path, "type"), path + "/type");
  if (type == "poly") {
    const auto coeffs = r.numbers(r.require(node, path, "coeffs"), path + "/coeffs");
    if (coeffs.empty()) r.fail(path + "/coeffs", "must not be empty");
    const auto [lo, hi] = parse_interval(r, doc);
    return polynomial(coeffs, lo, hi);
  }
  if (type == "sqrt") {
    const auto [lo, hi] = parse_interval(r, doc);
    if (lo < 0.0) r.fail("/interval", "sqrt needs a >= 0");
    auto root = [](double x) { return std::sqrt(x); };
    return {{root, moduli::concave(root, lo, hi, hi), "sqrt"}, lo, hi, std::nullopt};
  }
  if (doc.contains("interval")) r.fail("/interval", "is implied by the " + type + " function");
  if (type == "piecewise_linear") {
    auto v = r.pairs(r.require(node, path, "knots"), path + "/knots");
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i].first > v[i - 1].first)) r.fail(path + "/knots", "x must be strictly increasing");
    }
    auto eval = [v](double x) {
      if (x <= v.front().first) return v.front().second;
      if (x >= v.back().first) return v.back().second;
      const auto it = std::upper_bound(v.begin(), v.end(), x,
                                       [](double t, const auto& p) { return t < p.first; });
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    };
    const double lo = v.front().first;
    const double hi = v.back().first;
    return {{eval, moduli::piecewise_linear(v), "piecewise_linear"}, lo, hi, std::nullopt};
  }
  if (type == "corpus") {
    const std::string name = r.string(r.require(node, path, "name"), path + "/name");
    try {
      const CorpusEntry& entry = corpus_function(name);
      return {entry.f, entry.lo, entry.hi, entry.peak};
    } catch (const Error&) {
      r.fail(path + "/name", "unknown corpus function '" + name + "'");
    }
  }
  r.fail(path + "/type", "must be poly, sqrt, piecewise_linear or corpus");
}

QuadratureConfig parse_quadrature(const SchemaReader& r, const Json& node) {
  const std::string path = "/quadrature";
  r.only_keys(node, path, {"rule", "panels", "tolerance", "max_evaluations"});
  const std::string rule = node.contains("rule") ? r.string(node.at("rule"), path + "/rule") : "simpson";
  QuadratureConfig q;
  if (rule == "simpson") {
    q = QuadratureConfig::simpson(node.contains("panels") ? r.integer(node.at("panels"), path + "/panels", 2) : 1024);
  } else if (rule == "adaptive") {
    const double tol = node.contains("tolerance") ? r.number(node.at("tolerance"), path + "/tolerance") : 1e-12;
    const long budget = node.contains("max_evaluations")
                            ? r.integer(node.at("max_evaluations"), path + "/max_evaluations", 3)
                            : 1L << 22;
    q = QuadratureConfig::adaptive(tol, budget);
  } else {
    r.fail(path + "/rule", "must be simpson or adaptive");
  }
  try {
    q.validate();
  } catch (const Error& e) {
    r.fail(path, e.what());
  }
  return q;
}

// ---------------------------------------------------------------- output

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((append(cells, first)), ...);
    text_ += '\n';
  }

  const std::string& text() const noexcept { return text_; }

 private:
  void append(double v, bool& first) { sep(first), text_ += format_double(v); }
  void append(int v, bool& first) { sep(first), text_ += std::to_string(v); }
  void append(const std::string& v, bool& first) { sep(first), text_ += v; }
  void sep(bool& first) {
    if (!first) text_ += ',';
    first = false;
  }

  std::string text_;
};

std::string at_n(std::string_view name, int n) { return std::string(name) + "@n=" + std::to_string(n); }

void add(Report& report, std::string name, double measured, double bound, std::string relation, bool pass,
         bool asserted = true) {
  report.checks.push_back({std::move(name), measured, bound, std::move(relation), pass, asserted});
}

Json interval_json(Interval i) { return Json::array({i.lo, i.hi}); }

SampledFunction as_function(const FuzzyNumber& u) {
  SampledFunction f;
  f.eval = [u](double x) { return u(x); };
  if (u.has_modulus()) f.modulus = [u](double delta) { return *u.modulus(delta); };
  f.name = "membership";
  return f;
}

FunctionInput function_of(const JobSpec& job) {
  if (job.function) return *job.function;
  const FuzzyNumber& u = *job.fuzzy;
  return {as_function(u), u.support_lo(), u.support_hi(), u.core_lo()};
}

Json metric_block(const FuzzyNumber& u, const JobSpec& job, bool closed) {
  Json m = Json::object();
  const Interval ei = closed ? closed_form::expected_interval(u) : expected_interval(u, job.quadrature);
  m["EI"] = interval_json(ei);
  m["EV"] = (ei.lo + ei.hi) / 2.0;
  m["wid"] = ei.hi - ei.lo;
  for (int r : job.reductions) {
    const auto s = ReductionFunction::power_of(r);
    m["Val_" + std::to_string(r)] = closed ? closed_form::value_power(u, r) : value_s(u, s, job.quadrature);
    m["Amb_" + std::to_string(r)] = closed ? closed_form::ambiguity_power(u, r) : ambiguity_s(u, s, job.quadrature);
  }
  return m;
}

std::string curve_csv(const std::function<double(double)>& u, const std::function<double(double)>& approx,
                      std::span<const double> grid) {
  Csv csv{"x", "u", "approx", "abs_error"};
  for (double x : grid) {
    const double ux = u(x);
    const double ax = approx(x);
    csv.row(x, ux, ax, std::abs(ax - ux));
  }
  return csv.text();
}

// ---------------------------------------------------------------- commands

void run_approximate(const JobSpec& job, Report& report, RunResult& result, const std::filesystem::path& out) {
  const int n = job.degrees.front();
  std::string csv;
  if (job.fuzzy) {
    const FuzzyNumber& u = *job.fuzzy;
    const FuzzyApproximant approx = approximate(u, n, job.grid);
    const auto grid = uniform_grid(u.support_lo(), u.support_hi(), job.grid);
    double worst = 0.0;
    for (double x : grid) worst = std::max(worst, std::abs(approx(x) - u(x)));
    Json& q = report.quantities;
    q["n"] = n;
    q["k_c"] = approx.core_knots().indices.k_c;
    q["k_d"] = approx.core_knots().indices.k_d;
    q["c_n"] = approx.core_knots().c_n;
    q["d_n"] = approx.core_knots().d_n;
    q["observed_core"] = interval_json(approx.observed_core());
    q["sup_error"] = worst;
    add(report, at_n("is_fuzzy", n), approx.is_fuzzy() ? 1.0 : 0.0, 1.0, "==", approx.is_fuzzy());
    csv = curve_csv([&u](double x) { return u(x); }, [&approx](double x) { return approx(x); }, grid);
  } else {
    const FunctionInput& f = *job.function;
    const MaxProductOperator op(OperatorContext(n, f.lo, f.hi), f.f);
    const auto grid = uniform_grid(f.lo, f.hi, job.grid);
    report.quantities["n"] = n;
    report.quantities["sup_error"] = sup_error(op, f.f, grid);
    csv = curve_csv(f.f.eval, [&op](double x) { return op(x); }, grid);
  }
  write_text(out / "curve.csv", csv);
  result.written.push_back(out / "curve.csv");
}

void run_metrics(const JobSpec& job, Report& report) {
  if (!job.fuzzy) throw Error(ErrorKind::SchemaError, "field '/fuzzy': metrics needs a fuzzy number");
  const FuzzyNumber& u = *job.fuzzy;
  const bool closed = u.is_piecewise_linear();
  Json primary = metric_block(u, job, closed);
  if (closed) {
    const Json quad = metric_block(u, job, false);
    double worst = 0.0;
    for (const auto& [key, value] : primary.items()) {
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          worst = std::max(worst, std::abs(value[i].get<double>() - quad[key][i].get<double>()));
        }
      } else {
        worst = std::max(worst, std::abs(value.get<double>() - quad[key].get<double>()));
      }
    }
    add(report, "closed_form_vs_quadrature", worst, 1e-10, "<=", worst <= 1e-10);
    report.quantities["quadrature_metrics"] = quad;
  }
  report.quantities["metrics"] = primary;
  report.quantities["metrics_path"] = closed ? "closed_form" : "quadrature";

  for (int n : job.degrees) {
    const FuzzyApproximant approx = approximate(u, n, job.grid);
    const FuzzyNumber v = approx.as_fuzzy_number();
    const Json m = metric_block(v, job, false);
    const double ev_gap = std::abs(m["EV"].get<double>() - primary["EV"].get<double>());
    Json entry = Json::object();
    entry["n"] = n;
    entry["metrics"] = m;
    entry["EV_difference"] = ev_gap;
    report.quantities["approximant"].push_back(entry);
    if (u.has_modulus()) {
      const double len = u.support_hi() - u.support_lo();
      const double tol = 24.0 * (integer_part(len) + 1.0) * *u.modulus(1.0 / std::sqrt(n + 1.0)) * len;
      add(report, at_n("approximant_EV_difference", n), ev_gap, tol, "<=", ev_gap <= tol);
    }
  }
}

void verify_fuzzy(const JobSpec& job, Report& report) {
  const FuzzyNumber& u = *job.fuzzy;
  const double a = u.support_lo();
  const double b = u.support_hi();
  auto grid = uniform_grid(a, b, job.grid);
  grid.insert(grid.begin(), a - (b - a) / 10.0);
  grid.push_back(b + (b - a) / 10.0);
  for (int n : job.degrees) {
    const FuzzyApproximant approx = approximate(u, n, job.grid);
    const SupportReport support = verify_support(approx, grid);
    add(report, at_n("support", n), support.pass ? 1.0 : 0.0, 1.0, "==", support.pass);

    const CoreReport core = verify_core(approx, job.grid);
    add(report, at_n("core_c_displacement", n), core.displacement_c, core.knot_bound, "<=",
        core.displacement_c <= core.knot_bound + 1e-12);
    add(report, at_n("core_d_displacement", n), core.displacement_d, core.knot_bound, "<=",
        core.displacement_d <= core.knot_bound + 1e-12);
    add(report, at_n("plateau_c_displacement", n), core.observed_displacement_c, core.observed_bound, "<=",
        core.observed_displacement_c <= core.observed_bound + 1e-12);
    add(report, at_n("plateau_d_displacement", n), core.observed_displacement_d, core.observed_bound, "<=",
        core.observed_displacement_d <= core.observed_bound + 1e-12);
    add(report, at_n("plateau_within_knot_bound", n),
        std::max(core.observed_displacement_c, core.observed_displacement_d), core.knot_bound, "<=",
        core.observed_within_knot_bound, false);
    add(report, at_n("plateau_min", n), core.plateau_min, 1.0 - 1e-9, ">=", core.plateau_min >= 1.0 - 1e-9);
    add(report, at_n("off_plateau_max", n), core.off_plateau_max, 1.0 - 1e-12, "<",
        core.off_plateau_max < 1.0 - 1e-12);
    add(report, at_n("is_fuzzy", n), approx.is_fuzzy() ? 1.0 : 0.0, 1.0, "==", approx.is_fuzzy());

    if (u.has_modulus()) {
      const UniformErrorReport err = verify_uniform_error(approx, grid);
      add(report, at_n("uniform_error", n), err.asserted.measured_sup_error, err.asserted.theoretical_bound, "<=",
          err.asserted.pass);
      add(report, at_n("uniform_error_stated", n), err.asserted.measured_sup_error, err.stated_bound, "<=",
          err.stated_pass, false);
    }
    Json entry = Json::object();
    entry["n"] = n;
    entry["c_n"] = core.c_n;
    entry["d_n"] = core.d_n;
    entry["observed_core"] = interval_json(core.observed);
    report.quantities["degrees"].push_back(entry);
  }
}

void verify_function(const JobSpec& job, Report& report) {
  const FunctionInput& in = *job.function;
  const auto grid = uniform_grid(in.lo, in.hi, job.grid);
  const bool concave = is_shape(in.f, grid).is_concave;
  report.quantities["grid_concave"] = concave;
  for (int n : job.degrees) {
    const OperatorContext ctx(n, in.lo, in.hi);
    const MaxProductOperator op(ctx, in.f);
    const double err = sup_error(op, in.f, grid);
    const double bound = uniform_error_bound(ctx, in.f);
    add(report, at_n("uniform_error", n), err, bound, "<=", BoundCheck::make(err, bound).pass);
    if (concave) {
      const double cb = concave_error_bound(ctx, in.f);
      add(report, at_n("concave_error", n), err, cb, "<=", BoundCheck::make(err, cb).pass);
    }
    const KnotBoundReport knots = check_knot_lower_bound(op, in.f);
    add(report, at_n("knot_lower_bound_gap", n), knots.min_gap, -1e-12, ">=", knots.pass());

    Json entry = Json::object();
    entry["n"] = n;
    entry["sup_error"] = err;
    entry["same_point_violations_at_knots"] = knots.same_point_violations_at_knots;
    entry["same_point_violations_at_edges"] = knots.same_point_violations_at_edges;
    if (in.peak) {
      const UnimodalReport uni = check_unimodal_preservation(ctx, in.f, *in.peak, job.grid);
      add(report, at_n("quasi_concave", n), uni.curve_shape.violation_magnitude, kShapeTolerance, "<=",
          uni.quasi_concave());
      add(report, at_n("peak_displacement", n), uni.displacement, uni.displacement_bound, "<=",
          uni.displacement_ok());
      add(report, at_n("peak_error", n), uni.peak_error, uni.peak_error_bound, "<=", uni.peak_error_ok());
      add(report, at_n("peak_error_tight", n), uni.peak_error, uni.peak_error_tight, "<=",
          uni.peak_error <= uni.peak_error_tight + kBoundSlackTolerance, false);
      entry["curve_peak"] = uni.curve_peak;
    }
    report.quantities["degrees"].push_back(entry);
  }
}

void run_verify(const JobSpec& job, Report& report, RunResult& result, const std::filesystem::path& out) {
  if (job.fuzzy) {
    verify_fuzzy(job, report);
  } else {
    verify_function(job, report);
  }
  JobSpec last = job;
  last.degrees = {job.degrees.back()};
  Report scratch;
  run_approximate(last, scratch, result, out);
}

void run_converge(const JobSpec& job, Report& report, RunResult& result, const std::filesystem::path& out) {
  const FunctionInput in = function_of(job);
  const ConvergenceTable table = convergence_table(in.f, in.lo, in.hi, job.degrees, job.grid);
  Csv csv{"n", "sup_error", "bound_uniform", "bound_concave"};
  for (const ConvergenceRow& row : table.rows) {
    csv.row(row.n, row.sup_error, row.bound_uniform,
            row.bound_concave ? format_double(*row.bound_concave) : std::string());
    add(report, at_n("uniform_error", row.n), row.sup_error, row.bound_uniform, "<=",
        BoundCheck::make(row.sup_error, row.bound_uniform).pass);
    if (row.bound_concave) {
      add(report, at_n("concave_error", row.n), row.sup_error, *row.bound_concave, "<=",
          BoundCheck::make(row.sup_error, *row.bound_concave).pass);
    }
  }
  report.quantities["slope"] = table.slope ? Json(*table.slope) : Json(nullptr);
  write_text(out / "convergence.csv", csv.text());
  result.written.push_back(out / "convergence.csv");
}

void run_sample(const JobSpec& job, Report& report, RunResult& result, const std::filesystem::path& out) {
  const int n = job.degrees.front();
  const FunctionInput in = function_of(job);
  const OperatorContext ctx(n, in.lo, in.hi);
  const auto points = job.sample_points.empty() ? uniform_grid(in.lo, in.hi, 11) : job.sample_points;
  Csv csv{"x", "j", "k", "knot", "log_weight", "ratio"};
  for (double x : points) {
    const int j = subinterval_index(ctx, x);
    for (int k = 0; k <= n; ++k) {
      csv.row(x, j, k, ctx.knot(k), basis_weight_log(ctx, k, x), weight_ratio(ctx, k, j, x));
    }
  }
  report.quantities["n"] = n;
  report.quantities["points"] = static_cast<int>(points.size());
  write_text(out / "weights.csv", csv.text());
  result.written.push_back(out / "weights.csv");
}

void record_error(Report& report, const Error& e) {
  std::string kinds;
  for (ErrorKind k : e.kinds()) {
    if (!kinds.empty()) kinds += ',';
    kinds += to_string(k);
  }
  report.error_kind = kinds;
  report.error_message = e.what();
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Approximate: return "approximate";
    case Command::Metrics: return "metrics";
    case Command::Verify: return "verify";
    case Command::Converge: return "converge";
    case Command::Sample: return "sample";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Approximate, Command::Metrics, Command::Verify, Command::Converge, Command::Sample}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::SchemaError, "unknown command '" + std::string(name) + "'");
}

JobSpec parse_spec(std::string_view text, Command command) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    const auto last_nl = text.substr(0, upto).find_last_of('\n');
    const auto column = last_nl == std::string_view::npos ? upto + 1 : upto - last_nl;
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": malformed JSON";
    throw Error(ErrorKind::SchemaError, msg.str());
  }
  const SchemaReader r(text);
  r.only_keys(doc, "",
              {"command", "fuzzy", "function", "interval", "peak", "n", "n_list", "grid", "quadrature", "reductions",
               "x"});

  JobSpec job;
  job.command = command;
  job.echo = doc;
  if (doc.contains("command") && r.string(doc.at("command"), "/command") != to_string(command)) {
    r.fail("/command", "does not match the command line ('" + std::string(to_string(command)) + "')");
  }
  if (doc.contains("fuzzy") == doc.contains("function")) {
    r.fail("/fuzzy", "exactly one of 'fuzzy' and 'function' is required");
  }
  if (doc.contains("fuzzy")) {
    job.fuzzy = parse_fuzzy(r, doc.at("fuzzy"));
  } else {
    job.function = parse_function(r, doc);
  }
  if (doc.contains("interval") && job.fuzzy) r.fail("/interval", "applies to 'function' inputs only");
  if (doc.contains("peak")) {
    if (job.fuzzy) r.fail("/peak", "applies to 'function' inputs only");
    const double peak = r.number(doc.at("peak"), "/peak");
    if (peak < job.function->lo || peak > job.function->hi) r.fail("/peak", "must lie in the function's interval");
    job.function->peak = peak;
  }

  if (doc.contains("n") && doc.contains("n_list")) r.fail("/n_list", "give either 'n' or 'n_list'");
  if (doc.contains("n")) job.degrees = {r.integer(doc.at("n"), "/n", 2)};
  if (doc.contains("n_list")) {
    const Json& list = doc.at("n_list");
    if (!list.is_array() || list.empty()) r.fail("/n_list", "must be a non-empty array of integers");
    for (std::size_t i = 0; i < list.size(); ++i) {
      job.degrees.push_back(r.integer(list[i], "/n_list/" + std::to_string(i), 2));
      if (i > 0 && job.degrees[i] <= job.degrees[i - 1]) r.fail("/n_list", "must be strictly increasing");
    }
  }
  const bool single = command == Command::Approximate || command == Command::Sample;
  if (single && !doc.contains("n")) r.fail("/n", "is required for " + std::string(to_string(command)));
  if (command == Command::Verify && job.degrees.empty()) r.fail("/n", "'n' or 'n_list' is required");
  if (command == Command::Converge && job.degrees.size() < 2) {
    r.fail("/n_list", "needs at least two degrees");
  }

  if (doc.contains("grid")) job.grid = static_cast<std::size_t>(r.integer(doc.at("grid"), "/grid", 3));
  if (doc.contains("quadrature")) job.quadrature = parse_quadrature(r, doc.at("quadrature"));
  if (doc.contains("reductions")) {
    const Json& list = doc.at("reductions");
    if (!list.is_array()) r.fail("/reductions", "must be an array of integers");
    job.reductions.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      job.reductions.push_back(r.integer(list[i], "/reductions/" + std::to_string(i), 0));
    }
  }
  if (doc.contains("x")) {
    job.sample_points = r.numbers(doc.at("x"), "/x");
  }
  return job;
}

bool Report::ok() const {
  if (error_kind) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass || !c.asserted; });
}

Json to_json(const Report& report) {
  Json doc = Json::object();
  doc["version"] = report.version;
  doc["command"] = report.command;
  doc["ok"] = report.ok();
  doc["job"] = report.job;
  Json checks = Json::array();
  for (const CheckEntry& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"bound", c.bound},
                      {"relation", c.relation},
                      {"pass", c.pass},
                      {"asserted", c.asserted}});
  }
  doc["checks"] = checks;
  doc["quantities"] = report.quantities;
  if (report.error_kind) doc["error"] = {{"kind", *report.error_kind}, {"message", *report.error_message}};
  return doc;
}

Report report_from_json(const Json& doc) {
  try {
    Report r;
    r.version = doc.at("version").get<std::string>();
    r.command = doc.at("command").get<std::string>();
    r.job = doc.at("job");
    for (const Json& c : doc.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("measured").get<double>(),
                          c.at("bound").get<double>(), c.at("relation").get<std::string>(),
                          c.at("pass").get<bool>(), c.at("asserted").get<bool>()});
    }
    r.quantities = doc.at("quantities");
    if (doc.contains("error")) {
      r.error_kind = doc.at("error").at("kind").get<std::string>();
      r.error_message = doc.at("error").at("message").get<std::string>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, std::string("malformed report: ") + e.what());
  }
}

std::string emit_report(const Report& report) { return to_json(report).dump(2) + "\n"; }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError: return 1;
    case ErrorKind::QuadratureFailure: return 4;
    default: return 2;
  }
}

RunResult run(const JobSpec& job, const std::filesystem::path& out_dir) {
  RunResult result;
  Report& report = result.report;
  report.command = std::string(to_string(job.command));
  report.job = job.echo;
  std::filesystem::create_directories(out_dir);
  try {
    switch (job.command) {
      case Command::Approximate: run_approximate(job, report, result, out_dir); break;
      case Command::Metrics: run_metrics(job, report); break;
      case Command::Verify: run_verify(job, report, result, out_dir); break;
      case Command::Converge: run_converge(job, report, result, out_dir); break;
      case Command::Sample: run_sample(job, report, result, out_dir); break;
    }
    result.exit_code = report.ok() ? 0 : 3;
  } catch (const Error& e) {
    record_error(report, e);
    result.exit_code = exit_code_for(e.kind());
  }
  write_text(out_dir / "report.json", emit_report(report));
  result.written.push_back(out_dir / "report.json");
  return result;
}

RunResult run_file(Command command, const std::filesystem::path& spec_path, const std::filesystem::path& out_dir) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) {
    RunResult result;
    result.report.command = std::string(to_string(command));
    record_error(result.report, Error(ErrorKind::SchemaError, "cannot read " + spec_path.string()));
    result.exit_code = 1;
    return result;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return run(parse_spec(text, command), out_dir);
  } catch (const Error& e) {
    RunResult result;
    result.report.command = std::string(to_string(command));
    record_error(result.report, e);
    result.exit_code = exit_code_for(e.kind());
    std::filesystem::create_directories(out_dir);
    write_text(out_dir / "report.json", emit_report(result.report));
    result.written.push_back(out_dir / "report.json");
    return result;
  }
}

}  // namespace baskafuzz
