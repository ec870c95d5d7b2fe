#include "baskafuzz/shape_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "baskafuzz/error.hpp"

namespace baskafuzz {

namespace {

void require_modulus(const SampledFunction& f) {
  if (!f.has_modulus()) {
    throw Error(ErrorKind::ModulusUnavailable,
                "bound assertions need a closed-form modulus (grid estimates only bound it from below)");
  }
}

std::vector<double> sample(const SampledFunction& f, std::span<const double> xs) {
  std::vector<double> vs(xs.size());
  std::transform(xs.begin(), xs.end(), vs.begin(), f.eval);
  return vs;
}

}  // namespace

ModulusEstimate modulus(const SampledFunction& f, double delta, double lo, double hi,
                        std::size_t grid_size) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "modulus step must be positive");
  if (f.has_modulus()) return {delta, f.modulus(delta), ModulusKind::ClosedForm};
  const auto xs = uniform_grid(lo, hi, grid_size);
  const auto vs = sample(f, xs);
  return {delta, grid_modulus(xs, vs, delta), ModulusKind::GridLowerBound};
}

double grid_modulus(std::span<const double> xs, std::span<const double> values, double delta) {
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = i + 1; k < xs.size() && xs[k] - xs[i] <= delta; ++k) {
      best = std::max(best, std::abs(values[k] - values[i]));
    }
  }
  return best;
}

ShapeReport is_shape(std::span<const double> xs, std::span<const double> values, double tolerance) {
  if (xs.size() != values.size() || xs.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "shape test needs matching samples on >= 3 points");
  }
  ShapeReport report;
  const auto top = std::max_element(values.begin(), values.end());
  report.peak_index = static_cast<std::size_t>(top - values.begin());
  report.peak = xs[report.peak_index];

  double worst_rise = 0.0;  // largest drop, for nondecreasing
  double worst_fall = 0.0;  // largest rise, for nonincreasing
  double worst_qc = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double step = values[i] - values[i - 1];
    worst_rise = std::max(worst_rise, -step);
    worst_fall = std::max(worst_fall, step);
    worst_qc = std::max(worst_qc, i <= report.peak_index ? -step : step);
  }
  report.is_nondecreasing = worst_rise <= tolerance;
  report.is_nonincreasing = worst_fall <= tolerance;
  report.is_quasi_concave = worst_qc <= tolerance;
  report.violation_magnitude = worst_qc;

  bool concave = true;
  for (std::size_t i = 1; i + 1 < values.size() && concave; ++i) {
    const double chord = ((xs[i + 1] - xs[i]) * values[i - 1] + (xs[i] - xs[i - 1]) * values[i + 1]) /
                         (xs[i + 1] - xs[i - 1]);
    concave = values[i] >= chord - tolerance;
  }
  report.is_concave = concave;
  return report;
}

ShapeReport is_shape(const SampledFunction& f, std::span<const double> grid, double tolerance) {
  const auto vs = sample(f, grid);
  return is_shape(grid, vs, tolerance);
}

BoundCheck BoundCheck::make(double measured, double bound) {
  BoundCheck check;
  check.measured_sup_error = measured;
  check.theoretical_bound = bound;
  check.slack = bound - measured;
  check.pass = check.slack >= -kBoundSlackTolerance;
  return check;
}

double integer_part(double length) { return std::floor(length); }

double sup_error(const MaxProductOperator& op, const SampledFunction& f, std::span<const double> grid) {
  for (double x : grid) op.context().to_unit(x);
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    worst = std::max(worst, std::abs(op(grid[i]) - f(grid[i])));
  }
  return worst;
}

double uniform_error_bound(const OperatorContext& ctx, const SampledFunction& f) {
  require_modulus(f);
  return 24.0 * (integer_part(ctx.length()) + 1.0) * f.modulus(1.0 / std::sqrt(ctx.degree() + 1.0));
}

double concave_error_bound(const OperatorContext& ctx, const SampledFunction& f) {
  require_modulus(f);
  return 2.0 * (integer_part(ctx.length()) + 1.0) * f.modulus(1.0 / ctx.degree());
}

BoundCheck check_uniform_bound(const OperatorContext& ctx, const SampledFunction& f,
                               std::size_t grid_size) {
  const double bound = uniform_error_bound(ctx, f);
  const auto grid = uniform_grid(ctx.lo(), ctx.hi(), grid_size);
  return BoundCheck::make(sup_error(MaxProductOperator(ctx, f), f, grid), bound);
}

BoundCheck check_concave_bound(const OperatorContext& ctx, const SampledFunction& f,
                               std::size_t grid_size) {
  const auto grid = uniform_grid(ctx.lo(), ctx.hi(), grid_size);
  if (!is_shape(f, grid).is_concave) {
    throw Error(ErrorKind::NotConcave, "function " + f.name + " fails the grid concavity test");
  }
  const double bound = concave_error_bound(ctx, f);
  return BoundCheck::make(sup_error(MaxProductOperator(ctx, f), f, grid), bound);
}

UnimodalReport check_unimodal_preservation(const OperatorContext& ctx, const SampledFunction& f,
                                           double peak, std::size_t grid_size) {
  if (!(peak >= ctx.lo() && peak <= ctx.hi())) {
    throw Error(ErrorKind::DomainError, "peak must lie in [a, b]");
  }
  require_modulus(f);
  const auto grid = uniform_grid(ctx.lo(), ctx.hi(), grid_size);
  const auto fv = sample(f, grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = fv[i] - fv[i - 1];
    const bool bad = grid[i] <= peak ? step < -kShapeTolerance : (grid[i - 1] >= peak && step > kShapeTolerance);
    if (bad) {
      throw Error(ErrorKind::NotUnimodal, "function " + f.name + " is not unimodal around the given peak");
    }
  }

  const MaxProductOperator op(ctx, f);
  const auto curve = evaluate_curve(op, grid);
  UnimodalReport report;
  report.curve_shape = is_shape(curve.x, curve.values);
  report.peak = peak;
  report.curve_peak = curve.peak;
  report.displacement = std::abs(peak - curve.peak);
  const double step = ctx.length() / static_cast<double>(grid_size - 1);
  report.displacement_bound = ctx.length() / (ctx.degree() - 1) + step;
  const double scale = integer_part(ctx.length()) + 1.0;
  report.peak_error = std::abs(op(peak) - f(peak));
  report.peak_error_bound = scale * f.modulus(1.0 / std::sqrt(ctx.degree() + 1.0));
  report.peak_error_tight = scale * f.modulus(1.0 / (ctx.degree() + 1.0));
  return report;
}

KnotBoundReport check_knot_lower_bound(const MaxProductOperator& op, const SampledFunction& f) {
  const OperatorContext& ctx = op.context();
  const int n = ctx.degree();
  KnotBoundReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= n - 2; ++j) {
    const double edge = ctx.subinterval_edge(j);
    const double at_edge = op(edge);
    report.min_gap = std::min(report.min_gap, at_edge - op.knot_values()[j]);
    if (at_edge < f(edge) - 1e-12) ++report.same_point_violations_at_edges;
  }
  for (int k = 0; k <= n; ++k) {
    if (op(ctx.knot(k)) < op.knot_values()[k] - 1e-12) ++report.same_point_violations_at_knots;
  }
  return report;
}

std::optional<double> loglog_slope(std::span<const int> degrees, std::span<const double> errors) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < degrees.size() && i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) continue;
    const double lx = std::log(static_cast<double>(degrees[i]));
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (count * sxy - sx * sy) / denom;
}

ConvergenceTable convergence_table(const SampledFunction& f, double lo, double hi,
                                   std::span<const int> degrees, std::size_t grid_size) {
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] <= degrees[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "degree list must be increasing");
    }
  }
  const auto grid = uniform_grid(lo, hi, grid_size);
  const bool concave = is_shape(f, grid).is_concave;
  ConvergenceTable table;
  std::vector<double> errors;
  for (int n : degrees) {
    const OperatorContext ctx(n, lo, hi);
    ConvergenceRow row;
    row.n = n;
    row.sup_error = sup_error(MaxProductOperator(ctx, f), f, grid);
    row.bound_uniform = uniform_error_bound(ctx, f);
    if (concave) row.bound_concave = concave_error_bound(ctx, f);
    errors.push_back(row.sup_error);
    table.rows.push_back(row);
  }
  table.slope = loglog_slope(degrees, errors);
  return table;
}

}  // namespace baskafuzz
