#include "baskafuzz/operator_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "baskafuzz/error.hpp"

namespace baskafuzz {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Beyond this degree the lgamma-difference route loses too many digits and
// weight_ratio switches to summing the telescoping log factors.
constexpr int kTelescopingDegree = 4096;

void check_index(const OperatorContext& ctx, int k) {
  if (k < 0 || k > ctx.degree()) {
    throw Error(ErrorKind::InvalidArgument, "knot index out of range");
  }
}

void fill_peak(ApproximantCurve& curve) {
  if (curve.values.empty()) return;
  const auto it = std::max_element(curve.values.begin(), curve.values.end());
  curve.peak_index = static_cast<std::size_t>(it - curve.values.begin());
  curve.peak = curve.x[curve.peak_index];
  curve.peak_value = *it;
}

std::vector<double> sample_knots(const OperatorContext& ctx, const SampledFunction& f) {
  std::vector<double> values(ctx.knots().size());
  std::transform(ctx.knots().begin(), ctx.knots().end(), values.begin(), f.eval);
  return values;
}

}  // namespace

OperatorContext::OperatorContext(int degree, double lo, double hi) : n_(degree), a_(lo), b_(hi) {
  if (degree < 2) throw Error(ErrorKind::InvalidArgument, "operator degree must be >= 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorKind::InvalidArgument, "operator interval must be finite with a < b");
  }
  const double len = hi - lo;
  knots_.resize(static_cast<std::size_t>(n_) + 1);
  log_binomial_.resize(static_cast<std::size_t>(n_) + 1);
  for (int k = 0; k <= n_; ++k) {
    knots_[k] = lo + len * k / n_;
    log_binomial_[k] = std::lgamma(static_cast<double>(n_ + k)) - std::lgamma(k + 1.0) -
                       std::lgamma(static_cast<double>(n_));
  }
  knots_.back() = hi;
  edges_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) edges_[j] = lo + len * j / (n_ - 1);
  edges_.back() = hi;
}

double OperatorContext::to_unit(double x) const {
  if (!(x >= a_ && x <= b_)) {
    std::ostringstream msg;
    msg << "x = " << x << " is outside [" << a_ << ", " << b_ << "]";
    throw Error(ErrorKind::DomainError, msg.str());
  }
  return (x - a_) / (b_ - a_);
}

double basis_weight_log(const OperatorContext& ctx, int k, double x) {
  check_index(ctx, k);
  const double y = ctx.to_unit(x);
  if (y == 0.0) return k == 0 ? 0.0 : kNegInf;
  return ctx.log_binomial(k) + k * std::log(y) - (ctx.degree() + k) * std::log1p(y);
}

int subinterval_index(const OperatorContext& ctx, double x) {
  const double y = ctx.to_unit(x);
  const int last = ctx.degree() - 2;
  const int j = static_cast<int>(std::floor((ctx.degree() - 1) * y));
  return std::clamp(j, 0, last);
}

double weight_ratio(const OperatorContext& ctx, int k, int j, double x) {
  check_index(ctx, k);
  if (j < 0 || j > ctx.degree() - 2) {
    throw Error(ErrorKind::InvalidArgument, "subinterval index out of range");
  }
  const double y = ctx.to_unit(x);
  const double scaled = (ctx.degree() - 1) * y;
  if (scaled < j - 1e-12 * ctx.degree() || scaled > j + 1 + 1e-12 * ctx.degree()) {
    throw Error(ErrorKind::DomainError, "x is not in the closure of subinterval j");
  }
  if (k == j) return 1.0;
  if (y == 0.0) return 0.0;  // j = 0 here, so k > j
  if (ctx.degree() <= kTelescopingDegree) {
    return std::exp(basis_weight_log(ctx, k, x) - basis_weight_log(ctx, j, x));
  }
  // log m = sum_{i=j+1}^{k} log((n+i-1)/i) + (k-j) log(y/(1+y)), signs flipped for k < j.
  const int n = ctx.degree();
  const double log_t = std::log(y) - std::log1p(y);
  double log_m = 0.0;
  const int from = std::min(j, k) + 1;
  const int to = std::max(j, k);
  for (int i = from; i <= to; ++i) log_m += std::log(static_cast<double>(n + i - 1) / i) + log_t;
  return std::exp(k > j ? log_m : -log_m);
}

MaxProductOperator::MaxProductOperator(OperatorContext ctx, const SampledFunction& f)
    : MaxProductOperator(ctx, sample_knots(ctx, f)) {}

MaxProductOperator::MaxProductOperator(OperatorContext ctx, std::vector<double> knot_values)
    : ctx_(std::move(ctx)), values_(std::move(knot_values)) {
  if (values_.size() != ctx_.knots().size()) {
    throw Error(ErrorKind::InvalidArgument, "knot sample count must be n+1");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!(values_[k] >= 0.0)) {
      std::ostringstream msg;
      msg << "f(" << ctx_.knot(static_cast<int>(k)) << ") = " << values_[k] << " is negative";
      throw Error(ErrorKind::NegativeFunction, msg.str());
    }
  }
  max_value_ = *std::max_element(values_.begin(), values_.end());
}

double MaxProductOperator::operator()(double x) const {
  const int n = ctx_.degree();
  const double y = ctx_.to_unit(x);
  const int j = std::clamp(static_cast<int>(std::floor((n - 1) * y)), 0, n - 2);
  const double t = y / (1.0 + y);

  double best = values_[j];
  // Upwards: m_{k} = m_{k-1} (n+k-1)/k * t.
  double m = 1.0;
  for (int k = j + 1; k <= n; ++k) {
    m *= static_cast<double>(n + k - 1) / k * t;
    if (m * max_value_ <= best) break;
    best = std::max(best, m * values_[k]);
  }
  // Downwards: m_{k-1} = m_{k} k/(n+k-1) / t; t > 0 whenever j >= 1.
  m = 1.0;
  for (int k = j; k >= 1; --k) {
    m *= static_cast<double>(k) / (n + k - 1) / t;
    if (m * max_value_ <= best) break;
    best = std::max(best, m * values_[k - 1]);
  }
  return best;
}

double max_product_apply(const OperatorContext& ctx, const SampledFunction& f, double x) {
  return MaxProductOperator(ctx, f)(x);
}

double max_product_apply_oracle(const OperatorContext& ctx, const SampledFunction& f, double x) {
  ctx.to_unit(x);
  double log_den = kNegInf;
  double log_num = kNegInf;
  for (int k = 0; k <= ctx.degree(); ++k) {
    const double fk = f(ctx.knot(k));
    if (!(fk >= 0.0)) throw Error(ErrorKind::NegativeFunction, "negative knot sample");
    const double lw = basis_weight_log(ctx, k, x);
    log_den = std::max(log_den, lw);
    if (fk > 0.0) log_num = std::max(log_num, lw + std::log(fk));
  }
  if (log_num == kNegInf) return 0.0;
  return std::exp(log_num - log_den);
}

double linear_truncated_apply(const OperatorContext& ctx, const SampledFunction& f, double x) {
  const int n = ctx.degree();
  const double y = ctx.to_unit(x);
  if (y == 0.0) return f(ctx.knot(0));
  // Start at the dominant weight and recur outwards so nothing underflows
  // before it matters.
  const int j = subinterval_index(ctx, x);
  const double t = y / (1.0 + y);
  const double bj = std::exp(basis_weight_log(ctx, j, x));
  double sum = bj * f(ctx.knot(j));
  double w = bj;
  for (int k = j + 1; k <= n; ++k) {
    w *= static_cast<double>(n + k - 1) / k * t;
    sum += w * f(ctx.knot(k));
  }
  w = bj;
  for (int k = j; k >= 1; --k) {
    w *= static_cast<double>(k) / (n + k - 1) / t;
    sum += w * f(ctx.knot(k - 1));
  }
  return sum;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  return grid;
}

ApproximantCurve evaluate_curve(const OperatorContext& ctx, const SampledFunction& f,
                                std::span<const double> grid) {
  return evaluate_curve(MaxProductOperator(ctx, f), grid);
}

ApproximantCurve evaluate_curve(const MaxProductOperator& op, std::span<const double> grid) {
  ApproximantCurve curve;
  curve.x.assign(grid.begin(), grid.end());
  curve.values.resize(grid.size());
  for (double x : grid) op.context().to_unit(x);  // surface DomainError before going parallel
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    curve.values[i] = op(grid[i]);
  }
  fill_peak(curve);
  return curve;
}

ApproximantCurve evaluate_curve_serial(const MaxProductOperator& op, std::span<const double> grid) {
  ApproximantCurve curve;
  curve.x.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  for (double x : grid) curve.values.push_back(op(x));
  fill_peak(curve);
  return curve;
}

}  // namespace baskafuzz
