#include "baskafuzz/fuzzy_approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "baskafuzz/error.hpp"

namespace baskafuzz {

namespace {

SampledFunction membership_function(const FuzzyNumber& u) {
  SampledFunction f;
  f.eval = [u](double x) { return u(x); };
  if (u.has_modulus()) {
    f.modulus = [u](double delta) { return *u.modulus(delta); };
  }
  f.name = "membership";
  return f;
}

void check_admissible(const FuzzyNumber& u, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "degree must be >= 2");
  if (u.degenerate_core()) {
    throw Error(ErrorKind::DegenerateCore, "approximation needs a core with c < d");
  }
  const double len = u.support_hi() - u.support_lo();
  if (len / n >= u.core_hi() - u.core_lo()) {
    std::ostringstream msg;
    msg << "(b-a)/n = " << len / n << " must be below d-c = " << u.core_hi() - u.core_lo()
        << "; use n > " << len / (u.core_hi() - u.core_lo());
    throw Error(ErrorKind::DegreeTooSmall, msg.str());
  }
}

CoreKnots core_knots_for(const OperatorContext& ctx, double c, double d) {
  const int n = ctx.degree();
  const double a = ctx.lo();
  const double len = ctx.length();
  int k_c = std::clamp(static_cast<int>(std::ceil(n * (c - a) / len)), 0, n);
  while (k_c > 0 && ctx.knot(k_c - 1) >= c) --k_c;
  while (k_c < n && ctx.knot(k_c) < c) ++k_c;
  int k_d = std::clamp(static_cast<int>(std::floor(n * (d - a) / len)), 0, n);
  while (k_d < n && ctx.knot(k_d + 1) <= d) ++k_d;
  while (k_d > 0 && ctx.knot(k_d) > d) --k_d;

  CoreKnots core;
  core.indices = {k_c, k_d};
  core.c_n = ctx.knot(k_c);
  core.d_n = k_d + 1 <= n ? ctx.knot(k_d + 1) : ctx.hi();
  return core;
}

Interval plateau_for(const OperatorContext& ctx, const CoreKnotIndices& idx) {
  const int last_edge = ctx.degree() - 1;
  return {ctx.subinterval_edge(std::min(idx.k_c, last_edge)),
          ctx.subinterval_edge(std::min(idx.k_d + 1, last_edge))};
}

}  // namespace

CoreKnots compute_core_knots(const FuzzyNumber& u, int n) {
  check_admissible(u, n);
  const OperatorContext ctx(n, u.support_lo(), u.support_hi());
  return core_knots_for(ctx, u.core_lo(), u.core_hi());
}

FuzzyApproximant::FuzzyApproximant(FuzzyNumber source, MaxProductOperator op, CoreKnots core,
                                   Interval observed)
    : source_(std::move(source)), op_(std::move(op)), core_(core), observed_core_(observed) {}

double FuzzyApproximant::operator()(double x) const {
  if (x < context().lo() || x > context().hi()) return 0.0;
  return op_(x);
}

FuzzyNumber FuzzyApproximant::as_fuzzy_number() const {
  MembershipSpec spec;
  spec.support_lo = context().lo();
  spec.support_hi = context().hi();
  spec.core_lo = observed_core_.lo;
  spec.core_hi = observed_core_.hi;
  spec.membership = [op = op_](double x) { return op(x); };
  spec.shape = Shape::Analytic;
  return validate(spec);
}

FuzzyApproximant approximate(const FuzzyNumber& u, int n, std::size_t grid_size) {
  check_admissible(u, n);
  OperatorContext ctx(n, u.support_lo(), u.support_hi());
  const CoreKnots core = core_knots_for(ctx, u.core_lo(), u.core_hi());
  const Interval observed = plateau_for(ctx, core.indices);
  MaxProductOperator op(ctx, membership_function(u));
  FuzzyApproximant approx(u, std::move(op), core, observed);

  bool valid = true;
  try {
    MembershipSpec spec;
    spec.support_lo = ctx.lo();
    spec.support_hi = ctx.hi();
    spec.core_lo = observed.lo;
    spec.core_hi = observed.hi;
    spec.membership = [&approx](double x) { return approx(x); };
    validate(spec, ValidationOptions{grid_size, 1e-9});
  } catch (const Error&) {
    valid = false;
  }
  if (valid) {
    const auto grid = uniform_grid(ctx.lo(), ctx.hi(), std::max<std::size_t>(grid_size, 3));
    const auto curve = evaluate_curve(approx.op_, grid);
    valid = is_shape(curve.x, curve.values).is_quasi_concave;
  }
  approx.is_fuzzy_ = valid;
  return approx;
}

SupportReport verify_support(const FuzzyApproximant& approx, std::span<const double> grid) {
  const double a = approx.context().lo();
  const double b = approx.context().hi();
  constexpr double kInside = 1e-12;
  for (double x : grid) {
    const double v = approx(x);
    const bool inside = x - a > kInside && b - x > kInside;
    const bool outside = x < a || x > b;
    if ((inside && !(v > 0.0)) || (outside && v != 0.0)) return {false, x};
  }
  return {true, std::nullopt};
}

CoreReport verify_core(const FuzzyApproximant& approx, std::size_t grid_size) {
  const OperatorContext& ctx = approx.context();
  const FuzzyNumber& u = approx.source();
  const int n = ctx.degree();
  CoreReport r;
  r.c = u.core_lo();
  r.d = u.core_hi();
  r.c_n = approx.core_knots().c_n;
  r.d_n = approx.core_knots().d_n;
  r.displacement_c = std::abs(r.c - r.c_n);
  r.displacement_d = std::abs(r.d - r.d_n);
  r.knot_bound = ctx.length() / n;
  r.knots_pass = r.displacement_c <= r.knot_bound + 1e-12 && r.displacement_d <= r.knot_bound + 1e-12;

  r.observed = approx.observed_core();
  r.observed_displacement_c = std::abs(r.c - r.observed.lo);
  r.observed_displacement_d = std::abs(r.d - r.observed.hi);
  r.observed_bound = 2.0 * ctx.length() / n;
  r.observed_pass = r.observed_displacement_c <= r.observed_bound + 1e-12 &&
                    r.observed_displacement_d <= r.observed_bound + 1e-12;
  r.observed_within_knot_bound = r.observed_displacement_c <= r.knot_bound + 1e-12 &&
                                 r.observed_displacement_d <= r.knot_bound + 1e-12;

  auto grid = uniform_grid(ctx.lo(), ctx.hi(), grid_size);
  grid.push_back(r.observed.lo);
  grid.push_back(r.observed.hi);
  const double gap = 1e-9 * ctx.length();
  r.plateau_min = 1.0;
  r.off_plateau_max = 0.0;
  for (double x : grid) {
    const double v = approx(x);
    if (x >= r.observed.lo && x <= r.observed.hi) {
      r.plateau_min = std::min(r.plateau_min, v);
    } else if (x < r.observed.lo - gap || x > r.observed.hi + gap) {
      r.off_plateau_max = std::max(r.off_plateau_max, v);
    }
  }
  r.plateau_pass = r.plateau_min >= 1.0 - 1e-9 && r.off_plateau_max < 1.0 - 1e-12;

  const int k_c = approx.core_knots().indices.k_c;
  const double probe = k_c <= n - 2
                           ? 0.5 * (ctx.subinterval_edge(k_c) + ctx.subinterval_edge(k_c + 1))
                           : ctx.hi();
  r.exact_one_at_core_knot = approx(probe) == 1.0;
  return r;
}

UniformErrorReport verify_uniform_error(const FuzzyApproximant& approx, std::span<const double> grid) {
  const FuzzyNumber& u = approx.source();
  if (!u.has_modulus()) {
    throw Error(ErrorKind::ModulusUnavailable, "uniform error bound needs a closed-form modulus of u");
  }
  const OperatorContext& ctx = approx.context();
  const int n = ctx.degree();
  double worst = 0.0;
  for (double x : grid) worst = std::max(worst, std::abs(approx(x) - u(x)));
  const double scale = integer_part(ctx.length()) + 1.0;
  UniformErrorReport report;
  report.asserted = BoundCheck::make(worst, 24.0 * scale * *u.modulus(1.0 / std::sqrt(n + 1.0)));
  report.stated_bound = 6.0 * scale * *u.modulus(1.0 / std::sqrt(static_cast<double>(n)));
  report.stated_pass = worst <= report.stated_bound + kBoundSlackTolerance;
  return report;
}

}  // namespace baskafuzz
