#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "baskafuzz/operator_kernel.hpp"

namespace baskafuzz {

inline constexpr std::size_t kDefaultVerificationGrid = 4097;
inline constexpr double kShapeTolerance = 1e-9;
inline constexpr double kBoundSlackTolerance = 1e-9;

enum class ModulusKind { ClosedForm, GridLowerBound };

struct ModulusEstimate {
  double delta = 0.0;
  double value = 0.0;
  ModulusKind kind = ModulusKind::ClosedForm;
};

/// omega_1(f; delta) on [lo, hi]: the closed form when f carries one,
/// otherwise the supremum over grid pairs at distance <= delta, which can
/// only underestimate the true modulus.
ModulusEstimate modulus(const SampledFunction& f, double delta, double lo, double hi,
                        std::size_t grid_size = kDefaultVerificationGrid);

/// Grid lower bound from precomputed samples (xs ascending).
double grid_modulus(std::span<const double> xs, std::span<const double> values, double delta);

struct ShapeReport {
  bool is_nondecreasing = false;
  bool is_nonincreasing = false;
  bool is_quasi_concave = false;
  bool is_concave = false;
  double peak = 0.0;  // leftmost global max
  std::size_t peak_index = 0;
  double violation_magnitude = 0.0;  // largest single grid step away from the peak
};

/// Grid shape test (xs ascending, at least 3 points). Adjacent differences
/// are compared with `tolerance`; concavity requires every sample to lie on
/// or above the chord of its neighbours.
ShapeReport is_shape(std::span<const double> xs, std::span<const double> values,
                     double tolerance = kShapeTolerance);
ShapeReport is_shape(const SampledFunction& f, std::span<const double> grid,
                     double tolerance = kShapeTolerance);

struct BoundCheck {
  double measured_sup_error = 0.0;
  double theoretical_bound = 0.0;
  double slack = 0.0;
  bool pass = false;

  static BoundCheck make(double measured, double bound);
};

/// [b-a], the integer part of the interval length.
double integer_part(double length);

/// sup over `grid` of |U_n^(M)(f)(x) - f(x)| (OpenMP reduction).
double sup_error(const MaxProductOperator& op, const SampledFunction& f, std::span<const double> grid);

/// 24([b-a]+1) omega_1(f; 1/sqrt(n+1)). Throws ModulusUnavailable without a closed form.
double uniform_error_bound(const OperatorContext& ctx, const SampledFunction& f);
/// 2([b-a]+1) omega_1(f; 1/n). Throws ModulusUnavailable without a closed form.
double concave_error_bound(const OperatorContext& ctx, const SampledFunction& f);

BoundCheck check_uniform_bound(const OperatorContext& ctx, const SampledFunction& f,
                               std::size_t grid_size = kDefaultVerificationGrid);
/// Throws NotConcave if f fails the grid concavity test.
BoundCheck check_concave_bound(const OperatorContext& ctx, const SampledFunction& f,
                               std::size_t grid_size = kDefaultVerificationGrid);

struct UnimodalReport {
  ShapeReport curve_shape;
  double peak = 0.0;          // c, peak of f
  double curve_peak = 0.0;    // c', leftmost argmax of the approximant on the grid
  double displacement = 0.0;  // |c - c'|
  double displacement_bound = 0.0;  // (b-a)/(n-1) + grid step
  double peak_error = 0.0;          // |U(f)(c) - f(c)|
  double peak_error_bound = 0.0;    // ([b-a]+1) omega_1(f; 1/sqrt(n+1))
  double peak_error_tight = 0.0;    // ([b-a]+1) omega_1(f; 1/(n+1)), reported only

  bool quasi_concave() const noexcept { return curve_shape.is_quasi_concave; }
  bool displacement_ok() const noexcept { return displacement <= displacement_bound; }
  bool peak_error_ok() const noexcept { return peak_error <= peak_error_bound + kBoundSlackTolerance; }
  bool pass() const noexcept { return quasi_concave() && displacement_ok() && peak_error_ok(); }
};

/// Unimodality preservation for f nondecreasing on [a, c] and nonincreasing
/// on [c, b]. Throws NotUnimodal if f fails that grid test, and
/// ModulusUnavailable without a closed-form modulus.
UnimodalReport check_unimodal_preservation(const OperatorContext& ctx, const SampledFunction& f,
                                           double peak,
                                           std::size_t grid_size = kDefaultVerificationGrid);

/// Knot lower bound. On the closed subinterval j the weight b_{n,j} is
/// dominant, so U(f)(x) >= f(knot_j) there; in particular at the edge
/// a + (b-a)j/(n-1). The two same-point readings U(f)(p) >= f(p) at
/// p = a + (b-a)j/n and at p = a + (b-a)j/(n-1) are counted, not asserted:
/// neither holds for increasing f.
struct KnotBoundReport {
  double min_gap = 0.0;  // min_j U(f)(edge_j) - f(knot_j), j = 0..n-2
  int same_point_violations_at_knots = 0;
  int same_point_violations_at_edges = 0;

  bool pass() const noexcept { return min_gap >= -1e-12; }
};

KnotBoundReport check_knot_lower_bound(const MaxProductOperator& op, const SampledFunction& f);

struct ConvergenceRow {
  int n = 0;
  double sup_error = 0.0;
  double bound_uniform = 0.0;
  std::optional<double> bound_concave;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope;  // least-squares slope of log(error) vs log(n)
};

/// Least-squares slope of log(err) against log(n), skipping zero errors.
/// Empty when fewer than two positive errors remain.
std::optional<double> loglog_slope(std::span<const int> degrees, std::span<const double> errors);

ConvergenceTable convergence_table(const SampledFunction& f, double lo, double hi,
                                   std::span<const int> degrees,
                                   std::size_t grid_size = kDefaultVerificationGrid);

}  // namespace baskafuzz
