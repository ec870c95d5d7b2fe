#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "baskafuzz/quadrature.hpp"

namespace baskafuzz {

enum class Shape { Triangular, Trapezoidal, PiecewiseLinear, Analytic };

/// (x, membership) vertex of a piecewise-linear membership function.
struct Knot {
  double x;
  double mu;
};

/// Raw, unvalidated description of a fuzzy number.
struct MembershipSpec {
  double support_lo = 0.0;
  double support_hi = 0.0;
  double core_lo = 0.0;
  double core_hi = 0.0;
  std::function<double(double)> membership;
  Shape shape = Shape::Analytic;
  std::vector<Knot> knots;  // piecewise-linear shapes only
  std::function<double(double)> modulus;  // optional closed-form omega_1 on the support
};

struct ValidationOptions {
  std::size_t grid = 2049;
  double tolerance = 1e-9;
};

/// A validated fuzzy number with support [a, b] and core [c, d].
///
/// Instances only come out of validate() (or the named constructors, which
/// call it), so every object satisfies normality and quasi-concavity on the
/// validation grid. Membership outside the support is exactly 0.
class FuzzyNumber {
 public:
  static FuzzyNumber triangular(double t1, double t2, double t4);
  static FuzzyNumber trapezoidal(double t1, double t2, double t3, double t4);
  /// Ordered (x, mu) vertices, x strictly increasing; mu outside the listed
  /// range is 0.
  static FuzzyNumber piecewise_linear(std::vector<Knot> knots);
  static FuzzyNumber analytic(double a, double b, double c, double d,
                              std::function<double(double)> membership,
                              std::function<double(double)> modulus = {});

  double operator()(double x) const;

  double support_lo() const noexcept { return a_; }
  double support_hi() const noexcept { return b_; }
  double core_lo() const noexcept { return c_; }
  double core_hi() const noexcept { return d_; }
  Shape shape() const noexcept { return shape_; }
  bool degenerate_core() const noexcept { return c_ == d_; }
  bool is_piecewise_linear() const noexcept { return !knots_.empty(); }
  std::span<const Knot> knots() const noexcept { return knots_; }

  /// Lower and upper alpha-cut endpoints by bisection on the monotone sides
  /// (tolerance 1e-12 in x). alpha = 0 and alpha = 1 are pinned to the
  /// support and core endpoints.
  double lower_branch(double alpha) const;
  double upper_branch(double alpha) const;

  /// Membership levels at which the branches have kinks (piecewise-linear
  /// vertices strictly between 0 and 1); empty for analytic shapes.
  std::vector<double> alpha_breakpoints() const;

  bool has_modulus() const noexcept { return static_cast<bool>(modulus_); }
  /// Closed-form omega_1(u; delta) over the support, if known.
  std::optional<double> modulus(double delta) const;

 private:
  FuzzyNumber() = default;
  friend FuzzyNumber validate(const MembershipSpec& spec, const ValidationOptions& options);

  double a_ = 0.0, b_ = 0.0, c_ = 0.0, d_ = 0.0;
  Shape shape_ = Shape::Analytic;
  std::function<double(double)> membership_;
  std::vector<Knot> knots_;
  std::function<double(double)> modulus_;
};

/// Checks the fuzzy-number invariants on a uniform grid over the support.
/// All detected violations are collected into a single Error
/// (NotNormal, NotQuasiConcave, CoreOutsideSupport, UnboundedSupport,
/// SupportMismatch, InvalidArgument).
FuzzyNumber validate(const MembershipSpec& spec, const ValidationOptions& options = {});

struct AlphaCutRepresentation {
  std::vector<double> alpha;
  std::vector<double> lower;
  std::vector<double> upper;
};

AlphaCutRepresentation to_alpha_cuts(const FuzzyNumber& u, std::size_t grid_size);

struct ReductionFunction {
  enum class Kind { Power, Custom };

  std::function<double(double)> s;
  Kind kind = Kind::Custom;
  int power = 0;

  /// s(alpha) = alpha^r. r = 0 is read as s = 1 on (0, 1], s(0) = 0.
  static ReductionFunction power_of(int r);
  /// Validated on a 1025-point grid: s(0) = 0, s(1) = 1, nondecreasing, values in [0, 1].
  static ReductionFunction custom(std::function<double(double)> s);

  double operator()(double alpha) const { return s(alpha); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

Interval expected_interval(const FuzzyNumber& u, const QuadratureConfig& q = {});
double expected_value(const FuzzyNumber& u, const QuadratureConfig& q = {});
double width(const FuzzyNumber& u, const QuadratureConfig& q = {});
double value_s(const FuzzyNumber& u, const ReductionFunction& s, const QuadratureConfig& q = {});
double ambiguity_s(const FuzzyNumber& u, const ReductionFunction& s, const QuadratureConfig& q = {});

/// Exact metric formulas for piecewise-linear shapes, integrating the
/// linear alpha-cut pieces analytically. Used to cross-check the quadrature
/// path. Throw Error(InvalidArgument) for analytic shapes.
namespace closed_form {
Interval expected_interval(const FuzzyNumber& u);
double value_power(const FuzzyNumber& u, int r);
double ambiguity_power(const FuzzyNumber& u, int r);
}  // namespace closed_form

}  // namespace baskafuzz
