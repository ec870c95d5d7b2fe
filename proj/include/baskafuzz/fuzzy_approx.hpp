#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "baskafuzz/fuzzy_number.hpp"
#include "baskafuzz/operator_kernel.hpp"
#include "baskafuzz/shape_analysis.hpp"

namespace baskafuzz {

struct CoreKnotIndices {
  int k_c = 0;  // smallest k with a + (b-a)k/n >= c
  int k_d = 0;  // largest k with a + (b-a)k/n <= d
};

struct CoreKnots {
  CoreKnotIndices indices;
  double c_n = 0.0;  // a + (b-a) k_c / n
  double d_n = 0.0;  // a + (b-a)(k_d + 1) / n, capped at b
};

/// Throws DegenerateCore (c = d) or DegreeTooSmall ((b-a)/n >= d-c).
CoreKnots compute_core_knots(const FuzzyNumber& u, int n);

/// Fuzzy-number approximant: the max-product operator on supp(u) = [a, b],
/// extended by zero outside.
///
/// Its plateau is where the dominant weight index j(x) lands on a core knot,
/// i.e. the closed range [a + (b-a)k_c/(n-1), a + (b-a)(k_d+1)/(n-1)] capped
/// at b (observed_core()). This sits to the right of [c_n, d_n] by up to
/// (b-a)/n per end.
class FuzzyApproximant {
 public:
  const FuzzyNumber& source() const noexcept { return source_; }
  int degree() const noexcept { return op_.context().degree(); }
  const OperatorContext& context() const noexcept { return op_.context(); }
  const CoreKnots& core_knots() const noexcept { return core_; }
  Interval observed_core() const noexcept { return observed_core_; }
  bool is_fuzzy() const noexcept { return is_fuzzy_; }

  double operator()(double x) const;

  /// The approximant as a validated FuzzyNumber (analytic shape, support
  /// [a, b], core = observed_core()). Throws the validation error if the
  /// curve is not a fuzzy number.
  FuzzyNumber as_fuzzy_number() const;

 private:
  friend FuzzyApproximant approximate(const FuzzyNumber& u, int n, std::size_t grid_size);
  FuzzyApproximant(FuzzyNumber source, MaxProductOperator op, CoreKnots core, Interval observed);

  FuzzyNumber source_;
  MaxProductOperator op_;
  CoreKnots core_;
  Interval observed_core_;
  bool is_fuzzy_ = false;
};

/// Builds the approximant and re-validates it as a fuzzy number on a grid of
/// `grid_size` points (fuzzy-core validation plus the quasi-concavity test).
FuzzyApproximant approximate(const FuzzyNumber& u, int n,
                             std::size_t grid_size = kDefaultVerificationGrid);

struct SupportReport {
  bool pass = false;
  std::optional<double> first_violation;
};

/// curve > 0 at grid points strictly inside (a, b) (1e-12 away from the
/// ends) and curve = 0 at grid points outside [a, b].
SupportReport verify_support(const FuzzyApproximant& approx, std::span<const double> grid);

struct CoreReport {
  double c = 0.0, d = 0.0;
  double c_n = 0.0, d_n = 0.0;
  double displacement_c = 0.0;  // |c - c_n|
  double displacement_d = 0.0;  // |d - d_n|
  double knot_bound = 0.0;      // (b-a)/n
  bool knots_pass = false;

  Interval observed;                     // plateau of the approximant
  double observed_displacement_c = 0.0;  // |c - observed.lo|
  double observed_displacement_d = 0.0;  // |d - observed.hi|
  double observed_bound = 0.0;           // 2(b-a)/n
  bool observed_pass = false;
  bool observed_within_knot_bound = false;  // reported only

  bool plateau_pass = false;        // curve = 1 on the plateau, < 1 off it
  double plateau_min = 0.0;         // min of curve over grid points in the plateau
  double off_plateau_max = 0.0;     // max of curve over grid points off the plateau
  bool exact_one_at_core_knot = false;  // curve = 1 exactly inside subinterval k_c

  bool pass() const noexcept { return knots_pass && observed_pass && plateau_pass; }
};

CoreReport verify_core(const FuzzyApproximant& approx,
                       std::size_t grid_size = kDefaultVerificationGrid);

struct UniformErrorReport {
  BoundCheck asserted;        // against 24([b-a]+1) omega_1(u; 1/sqrt(n+1))
  double stated_bound = 0.0;  // 6([b-a]+1) omega_1(u; 1/sqrt(n))
  bool stated_pass = false;   // reported only
};

/// Throws ModulusUnavailable when u has no closed-form modulus.
UniformErrorReport verify_uniform_error(const FuzzyApproximant& approx, std::span<const double> grid);

}  // namespace baskafuzz
