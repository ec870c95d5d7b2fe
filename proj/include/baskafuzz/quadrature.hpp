#pragma once

#include <functional>
#include <span>

namespace baskafuzz {

struct QuadratureConfig {
  enum class Rule { CompositeSimpson, Adaptive };

  Rule rule = Rule::CompositeSimpson;
  int panels = 1024;          // composite Simpson: even, >= 2
  double tolerance = 1e-12;   // adaptive: absolute target, > 0
  long max_evaluations = 1L << 22;

  static QuadratureConfig simpson(int panels);
  static QuadratureConfig adaptive(double tolerance, long max_evaluations = 1L << 22);

  /// Throws Error(InvalidArgument) on an odd/too-small panel count or a
  /// non-positive tolerance.
  void validate() const;
};

/// Integrates f over [lo, hi]. Points in `breakpoints` that fall strictly
/// inside (lo, hi) split the range, so kinks of piecewise-smooth integrands
/// land on panel boundaries. Composite Simpson distributes the configured
/// panel count over the pieces in proportion to their length.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureConfig& config, std::span<const double> breakpoints = {});

}  // namespace baskafuzz
