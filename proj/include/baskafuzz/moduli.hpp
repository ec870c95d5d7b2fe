#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace baskafuzz::moduli {

// Closed-form moduli of continuity omega_1(f; delta) on a compact interval,
// for the function families the corpus and the CLI can describe exactly.

/// f Lipschitz-affine with slope of magnitude `constant`: omega = constant * delta.
std::function<double(double)> lipschitz(double constant);

/// Exact modulus of the piecewise-linear interpolant through `vertices`
/// (x strictly increasing). The extremal pairs of a piecewise-linear function
/// at distance <= delta always have an endpoint on a vertex, so the supremum
/// is a maximum over a finite candidate set.
std::function<double(double)> piecewise_linear(std::vector<std::pair<double, double>> vertices);

/// Concave f on [lo, hi] attaining its maximum at `peak`.
/// f(x+h) - f(x) is nonincreasing in x, so the extremes sit at the ends.
std::function<double(double)> concave(std::function<double(double)> f, double lo, double hi,
                                      double peak);

/// Convex f on [lo, hi] attaining its minimum at `valley`.
std::function<double(double)> convex(std::function<double(double)> f, double lo, double hi,
                                     double valley);

}  // namespace baskafuzz::moduli
