#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace baskafuzz {

/// Degree n and interval [a, b] of a truncated Baskakov operator, with the
/// sample knots a + (b-a)k/n (k = 0..n) and the edges a + (b-a)j/(n-1)
/// (j = 0..n-1) of the subintervals on which the max-product weights have a
/// fixed dominant index.
class OperatorContext {
 public:
  /// Throws Error(InvalidArgument) unless n >= 2 and a < b are finite.
  OperatorContext(int degree, double lo, double hi);

  int degree() const noexcept { return n_; }
  double lo() const noexcept { return a_; }
  double hi() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }

  double knot(int k) const { return knots_[static_cast<std::size_t>(k)]; }
  std::span<const double> knots() const noexcept { return knots_; }
  double subinterval_edge(int j) const { return edges_[static_cast<std::size_t>(j)]; }
  std::span<const double> subinterval_edges() const noexcept { return edges_; }

  /// log C(n+k-1, k) via log-gamma.
  double log_binomial(int k) const { return log_binomial_[static_cast<std::size_t>(k)]; }

  /// y = (x-a)/(b-a); throws Error(DomainError) for x outside [a, b].
  double to_unit(double x) const;

 private:
  int n_;
  double a_, b_;
  std::vector<double> knots_;
  std::vector<double> edges_;
  std::vector<double> log_binomial_;
};

/// Nonnegative function on [a, b] with an optional closed-form modulus of
/// continuity omega_1(f; delta) on that interval.
struct SampledFunction {
  std::function<double(double)> eval;
  std::function<double(double)> modulus;
  std::string name;

  double operator()(double x) const { return eval(x); }
  bool has_modulus() const noexcept { return static_cast<bool>(modulus); }
};

/// log b_{n,k}(x) = log C(n+k-1,k) + k log y - (n+k) log(1+y). Returns -inf
/// for y = 0 and k > 0.
double basis_weight_log(const OperatorContext& ctx, int k, double x);

/// j = floor((n-1) y) clamped to n-2: subintervals are half-open on the
/// right except the last one, which is closed.
int subinterval_index(const OperatorContext& ctx, double x);

/// m_{k,n,j}(x) = b_{n,k}(x) / b_{n,j}(x); exactly 1 for k = j. x must lie in
/// the closure of subinterval j (1e-12 slack in the unit coordinate).
double weight_ratio(const OperatorContext& ctx, int k, int j, double x);

/// Max-product operator with the knot samples f(a + (b-a)k/n) cached.
/// Evaluation picks the governing subinterval j and takes max_k m_{k,n,j}(x) f_k,
/// walking outwards from k = j with the ratio recurrence and stopping once
/// the (monotonically shrinking) ratios can no longer beat the current max.
class MaxProductOperator {
 public:
  /// Throws Error(NegativeFunction) if any knot sample is negative.
  MaxProductOperator(OperatorContext ctx, const SampledFunction& f);
  MaxProductOperator(OperatorContext ctx, std::vector<double> knot_values);

  double operator()(double x) const;

  const OperatorContext& context() const noexcept { return ctx_; }
  std::span<const double> knot_values() const noexcept { return values_; }

 private:
  OperatorContext ctx_;
  std::vector<double> values_;
  double max_value_ = 0.0;
};

double max_product_apply(const OperatorContext& ctx, const SampledFunction& f, double x);

/// Independent route for tests: the ratio of maxima evaluated directly in
/// log space over all n+1 weights.
double max_product_apply_oracle(const OperatorContext& ctx, const SampledFunction& f, double x);

/// Linear truncated operator sum_k b_{n,k}(x) f_k. The weights sum to less
/// than 1 for x > a, so constants are not reproduced there.
double linear_truncated_apply(const OperatorContext& ctx, const SampledFunction& f, double x);

struct ApproximantCurve {
  std::vector<double> x;
  std::vector<double> values;
  double peak = 0.0;         // leftmost argmax
  double peak_value = 0.0;
  std::size_t peak_index = 0;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// OpenMP-parallel evaluation of the max-product operator over `grid`.
ApproximantCurve evaluate_curve(const OperatorContext& ctx, const SampledFunction& f,
                                std::span<const double> grid);
ApproximantCurve evaluate_curve(const MaxProductOperator& op, std::span<const double> grid);

/// Serial reference for evaluate_curve; results are identical bit for bit.
ApproximantCurve evaluate_curve_serial(const MaxProductOperator& op, std::span<const double> grid);

}  // namespace baskafuzz
