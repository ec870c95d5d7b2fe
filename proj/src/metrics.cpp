#include <cmath>
#include <vector>

#include "baskafuzz/error.hpp"
#include "baskafuzz/fuzzy_number.hpp"

namespace baskafuzz {

namespace {

double integrate_branch_sum(const FuzzyNumber& u, const std::function<double(double)>& weight,
                            double lower_sign, double upper_sign, const QuadratureConfig& q) {
  const auto breaks = u.alpha_breakpoints();
  auto integrand = [&](double alpha) {
    return weight(alpha) * (lower_sign * u.lower_branch(alpha) + upper_sign * u.upper_branch(alpha));
  };
  return integrate(integrand, 0.0, 1.0, q, breaks);
}

const std::function<double(double)> kUnitWeight = [](double) { return 1.0; };

// s = alpha^0 jumps at the single point alpha = 0, which the integral ignores
// but an endpoint rule would not.
const std::function<double(double)>& quadrature_weight(const ReductionFunction& s) {
  return s.kind == ReductionFunction::Kind::Power && s.power == 0 ? kUnitWeight : s.s;
}

}  // namespace

Interval expected_interval(const FuzzyNumber& u, const QuadratureConfig& q) {
  return {integrate_branch_sum(u, kUnitWeight, 1.0, 0.0, q),
          integrate_branch_sum(u, kUnitWeight, 0.0, 1.0, q)};
}

double expected_value(const FuzzyNumber& u, const QuadratureConfig& q) {
  const Interval ei = expected_interval(u, q);
  return 0.5 * (ei.lo + ei.hi);
}

double width(const FuzzyNumber& u, const QuadratureConfig& q) {
  const Interval ei = expected_interval(u, q);
  return ei.hi - ei.lo;
}

double value_s(const FuzzyNumber& u, const ReductionFunction& s, const QuadratureConfig& q) {
  return integrate_branch_sum(u, quadrature_weight(s), 1.0, 1.0, q);
}

double ambiguity_s(const FuzzyNumber& u, const ReductionFunction& s, const QuadratureConfig& q) {
  return integrate_branch_sum(u, quadrature_weight(s), -1.0, 1.0, q);
}

namespace closed_form {

namespace {

// Branch piece: x moves linearly from x0 to x1 as alpha goes from a0 to a1.
struct Piece {
  double a0, a1, x0, x1;
};

std::vector<Piece> lower_pieces(std::span<const Knot> knots) {
  std::vector<Piece> pieces;
  if (knots.front().mu > 0.0) pieces.push_back({0.0, knots.front().mu, knots.front().x, knots.front().x});
  for (std::size_t i = 0; i + 1 < knots.size() && knots[i].mu < 1.0; ++i) {
    if (knots[i + 1].mu > knots[i].mu) {
      pieces.push_back({knots[i].mu, knots[i + 1].mu, knots[i].x, knots[i + 1].x});
    }
  }
  return pieces;
}

std::vector<Piece> upper_pieces(std::span<const Knot> knots) {
  std::vector<Piece> pieces;
  if (knots.back().mu > 0.0) pieces.push_back({0.0, knots.back().mu, knots.back().x, knots.back().x});
  for (std::size_t i = knots.size() - 1; i > 0 && knots[i].mu < 1.0; --i) {
    if (knots[i - 1].mu > knots[i].mu) {
      pieces.push_back({knots[i].mu, knots[i - 1].mu, knots[i].x, knots[i - 1].x});
    }
  }
  return pieces;
}

// Integral of alpha^r * x(alpha) over all pieces.
double moment(const std::vector<Piece>& pieces, int r) {
  double total = 0.0;
  for (const Piece& p : pieces) {
    const double slope = (p.x1 - p.x0) / (p.a1 - p.a0);
    const double offset = p.x0 - slope * p.a0;
    total += offset * (std::pow(p.a1, r + 1) - std::pow(p.a0, r + 1)) / (r + 1) +
             slope * (std::pow(p.a1, r + 2) - std::pow(p.a0, r + 2)) / (r + 2);
  }
  return total;
}

void require_piecewise_linear(const FuzzyNumber& u) {
  if (!u.is_piecewise_linear()) {
    throw Error(ErrorKind::InvalidArgument, "closed-form metrics need a piecewise-linear shape");
  }
}

}  // namespace

Interval expected_interval(const FuzzyNumber& u) {
  require_piecewise_linear(u);
  return {moment(lower_pieces(u.knots()), 0), moment(upper_pieces(u.knots()), 0)};
}

double value_power(const FuzzyNumber& u, int r) {
  require_piecewise_linear(u);
  return moment(lower_pieces(u.knots()), r) + moment(upper_pieces(u.knots()), r);
}

double ambiguity_power(const FuzzyNumber& u, int r) {
  require_piecewise_linear(u);
  return moment(upper_pieces(u.knots()), r) - moment(lower_pieces(u.knots()), r);
}

}  // namespace closed_form

}  // namespace baskafuzz
