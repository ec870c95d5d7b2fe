#include "baskafuzz/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

#include "baskafuzz/error.hpp"
#include "baskafuzz/moduli.hpp"

namespace baskafuzz {

namespace {

constexpr double kBisectionTolerance = 1e-12;

double interpolate_knots(const std::vector<Knot>& knots, double x) {
  if (x < knots.front().x || x > knots.back().x) return 0.0;
  if (knots.size() == 1) return knots.front().mu;
  const auto it = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double value, const Knot& k) { return value < k.x; });
  if (it == knots.end()) return knots.back().mu;
  const Knot& right = *it;
  const Knot& left = *(it - 1);
  return left.mu + (right.mu - left.mu) * (x - left.x) / (right.x - left.x);
}

MembershipSpec spec_from_knots(std::vector<Knot> knots, Shape shape) {
  if (knots.empty()) {
    throw Error(ErrorKind::InvalidArgument, "piecewise-linear membership needs at least one vertex");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].x > knots[i - 1].x)) {
      throw Error(ErrorKind::InvalidArgument, "piecewise-linear vertices must have strictly increasing x");
    }
  }
  MembershipSpec spec;
  spec.shape = shape;
  spec.support_lo = knots.front().x;
  spec.support_hi = knots.back().x;
  // Core = first and last vertex at full membership; validation reports
  // NotNormal when there is none.
  auto first_one = std::find_if(knots.begin(), knots.end(), [](const Knot& k) { return k.mu == 1.0; });
  auto last_one = std::find_if(knots.rbegin(), knots.rend(), [](const Knot& k) { return k.mu == 1.0; });
  if (first_one != knots.end()) {
    spec.core_lo = first_one->x;
    spec.core_hi = last_one->x;
  } else {
    const auto top = std::max_element(knots.begin(), knots.end(),
                                      [](const Knot& l, const Knot& r) { return l.mu < r.mu; });
    spec.core_lo = spec.core_hi = top->x;
  }
  std::vector<std::pair<double, double>> vertices;
  vertices.reserve(knots.size());
  for (const Knot& k : knots) vertices.emplace_back(k.x, k.mu);
  spec.modulus = moduli::piecewise_linear(std::move(vertices));
  auto shared = std::make_shared<const std::vector<Knot>>(knots);
  spec.membership = [shared](double x) { return interpolate_knots(*shared, x); };
  spec.knots = std::move(knots);
  return spec;
}

// Vertices of a trapezoid (t1, t2, t3, t4); coincident points collapse onto
// the full-membership vertex so crisp edges keep mu = 1 at the support end.
std::vector<Knot> trapezoid_knots(double t1, double t2, double t3, double t4) {
  std::vector<Knot> raw{{t1, 0.0}, {t2, 1.0}, {t3, 1.0}, {t4, 0.0}};
  std::vector<Knot> out;
  for (const Knot& k : raw) {
    if (!out.empty() && out.back().x == k.x) {
      out.back().mu = std::max(out.back().mu, k.mu);
    } else {
      out.push_back(k);
    }
  }
  return out;
}

}  // namespace

FuzzyNumber FuzzyNumber::triangular(double t1, double t2, double t4) {
  if (!(t1 <= t2 && t2 <= t4)) {
    throw Error(ErrorKind::InvalidArgument, "triangular points must be ordered t1 <= t2 <= t4");
  }
  return validate(spec_from_knots(trapezoid_knots(t1, t2, t2, t4), Shape::Triangular));
}

FuzzyNumber FuzzyNumber::trapezoidal(double t1, double t2, double t3, double t4) {
  if (!(t1 <= t2 && t2 <= t3 && t3 <= t4)) {
    throw Error(ErrorKind::InvalidArgument, "trapezoidal points must be ordered t1 <= t2 <= t3 <= t4");
  }
  return validate(spec_from_knots(trapezoid_knots(t1, t2, t3, t4), Shape::Trapezoidal));
}

FuzzyNumber FuzzyNumber::piecewise_linear(std::vector<Knot> knots) {
  return validate(spec_from_knots(std::move(knots), Shape::PiecewiseLinear));
}

FuzzyNumber FuzzyNumber::analytic(double a, double b, double c, double d,
                                  std::function<double(double)> membership,
                                  std::function<double(double)> modulus) {
  MembershipSpec spec;
  spec.support_lo = a;
  spec.support_hi = b;
  spec.core_lo = c;
  spec.core_hi = d;
  spec.membership = std::move(membership);
  spec.modulus = std::move(modulus);
  spec.shape = Shape::Analytic;
  return validate(spec);
}

double FuzzyNumber::operator()(double x) const {
  if (x < a_ || x > b_) return 0.0;
  return membership_(x);
}

double FuzzyNumber::lower_branch(double alpha) const {
  if (alpha <= 0.0) return a_;
  if (alpha >= 1.0) return c_;
  if ((*this)(a_) >= alpha) return a_;
  double lo = a_;
  double hi = c_;
  for (int it = 0; it < 200 && hi - lo > kBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ((*this)(mid) >= alpha ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double FuzzyNumber::upper_branch(double alpha) const {
  if (alpha <= 0.0) return b_;
  if (alpha >= 1.0) return d_;
  if ((*this)(b_) >= alpha) return b_;
  double lo = d_;
  double hi = b_;
  for (int it = 0; it < 200 && hi - lo > kBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ((*this)(mid) >= alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> FuzzyNumber::alpha_breakpoints() const {
  std::vector<double> levels;
  for (const Knot& k : knots_) {
    if (k.mu > 0.0 && k.mu < 1.0) levels.push_back(k.mu);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::optional<double> FuzzyNumber::modulus(double delta) const {
  if (!modulus_) return std::nullopt;
  return modulus_(delta);
}

FuzzyNumber validate(const MembershipSpec& spec, const ValidationOptions& options) {
  const double a = spec.support_lo, b = spec.support_hi, c = spec.core_lo, d = spec.core_hi;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw Error(ErrorKind::UnboundedSupport, "support and core endpoints must be finite");
  }
  if (a > b) {
    throw Error(ErrorKind::InvalidArgument, "support lower end exceeds upper end");
  }
  if (!spec.membership) {
    throw Error(ErrorKind::InvalidArgument, "membership function is missing");
  }
  if (options.grid < 3) {
    throw Error(ErrorKind::InvalidArgument, "validation grid needs at least 3 points");
  }
  if (c > d || c < a || d > b) {
    std::ostringstream msg;
    msg << "core [" << c << ", " << d << "] is not inside support [" << a << ", " << b << "]";
    throw Error(ErrorKind::CoreOutsideSupport, msg.str());
  }

  const double tol = options.tolerance;
  auto mu = [&](double x) { return spec.membership(x); };

  std::vector<ErrorKind> kinds;
  std::ostringstream msg;
  auto flag = [&](ErrorKind k, const std::string& what) {
    if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) {
      kinds.push_back(k);
      msg << (kinds.size() > 1 ? "; " : "") << to_string(k) << ": " << what;
    }
  };

  // Grid over the support plus the four declared endpoints.
  const std::size_t m = options.grid;
  std::vector<double> xs;
  xs.reserve(m + 4);
  for (std::size_t i = 0; i < m; ++i) {
    xs.push_back(a == b ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1));
  }
  xs.insert(xs.end(), {a, b, c, d});
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vs(xs.size());
  std::transform(xs.begin(), xs.end(), vs.begin(), mu);

  double top = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = vs[i];
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
      flag(ErrorKind::InvalidArgument, "membership value outside [0, 1]");
    }
    top = std::max(top, v);
    if (xs[i] >= c && xs[i] <= d && std::abs(v - 1.0) > tol) {
      flag(ErrorKind::NotNormal, "membership is not 1 on the declared core");
    }
    if (xs[i] > a && xs[i] < b && v <= 0.0) {
      flag(ErrorKind::SupportMismatch, "membership vanishes inside the declared support");
    }
  }
  if (top < 1.0 - tol) {
    flag(ErrorKind::NotNormal, "supremum of membership is below 1");
  }

  double worst = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double step = vs[i] - vs[i - 1];
    if (xs[i] <= c) worst = std::max(worst, -step);  // left side must rise
    if (xs[i - 1] >= d) worst = std::max(worst, step);  // right side must fall
  }
  if (worst > tol) {
    flag(ErrorKind::NotQuasiConcave, "membership is not monotone on the sides of the core");
  }

  if (!kinds.empty()) throw Error(std::move(kinds), msg.str());

  FuzzyNumber u;
  u.a_ = a;
  u.b_ = b;
  u.c_ = c;
  u.d_ = d;
  u.shape_ = spec.shape;
  u.membership_ = spec.membership;
  u.knots_ = spec.knots;
  u.modulus_ = spec.modulus;
  return u;
}

AlphaCutRepresentation to_alpha_cuts(const FuzzyNumber& u, std::size_t grid_size) {
  if (grid_size < 2) {
    throw Error(ErrorKind::InvalidArgument, "alpha grid needs at least 2 points");
  }
  AlphaCutRepresentation cuts;
  cuts.alpha.resize(grid_size);
  cuts.lower.resize(grid_size);
  cuts.upper.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    cuts.alpha[i] = alpha;
    cuts.lower[i] = u.lower_branch(alpha);
    cuts.upper[i] = u.upper_branch(alpha);
  }
  return cuts;
}

ReductionFunction ReductionFunction::power_of(int r) {
  if (r < 0) throw Error(ErrorKind::InvalidArgument, "reduction power must be nonnegative");
  ReductionFunction f;
  f.kind = Kind::Power;
  f.power = r;
  if (r == 0) {
    f.s = [](double alpha) { return alpha > 0.0 ? 1.0 : 0.0; };
  } else {
    f.s = [r](double alpha) { return std::pow(alpha, r); };
  }
  return f;
}

ReductionFunction ReductionFunction::custom(std::function<double(double)> s) {
  if (!s) throw Error(ErrorKind::InvalidArgument, "reduction function is missing");
  constexpr int kGrid = 1025;
  constexpr double kTol = 1e-12;
  if (std::abs(s(0.0)) > kTol || std::abs(s(1.0) - 1.0) > kTol) {
    throw Error(ErrorKind::InvalidArgument, "reduction function must satisfy s(0)=0 and s(1)=1");
  }
  double prev = s(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = s(static_cast<double>(i) / (kGrid - 1));
    if (v < prev - kTol || v < -kTol || v > 1.0 + kTol) {
      throw Error(ErrorKind::InvalidArgument, "reduction function must be nondecreasing into [0, 1]");
    }
    prev = v;
  }
  ReductionFunction f;
  f.kind = Kind::Custom;
  f.s = std::move(s);
  return f;
}

}  // namespace baskafuzz
