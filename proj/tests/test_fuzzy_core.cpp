#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/rational.hpp>

#include "baskafuzz/error.hpp"
#include "baskafuzz/fuzzy_number.hpp"
#include "baskafuzz/moduli.hpp"
#include "baskafuzz/quadrature.hpp"

using namespace baskafuzz;
using Q = boost::rational<long long>;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

// Random piecewise-linear fuzzy number with vertices on a 1/8 lattice:
// strictly rising membership to a core, then strictly falling.
struct RationalFuzzy {
  std::vector<std::pair<Q, Q>> vertices;
  FuzzyNumber u;
};

RationalFuzzy random_fuzzy(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 2);
  std::uniform_int_distribution<int> step(1, 6);
  const int left = count(rng), right = count(rng);
  std::vector<std::pair<Q, Q>> v;
  Q x(static_cast<long long>(step(rng)) - 8, 8);
  v.emplace_back(x, 0);
  for (int i = 1; i <= left; ++i) {
    x += Q(step(rng), 8);
    v.emplace_back(x, Q(i, left + 1));
  }
  x += Q(step(rng), 8);
  v.emplace_back(x, 1);
  x += Q(step(rng) - 1, 8);
  if (x != v.back().first) v.emplace_back(x, 1);
  for (int i = right; i >= 1; --i) {
    x += Q(step(rng), 8);
    v.emplace_back(x, Q(i, right + 1));
  }
  x += Q(step(rng), 8);
  v.emplace_back(x, 0);

  std::vector<Knot> knots;
  for (const auto& [px, pm] : v) knots.push_back({boost::rational_cast<double>(px), boost::rational_cast<double>(pm)});
  return {v, FuzzyNumber::piecewise_linear(knots)};
}

Q qpow(Q b, int e) {
  Q r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Exact integral of alpha^r times the lower (sign -1 reversed) or upper branch.
Q exact_branch_moment(const std::vector<std::pair<Q, Q>>& v, int r, bool upper) {
  Q total = 0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto [x0, m0] = v[i];
    auto [x1, m1] = v[i + 1];
    const bool rising = m1 > m0;
    const bool falling = m1 < m0;
    if ((!upper && !rising) || (upper && !falling)) continue;
    if (upper) {
      std::swap(x0, x1);
      std::swap(m0, m1);
    }
    // x(alpha) = p + q alpha on [m0, m1].
    const Q q = (x1 - x0) / (m1 - m0);
    const Q p = x0 - q * m0;
    total += p * (qpow(m1, r + 1) - qpow(m0, r + 1)) / Q(r + 1) + q * (qpow(m1, r + 2) - qpow(m0, r + 2)) / Q(r + 2);
  }
  return total;
}

}  // namespace

TEST_CASE("triangular and trapezoidal membership") {
  const FuzzyNumber tri = FuzzyNumber::triangular(0, 1, 2);
  CHECK(tri(0.5) == doctest::Approx(0.5));
  CHECK(tri(1.0) == 1.0);
  CHECK(tri(-0.1) == 0.0);
  CHECK(tri(2.1) == 0.0);
  CHECK(tri.degenerate_core());

  const FuzzyNumber trap = FuzzyNumber::trapezoidal(0, 0.8, 1.2, 2);
  CHECK(trap.support_lo() == 0.0);
  CHECK(trap.support_hi() == 2.0);
  CHECK(trap.core_lo() == 0.8);
  CHECK(trap.core_hi() == 1.2);
  CHECK(trap(1.6) == doctest::Approx(0.5));
  CHECK_FALSE(trap.degenerate_core());
}

TEST_CASE("crisp interval and singleton") {
  const FuzzyNumber crisp = FuzzyNumber::trapezoidal(0, 0, 1, 1);
  CHECK(crisp(0.0) == 1.0);
  CHECK(crisp(1.0) == 1.0);
  CHECK(crisp(1.5) == 0.0);
  const FuzzyNumber point = FuzzyNumber::triangular(1, 1, 1);
  CHECK(point(1.0) == 1.0);
  CHECK(point.degenerate_core());
}

TEST_CASE("validation collects every violation") {
  MembershipSpec spec;
  spec.support_lo = 0;
  spec.support_hi = 1;
  spec.core_lo = spec.core_hi = 0.5;
  spec.membership = [](double x) { return std::abs(x - 0.5); };
  try {
    validate(spec);
    FAIL("expected validation to fail");
  } catch (const Error& e) {
    CHECK(e.has(ErrorKind::NotNormal));
    CHECK(e.has(ErrorKind::NotQuasiConcave));
    CHECK(e.has(ErrorKind::SupportMismatch));
  }
}

TEST_CASE("validation error kinds") {
  MembershipSpec spec;
  spec.support_lo = 0;
  spec.support_hi = std::numeric_limits<double>::infinity();
  spec.core_lo = spec.core_hi = 1;
  spec.membership = [](double) { return 1.0; };
  CHECK(kind_of([&] { validate(spec); }) == ErrorKind::UnboundedSupport);

  spec.support_hi = 2;
  spec.core_lo = 2.5;
  spec.core_hi = 3;
  CHECK(kind_of([&] { validate(spec); }) == ErrorKind::CoreOutsideSupport);

  CHECK(kind_of([] { FuzzyNumber::piecewise_linear({{0, 0}, {1, 0.8}, {2, 0}}); }) == ErrorKind::NotNormal);
  CHECK(kind_of([] { FuzzyNumber::piecewise_linear({{0, 0}, {1, 1}, {1, 0}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { FuzzyNumber::trapezoidal(0, 2, 1, 3); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("alpha-cut branches") {
  const FuzzyNumber tri = FuzzyNumber::triangular(0, 1, 2);
  CHECK(tri.lower_branch(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tri.upper_branch(0.5) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(tri.lower_branch(0.0) == 0.0);
  CHECK(tri.upper_branch(1.0) == 1.0);

  const AlphaCutRepresentation cuts = to_alpha_cuts(tri, 5);
  REQUIRE(cuts.alpha.size() == 5);
  for (std::size_t i = 1; i < cuts.alpha.size(); ++i) {
    CHECK(cuts.lower[i] >= cuts.lower[i - 1]);
    CHECK(cuts.upper[i] <= cuts.upper[i - 1]);
    CHECK(cuts.lower[i] <= cuts.upper[i]);
  }
  CHECK(kind_of([&] { to_alpha_cuts(tri, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("metrics of a triangular number") {
  const FuzzyNumber tri = FuzzyNumber::triangular(0, 1, 2);
  const Interval ei = expected_interval(tri);
  CHECK(ei.lo == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ei.hi == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(expected_value(tri) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(width(tri) == doctest::Approx(1.0).epsilon(1e-10));
  const auto s1 = ReductionFunction::power_of(1);
  CHECK(value_s(tri, s1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ambiguity_s(tri, s1) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  const Interval exact = closed_form::expected_interval(tri);
  CHECK(exact.lo == 0.5);
  CHECK(exact.hi == 1.5);
}

TEST_CASE("metrics of a trapezoid") {
  const FuzzyNumber trap = FuzzyNumber::trapezoidal(0, 1, 2, 3);
  CHECK(expected_value(trap) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(width(trap) == doctest::Approx(2.0).epsilon(1e-10));
  const auto s1 = ReductionFunction::power_of(1);
  CHECK(value_s(trap, s1) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(ambiguity_s(trap, s1) == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
  CHECK(closed_form::ambiguity_power(trap, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("closed form needs a piecewise-linear shape") {
  const FuzzyNumber smooth = FuzzyNumber::analytic(0, 2, 1, 1, [](double x) { return 1.0 - (x - 1) * (x - 1); });
  CHECK(kind_of([&] { closed_form::expected_interval(smooth); }) == ErrorKind::InvalidArgument);
  // Quadrature still works: branches 1 -+ sqrt(1 - alpha), each moment 2/3 away from 1.
  const Interval ei = expected_interval(smooth, QuadratureConfig::adaptive(1e-11));
  CHECK(ei.lo == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(ei.hi == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("property: closed form matches an exact rational oracle and quadrature") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const RationalFuzzy rf = random_fuzzy(rng);
    CAPTURE(trial);
    const Interval ei = closed_form::expected_interval(rf.u);
    CHECK(ei.lo == doctest::Approx(boost::rational_cast<double>(exact_branch_moment(rf.vertices, 0, false)))
                       .epsilon(1e-12));
    CHECK(ei.hi == doctest::Approx(boost::rational_cast<double>(exact_branch_moment(rf.vertices, 0, true)))
                       .epsilon(1e-12));
    for (int r = 1; r <= 3; ++r) {
      const Q lower = exact_branch_moment(rf.vertices, r, false);
      const Q upper = exact_branch_moment(rf.vertices, r, true);
      CHECK(closed_form::value_power(rf.u, r) ==
            doctest::Approx(boost::rational_cast<double>(lower + upper)).epsilon(1e-12));
      CHECK(closed_form::ambiguity_power(rf.u, r) ==
            doctest::Approx(boost::rational_cast<double>(upper - lower)).epsilon(1e-12));
      const auto s = ReductionFunction::power_of(r);
      CHECK(std::abs(value_s(rf.u, s) - closed_form::value_power(rf.u, r)) <= 1e-10);
      CHECK(std::abs(ambiguity_s(rf.u, s) - closed_form::ambiguity_power(rf.u, r)) <= 1e-10);
    }
  }
}

TEST_CASE("property: metric invariants under random fuzzy numbers") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalFuzzy rf = random_fuzzy(rng);
    const Interval ei = expected_interval(rf.u);
    CHECK(ei.lo <= ei.hi);
    CHECK(ei.lo >= rf.u.support_lo());
    CHECK(ei.hi <= rf.u.support_hi());
    CHECK(width(rf.u) >= 0.0);
    CHECK(ambiguity_s(rf.u, ReductionFunction::power_of(2)) >= 0.0);

    // Translation moves EV and keeps the width.
    std::vector<Knot> shifted(rf.u.knots().begin(), rf.u.knots().end());
    for (Knot& k : shifted) k.x += 1.25;
    const FuzzyNumber moved = FuzzyNumber::piecewise_linear(shifted);
    CHECK(expected_value(moved) == doctest::Approx(expected_value(rf.u) + 1.25).epsilon(1e-10));
    CHECK(width(moved) == doctest::Approx(width(rf.u)).epsilon(1e-10));
  }
}

TEST_CASE("reduction functions") {
  const auto s0 = ReductionFunction::power_of(0);
  CHECK(s0(0.0) == 0.0);
  CHECK(s0(0.25) == 1.0);
  CHECK(ReductionFunction::power_of(2)(0.5) == 0.25);
  CHECK(kind_of([] { ReductionFunction::power_of(-1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ReductionFunction::custom([](double a) { return 0.5 + a / 2; }); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ReductionFunction::custom([](double a) { return a < 0.5 ? a : 1.0 - a + 0.0; }); }) ==
        ErrorKind::InvalidArgument);
  const auto root = ReductionFunction::custom([](double a) { return std::sqrt(a); });
  const FuzzyNumber tri = FuzzyNumber::triangular(0, 1, 2);
  // Amb = int sqrt(a) (2 - 2a) da = 4/3 - 4/5.
  CHECK(ambiguity_s(tri, root, QuadratureConfig::adaptive(1e-10)) == doctest::Approx(4.0 / 3.0 - 0.8).epsilon(1e-8));
  // r = 0 integrates the unweighted width even though s(0) = 0.
  CHECK(ambiguity_s(tri, s0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quadrature") {
  const auto cubic = [](double x) { return x * x * x - 2 * x + 1; };
  CHECK(integrate(cubic, 0, 2, QuadratureConfig::simpson(2)) == doctest::Approx(2.0).epsilon(1e-14));
  const auto kink = [](double x) { return std::abs(x - 0.3); };
  const double bp[] = {0.3};
  CHECK(integrate(kink, 0, 1, QuadratureConfig::simpson(4), bp) ==
        doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi, QuadratureConfig::adaptive(1e-12)) ==
        doctest::Approx(2.0).epsilon(1e-11));
  CHECK(kind_of([&] { integrate(cubic, 0, 1, QuadratureConfig::simpson(3)); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] {
          integrate([](double x) { return std::sqrt(std::abs(std::sin(1.0 / (x + 1e-9)))); }, 0, 1,
                    QuadratureConfig::adaptive(1e-14, 200));
        }) == ErrorKind::QuadratureFailure);
}

TEST_CASE("closed-form moduli") {
  const auto lin = moduli::lipschitz(-2.0);
  CHECK(lin(0.25) == 0.5);
  const auto tent = moduli::piecewise_linear({{0, 0}, {1, 1}, {2, 0}});
  CHECK(tent(0.5) == doctest::Approx(0.5));
  CHECK(tent(1.5) == doctest::Approx(1.0));
  CHECK(tent(5.0) == doctest::Approx(1.0));
  const auto root = moduli::concave([](double x) { return std::sqrt(x); }, 0, 1, 1);
  CHECK(root(0.25) == doctest::Approx(0.5));
  const auto sq = moduli::convex([](double x) { return x * x; }, 0, 1, 0);
  CHECK(sq(0.5) == doctest::Approx(0.75));
}

TEST_CASE("property: piecewise-linear modulus dominates brute force and is tight") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<double, double>> v;
    double x = 0.0;
    for (int i = 0; i < 6; ++i) {
      v.emplace_back(x, unit(rng));
      x += 0.05 + unit(rng);
    }
    const auto w = moduli::piecewise_linear(v);
    const double lo = v.front().first, hi = v.back().first;
    auto f = [&](double t) {
      std::size_t i = 1;
      while (i + 1 < v.size() && v[i].first < t) ++i;
      const auto [x0, y0] = v[i - 1];
      const auto [x1, y1] = v[i];
      return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
    };
    double prev = 0.0;
    for (double delta : {0.01, 0.1, 0.3, 0.7, 2.0}) {
      double brute = 0.0;
      const int m = 801;
      for (int i = 0; i < m; ++i) {
        const double s = lo + (hi - lo) * i / (m - 1);
        for (int k = i + 1; k < m; ++k) {
          const double t = lo + (hi - lo) * k / (m - 1);
          if (t - s > delta) break;
          brute = std::max(brute, std::abs(f(t) - f(s)));
        }
      }
      const double exact = w(delta);
      CHECK(exact >= brute - 1e-12);
      CHECK(exact <= brute + 2.0 * (hi - lo) / (m - 1) * 20.0);
      CHECK(exact >= prev);
      prev = exact;
    }
  }
}
