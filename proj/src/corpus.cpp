#include "baskafuzz/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "baskafuzz/error.hpp"
#include "baskafuzz/moduli.hpp"

namespace baskafuzz {

namespace {

using Vertices = std::vector<std::pair<double, double>>;

double interpolate(const Vertices& v, double x) {
  if (x <= v.front().first) return v.front().second;
  if (x >= v.back().first) return v.back().second;
  const auto it = std::upper_bound(v.begin(), v.end(), x,
                                   [](double t, const auto& p) { return t < p.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

SampledFunction make(std::string name, std::function<double(double)> eval,
                     std::function<double(double)> modulus) {
  return {std::move(eval), std::move(modulus), std::move(name)};
}

SampledFunction polyline(std::string name, Vertices v) {
  auto eval = [v](double x) { return interpolate(v, x); };
  return make(std::move(name), eval, moduli::piecewise_linear(v));
}

std::vector<CorpusEntry> build_functions() {
  std::vector<CorpusEntry> c;
  const auto add = [&c](SampledFunction f, double lo, double hi, bool concave, bool nondecreasing,
                        bool lipschitz, std::optional<double> peak, RateClass rate) {
    c.push_back({std::move(f), lo, hi, concave, nondecreasing, lipschitz, peak, rate});
  };

  add(make("identity", [](double x) { return x; }, moduli::lipschitz(1.0)), 0, 1, true, true, true,
      1.0, RateClass::ConcaveNondecreasing);
  add(make("identity_wide", [](double x) { return x; }, moduli::lipschitz(1.0)), 0, 3, true, true,
      true, 3.0, RateClass::Excluded);

  auto rise = [](double x) { return 2.0 * x - x * x; };
  add(make("concave_rise", rise, moduli::concave(rise, 0, 1, 1)), 0, 1, true, true, true, 1.0,
      RateClass::ConcaveNondecreasing);

  auto root = [](double x) { return std::sqrt(x); };
  add(make("sqrt", root, moduli::concave(root, 0, 1, 1)), 0, 1, true, true, false, 1.0,
      RateClass::ConcaveNondecreasing);

  add(polyline("tent", {{0, 0.2}, {0.5, 0.7}, {1, 0.2}}), 0, 1, true, false, true, 0.5,
      RateClass::Excluded);

  auto square = [](double x) { return x * x; };
  add(make("quadratic", square, moduli::convex(square, 0, 1, 0)), 0, 1, false, true, true, 1.0,
      RateClass::Excluded);

  auto parabola = [](double x) { return x * (1.0 - x) + 0.1; };
  add(make("parabola", parabola, moduli::concave(parabola, 0, 1, 0.5)), 0, 1, true, false, true, 0.5,
      RateClass::Excluded);

  auto sine = [](double x) { return std::sin(std::numbers::pi * x) + 0.05; };
  add(make("sine", sine, moduli::concave(sine, 0, 1, 0.5)), 0, 1, true, false, true, 0.5,
      RateClass::Excluded);

  add(polyline("skew_tent", {{-1, 0.1}, {0, 1}, {2, 0.3}}), -1, 2, true, false, true, 0.0,
      RateClass::Excluded);
  add(polyline("plateau", {{2, 0.05}, {3, 1}, {4, 1}, {5, 0.4}}), 2, 5, true, false, true, 3.0,
      RateClass::Excluded);
  add(polyline("bump", {{0, 0}, {0.3, 0.2}, {0.5, 1}, {0.8, 0.6}, {1, 0.5}}), 0, 1, false, false,
      true, 0.5, RateClass::Excluded);

  add(make("falling", [](double x) { return 1.0 - x; }, moduli::lipschitz(1.0)), 0, 1, true, false,
      true, 0.0, RateClass::Generic);
  add(polyline("valley", {{0, 0.5}, {0.5, 0}, {1, 0.5}}), 0, 1, false, false, true, std::nullopt,
      RateClass::Generic);
  return c;
}

std::vector<FuzzyCorpusEntry> build_fuzzy() {
  return {
      {"trapezoid", FuzzyNumber::trapezoidal(0, 0.8, 1.2, 2)},
      {"trapezoid_quarter", FuzzyNumber::trapezoidal(0, 0.75, 1.25, 2)},
      {"trapezoid_unit", FuzzyNumber::trapezoidal(0, 0.3, 0.7, 1)},
      {"trapezoid_skew", FuzzyNumber::trapezoidal(-1, 0, 2, 2.5)},
      {"plateau_polyline", FuzzyNumber::piecewise_linear({{0, 0}, {1, 0.6}, {2, 1}, {3, 1}, {5, 0}})},
  };
}

}  // namespace

const std::vector<CorpusEntry>& function_corpus() {
  static const std::vector<CorpusEntry> corpus = build_functions();
  return corpus;
}

const CorpusEntry& corpus_function(const std::string& name) {
  for (const auto& entry : function_corpus()) {
    if (entry.f.name == name) return entry;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown corpus function '" + name + "'");
}

const std::vector<FuzzyCorpusEntry>& fuzzy_corpus() {
  static const std::vector<FuzzyCorpusEntry> corpus = build_fuzzy();
  return corpus;
}

}  // namespace baskafuzz
