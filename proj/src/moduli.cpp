#include "baskafuzz/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "baskafuzz/error.hpp"

namespace baskafuzz::moduli {

namespace {

double interpolate(const std::vector<std::pair<double, double>>& v, double x) {
  if (x <= v.front().first) return v.front().second;
  if (x >= v.back().first) return v.back().second;
  const auto it = std::upper_bound(v.begin(), v.end(), x,
                                   [](double value, const auto& p) { return value < p.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

std::function<double(double)> lipschitz(double constant) {
  const double c = std::abs(constant);
  return [c](double delta) { return c * std::max(delta, 0.0); };
}

std::function<double(double)> piecewise_linear(std::vector<std::pair<double, double>> vertices) {
  if (vertices.size() < 2) {
    return [](double) { return 0.0; };
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i].first > vertices[i - 1].first)) {
      throw Error(ErrorKind::InvalidArgument, "piecewise-linear modulus needs increasing x");
    }
  }
  auto v = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(vertices));
  return [v](double delta) {
    if (delta <= 0.0) return 0.0;
    const double lo = v->front().first;
    const double hi = v->back().first;
    double best = 0.0;
    auto consider = [&](double s, double t) {
      s = std::clamp(s, lo, hi);
      t = std::clamp(t, lo, hi);
      best = std::max(best, std::abs(interpolate(*v, t) - interpolate(*v, s)));
    };
    for (std::size_t i = 0; i < v->size(); ++i) {
      const double p = (*v)[i].first;
      consider(p, p + delta);
      consider(p - delta, p);
      for (std::size_t k = i + 1; k < v->size() && (*v)[k].first - p <= delta; ++k) {
        consider(p, (*v)[k].first);
      }
    }
    return best;
  };
}

std::function<double(double)> concave(std::function<double(double)> f, double lo, double hi,
                                      double peak) {
  return [f = std::move(f), lo, hi, peak](double delta) {
    if (delta <= 0.0) return 0.0;
    const double rise = f(std::min(lo + delta, peak)) - f(lo);
    const double fall = f(std::max(hi - delta, peak)) - f(hi);
    return std::max({rise, fall, 0.0});
  };
}

std::function<double(double)> convex(std::function<double(double)> f, double lo, double hi,
                                     double valley) {
  return [f = std::move(f), lo, hi, valley](double delta) {
    if (delta <= 0.0) return 0.0;
    const double rise = f(hi) - f(std::max(hi - delta, valley));
    const double fall = f(lo) - f(std::min(lo + delta, valley));
    return std::max({rise, fall, 0.0});
  };
}

}  // namespace baskafuzz::moduli
