#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include <omp.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "baskafuzz/error.hpp"
#include "baskafuzz/operator_kernel.hpp"
#include "baskafuzz/parallel.hpp"

using namespace baskafuzz;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational binom(int n, int k) {
  cpp_rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cpp_rational qpow(const cpp_rational& b, int e) {
  cpp_rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// b_{n,k}(y) on [0, 1], exact.
cpp_rational weight(int n, int k, const cpp_rational& y) {
  return binom(n + k - 1, k) * qpow(y, k) / qpow(cpp_rational(1) + y, n + k);
}

// Max-product and truncated linear operators on [0, 1] for knot values f_k.
cpp_rational exact_max_product(const std::vector<cpp_rational>& fk, const cpp_rational& y) {
  const int n = static_cast<int>(fk.size()) - 1;
  cpp_rational num = 0, den = 0;
  for (int k = 0; k <= n; ++k) {
    const cpp_rational w = weight(n, k, y);
    if (w * fk[k] > num) num = w * fk[k];
    if (w > den) den = w;
  }
  return num / den;
}

cpp_rational exact_linear(const std::vector<cpp_rational>& fk, const cpp_rational& y) {
  const int n = static_cast<int>(fk.size()) - 1;
  cpp_rational sum = 0;
  for (int k = 0; k <= n; ++k) sum += weight(n, k, y) * fk[k];
  return sum;
}

double to_double(const cpp_rational& q) { return static_cast<double>(q); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

SampledFunction fn(std::function<double(double)> f) { return {std::move(f), {}, "f"}; }

}  // namespace

TEST_CASE("context knots and edges") {
  const OperatorContext ctx(4, 1.0, 3.0);
  CHECK(ctx.knot(0) == 1.0);
  CHECK(ctx.knot(2) == 2.0);
  CHECK(ctx.knot(4) == 3.0);
  CHECK(ctx.subinterval_edge(0) == 1.0);
  CHECK(ctx.subinterval_edge(3) == 3.0);
  CHECK(ctx.subinterval_edges().size() == 4);
  CHECK(ctx.log_binomial(2) == doctest::Approx(std::log(10.0)));
  CHECK(kind_of([] { OperatorContext(1, 0, 1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { OperatorContext(3, 1, 1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { ctx.to_unit(3.5); }) == ErrorKind::DomainError);
}

TEST_CASE("hand-derived values at n = 2") {
  const OperatorContext ctx(2, 0.0, 1.0);
  const auto id = fn([](double x) { return x; });
  CHECK(max_product_apply(ctx, id, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(max_product_apply(ctx, id, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(linear_truncated_apply(ctx, fn([](double) { return 1.0; }), 1.0) == doctest::Approx(11.0 / 16.0));
  CHECK(std::exp(basis_weight_log(ctx, 2, 1.0)) == doctest::Approx(3.0 / 16.0));
  CHECK(basis_weight_log(ctx, 1, 0.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("property: max-product and linear operators match an exact rational oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> degree(2, 24);
  std::uniform_int_distribution<int> value(0, 16);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = degree(rng);
    std::vector<cpp_rational> fk(n + 1);
    std::vector<double> fd(n + 1);
    for (int k = 0; k <= n; ++k) {
      fk[k] = cpp_rational(value(rng), 8);
      fd[k] = to_double(fk[k]);
    }
    const OperatorContext ctx(n, 0.0, 1.0);
    const MaxProductOperator op(ctx, fd);
    const auto lookup = fn([&](double x) { return fd[static_cast<std::size_t>(std::lround(x * n))]; });
    for (int num = 0; num <= 16; ++num) {
      const cpp_rational y(num, 16);
      const double x = num / 16.0;
      CAPTURE(n);
      CAPTURE(x);
      const double exact = to_double(exact_max_product(fk, y));
      CHECK(op(x) == doctest::Approx(exact).epsilon(1e-13));
      CHECK(linear_truncated_apply(ctx, lookup, x) == doctest::Approx(to_double(exact_linear(fk, y))).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: log weights match exact weights") {
  for (int n : {2, 5, 17, 40}) {
    const OperatorContext ctx(n, 0.0, 1.0);
    for (int num = 1; num <= 8; ++num) {
      const cpp_rational y(num, 8);
      for (int k = 0; k <= n; ++k) {
        CHECK(basis_weight_log(ctx, k, num / 8.0) ==
              doctest::Approx(std::log(to_double(weight(n, k, y)))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: the dominant weight index is the subinterval index") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 150);
    const double a = -3.0 + unit(rng), b = a + 0.2 + 4.0 * unit(rng);
    const OperatorContext ctx(n, a, b);
    const double x = a + (b - a) * unit(rng);
    const int j = subinterval_index(ctx, x);
    const double lj = basis_weight_log(ctx, j, x);
    for (int k = 0; k <= n; ++k) CHECK(basis_weight_log(ctx, k, x) <= lj + 1e-12);
  }
}

TEST_CASE("weight ratios") {
  const OperatorContext ctx(10, 0.0, 2.0);
  CHECK(weight_ratio(ctx, 3, 3, ctx.subinterval_edge(3) + 0.01) == 1.0);
  CHECK(weight_ratio(ctx, 4, 3, ctx.subinterval_edge(4)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kind_of([&] { weight_ratio(ctx, 2, 3, 0.1); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { weight_ratio(ctx, 11, 3, 0.7); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { weight_ratio(ctx, 2, 9, 1.9); }) == ErrorKind::InvalidArgument);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    const OperatorContext c(n, 0.0, 1.0);
    const int j = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    const double x = std::min(c.subinterval_edge(j + 1),
                              c.subinterval_edge(j) + (c.subinterval_edge(j + 1) - c.subinterval_edge(j)) * unit(rng));
    for (int k = 0; k <= n; ++k) CHECK(weight_ratio(c, k, j, x) <= 1.0 + 1e-12);
  }
}

TEST_CASE("weight ratios switch to the telescoping sum for large n") {
  const OperatorContext big(5000, 0.0, 1.0);
  const double x = 0.37;
  const int j = subinterval_index(big, x);
  for (int k : {j - 40, j - 3, j + 1, j + 25}) {
    const double direct = std::exp(basis_weight_log(big, k, x) - basis_weight_log(big, j, x));
    CHECK(weight_ratio(big, k, j, x) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("property: pruned evaluation agrees with the log-space oracle on spiky data") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 200);
    std::vector<double> values(n + 1, 0.0);
    for (double& v : values) v = unit(rng) < 0.7 ? 0.0 : unit(rng) * 1e-3;
    values[rng() % values.size()] = 50.0;
    const OperatorContext ctx(n, -1.0, 4.0);
    const MaxProductOperator op(ctx, values);
    const auto lookup = fn([&](double x) {
      return values[static_cast<std::size_t>(std::lround((x + 1.0) / 5.0 * n))];
    });
    const double x = -1.0 + 5.0 * unit(rng);
    const double oracle = max_product_apply_oracle(ctx, lookup, x);
    CHECK(op(x) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("operator identities") {
  const auto f = fn([](double x) { return 1.0 + std::sin(3.0 * x) * 0.5; });
  for (int n : {2, 7, 33}) {
    const OperatorContext ctx(n, -2.0, 1.0);
    const MaxProductOperator op(ctx, f);
    CHECK(op(-2.0) == f(-2.0));
    const MaxProductOperator constant(ctx, std::vector<double>(n + 1, 0.7));
    for (double x : uniform_grid(-2.0, 1.0, 101)) {
      CHECK(constant(x) == doctest::Approx(0.7).epsilon(1e-15));
      CHECK(op(x) <= *std::max_element(op.knot_values().begin(), op.knot_values().end()));
    }
  }
}

TEST_CASE("negative samples are rejected") {
  const OperatorContext ctx(4, 0.0, 1.0);
  CHECK(kind_of([&] { MaxProductOperator(ctx, fn([](double x) { return x - 0.5; })); }) ==
        ErrorKind::NegativeFunction);
  CHECK(kind_of([&] { MaxProductOperator(ctx, std::vector<double>{1, 2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("parallel curve evaluation equals the serial reference bit for bit") {
  const auto f = fn([](double x) { return std::abs(std::cos(5.0 * x)) + 0.1; });
  const int saved = omp_get_max_threads();
  for (int n : {2, 16, 255}) {
    const MaxProductOperator op(OperatorContext(n, 0.0, 2.0), f);
    const auto grid = uniform_grid(0.0, 2.0, 4097);
    const auto serial = evaluate_curve_serial(op, grid);
    for (int threads : {1, 2, 4}) {
      omp_set_num_threads(threads);
      const auto parallel = evaluate_curve(op, grid);
      CHECK(parallel.values == serial.values);
      CHECK(parallel.peak_index == serial.peak_index);
    }
  }
  omp_set_num_threads(saved);
  CHECK(kind_of([&] {
          evaluate_curve(MaxProductOperator(OperatorContext(3, 0, 1), f), std::vector<double>{0.5, 1.5});
        }) == ErrorKind::DomainError);
}

TEST_CASE("thread cap from the environment") {
  ::setenv("BASKAFUZZ_THREADS", "3", 1);
  CHECK(thread_cap_from_env() == 3);
  ::setenv("BASKAFUZZ_THREADS", "zero", 1);
  CHECK_FALSE(thread_cap_from_env().has_value());
  ::unsetenv("BASKAFUZZ_THREADS");
  CHECK_FALSE(thread_cap_from_env().has_value());
}
