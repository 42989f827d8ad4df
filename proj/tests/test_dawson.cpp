#include "olo/dawson.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using olo::dawson;

namespace {

// Independent oracle: integrate the defining ODE D'(x) = 1 - 2 x D(x),
// D(0) = 0, with classical RK4 in long double. Step 1e-4 keeps the global
// error well below 1e-15 relative on [0, 8].
std::vector<long double> dawson_ode_checkpoints(long double x_max,
                                                long double checkpoint_step,
                                                long double h) {
  std::vector<long double> out;
  auto f = [](long double x, long double y) { return 1.0L - 2.0L * x * y; };
  long double x = 0.0L, y = 0.0L;
  long double next_cp = 0.0L;
  while (true) {
    if (x >= next_cp - 1e-9L) {
      out.push_back(y);
      next_cp += checkpoint_step;
      if (next_cp > x_max + checkpoint_step / 2) break;
    }
    const long double k1 = f(x, y);
    const long double k2 = f(x + h / 2, y + h / 2 * k1);
    const long double k3 = f(x + h / 2, y + h / 2 * k2);
    const long double k4 = f(x + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    x += h;
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("dawson");

TEST_CASE("matches ODE oracle on [0, 8] across all three regimes") {
  const long double step = 0.25L;
  auto oracle = dawson_ode_checkpoints(8.0L, step, 1e-4L);
  REQUIRE(oracle.size() == 33);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const double x = 0.25 * static_cast<double>(i);
    const double expected = static_cast<double>(oracle[i]);
    INFO("x = ", x);
    CHECK(dawson(x) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("known value at x = 1") {
  CHECK(dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-12));
}

TEST_CASE("odd function, zero at zero") {
  CHECK(dawson(0.0) == 0.0);
  for (double x : {0.3, 0.9, 2.7, 11.0}) {
    CHECK(dawson(-x) == doctest::Approx(-dawson(x)).epsilon(1e-15));
  }
}

TEST_CASE("asymptotic tail behaves like 1/(2x)") {
  for (double x : {10.0, 50.0, 500.0, 1e6}) {
    // next term of the asymptotic series is 1/(2x^2) relative
    CHECK(std::abs(2.0 * x * dawson(x) - 1.0) <= 1.1 / (2.0 * x * x));
  }
  CHECK(dawson(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("satisfies its ODE under numerical differentiation") {
  // fourth-order central difference of D vs 1 - 2 x D(x); probes straddle
  // both regime boundaries (0.5 and 7).
  const double h = 1e-3;
  for (double x : {0.2, 0.49, 0.51, 1.5, 3.0, 6.9, 7.1, 9.0}) {
    const double num = (dawson(x - 2 * h) - 8 * dawson(x - h) +
                        8 * dawson(x + h) - dawson(x + 2 * h)) /
                       (12 * h);
    const double analytic = 1.0 - 2.0 * x * dawson(x);
    CHECK(num == doctest::Approx(analytic).epsilon(1e-9));
  }
}

TEST_SUITE_END();
