#include "fujita/error.hpp"
#include "fujita/numerics.hpp"
#include "fujita/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fujita;

TEST_CASE("adaptive Simpson") {
  CHECK(adaptive_simpson([](double t) { return t * t; }, 0.0, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double t) { return std::exp(-t); }, 0.0, 10.0) ==
        doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-10));
  CHECK(adaptive_simpson([](double t) { return std::pow(1.0 + t, -2.0); }, 0.0, 1000.0) ==
        doctest::Approx(1.0 - 1.0 / 1001.0).epsilon(1e-9));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("log-log fit recovers exact power laws") {
  std::vector<double> x{1, 2, 4, 8, 16}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  const LogLogFit f = fit_log_log(x, y);
  CHECK(f.slope == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.max_residual < 1e-12);
  std::vector<double> bad{1, -2, 3, 4, 5};
  CHECK_THROWS_AS(fit_log_log(x, bad), PreconditionError);
}

TEST_CASE("trend classification") {
  const std::vector<double> ladder{8, 16, 32, 64};
  CHECK(classify_trend(ladder, std::vector<double>{1.0, 0.5, 0.25, 0.125}).verdict == Verdict::met);
  CHECK(classify_trend(ladder, std::vector<double>{1.0, 1.1, 1.2, 1.3}).verdict == Verdict::met);
  const TrendVerdict grow = classify_trend(ladder, std::vector<double>{1, 2, 4, 8});
  CHECK(grow.verdict == Verdict::not_met);
  CHECK(grow.slope == doctest::Approx(1.0));
  CHECK(classify_trend(ladder, std::vector<double>{0, 0, 0, 0}).verdict == Verdict::met);
  CHECK(to_string(Verdict::not_met) == "not-met");
}

TEST_CASE("time profiles") {
  const TimeProfile c = TimeProfile::constant(4.0);
  CHECK(c(17.0) == 4.0);
  CHECK(c.inverse_power_integral(1.0, 3.0, 0.5) == doctest::Approx(1.0));

  const TimeProfile p = TimeProfile::power(2.0);
  CHECK(p(1.0) == 4.0);
  // int_0^T (1+t)^(-2) dt = 1 - 1/(1+T)
  CHECK(p.inverse_power_integral(0.0, 9.0, 1.0) == doctest::Approx(0.9).epsilon(1e-9));

  const TimeProfile e = TimeProfile::exponential(-1.0);
  CHECK(e.inverse_power_integral(0.0, 2.0, 1.0) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-9));

  const TimeProfile t = TimeProfile::table({0.0, 1.0, 3.0}, {1.0, 4.0, 9.0});
  CHECK(t(0.5) == 1.0);
  CHECK(t(1.0) == 4.0);
  CHECK(t(100.0) == 9.0);
  CHECK(t.inverse_power_integral(0.5, 4.0, 0.5) ==
        doctest::Approx(0.5 * 1.0 + 2.0 * 0.5 + 1.0 / 3.0));
  CHECK_THROWS_AS(TimeProfile::table({1.0}, {1.0}), PreconditionError);
  CHECK_THROWS_AS(TimeProfile::table({0.0, 0.0}, {1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(TimeProfile::constant(0.0), PreconditionError);
}

TEST_CASE("vertex profiles") {
  Field d(3);
  d << 0.0, 1.0, 3.0;
  const Field g = VertexProfile::distance_power(2.0).evaluate(d);
  CHECK(g[2] == 16.0);
  CHECK(VertexProfile::constant(2.0).evaluate(d)[1] == 2.0);
  CHECK_THROWS_AS(VertexProfile::table(Field::Ones(2)).evaluate(d), PreconditionError);
  CHECK_THROWS_AS(VertexProfile::table(Field::Zero(2)), PreconditionError);
  CHECK(VertexProfile::table(Field::Ones(2)) == VertexProfile::table(Field::Ones(2)));
  CHECK_FALSE(VertexProfile::table(Field::Ones(2)) == VertexProfile::table(Field::Ones(3)));
}
