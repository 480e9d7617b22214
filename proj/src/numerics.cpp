#include "fujita/numerics.hpp"

#include "fujita/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fujita {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (b == a) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, tol, max_depth);
  // A few fixed panels first so narrow features are not missed by the
  // initial coarse estimate.
  constexpr int panels = 8;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h, hi = (k + 1 == panels) ? b : lo + h;
    const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / panels, max_depth);
  }
  return total;
}

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit needs equally many x and y values");
  if (x.size() < 2) throw PreconditionError("fit needs at least two points");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw PreconditionError("log-log fit needs positive data");
    design(k, 0) = 1.0;
    design(k, 1) = std::log(x[k]);
    rhs[k] = std::log(y[k]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  LogLogFit fit;
  fit.intercept = coef[0];
  fit.slope = coef[1];
  fit.max_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  return fit;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::met: return "met";
    case Verdict::not_met: return "not-met";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

TrendVerdict classify_trend(std::span<const double> ladder, std::span<const double> values) {
  if (ladder.size() != values.size()) throw PreconditionError("ladder and values differ in length");
  if (values.size() < 2) throw PreconditionError("trend needs at least two ladder points");
  const std::size_t half = values.size() / 2;
  const double bottom = *std::max_element(values.begin(), values.begin() + half);
  const double top = *std::max_element(values.begin() + half, values.end());

  TrendVerdict out;
  if (top <= 0.0) {
    out.ratio = 0.0;
  } else if (bottom <= 0.0) {
    out.ratio = std::numeric_limits<double>::infinity();
  } else {
    out.ratio = top / bottom;
  }

  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] > 0.0 && ladder[k] > 0.0) {
      xs.push_back(ladder[k]);
      ys.push_back(values[k]);
    }
  }
  if (xs.size() >= 2) out.slope = fit_log_log(xs, ys).slope;

  if (out.ratio <= kTrendRatio) {
    out.verdict = Verdict::met;
  } else if (out.slope > kGrowthSlope || (bottom <= 0.0 && top > 0.0)) {
    out.verdict = Verdict::not_met;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

}  // namespace fujita
