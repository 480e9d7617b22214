#pragma once

#include <functional>
#include <span>
#include <string>

namespace fujita {

/// Adaptive Simpson quadrature of `f` on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-9, int max_depth = 50);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;  ///< max |log y - fit| over the points
};

/// Least-squares line through (log x, log y). All values must be positive.
LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y);

enum class Verdict { met, not_met, inconclusive };

std::string to_string(Verdict v);

struct TrendVerdict {
  Verdict verdict = Verdict::inconclusive;
  double ratio = 0.0;  ///< max over the top half / max over the bottom half
  double slope = 0.0;  ///< log-log slope of the sequence
};

/// Boundedness of a positive sequence sampled on an increasing ladder:
/// bounded (met) when the max over the top half of the ladder is at most
/// 1.5 times the max over the bottom half; otherwise not_met when the
/// log-log slope exceeds 0.1, else inconclusive.
TrendVerdict classify_trend(std::span<const double> ladder, std::span<const double> values);

inline constexpr double kTrendRatio = 1.5;
inline constexpr double kGrowthSlope = 0.1;

}  // namespace fujita
