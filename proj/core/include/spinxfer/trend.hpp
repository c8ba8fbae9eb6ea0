#pragma once

#include <span>
#include <string_view>
#include <utility>

namespace spinxfer {

enum class TrendModel {
  ExponentialInN,      // y = A exp(-rate * x)
  GaussianInParameter, // y = A exp(-(x / width)^2)
};

std::string_view to_string(TrendModel model) noexcept;

struct TrendFit {
  TrendModel model = TrendModel::ExponentialInN;
  double amplitude = 0.0;
  /// Decay rate for ExponentialInN, width for GaussianInParameter.
  double scale = 0.0;
  /// Sum of squared residuals in y.
  double residual_sum_squares = 0.0;
  std::size_t points = 0;

  double evaluate(double x) const noexcept;
};

/// Least-squares fit of the model to (x, y) points. Starts from the linear
/// regression of log y and refines with Gauss-Newton in y.
///
/// Needs at least 3 points with y in (0, 1]. Throws FitError when the
/// normal equations are singular (e.g. every x equal), or when a Gaussian
/// fit finds no decay.
TrendFit fit_trend(std::span<const std::pair<double, double>> points, TrendModel model);

} // namespace spinxfer
