#include "spinxfer/trend.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "spinxfer/errors.hpp"

namespace spinxfer {

namespace {

// Both models are y = A exp(slope * u) with u = x or u = x².
struct LogLinear {
  double amplitude;
  double slope;
};

double feature(TrendModel model, double x) {
  return model == TrendModel::ExponentialInN ? x : x * x;
}

double rss(std::span<const double> u, std::span<const double> y, LogLinear p) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = y[i] - p.amplitude * std::exp(p.slope * u[i]);
    total += r * r;
  }
  return total;
}

LogLinear regress_log(std::span<const double> u, std::span<const double> y) {
  const double n = static_cast<double>(u.size());
  double mu = 0.0, my = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    my += std::log(y[i]);
  }
  mu /= n;
  my /= n;
  double suu = 0.0, suy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (std::log(y[i]) - my);
  }
  if (!(suu > 1e-300)) throw FitError("singular normal equations: abscissae are all equal");
  const double slope = suy / suu;
  return {std::exp(my - slope * mu), slope};
}

LogLinear refine(std::span<const double> u, std::span<const double> y, LogLinear p) {
  double current = rss(u, y, p);
  for (int iter = 0; iter < 100 && current > 0.0; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double e = std::exp(p.slope * u[i]);
      const Eigen::Vector2d grad(e, p.amplitude * u[i] * e);
      jtj += grad * grad.transpose();
      jtr += grad * (y[i] - p.amplitude * e);
    }
    Eigen::FullPivLU<Eigen::Matrix2d> lu(jtj);
    if (!lu.isInvertible()) break;
    const Eigen::Vector2d step = lu.solve(jtr);
    double damping = 1.0;
    bool improved = false;
    for (int halve = 0; halve < 30; ++halve, damping *= 0.5) {
      const LogLinear trial{p.amplitude + damping * step(0), p.slope + damping * step(1)};
      const double r = rss(u, y, trial);
      if (r < current) {
        const double gain = current - r;
        p = trial;
        current = r;
        improved = gain > 1e-15 * (1.0 + current);
        break;
      }
    }
    if (!improved) break;
  }
  return p;
}

} // namespace

std::string_view to_string(TrendModel model) noexcept {
  return model == TrendModel::ExponentialInN ? "exponential_in_n" : "gaussian_in_parameter";
}

double TrendFit::evaluate(double x) const noexcept {
  if (model == TrendModel::ExponentialInN) return amplitude * std::exp(-scale * x);
  const double z = x / scale;
  return amplitude * std::exp(-z * z);
}

TrendFit fit_trend(std::span<const std::pair<double, double>> points, TrendModel model) {
  if (points.size() < 3) throw FitError("trend fit needs at least 3 points");
  std::vector<double> u, y;
  u.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [x, value] : points) {
    if (!std::isfinite(x) || !(value > 0.0) || value > 1.0) {
      throw FitError("trend fit needs finite x and y in (0, 1]");
    }
    u.push_back(feature(model, x));
    y.push_back(value);
  }
  const LogLinear p = refine(u, y, regress_log(u, y));

  TrendFit fit;
  fit.model = model;
  fit.amplitude = p.amplitude;
  fit.points = points.size();
  fit.residual_sum_squares = rss(u, y, p);
  if (model == TrendModel::ExponentialInN) {
    fit.scale = -p.slope;
  } else {
    if (!(p.slope < 0.0)) throw FitError("Gaussian fit found no decay (non-negative curvature)");
    fit.scale = 1.0 / std::sqrt(-p.slope);
  }
  if (!std::isfinite(fit.scale) || !std::isfinite(fit.amplitude)) {
    throw FitError("trend fit produced non-finite parameters");
  }
  return fit;
}

} // namespace spinxfer
