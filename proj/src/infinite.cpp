#include "gflat/infinite.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "gflat/errors.hpp"

namespace gflat {

namespace {

/// Uniform trapezoid over the periodic domain, doubling until the relative
/// change drops below 1e-8 (spectrally accurate for smooth integrands).
double periodic_average_1d(const std::function<double(double)>& f, int quad_points) {
  auto average = [&](int k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += f(2.0 * std::numbers::pi * j / k);
    return acc / k;
  };
  if (quad_points > 0) return average(quad_points);
  double prev = average(256);
  for (int k = 512; k <= 65536; k *= 2) {
    const double value = average(k);
    if (std::abs(value - prev) <= 1e-8 * (1.0 + std::abs(value))) return value;
    prev = value;
  }
  return prev;
}

}  // namespace

void RegularizedGF::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie strictly inside (0, 1)");
}

double g_eps_1d(const RegularizedGF& g, double theta) {
  g.validate();
  const double r = g.rho;
  return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta - g.k_x) + r * r);
}

double dispersion_residual_1d(const RegularizedGF& g, double energy, int quad_points) {
  g.validate();
  const double t = g.hopping;
  return std::abs(periodic_average_1d(
      [&](double theta) { return (energy - 2.0 * t * std::cos(theta)) * g_eps_1d(g, theta); },
      quad_points));
}

double dispersion_residual_2d(const RegularizedGF& g, double energy, int quad_points) {
  g.validate();
  const double t = g.hopping;
  RegularizedGF gx = g;
  RegularizedGF gy = g;
  gy.k_x = g.k_y;  // reuse the 1D kernel along each axis

  auto inner = [&](double theta_x) {
    return periodic_average_1d(
        [&](double theta_y) {
          return (energy - 2.0 * t * std::cos(theta_x) - 2.0 * t * std::cos(theta_y)) *
                 g_eps_1d(gy, theta_y);
        },
        quad_points > 0 ? quad_points : 1024);
  };
  return std::abs(periodic_average_1d(
      [&](double theta_x) { return inner(theta_x) * g_eps_1d(gx, theta_x); }, quad_points));
}

}  // namespace gflat
