#ifndef GFLAT_INFINITE_HPP
#define GFLAT_INFINITE_HPP

namespace gflat {

/// Regularised generating function on an infinite Hermitian lattice:
/// amplitudes are damped by e^{-eps |m|} with rho = e^{-eps} in (0, 1).
struct RegularizedGF {
  double rho = 0.9;
  double k_x = 0.0;    // momentum (the only momentum in 1D)
  double k_y = 0.0;    // second momentum component, 2D only
  double hopping = 1.0;

  void validate() const;  // throws ConfigError unless 0 < rho < 1
};

/// Poisson-kernel value (1 - rho^2) / (1 - 2 rho cos(theta - k) + rho^2).
double g_eps_1d(const RegularizedGF& g, double theta);

/// |(1/2 pi) oint (E - 2 t cos(theta)) G_eps(theta) dtheta|; tends to
/// |E - 2 t cos k| as rho -> 1. quad_points <= 0 selects adaptive doubling.
double dispersion_residual_1d(const RegularizedGF& g, double energy, int quad_points = 0);

/// Two-dimensional analogue with the product kernel and
/// E - 2 t cos(theta_x) - 2 t cos(theta_y).
double dispersion_residual_2d(const RegularizedGF& g, double energy, int quad_points = 0);

}  // namespace gflat

#endif
