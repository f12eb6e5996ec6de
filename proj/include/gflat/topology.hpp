#ifndef GFLAT_TOPOLOGY_HPP
#define GFLAT_TOPOLOGY_HPP

#include "gflat/model.hpp"

namespace gflat {

struct WindingReport {
  int value = 0;
  double contour_radius = 0.0;
  int quadrature_points = 0;
  cplx raw_integral;
  double agreement_gap = 0.0;  // |raw - nearest integer|
};

/// Skin-effect winding W(E) = -(1/2 pi i) oint d log(Q(z)/z) over |z| = radius.
/// Computed by trapezoidal quadrature of the logarithmic derivative and
/// independently by counting kernel zeros inside the contour; the two must
/// agree. +1 indicates a leftward skin effect, -1 a rightward one.
WindingReport winding_w(const ModelSpec& model, cplx energy, double radius = 1.0);

/// SSH sublattice winding nu_A = (1/2 pi i) oint d log G_A(z)|_{E=0} over
/// the critical circle |z| = r_c; 1 in the topological phase, 0 otherwise.
WindingReport winding_nu_a(const ModelSpec& model);

/// Radius of the circle hosting the open-boundary propagating factors:
/// sqrt|tl/tr| for HN, sqrt|tl tlp / (tr trp)| for SSH.
double gbz_radius(const ModelSpec& model);

}  // namespace gflat

#endif
