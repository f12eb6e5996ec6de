#include "gflat/topology.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "gflat/errors.hpp"
#include "gflat/root_finder.hpp"

namespace gflat {

namespace {

/// Trapezoidal contour quadrature of a log-derivative style integrand over
/// |z| = radius, doubling the point count until stable. Returns the value of
/// (1/2 pi i) oint f(z) dz.
cplx contour_average(const std::function<cplx(cplx)>& f, double radius, int* points_used) {
  cplx prev{};
  for (int k = 256; k <= (1 << 20); k *= 2) {
    cplx acc{};
    for (int j = 0; j < k; ++j) {
      const cplx z = std::polar(radius, 2.0 * std::numbers::pi * j / k);
      acc += f(z) * z;  // dz = i z dtheta; the 1/(2 pi i) absorbs i and 2 pi
    }
    const cplx value = acc / static_cast<double>(k);
    if (k > 256 && std::abs(value - prev) < 1e-10 * (1.0 + std::abs(value))) {
      *points_used = k;
      return value;
    }
    prev = value;
  }
  throw QuadratureUnstable("contour quadrature did not stabilise");
}

void guard_contour(const std::vector<cplx>& points, double radius, const char* what) {
  for (const cplx& p : points)
    if (std::abs(std::abs(p) - radius) < 1e-8 * radius)
      throw ContourHitsZero(std::string(what) + " lies on the integration contour");
}

int nearest_int(double x) { return static_cast<int>(std::lround(x)); }

}  // namespace

double gbz_radius(const ModelSpec& model) {
  if (model.tl == cplx{} || model.tr == cplx{}) throw ConfigError("hoppings must be nonzero");
  if (model.kind == ModelKind::hatano_nelson) return std::sqrt(std::abs(model.tl / model.tr));
  if (model.tlp == cplx{} || model.trp == cplx{}) throw ConfigError("hoppings must be nonzero");
  return std::sqrt(std::abs(model.tl * model.tlp / (model.tr * model.trp)));
}

WindingReport winding_w(const ModelSpec& model, cplx energy, double radius) {
  const ComplexPoly kernel = kernel_q(model, energy);
  const ComplexPoly dkernel = kernel.derivative();
  const std::vector<cplx> zeros =
      quadratic_roots(kernel.coeff(2), kernel.coeff(1), kernel.coeff(0));
  guard_contour(zeros, radius, "a kernel zero");

  WindingReport report;
  report.contour_radius = radius;
  // d log(Q/z) = Q'/Q - 1/z, integrated without branch tracking.
  report.raw_integral = -contour_average(
      [&](cplx z) { return dkernel(z) / kernel(z) - 1.0 / z; }, radius, &report.quadrature_points);
  report.value = nearest_int(report.raw_integral.real());
  report.agreement_gap = std::abs(report.raw_integral - cplx{static_cast<double>(report.value)});
  if (report.agreement_gap > 1e-6)
    throw QuadratureUnstable("winding integral is not close to an integer");

  int inside = 0;
  for (const cplx& z : zeros)
    if (std::abs(z) < radius) ++inside;
  const int by_count = -(inside - 1);
  if (by_count != report.value)
    throw QuadratureUnstable("quadrature winding disagrees with the argument-principle count");
  return report;
}

WindingReport winding_nu_a(const ModelSpec& model) {
  if (model.kind != ModelKind::ssh)
    throw UnsupportedCombination("the sublattice winding is defined for the SSH model");
  model.validate();

  const double rc = gbz_radius(model);
  // At E = 0 the psi_{B,N} term of the A-sublattice numerator drops (it
  // carries a factor E), leaving P_A = tlp z (trp z + tl) up to the psi_{A,1}
  // scale, over Q = (tr z + tlp)(trp z + tl).
  const BoundaryAmplitudes amps{1.0, 0.0, 0.0};
  const ComplexPoly pa = numerator_p(model, cplx{}, amps).front();
  const ComplexPoly q = kernel_q(model, cplx{});
  const ComplexPoly dpa = pa.derivative(), dq = q.derivative();

  const cplx numerator_zero = -model.tl / model.trp;
  const cplx pole_a = -model.tlp / model.tr;
  guard_contour({cplx{}, numerator_zero, pole_a}, rc, "a zero or pole of G_A");

  WindingReport report;
  report.contour_radius = rc;
  report.raw_integral = contour_average(
      [&](cplx z) { return dpa(z) / pa(z) - dq(z) / q(z); }, rc, &report.quadrature_points);
  report.value = nearest_int(report.raw_integral.real());
  report.agreement_gap = std::abs(report.raw_integral - cplx{static_cast<double>(report.value)});
  if (report.agreement_gap > 1e-6)
    throw QuadratureUnstable("sublattice winding integral is not close to an integer");

  // Independent count: zeros {0, -tl/trp} minus poles {-tlp/tr, -tl/trp};
  // the -tl/trp pair cancels, leaving 1 - [pole_a inside].
  const int by_count = 1 - (std::abs(pole_a) < rc ? 1 : 0);
  if (by_count != report.value)
    throw QuadratureUnstable("quadrature winding disagrees with the zero/pole count");
  return report;
}

}  // namespace gflat
