#ifndef GFLAT_ROOT_FINDER_HPP
#define GFLAT_ROOT_FINDER_HPP

#include <cstdint>
#include <vector>

#include "gflat/complex_poly.hpp"

namespace gflat {

/// All complex roots of a polynomial, with multiplicity annotations.
struct RootSet {
  struct Root {
    cplx value;
    int multiplicity = 1;
  };
  std::vector<Root> roots;  // multiplicities sum to the polynomial degree
  double residual = 0.0;    // max |p(root)| / (coeff_scale * max(1,|root|)^degree)
  double tol = 0.0;

  /// Roots expanded with multiplicity, in stored order.
  std::vector<cplx> flat() const;
};

struct RootFinderOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  int max_restarts = 3;
  std::uint64_t seed = 0x5eed;
  // When positive, a pass that stalls with every relative step below this
  // bound is accepted instead of restarting. Meant for inputs whose
  // coefficients carry noise (interpolated polynomials) where the caller
  // refines the results independently afterwards.
  double stall_accept = 0.0;
};

/// Finds all roots by simultaneous Aberth-Ehrlich iteration started from a
/// jittered circle at the Fujiwara coefficient bound, followed by a Newton
/// polish of each root. Roots closer than 10*sqrt(tol) in relative distance
/// are clustered and reported with multiplicity.
RootSet find_roots(const ComplexPoly& p, const RootFinderOptions& options = {});

/// Convenience overload pinning only the residual tolerance.
RootSet find_roots(const ComplexPoly& p, double tol);

/// Roots of a degree <= 2 polynomial by closed form (numerically stable
/// quadratic formula). Used by kernel evaluations on hot paths.
std::vector<cplx> quadratic_roots(cplx c2, cplx c1, cplx c0);

}  // namespace gflat

#endif
