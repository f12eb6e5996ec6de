#ifndef GFLAT_RATIONAL_GF_HPP
#define GFLAT_RATIONAL_GF_HPP

#include <span>
#include <string>

#include "gflat/complex_poly.hpp"

namespace gflat {

/// Generating function G(z) = P(z) / Q(z) for a finite chain of length N.
struct RationalGF {
  ComplexPoly num;  // P
  ComplexPoly den;  // Q
  int chain_length = 0;
  std::string label;
};

/// Consecutive series coefficients b_start .. b_{start+len-1}.
struct SeriesWindow {
  std::vector<cplx> coeffs;
  int start = 0;
};

struct ReflectionCheck {
  bool symmetric = false;
  double max_deviation = 0.0;
};

/// Taylor coefficients b_0..b_{m_max} of P/Q around z = 0, computed by the
/// long-division recurrence b_m = (P_m - sum_{j>=1} Q_j b_{m-j}) / Q_0.
/// No root finding is involved. Throws SingularAtOrigin when Q(0) = 0.
SeriesWindow coefficients(const RationalGF& g, int m_max);

/// Rational form of sum_{m>=0} b_{m+h} z^m, i.e. the series with the first
/// h terms removed. `head` must hold b_0..b_{h-1}; the shifted numerator's
/// divisibility by z^h is verified and NotDivisible is thrown on mismatch.
RationalGF shift_tail(const RationalGF& g, int h, std::span<const cplx> head,
                      double tol = 1e-9);

/// G(e^{-lambda} z): coefficient m is damped by e^{-lambda m}, and every
/// zero or pole is rescaled by e^{lambda}.
RationalGF rescale(const RationalGF& g, cplx lambda);

/// Window of p(m) * b_m where p is a polynomial in the site index given by
/// `weight_coeffs` (coefficient k multiplies m^k). Equivalent to applying
/// p(z d/dz) to the series.
SeriesWindow apply_poly_weight(const RationalGF& g, std::span<const cplx> weight_coeffs,
                               int m_max);

/// Checks b_n = sign * b_{N+1-n} for n = 1..N, with N the chain length.
/// The deviation is reported relative to the largest window amplitude.
ReflectionCheck reflection_check(const RationalGF& g, int sign, double tol = 1e-9);

}  // namespace gflat

#endif
