#ifndef GFLAT_ORACLE_HPP
#define GFLAT_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "gflat/complex_poly.hpp"
#include "gflat/model.hpp"

namespace gflat {

/// Ground-truth spectrum obtained without the generating-function path:
/// the characteristic polynomial is interpolated from determinant samples
/// and its roots are polished directly on det(H - E).
struct OracleSpectrum {
  std::vector<cplx> eigenvalues;
  ComplexPoly charpoly;  // in the scaled variable w = E / sample_radius
  double sample_radius = 0.0;
  std::vector<std::pair<cplx, cplx>> det_samples;  // (E, det / det_scale)
  double det_scale_log2 = 0.0;                     // log2 of the normalisation

  double diameter() const;
};

struct OracleOptions {
  int max_dimension = 400;
  double certify_tol = 1e-8;
  std::uint64_t seed = 0x5eed;
};

/// det(H - E I) by row elimination with partial pivoting.
cplx det_at(const ModelSpec& model, cplx energy);

OracleSpectrum oracle_spectrum(const ModelSpec& model, const OracleOptions& options = {});

/// Eigenvector by inverse iteration on (H - (E + eps) I), max-amplitude
/// normalised. E must be close to a true eigenvalue.
std::vector<cplx> oracle_eigenvector(const ModelSpec& model, cplx energy,
                                     const OracleOptions& options = {});

}  // namespace gflat

#endif
