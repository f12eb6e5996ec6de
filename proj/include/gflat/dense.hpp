#ifndef GFLAT_DENSE_HPP
#define GFLAT_DENSE_HPP

#include <span>
#include <vector>

#include "gflat/complex_poly.hpp"

namespace gflat {

/// Minimal dense complex matrix, row major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, cplx{}) {}

  int dim() const { return n_; }
  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  std::vector<cplx> apply(std::span<const cplx> x) const;

  /// Largest row sum of absolute values (Gershgorin disk bound).
  double max_row_sum() const;

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

/// Determinant as mantissa * 2^exponent to avoid overflow for large chains.
struct ScaledDet {
  cplx mantissa;
  long exponent = 0;

  cplx value() const;
  double log2_abs() const;
};

/// Determinant by row elimination with partial pivoting; the product of
/// pivots is accumulated with explicit binary-exponent tracking.
ScaledDet determinant_scaled(DenseMatrix m);

/// Solves m x = rhs by LU with partial pivoting.
std::vector<cplx> solve_linear(DenseMatrix m, std::vector<cplx> rhs);

}  // namespace gflat

#endif
