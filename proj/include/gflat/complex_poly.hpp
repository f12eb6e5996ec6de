#ifndef GFLAT_COMPLEX_POLY_HPP
#define GFLAT_COMPLEX_POLY_HPP

#include <complex>
#include <span>
#include <vector>

namespace gflat {

using cplx = std::complex<double>;

/// Dense univariate polynomial with complex coefficients.
///
/// Coefficient m is the coefficient of z^m. The zero polynomial is stored
/// with an empty coefficient list and reports degree -1; otherwise the
/// trailing stored coefficient is nonzero.
class ComplexPoly {
 public:
  static constexpr int max_degree = 100000;

  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);

  static ComplexPoly constant(cplx value);
  static ComplexPoly monomial(int power, cplx coeff = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of z^m; zero outside the stored range.
  cplx coeff(int m) const;
  std::span<const cplx> coeffs() const { return coeffs_; }

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double coeff_scale() const;

  /// Horner evaluation.
  cplx operator()(cplx z) const;

  /// Evaluates the polynomial and its derivative in one Horner pass.
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const;

  ComplexPoly derivative() const;

  /// Synthetic division by (z - root); the remainder is discarded, so the
  /// caller is responsible for |p(root)| being negligible.
  ComplexPoly deflated(cplx root) const;

  /// Copy with trailing coefficients below tol * coeff_scale() removed.
  ComplexPoly trimmed(double tol) const;

  /// Coefficients reversed relative to the formal degree `deg`
  /// (coefficient m becomes coefficient deg - m).
  ComplexPoly reversed(int deg) const;

  ComplexPoly& operator+=(const ComplexPoly& other);
  ComplexPoly& operator-=(const ComplexPoly& other);
  ComplexPoly& operator*=(cplx scalar);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, cplx s) { return a *= s; }
  friend ComplexPoly operator*(cplx s, ComplexPoly a) { return a *= s; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);

 private:
  void strip_trailing_zeros();

  std::vector<cplx> coeffs_;
};

}  // namespace gflat

#endif
