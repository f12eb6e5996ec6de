#include "gflat/complex_poly.hpp"

#include <algorithm>
#include <cmath>

#include "gflat/errors.hpp"

namespace gflat {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) - 1 > max_degree)
    throw DegreeOverflow("polynomial degree exceeds the configured maximum");
  strip_trailing_zeros();
}

ComplexPoly ComplexPoly::constant(cplx value) {
  return ComplexPoly(std::vector<cplx>{value});
}

ComplexPoly ComplexPoly::monomial(int power, cplx coeff) {
  std::vector<cplx> c(static_cast<std::size_t>(power) + 1, cplx{});
  c.back() = coeff;
  return ComplexPoly(std::move(c));
}

void ComplexPoly::strip_trailing_zeros() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx ComplexPoly::coeff(int m) const {
  if (m < 0 || m >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(m)];
}

double ComplexPoly::coeff_scale() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> ComplexPoly::eval_with_derivative(cplx z) const {
  cplx p{}, dp{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t m = 1; m < coeffs_.size(); ++m)
    d[m - 1] = coeffs_[m] * static_cast<double>(m);
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::deflated(cplx root) const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> q(coeffs_.size() - 1);
  cplx carry = coeffs_.back();
  for (std::size_t m = coeffs_.size() - 1; m-- > 0;) {
    q[m] = carry;
    carry = coeffs_[m] + carry * root;
  }
  return ComplexPoly(std::move(q));
}

ComplexPoly ComplexPoly::trimmed(double tol) const {
  const double cut = tol * coeff_scale();
  std::vector<cplx> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::reversed(int deg) const {
  std::vector<cplx> c(static_cast<std::size_t>(deg) + 1, cplx{});
  for (int m = 0; m <= deg; ++m) c[static_cast<std::size_t>(deg - m)] = coeff(m);
  return ComplexPoly(std::move(c));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), cplx{});
  for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] += other.coeffs_[m];
  strip_trailing_zeros();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), cplx{});
  for (std::size_t m = 0; m < other.coeffs_.size(); ++m) coeffs_[m] -= other.coeffs_[m];
  strip_trailing_zeros();
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx scalar) {
  for (cplx& c : coeffs_) c *= scalar;
  strip_trailing_zeros();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.degree() + b.degree() > ComplexPoly::max_degree)
    throw DegreeOverflow("product degree exceeds the configured maximum");
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPoly(std::move(c));
}

}  // namespace gflat
