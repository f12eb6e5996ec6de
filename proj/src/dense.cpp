#include "gflat/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "gflat/errors.hpp"

namespace gflat {

std::vector<cplx> DenseMatrix::apply(std::span<const cplx> x) const {
  std::vector<cplx> y(static_cast<std::size_t>(n_), cplx{});
  for (int i = 0; i < n_; ++i) {
    cplx acc{};
    for (int j = 0; j < n_; ++j) acc += at(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

double DenseMatrix::max_row_sum() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += std::abs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

cplx ScaledDet::value() const { return std::ldexp(1.0, static_cast<int>(exponent)) * mantissa; }

double ScaledDet::log2_abs() const {
  const double a = std::abs(mantissa);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(a) + static_cast<double>(exponent);
}

ScaledDet determinant_scaled(DenseMatrix m) {
  const int n = m.dim();
  ScaledDet det{cplx{1.0, 0.0}, 0};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(m.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(m.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return {cplx{}, 0};
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det.mantissa = -det.mantissa;
    }
    const cplx p = m.at(col, col);
    det.mantissa *= p;
    // Renormalise the running product into [1/2, 2) mantissa range.
    int e = 0;
    const double a = std::abs(det.mantissa);
    if (a != 0.0) {
      std::frexp(a, &e);
      det.mantissa = std::ldexp(1.0, -e) * det.mantissa;
      det.exponent += e;
    }
    for (int r = col + 1; r < n; ++r) {
      const cplx factor = m.at(r, col) / p;
      if (factor == cplx{}) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= factor * m.at(col, j);
    }
  }
  return det;
}

std::vector<cplx> solve_linear(DenseMatrix m, std::vector<cplx> rhs) {
  const int n = m.dim();
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs dimension mismatch");
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(m.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(m.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) throw NumericalError("singular matrix in linear solve");
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
    }
    const cplx p = m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const cplx factor = m.at(r, col) / p;
      if (factor == cplx{}) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= factor * m.at(col, j);
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(col)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = rhs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) acc -= m.at(i, j) * rhs[static_cast<std::size_t>(j)];
    rhs[static_cast<std::size_t>(i)] = acc / m.at(i, i);
  }
  return rhs;
}

}  // namespace gflat
