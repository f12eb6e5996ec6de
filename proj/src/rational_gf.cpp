#include "gflat/rational_gf.hpp"

#include <algorithm>
#include <cmath>

#include "gflat/errors.hpp"

namespace gflat {

SeriesWindow coefficients(const RationalGF& g, int m_max) {
  const cplx q0 = g.den.coeff(0);
  if (std::abs(q0) <= 1e-14 * g.den.coeff_scale() || g.den.is_zero())
    throw SingularAtOrigin("Q(0) = 0: series expansion around the origin does not exist");

  SeriesWindow w;
  w.coeffs.resize(static_cast<std::size_t>(m_max) + 1);
  const int dq = g.den.degree();
  for (int m = 0; m <= m_max; ++m) {
    cplx acc = g.num.coeff(m);
    for (int j = 1; j <= std::min(m, dq); ++j) acc -= g.den.coeff(j) * w.coeffs[static_cast<std::size_t>(m - j)];
    w.coeffs[static_cast<std::size_t>(m)] = acc / q0;
  }
  return w;
}

RationalGF shift_tail(const RationalGF& g, int h, std::span<const cplx> head, double tol) {
  if (h <= 0) throw ConfigError("shift_tail requires h > 0");
  if (static_cast<int>(head.size()) != h)
    throw ConfigError("shift_tail head must hold exactly h values");

  std::vector<cplx> head_coeffs(head.begin(), head.end());
  const ComplexPoly head_poly{std::move(head_coeffs)};
  ComplexPoly shifted_num = g.num - head_poly * g.den;

  const double scale = std::max(g.num.coeff_scale(),
                                head_poly.coeff_scale() * g.den.coeff_scale());
  for (int m = 0; m < h; ++m) {
    if (std::abs(shifted_num.coeff(m)) > tol * std::max(scale, 1e-300))
      throw NotDivisible("head values are inconsistent with the series: remainder not divisible by z^h");
  }

  std::vector<cplx> lowered;
  for (int m = h; m <= shifted_num.degree(); ++m) lowered.push_back(shifted_num.coeff(m));
  RationalGF out;
  out.num = ComplexPoly{std::move(lowered)};
  out.den = g.den;
  out.chain_length = std::max(g.chain_length - h, 0);
  out.label = g.label;
  return out;
}

RationalGF rescale(const RationalGF& g, cplx lambda) {
  const cplx factor = std::exp(-lambda);
  auto rescale_poly = [&](const ComplexPoly& p) {
    std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
    cplx power = 1.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      c[m] *= power;
      power *= factor;
    }
    return ComplexPoly{std::move(c)};
  };
  RationalGF out;
  out.num = rescale_poly(g.num);
  out.den = rescale_poly(g.den);
  out.chain_length = g.chain_length;
  out.label = g.label;
  return out;
}

SeriesWindow apply_poly_weight(const RationalGF& g, std::span<const cplx> weight_coeffs,
                               int m_max) {
  SeriesWindow w = coefficients(g, m_max);
  for (int m = 0; m <= m_max; ++m) {
    cplx weight{};
    for (auto it = weight_coeffs.rbegin(); it != weight_coeffs.rend(); ++it)
      weight = weight * static_cast<double>(m) + *it;
    w.coeffs[static_cast<std::size_t>(m)] *= weight;
  }
  return w;
}

ReflectionCheck reflection_check(const RationalGF& g, int sign, double tol) {
  const int n = g.chain_length;
  if (n < 1) throw ConfigError("reflection_check requires a finite window length");
  const SeriesWindow w = coefficients(g, n);

  double amp = 0.0;
  for (int m = 1; m <= n; ++m) amp = std::max(amp, std::abs(w.coeffs[static_cast<std::size_t>(m)]));
  if (amp == 0.0) return {true, 0.0};

  double dev = 0.0;
  for (int m = 1; m <= n; ++m) {
    const cplx lhs = w.coeffs[static_cast<std::size_t>(m)];
    const cplx rhs = static_cast<double>(sign) * w.coeffs[static_cast<std::size_t>(n + 1 - m)];
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  dev /= amp;
  return {dev <= tol, dev};
}

}  // namespace gflat
