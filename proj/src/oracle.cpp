#include "gflat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gflat/errors.hpp"
#include "gflat/root_finder.hpp"

namespace gflat {

namespace {

ScaledDet det_scaled_at(const ModelSpec& model, cplx energy) {
  DenseMatrix m = dense_matrix(model);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) -= energy;
  return determinant_scaled(std::move(m));
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// det(H - E) divided by prod_j (E - r_j), kept as mantissa * 2^exponent.
ScaledDet deflated_det(const ModelSpec& model, cplx energy, std::span<const cplx> deflate) {
  ScaledDet f = det_scaled_at(model, energy);
  for (const cplx& r : deflate) {
    const cplx d = energy - r;
    if (d == cplx{}) return {cplx{}, 0};
    f.mantissa /= d;
    int e = 0;
    const double a = std::abs(f.mantissa);
    if (a != 0.0) {
      std::frexp(a, &e);
      f.mantissa = std::ldexp(1.0, -e) * f.mantissa;
      f.exponent += e;
    }
  }
  return f;
}

/// Newton iteration on the (optionally deflated) determinant with a
/// fourth-order central finite-difference derivative. Returns the refined
/// root and the size of the last Newton step, which certifies convergence
/// independently of the global determinant scale.
std::pair<cplx, double> det_newton(const ModelSpec& model, cplx seed,
                                   std::span<const cplx> deflate, double radius,
                                   int iterations) {
  cplx e = seed;
  double last_step = std::numeric_limits<double>::infinity();
  const double h = 1e-7 * radius;
  for (int it = 0; it < iterations; ++it) {
    const ScaledDet f0 = deflated_det(model, e, deflate);
    if (f0.mantissa == cplx{}) return {e, 0.0};
    const ScaledDet fp1 = deflated_det(model, e + h, deflate);
    const ScaledDet fm1 = deflated_det(model, e - h, deflate);
    const ScaledDet fp2 = deflated_det(model, e + 2 * h, deflate);
    const ScaledDet fm2 = deflated_det(model, e - 2 * h, deflate);
    auto rel = [&](const ScaledDet& sd) {
      return sd.mantissa * std::exp2(static_cast<double>(sd.exponent - f0.exponent));
    };
    const cplx deriv = (-rel(fp2) + 8.0 * rel(fp1) - 8.0 * rel(fm1) + rel(fm2)) / (12.0 * h);
    if (deriv == cplx{}) break;
    const cplx step = f0.mantissa / deriv;
    if (std::abs(step) > 0.1 * radius) break;
    e -= step;
    last_step = std::abs(step);
    if (last_step < 1e-15 * radius) break;
  }
  return {e, last_step};
}

}  // namespace

double OracleSpectrum::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      d = std::max(d, std::abs(eigenvalues[i] - eigenvalues[j]));
  return d;
}

cplx det_at(const ModelSpec& model, cplx energy) {
  return det_scaled_at(model, energy).value();
}

OracleSpectrum oracle_spectrum(const ModelSpec& model, const OracleOptions& options) {
  const int d = model.dimension();
  if (d > options.max_dimension)
    throw ConfigError("matrix dimension exceeds the oracle cap");

  const double base_radius = std::max(2.0 * dense_matrix(model).max_row_sum(), 1.0);
  OracleSpectrum out;
  out.sample_radius = base_radius;

  // Monomial coefficients of a degree-d polynomial sampled on one contour
  // resolve only the roots of magnitude comparable to the contour radius:
  // deep inside, the polynomial values sink below the coefficient round-off
  // floor. Certified roots are therefore divided out of the determinant and
  // the quotient re-interpolated on a shrunken contour until every
  // eigenvalue is recovered at its own scale.
  double radius = base_radius;
  double level0_max_log2 = 0.0;
  int stalled_levels = 0;
  for (int level = 0; static_cast<int>(out.eigenvalues.size()) < d; ++level) {
    if (level >= 60 || radius < 1e-13 * base_radius)
      throw InterpolationIllConditioned(
          "contour refinement exhausted before recovering the full spectrum");

    const int remaining = d - static_cast<int>(out.eigenvalues.size());
    const int npts = remaining + 1;
    std::vector<cplx> samples(static_cast<std::size_t>(npts));
    std::vector<ScaledDet> dets(static_cast<std::size_t>(npts));
    double max_log2 = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < npts; ++k) {
      const cplx node = std::polar(radius, 2.0 * std::numbers::pi * k / npts);
      dets[static_cast<std::size_t>(k)] = deflated_det(model, node, out.eigenvalues);
      max_log2 = std::max(max_log2, dets[static_cast<std::size_t>(k)].log2_abs());
      if (level == 0) out.det_samples.emplace_back(node, cplx{});
    }
    if (!std::isfinite(max_log2))
      throw InterpolationIllConditioned("determinant vanished at every sample point");
    for (int k = 0; k < npts; ++k) {
      const ScaledDet& sd = dets[static_cast<std::size_t>(k)];
      const double rel = sd.log2_abs() - max_log2;
      samples[static_cast<std::size_t>(k)] =
          (rel < -2000.0) ? cplx{} : sd.mantissa * std::exp2(sd.exponent - max_log2);
      if (level == 0) out.det_samples[static_cast<std::size_t>(k)].second = samples[static_cast<std::size_t>(k)];
    }

    // Coefficients of p(w) = g(radius * w) / scale via inverse DFT on the
    // equispaced contour nodes (the interpolation conditions solved exactly).
    std::vector<cplx> coeffs(static_cast<std::size_t>(npts), cplx{});
    for (int j = 0; j < npts; ++j) {
      cplx acc{};
      for (int k = 0; k < npts; ++k) {
        const double angle = -2.0 * std::numbers::pi * j * k / npts;
        acc += samples[static_cast<std::size_t>(k)] * std::polar(1.0, angle);
      }
      coeffs[static_cast<std::size_t>(j)] = acc / static_cast<double>(npts);
    }
    const ComplexPoly charpoly{coeffs};
    if (level == 0) {
      out.charpoly = charpoly;
      out.det_scale_log2 = max_log2;
      level0_max_log2 = max_log2;
      if (charpoly.degree() != d)
        throw InterpolationIllConditioned(
            "interpolated characteristic polynomial lost its degree");
      // Leading coefficient of det(H - E) in E is (-1)^d; its scaled image
      // must match, otherwise the samples were too unbalanced to trust.
      const double lead_expected = std::exp2(d * std::log2(radius) - max_log2);
      const cplx lead = charpoly.coeff(d) * ((d % 2 == 0) ? 1.0 : -1.0);
      if (std::abs(lead - lead_expected) > 1e-6 * lead_expected)
        throw InterpolationIllConditioned("leading charpoly coefficient check failed");
    }

    int found = 0;
    if (charpoly.degree() >= 1) {
      RootFinderOptions ropt;
      ropt.tol = 1e-12;
      ropt.seed = options.seed + static_cast<std::uint64_t>(level);
      ropt.stall_accept = 0.05;  // seeds only; the determinant polish refines
      std::vector<cplx> seeds;
      for (const cplx& w : find_roots(charpoly, ropt).flat()) seeds.push_back(radius * w);
      std::sort(seeds.begin(), seeds.end(),
                [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });

      for (const cplx& seed : seeds) {
        if (static_cast<int>(out.eigenvalues.size()) >= d) break;
        // Polish on the full determinant; a seed colliding with an accepted
        // eigenvalue is re-polished on the deflated determinant, which
        // either resolves a true multiplicity or walks to a missed root.
        auto [e, step] = det_newton(model, seed, {}, radius, 10);
        for (const cplx& accepted : out.eigenvalues) {
          if (std::abs(e - accepted) < 1e-8 * base_radius) {
            std::tie(e, step) = det_newton(model, seed, out.eigenvalues, radius, 20);
            break;
          }
        }
        if (!std::isfinite(std::abs(e)) || step > 1e-6 * base_radius) continue;
        const double res_log2 = det_scaled_at(model, e).log2_abs() - level0_max_log2;
        if (res_log2 > std::log2(options.certify_tol)) continue;
        out.eigenvalues.push_back(e);
        ++found;
      }
    }

    stalled_levels = (found == 0) ? stalled_levels + 1 : 0;
    if (stalled_levels >= 4)
      throw InterpolationIllConditioned("contour refinement stalled");
    radius *= 0.55;
  }

  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<cplx> oracle_eigenvector(const ModelSpec& model, cplx energy,
                                     const OracleOptions& options) {
  const int d = model.dimension();
  const DenseMatrix h = dense_matrix(model);
  const double scale = std::max(h.max_row_sum(), 1e-12);
  const cplx shift = energy + cplx{1e-10 * scale, 0.0};

  DenseMatrix shifted = h;
  for (int i = 0; i < d; ++i) shifted.at(i, i) -= shift;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(static_cast<std::size_t>(d));
  for (cplx& x : v) x = cplx{u(rng), u(rng)};

  for (int it = 0; it < 10; ++it) {
    std::vector<cplx> w;
    try {
      w = solve_linear(shifted, v);
    } catch (const NumericalError&) {
      break;  // shift landed exactly on the eigenvalue; keep current v
    }
    const double nw = norm2(w);
    if (!(nw > 0.0) || !std::isfinite(nw)) break;
    for (cplx& x : w) x /= nw;
    v = std::move(w);
    if (it < 1) continue;  // at least two refinement passes
    std::vector<cplx> hv = h.apply(v);
    double num = 0.0;
    for (int i = 0; i < d; ++i) num += std::norm(hv[static_cast<std::size_t>(i)] - energy * v[static_cast<std::size_t>(i)]);
    if (std::sqrt(num) <= 1e-9) break;
    if (it == 9)
      throw SlowConvergence("inverse iteration stalled; eigenvalue may be near-degenerate");
  }

  // Max-amplitude normalisation with a deterministic phase.
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  const cplx pivot = v[arg];
  for (cplx& x : v) x /= pivot;
  return v;
}

}  // namespace gflat
