#include "gflat/root_finder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gflat/errors.hpp"

namespace gflat {

namespace {

double residual_scale(const ComplexPoly& p, cplx root) {
  return p.coeff_scale() * std::pow(std::max(1.0, std::abs(root)), p.degree());
}

/// Fujiwara bound: all roots lie within 2 * max_k |c_k / c_n|^{1/(n-k)}.
double root_bound(const ComplexPoly& p) {
  const int n = p.degree();
  const double lead = std::abs(p.coeff(n));
  double bound = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ck = std::abs(p.coeff(k));
    if (ck == 0.0) continue;
    bound = std::max(bound, std::pow(ck / lead, 1.0 / (n - k)));
  }
  return bound > 0.0 ? 2.0 * bound : 1.0;
}

std::vector<cplx> initial_circle(int n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  // Slight angular offset breaks the conjugation symmetry of real inputs,
  // which otherwise can stall the simultaneous iteration.
  const double offset = 0.3799 / n;
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n + offset;
    const double r = radius * (1.0 + jitter(rng));
    z[static_cast<std::size_t>(i)] = std::polar(r, angle + jitter(rng));
  }
  return z;
}

/// Magnitude bound on the round-off of a Horner evaluation at z.
double evaluation_floor(const ComplexPoly& p, cplx z) {
  const double az = std::abs(z);
  double acc = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * az + std::abs(*it);
  return (2.0 * p.degree() + 4.0) * std::numeric_limits<double>::epsilon() * acc;
}

bool aberth_pass(const ComplexPoly& p, std::vector<cplx>& z, int max_iterations,
                 double stall_accept) {
  const int n = static_cast<int>(z.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<cplx> best_z;
  std::vector<bool> settled(static_cast<std::size_t>(n), false);
  for (int it = 0; it < max_iterations; ++it) {
    double max_step = 0.0;
    bool all_settled = true;
    for (int i = 0; i < n; ++i) {
      if (settled[static_cast<std::size_t>(i)]) continue;
      auto [pv, dp] = p.eval_with_derivative(z[i]);
      // A residual at the evaluation round-off floor cannot improve; this is
      // also where multiple roots stop (at their attainable accuracy).
      if (std::abs(pv) <= evaluation_floor(p, z[i])) {
        settled[static_cast<std::size_t>(i)] = true;
        continue;
      }
      all_settled = false;
      if (dp == cplx{}) {
        z[i] += cplx(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
        auto [pv2, dp2] = p.eval_with_derivative(z[i]);
        pv = pv2;
        dp = dp2;
        if (dp == cplx{}) continue;
      }
      const cplx w = pv / dp;
      cplx repulsion{};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const cplx d = z[i] - z[j];
        if (d != cplx{}) repulsion += 1.0 / d;
      }
      const cplx denom = 1.0 - w * repulsion;
      const cplx step = (denom == cplx{}) ? w : w / denom;
      z[i] -= step;
      const double rel_step = std::abs(step) / (1.0 + std::abs(z[i]));
      if (rel_step < 1e-15) settled[static_cast<std::size_t>(i)] = true;
      max_step = std::max(max_step, rel_step);
    }
    if (all_settled || max_step < 1e-14) return true;
    if (max_step < best) {
      best = max_step;
      best_z = z;
    }
  }
  if (best < stall_accept && !best_z.empty()) {
    z = std::move(best_z);
    return true;
  }
  return false;
}

void newton_polish(const ComplexPoly& p, cplx& z) {
  for (int it = 0; it < 3; ++it) {
    auto [pv, dp] = p.eval_with_derivative(z);
    if (dp == cplx{}) return;
    const cplx step = pv / dp;
    if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) return;
    z -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) return;
  }
}

RootSet cluster_roots(const ComplexPoly& p, std::vector<cplx> raw, double tol) {
  std::sort(raw.begin(), raw.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  const double cluster_dist = 10.0 * std::sqrt(tol);
  RootSet out;
  out.tol = tol;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    cplx sum = raw[i];
    while (j < raw.size() &&
           std::abs(raw[j] - raw[j - 1]) <= cluster_dist * (1.0 + std::abs(raw[j]))) {
      sum += raw[j];
      ++j;
    }
    const int mult = static_cast<int>(j - i);
    out.roots.push_back({sum / static_cast<double>(mult), mult});
    i = j;
  }
  for (const auto& r : out.roots) {
    const double scale = residual_scale(p, r.value);
    if (scale > 0.0) out.residual = std::max(out.residual, std::abs(p(r.value)) / scale);
  }
  return out;
}

}  // namespace

std::vector<cplx> RootSet::flat() const {
  std::vector<cplx> out;
  for (const auto& r : roots)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  return out;
}

std::vector<cplx> quadratic_roots(cplx c2, cplx c1, cplx c0) {
  if (c2 == cplx{}) {
    if (c1 == cplx{}) return {};
    return {-c0 / c1};
  }
  const cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  // Pick the sign that avoids cancellation in -c1 -+ disc.
  const cplx q = (std::abs(c1 - disc) > std::abs(c1 + disc)) ? -0.5 * (c1 - disc)
                                                             : -0.5 * (c1 + disc);
  if (q == cplx{}) return {cplx{}, cplx{}};
  return {q / c2, c0 / q};
}

RootSet find_roots(const ComplexPoly& p, const RootFinderOptions& options) {
  if (p.degree() < 1) throw ConfigError("root finding requires degree >= 1");
  if (p.coeff_scale() < 1e-300) throw ConfigError("leading coefficient underflows");

  // Factor out exact roots at the origin first; they are common in the
  // lacunary numerators handled here (e.g. z + c z^{N+2}).
  std::vector<cplx> work(p.coeffs().begin(), p.coeffs().end());
  int zeros_at_origin = 0;
  while (work.size() > 1 && std::abs(work.front()) < 1e-300) {
    work.erase(work.begin());
    ++zeros_at_origin;
  }
  ComplexPoly reduced{std::move(work)};

  std::vector<cplx> raw;
  if (reduced.degree() >= 1) {
    if (reduced.degree() <= 2) {
      raw = quadratic_roots(reduced.coeff(2), reduced.coeff(1), reduced.coeff(0));
    } else {
      std::mt19937_64 rng(options.seed);
      const double radius = root_bound(reduced);
      bool converged = false;
      for (int attempt = 0; attempt <= options.max_restarts && !converged; ++attempt) {
        raw = initial_circle(reduced.degree(), radius * (1.0 + 0.1 * attempt), rng);
        converged = aberth_pass(reduced, raw, options.max_iterations, options.stall_accept);
      }
      if (!converged)
        throw NonConvergence("Aberth iteration did not converge within the cap");
    }
    for (cplx& z : raw) newton_polish(reduced, z);
  }

  RootSet out = cluster_roots(reduced, std::move(raw), options.tol);
  if (zeros_at_origin > 0) out.roots.push_back({cplx{}, zeros_at_origin});
  return out;
}

RootSet find_roots(const ComplexPoly& p, double tol) {
  RootFinderOptions options;
  options.tol = tol;
  return find_roots(p, options);
}

}  // namespace gflat
