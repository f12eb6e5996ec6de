#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gflat/errors.hpp"
#include "gflat/model.hpp"
#include "gflat/oracle.hpp"

using namespace gflat;

namespace {

ModelSpec hn(int n, cplx tl, cplx tr, Boundary bc = Boundary::open) {
  ModelSpec m;
  m.n = n;
  m.tl = tl;
  m.tr = tr;
  m.bc = bc;
  return m;
}

double match_spectra(std::vector<cplx> a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (const cplx& e : b) {
    std::size_t best = 0;
    double bd = 1e300;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - e) < bd) {
        bd = std::abs(a[i] - e);
        best = i;
      }
    }
    worst = std::max(worst, bd);
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace

TEST_CASE("determinant at fixed energies") {
  CHECK(std::abs(det_at(hn(2, 1.0, 0.6), cplx{}) - cplx{-0.6}) < 1e-14);
  CHECK(std::abs(det_at(hn(2, 1.0, 0.6), cplx{std::sqrt(0.6), 0.0})) < 1e-12);

  ModelSpec s;
  s.kind = ModelKind::ssh;
  s.n = 1;
  s.tl = 1.3;
  s.tr = 0.4;
  CHECK(std::abs(det_at(s, cplx{}) - cplx{-1.3 * 0.4}) < 1e-14);
}

TEST_CASE("determinant matches the tridiagonal recurrence") {
  // D_n = -E D_{n-1} - tl tr D_{n-2} for the open chain.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const cplx tl{u(rng), u(rng)}, tr{u(rng), u(rng)};
    if (std::abs(tl) < 0.2 || std::abs(tr) < 0.2) continue;
    const cplx e{u(rng), u(rng)};
    cplx d0{1.0}, d1 = -e;
    for (int k = 2; k <= n; ++k) {
      const cplx d2 = -e * d1 - tl * tr * d0;
      d0 = d1;
      d1 = d2;
    }
    const cplx reference = det_at(hn(n, tl, tr), e);
    CHECK(std::abs(d1 - reference) <= 1e-10 * std::max(1.0, std::abs(reference)));
  }
}

TEST_CASE("oracle spectrum closed forms") {
  const OracleSpectrum s3 = oracle_spectrum(hn(3, 1.0, 1.0));
  REQUIRE(s3.eigenvalues.size() == 3);
  const std::vector<cplx> expected3 = {cplx{-std::sqrt(2.0)}, cplx{}, cplx{std::sqrt(2.0)}};
  CHECK(match_spectra(s3.eigenvalues, expected3) < 1e-9);

  const OracleSpectrum s4 = oracle_spectrum(hn(4, 1.0, 0.6, Boundary::periodic));
  const std::vector<cplx> expected4 = {cplx{1.6}, cplx{-1.6}, cplx{0.0, 0.4}, cplx{0.0, -0.4}};
  CHECK(match_spectra(s4.eigenvalues, expected4) < 1e-9);
}

TEST_CASE("ssh oracle spectrum is chiral symmetric") {
  ModelSpec m;
  m.kind = ModelKind::ssh;
  m.n = 20;
  const double lam = 0.9;
  m.tl = 1.25 * lam;
  m.tr = lam / 1.25;
  m.tlp = 1.0;
  m.trp = 1.0;
  const OracleSpectrum s = oracle_spectrum(m);
  REQUIRE(s.eigenvalues.size() == 40);
  std::vector<cplx> negated;
  for (const cplx& e : s.eigenvalues) negated.push_back(-e);
  CHECK(match_spectra(s.eigenvalues, negated) < 1e-8);
}

TEST_CASE("interpolated charpoly reproduces fresh determinant values") {
  const ModelSpec m = hn(9, 1.1, 0.7);
  const OracleSpectrum s = oracle_spectrum(m);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx e = cplx{u(rng), u(rng)} * (0.5 * s.sample_radius);
    const cplx via_poly = s.charpoly(e / s.sample_radius) * std::exp2(s.det_scale_log2);
    const cplx direct = det_at(m, e);
    CHECK(std::abs(via_poly - direct) <= 1e-8 * std::max(std::abs(direct), 1.0));
  }
}

TEST_CASE("open-chain oracle spectra depend only on tl*tr") {
  const OracleSpectrum a = oracle_spectrum(hn(12, 1.0, 0.6));
  const OracleSpectrum b = oracle_spectrum(hn(12, 1.5, 0.4));
  CHECK(match_spectra(a.eigenvalues, b.eigenvalues) < 1e-9 * std::max(1.0, a.diameter()));
}

TEST_CASE("oracle eigenvectors") {
  // Reciprocal chain: psi_m proportional to sin(m l pi / (N+1)).
  const int n = 8;
  const ModelSpec m = hn(n, 1.0, 1.0);
  const double theta = std::numbers::pi / (n + 1);
  const cplx e{2.0 * std::cos(theta), 0.0};
  const std::vector<cplx> psi = oracle_eigenvector(m, e);
  double peak = 0.0;
  for (int k = 1; k <= n; ++k) peak = std::max(peak, std::abs(std::sin(theta * k)));
  for (int k = 1; k <= n; ++k) {
    const double expected = std::sin(theta * k) / peak;
    CHECK(std::abs(psi[static_cast<std::size_t>(k - 1)]) ==
          doctest::Approx(std::abs(expected)).epsilon(1e-7));
  }

  // Skin envelope (tr/tl)^{m/2} for the non-reciprocal chain: amplitudes
  // decay monotonically away from the left end.
  const ModelSpec skin = hn(14, 1.0, 0.6);
  const OracleSpectrum s = oracle_spectrum(skin);
  const std::vector<cplx> psis = oracle_eigenvector(skin, s.eigenvalues.back());
  const double rate = std::sqrt(0.6);
  for (int k = 3; k <= 9; ++k) {
    const double ratio = std::abs(psis[static_cast<std::size_t>(k + 1)]) /
                         std::abs(psis[static_cast<std::size_t>(k)]);
    CHECK(ratio < 1.0);
    CHECK(ratio > 0.3 * rate);
  }

  const std::vector<cplx> hp = dense_matrix(skin).apply(psis);
  double res = 0.0, nrm = 0.0;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    res += std::norm(hp[i] - s.eigenvalues.back() * psis[i]);
    nrm += std::norm(psis[i]);
  }
  CHECK(std::sqrt(res / nrm) < 1e-9);
}

TEST_CASE("impurity peak sits at the impurity site") {
  ModelSpec m = hn(20, 1.0, 0.6);
  m.impurity = Impurity{10, cplx{0.5711}};
  const OracleSpectrum s = oracle_spectrum(m);
  // Track the split-off state: the eigenvalue with the largest real part.
  cplx bound = s.eigenvalues.front();
  for (const cplx& e : s.eigenvalues)
    if (e.real() > bound.real()) bound = e;
  const std::vector<cplx> psi = oracle_eigenvector(m, bound);
  int argmax = 0;
  for (int i = 1; i < 20; ++i)
    if (std::abs(psi[static_cast<std::size_t>(i)]) > std::abs(psi[static_cast<std::size_t>(argmax)]))
      argmax = i;
  CHECK(argmax + 1 == 10);
}

TEST_CASE("oracle rejects oversized problems") {
  OracleOptions opt;
  opt.max_dimension = 10;
  CHECK_THROWS_AS(oracle_spectrum(hn(11, 1.0, 1.0), opt), ConfigError);
}
