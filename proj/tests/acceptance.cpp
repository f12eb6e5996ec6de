// Acceptance suite: runs the end-to-end checks the library must satisfy,
// one per criterion, and prints a PASS/FAIL line with measured values.
// Run without arguments for the full suite or with a criterion number.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gflat/errors.hpp"
#include "gflat/infinite.hpp"
#include "gflat/model.hpp"
#include "gflat/oracle.hpp"
#include "gflat/rational_gf.hpp"
#include "gflat/root_finder.hpp"
#include "gflat/solver.hpp"
#include "gflat/topology.hpp"

using namespace gflat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  bool* pass;
  std::ostringstream* os;
  void operator()(bool ok, const std::string& what) const {
    if (!ok) {
      *pass = false;
      *os << " [FAILED: " << what << "]";
    }
  }
};

ModelSpec hn(int n, cplx tl, cplx tr, Boundary bc = Boundary::open) {
  ModelSpec m;
  m.n = n;
  m.tl = tl;
  m.tr = tr;
  m.bc = bc;
  return m;
}

ModelSpec ssh_lambda(int n, double lam) {
  ModelSpec m;
  m.kind = ModelKind::ssh;
  m.n = n;
  m.tl = 1.25 * lam;
  m.tr = lam / 1.25;
  m.tlp = 1.0;
  m.trp = 1.0;
  return m;
}

double match_spectra(std::vector<cplx> a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return 1e300;
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

double overlap(std::span<const cplx> a, std::span<const cplx> b) {
  cplx dot{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::abs(dot) / std::sqrt(na * nb);
}

std::vector<cplx> energies(const SpectralResult& r) {
  std::vector<cplx> e;
  for (const EigenPair& p : r.pairs) e.push_back(p.energy);
  return e;
}

bool has_tag(const EigenPair& p, const char* tag) {
  return std::find(p.tags.begin(), p.tags.end(), tag) != p.tags.end();
}

const EigenPair& max_real_state(const SpectralResult& r) {
  const EigenPair* best = &r.pairs.front();
  for (const EigenPair& p : r.pairs)
    if (p.energy.real() > best->energy.real()) best = &p;
  return *best;
}

// --- criterion 1: open-chain closed form -----------------------------------

Outcome criterion1() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  const int n = 20;
  const SpectralResult r = solve_hn_obc(hn(n, 1.0, 0.6));
  std::vector<cplx> expected;
  for (int l = 1; l <= n; ++l)
    expected.emplace_back(2.0 * std::sqrt(0.6) * std::cos(l * std::numbers::pi / (n + 1)), 0.0);
  const double de = match_spectra(energies(r), expected);
  check(de <= 1e-10, "eigenvalue mismatch");

  const double radius = std::sqrt(5.0 / 3.0);
  double dz = 0.0;
  for (const EigenPair& p : r.pairs) {
    dz = std::max(dz, std::abs(std::abs(p.z1) - radius));
    dz = std::max(dz, std::abs(std::abs(p.z2) - radius));
  }
  check(dz <= 1e-10, "propagating factor off the GBZ circle");

  os << "max|dE| = " << de << ", max| |z| - sqrt(5/3) | = " << dz;
  return {pass, os.str()};
}

// --- criterion 2: oracle equivalence over random configurations ------------

Outcome criterion2() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> mag(0.3, 2.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  double worst_de = 0.0, worst_overlap = 1.0;
  int done = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int family = trial % 5;
    const int n = 3 + static_cast<int>(rng() % 58);
    const bool cphase = coin(rng) < 0.5;
    auto draw = [&]() { return cphase ? std::polar(mag(rng), ph(rng)) : cplx{mag(rng), 0.0}; };

    ModelSpec m;
    m.n = n;
    m.tl = draw();
    m.tr = draw();
    switch (family) {
      case 0:
        break;
      case 1:
        m.bc = Boundary::periodic;
        break;
      case 2:
        m.impurity = Impurity{1 + static_cast<int>(rng() % n), draw()};
        break;
      case 3:
        m.bc = Boundary::periodic;
        m.impurity = Impurity{1, draw()};
        break;
      case 4:
        m.kind = ModelKind::ssh;
        m.tlp = draw();
        m.trp = draw();
        break;
    }

    const SpectralResult r = solve(m);
    const OracleSpectrum s = oracle_spectrum(m);
    const double diameter = std::max(s.diameter(), 1e-12);
    const double de = match_spectra(energies(r), s.eigenvalues) / diameter;
    worst_de = std::max(worst_de, de);
    if (de > 1e-7) {
      check(false, "spectrum mismatch " + std::to_string(de) + " at " + m.describe());
      break;
    }

    for (const EigenPair& p : r.pairs) {
      double nearest_other = 1e300;
      for (const EigenPair& q : r.pairs)
        if (&q != &p) nearest_other = std::min(nearest_other, std::abs(q.energy - p.energy));
      if (nearest_other < 1e-6 * diameter) continue;  // simple eigenvalues only
      const std::vector<cplx> reference = oracle_eigenvector(m, p.energy);
      const double ov = overlap(reference, p.psi);
      worst_overlap = std::min(worst_overlap, ov);
      if (ov < 1.0 - 1e-8) {
        check(false, "overlap " + std::to_string(ov) + " at " + m.describe());
        break;
      }
    }
    if (!pass) break;
    ++done;
  }

  os << done << "/200 configurations, worst |dE|/diam = " << worst_de
     << ", worst overlap = " << worst_overlap;
  return {pass, os.str()};
}

// --- criterion 3: the cancellation criterion discriminates -----------------

Outcome criterion3() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  std::vector<ModelSpec> configs;
  configs.push_back(hn(20, 1.0, 0.6));
  configs.push_back(hn(30, 1.0, 0.6, Boundary::periodic));
  ModelSpec imp = hn(20, 1.0, 0.6);
  imp.impurity = Impurity{10, cplx{0.5711}};
  configs.push_back(imp);
  ModelSpec ring = hn(20, 1.0, 0.6, Boundary::periodic);
  ring.impurity = Impurity{1, cplx{1.0}};
  configs.push_back(ring);
  configs.push_back(ssh_lambda(20, 0.9));
  configs.push_back(ssh_lambda(20, 1.2));

  double worst_accept = 0.0, worst_perturbed = 1e300;
  for (const ModelSpec& m : configs) {
    const SpectralResult r = solve(m);
    for (const EigenPair& p : r.pairs) {
      worst_accept = std::max(worst_accept, p.residuals.cancellation);

      EigenPair perturbed = p;
      perturbed.energy += 1e-3;
      const ComplexPoly kernel = kernel_q(m, perturbed.energy);
      const std::vector<cplx> zs =
          quadratic_roots(kernel.coeff(2), kernel.coeff(1), kernel.coeff(0));
      perturbed.z1 = zs[0];
      perturbed.z2 = zs[1];
      const PairingReport report = verify_cancellation(m, perturbed);
      worst_perturbed = std::min(worst_perturbed, report.max_cancellation);
    }
  }
  check(worst_accept <= 1e-8, "accepted pair above 1e-8");
  check(worst_perturbed >= 1e-4, "perturbed residual below 1e-4");

  os << "max accepted residual = " << worst_accept
     << ", min perturbed residual = " << worst_perturbed;
  return {pass, os.str()};
}

// --- criterion 4: ring spectrum on the ellipse ------------------------------

Outcome criterion4() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  const int n = 30;
  const SpectralResult r = solve_hn_pbc(hn(n, 1.0, 0.6, Boundary::periodic));
  std::vector<cplx> expected;
  for (int l = 0; l < n; ++l) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * l / n);
    expected.push_back(0.6 * z + 1.0 / z);
  }
  const double de = match_spectra(energies(r), expected);
  check(de <= 1e-9, "eigenvalue off the ellipse");

  double dz = 0.0;
  for (const EigenPair& p : r.pairs) dz = std::max(dz, std::abs(std::abs(p.z2) - 1.0));
  check(dz <= 1e-10, "|z2| off the unit circle");

  os << "max ellipse deviation = " << de << ", max | |z2| - 1 | = " << dz;
  return {pass, os.str()};
}

// --- criterion 5: impurity localisation transition --------------------------

Outcome criterion5() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  // The impurity site is a free parameter of this regime. Site 3 satisfies
  // the literal peak-position checks; site 10 (mid-chain) reproduces the
  // figure phenomenology with the peak at the impurity. Both are asserted.
  for (const int site : {3, 10}) {
    ModelSpec weak = hn(20, 1.0, 0.6);
    weak.impurity = Impurity{site, cplx{0.2498}};
    const SpectralResult rw = solve(weak);
    const EigenPair& boundary_state = max_real_state(rw);
    check(std::abs(boundary_state.z1) > 1.0, "weak-V |z1| not outside the unit circle");
    check(std::abs(boundary_state.z2) > 1.0, "weak-V |z2| not outside the unit circle");
    if (site == 3)
      check(boundary_state.argmax_site() <= 3, "weak-V state peak beyond site 3");
    else
      check(boundary_state.argmax_site() <= 5, "weak-V state peak not near the boundary");
    const std::vector<cplx> ow = oracle_eigenvector(weak, boundary_state.energy);
    check(overlap(ow, boundary_state.psi) >= 1.0 - 1e-6, "weak-V oracle overlap");

    ModelSpec strong = weak;
    strong.impurity->strength = cplx{0.5711};
    const SpectralResult rs = solve(strong);
    const EigenPair& bound_state = max_real_state(rs);
    check(bound_state.argmax_site() == site, "strong-V peak not at the impurity");
    check(std::abs(bound_state.z1) < 1.0, "strong-V |z1| not inside the unit circle");
    check(std::abs(bound_state.z2) > 1.0, "strong-V |z2| not outside the unit circle");
    const std::vector<cplx> ob = oracle_eigenvector(strong, bound_state.energy);
    check(overlap(ob, bound_state.psi) >= 1.0 - 1e-6, "strong-V oracle overlap");

    // |z1| crosses 1 between the two strengths while |z2| stays outside.
    ModelSpec mid = weak;
    for (const double v : {0.2498, 0.3302, 0.4106, 0.4909, 0.5711}) {
      mid.impurity->strength = cplx{v};
      const EigenPair& t = max_real_state(solve(mid));
      check(std::abs(t.z2) > 1.0, "|z2| dipped inside during the sweep");
    }
  }

  os << "boundary-localized at V=0.2498 and impurity-localized at V=0.5711, "
        "|z1| crossing verified at sites 3 and 10";
  return {pass, os.str()};
}

// --- criterion 6: SSH topology ----------------------------------------------

Outcome criterion6() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  // lambda = 0.9 (topological side).
  const ModelSpec topo = ssh_lambda(20, 0.9);
  check(winding_nu_a(topo).value == 1, "nu_A != 1 at lambda = 0.9");
  const SpectralResult rt = solve_ssh_obc(topo);
  const EigenPair* edge = nullptr;
  double min_abs = 1e300;
  for (const EigenPair& p : rt.pairs)
    if (std::abs(p.energy) < min_abs) {
      min_abs = std::abs(p.energy);
      edge = &p;
    }
  check(edge != nullptr && has_tag(*edge, "edge"), "no edge pair at lambda = 0.9");
  const double z1_dist = std::abs(edge->z1 - cplx{-1.125});
  check(z1_dist <= 1e-6, "edge z1 distance to -1.125 is " + std::to_string(z1_dist) +
                             " (finite-size offset decays as lambda^{2(N+1)}; "
                             "1e-6 is reached near N = 60, not N = 20)");

  // Exponential decay of the edge energy towards N = 40.
  std::vector<double> logs;
  for (const int n : {20, 25, 30, 35, 40}) {
    const SpectralResult r = solve_ssh_obc(ssh_lambda(n, 0.9));
    double e_min = 1e300;
    for (const EigenPair& p : r.pairs) e_min = std::min(e_min, std::abs(p.energy));
    logs.push_back(std::log(e_min));
  }
  double num = 0.0, den = 0.0, lmean = 0.0;
  for (const double l : logs) lmean += l / logs.size();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double n = 20.0 + 5.0 * static_cast<double>(i);
    num += (n - 30.0) * (logs[i] - lmean);
    den += (n - 30.0) * (n - 30.0);
  }
  const double slope = num / den;
  check(slope < 0.0, "edge energy does not decay");

  // lambda = 1.2 (trivial side).
  const ModelSpec triv = ssh_lambda(20, 1.2);
  check(winding_nu_a(triv).value == 0, "nu_A != 0 at lambda = 1.2");
  const SpectralResult rv = solve_ssh_obc(triv);
  for (const EigenPair& p : rv.pairs)
    if (has_tag(p, "edge")) check(false, "edge pair in the trivial phase");

  const SpectralResult r60 = solve_ssh_obc(ssh_lambda(60, 1.2));
  double bulk_dev = 0.0;
  for (const EigenPair& p : r60.pairs) {
    bulk_dev = std::max(bulk_dev, std::abs(std::abs(p.z1) - 1.25));
    bulk_dev = std::max(bulk_dev, std::abs(std::abs(p.z2) - 1.25));
  }
  check(bulk_dev <= 0.05, "bulk |z| off the critical circle at N = 60");

  // Chiral symmetry of both spectra.
  double chiral = 0.0;
  for (const SpectralResult* r : {&rt, &rv}) {
    std::vector<cplx> e = energies(*r), neg;
    for (const cplx& x : e) neg.push_back(-x);
    chiral = std::max(chiral, match_spectra(e, neg));
  }
  check(chiral <= 1e-9, "spectrum not chiral symmetric");

  os << "edge |E| = " << min_abs << ", z1 distance to -1.125 = " << z1_dist
     << ", decay slope = " << slope << ", bulk |z| deviation at N=60 = " << bulk_dev
     << ", chiral mismatch = " << chiral;
  return {pass, os.str()};
}

// --- criterion 7: winding consistency ---------------------------------------

Outcome criterion7() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  // The quadrature value and the argument-principle count are compared
  // inside winding_w; any disagreement throws. Drive 1000 admissible draws.
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> mag(0.3, 2.0);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int agreed = 0, attempts = 0;
  while (agreed < 1000 && attempts < 4000) {
    ++attempts;
    const ModelSpec m = hn(4, cplx{mag(rng), 0.4 * u(rng)}, cplx{mag(rng), 0.4 * u(rng)});
    const cplx e{u(rng), u(rng)};
    try {
      winding_w(m, e);
      ++agreed;
    } catch (const ContourHitsZero&) {
      continue;  // guarded degenerate draw; not a disagreement
    } catch (const QuadratureUnstable&) {
      check(false, "quadrature/argument-principle disagreement");
      break;
    }
  }
  check(agreed == 1000, "fewer than 1000 agreeing draws");

  const WindingReport left = winding_w(hn(20, 1.0, 0.6), cplx{});
  const WindingReport right = winding_w(hn(20, 0.6, 1.0), cplx{});
  check(left.value == 1, "W(0) != +1 for tl > tr");
  check(right.value == -1, "W(0) != -1 for tl < tr");

  // Per-state skin tags match the winding direction on the same models.
  const SpectralResult rl = solve_hn_obc(hn(20, 1.0, 0.6));
  const SpectralResult rr = solve_hn_obc(hn(20, 0.6, 1.0));
  for (const EigenPair& p : rl.pairs)
    if (!has_tag(p, "skin-left")) check(false, "missing skin-left tag");
  for (const EigenPair& p : rr.pairs)
    if (!has_tag(p, "skin-right")) check(false, "missing skin-right tag");

  os << agreed << "/1000 draws agree, W(0) = +1 / -1 with matching skin tags";
  return {pass, os.str()};
}

// --- criterion 8: corollary round trips -------------------------------------

Outcome criterion8() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RationalGF g;
    g.num = ComplexPoly{{cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}}};
    g.den = ComplexPoly{{cplx{1.5 + std::abs(u(rng))}, cplx{u(rng), u(rng)},
                         cplx{u(rng), u(rng)}}};
    const int h = 1 + static_cast<int>(rng() % 3);

    const SeriesWindow w = coefficients(g, 40);
    const RationalGF shifted = shift_tail(g, h, std::span<const cplx>(w.coeffs.data(), h));
    const SeriesWindow ws = coefficients(shifted, 40 - h);
    for (int m = 0; m + h <= 40; ++m)
      worst = std::max(worst, std::abs(ws.coeffs[static_cast<std::size_t>(m)] -
                                       w.coeffs[static_cast<std::size_t>(m + h)]));

    const cplx lambda{u(rng), u(rng)};
    const SeriesWindow wr = coefficients(rescale(rescale(g, lambda), -lambda), 40);
    for (int m = 0; m <= 40; ++m)
      worst = std::max(worst, std::abs(wr.coeffs[static_cast<std::size_t>(m)] -
                                       w.coeffs[static_cast<std::size_t>(m)]));
  }
  check(worst <= 1e-12, "round-trip deviation above 1e-12");

  // Similarity rescaling moves the open-chain kernel zeros onto the unit
  // circle. Zeros rescale by e^{lambda}, so the flattening map needs
  // lambda = (1/2) log(tr/tl).
  const ModelSpec m = hn(20, 1.0, 0.6);
  const SpectralResult r = solve_hn_obc(m);
  const cplx lambda{0.5 * std::log(0.6 / 1.0), 0.0};
  double circle_dev = 0.0;
  for (const EigenPair& p : r.pairs) {
    RationalGF g;
    g.num = numerator_p(m, p.energy, BoundaryAmplitudes{p.psi[0], p.psi[19], cplx{}}).front();
    g.den = kernel_q(m, p.energy);
    const RationalGF flat = rescale(g, lambda);
    for (const cplx& z : find_roots(flat.den, 1e-12).flat())
      circle_dev = std::max(circle_dev, std::abs(std::abs(z) - 1.0));
  }
  check(circle_dev <= 1e-9, "rescaled kernel zeros off the unit circle");

  os << "worst round-trip deviation = " << worst
     << ", rescaled kernel-zero circle deviation = " << circle_dev;
  return {pass, os.str()};
}

// --- criterion 9: Fibonacci anchor ------------------------------------------

Outcome criterion9() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  RationalGF g;
  g.num = ComplexPoly::monomial(1);
  g.den = ComplexPoly{{1.0, -1.0, -1.0}};
  const SeriesWindow w = coefficients(g, 70);

  // Integer recurrence cross-check; doubles hold these exactly.
  std::vector<long long> fib(71, 0);
  fib[1] = 1;
  for (int m = 2; m <= 70; ++m) fib[m] = fib[m - 1] + fib[m - 2];
  check(w.coeffs[10].real() == 55.0 && w.coeffs[10].imag() == 0.0, "b10 != 55");
  check(w.coeffs[20].real() == 6765.0 && w.coeffs[20].imag() == 0.0, "b20 != 6765");
  check(fib[10] == 55 && fib[20] == 6765, "integer oracle broken");

  const cplx z1{(-1.0 + std::sqrt(5.0)) / 2.0, 0.0};
  const cplx z2{(-1.0 - std::sqrt(5.0)) / 2.0, 0.0};
  double worst = 0.0;
  for (int m = 0; m <= 70; ++m) {
    const cplx closed = (std::pow(z1, -m) - std::pow(z2, -m)) / (z1 - z2);
    const double reference = static_cast<double>(fib[m]);
    worst = std::max(worst, std::abs(closed - cplx{reference}) / std::max(1.0, reference));
    worst = std::max(worst,
                     std::abs(w.coeffs[static_cast<std::size_t>(m)] - cplx{reference}) /
                         std::max(1.0, reference));
  }
  check(worst <= 1e-9, "closed form drifts from the recurrence");

  os << "b10 = 55, b20 = 6765 exact; worst closed-form deviation = " << worst;
  return {pass, os.str()};
}

// --- criterion 10: regularised infinite-lattice demo ------------------------

Outcome criterion10() {
  std::ostringstream os;
  bool pass = true;
  Check check{&pass, &os};

  const double t = 1.3, kx = 0.7, ky = -0.4;
  double prev1 = 1e300, prev2 = 1e300, last1 = 0.0, last2 = 0.0;
  for (const double rho : {0.9, 0.99, 0.999}) {
    RegularizedGF g;
    g.rho = rho;
    g.k_x = kx;
    g.k_y = ky;
    g.hopping = t;
    const double r1 = dispersion_residual_1d(g, 2.0 * t * std::cos(kx));
    const double r2 = dispersion_residual_2d(g, 2.0 * t * (std::cos(kx) + std::cos(ky)));
    check(r1 < prev1 && r2 < prev2, "residuals not monotonically decreasing");
    prev1 = r1;
    prev2 = r2;
    last1 = r1;
    last2 = r2;
  }
  check(last1 <= 0.01 * t, "1d residual above 0.01 |t|");
  check(last2 <= 0.02 * t, "2d residual above 0.02 |t|");

  os << "rho = 0.999: 1d residual = " << last1 << " (bound " << 0.01 * t
     << "), 2d residual = " << last2 << " (bound " << 0.02 * t << ")";
  return {pass, os.str()};
}

using CriterionFn = std::function<Outcome()>;

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, CriterionFn>> criteria = {
      {"HN OBC closed form", criterion1},
      {"oracle equivalence (200 random configs)", criterion2},
      {"cancellation criterion discriminates", criterion3},
      {"PBC spectrum on the ellipse", criterion4},
      {"impurity localisation transition", criterion5},
      {"SSH topology", criterion6},
      {"winding consistency", criterion7},
      {"corollary round trips", criterion8},
      {"Fibonacci anchor", criterion9},
      {"regularised lattice demo", criterion10},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    if (only != 0 && index != only) continue;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d [%s]: %s  %s\n", index, criteria[i].first,
                out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
