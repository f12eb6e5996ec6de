#include "gflat/model.hpp"

#include <cmath>
#include <sstream>

#include "gflat/errors.hpp"

namespace gflat {

void ModelSpec::validate() const {
  if (n < 2) throw ConfigError("chain length must satisfy N >= 2");
  if (tl == cplx{} || tr == cplx{})
    throw ConfigError("hoppings tl, tr must be nonzero so that Q(0) != 0");
  if (kind == ModelKind::ssh) {
    if (tlp == cplx{} || trp == cplx{})
      throw ConfigError("SSH intercell hoppings tlp, trp must be nonzero");
    if (bc != Boundary::open)
      throw UnsupportedCombination("SSH is supported with open boundaries only");
    if (impurity)
      throw UnsupportedCombination("SSH with an impurity is not supported");
  }
  if (impurity) {
    if (impurity->site < 1 || impurity->site > n)
      throw ConfigError("impurity site must lie in 1..N");
  }
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os << (kind == ModelKind::ssh ? "ssh" : "hn");
  os << (bc == Boundary::open ? " obc" : " pbc");
  os << " n=" << n;
  if (impurity) os << " impurity@" << impurity->site;
  return os.str();
}

ComplexPoly kernel_q(const ModelSpec& model, cplx energy) {
  if (model.kind == ModelKind::hatano_nelson)
    return ComplexPoly{{model.tl, -energy, model.tr}};
  // (tr z + tlp)(trp z + tl) - E^2 z
  return ComplexPoly{{model.tlp * model.tl,
                      model.tr * model.tl + model.tlp * model.trp - energy * energy,
                      model.tr * model.trp}};
}

std::vector<ComplexPoly> numerator_p(const ModelSpec& model, cplx energy,
                                     const BoundaryAmplitudes& amps) {
  const int n = model.n;
  if (model.kind == ModelKind::ssh) {
    if (model.bc != Boundary::open || model.impurity)
      throw UnsupportedCombination("SSH numerators are defined for clean open chains only");
    // P_A = tlp psi_A1 z (trp z + tl) + trp E psi_BN z^{N+2}
    ComplexPoly pa = ComplexPoly{{cplx{}, model.tlp * amps.left * model.tl,
                                  model.tlp * amps.left * model.trp}} +
                     ComplexPoly::monomial(n + 2, model.trp * energy * amps.right);
    // P_B = tlp E psi_A1 z + trp psi_BN z^{N+1} (tr z + tlp)
    ComplexPoly pb = ComplexPoly::monomial(1, model.tlp * energy * amps.left) +
                     ComplexPoly::monomial(n + 1, model.trp * amps.right * model.tlp) +
                     ComplexPoly::monomial(n + 2, model.trp * amps.right * model.tr);
    return {pa, pb};
  }

  const cplx a = model.tl * amps.left;
  const cplx b = model.tr * amps.right;
  if (model.bc == Boundary::open) {
    // z (tl psi_1 + tr psi_N z^{N+1} [- V psi_{N1} z^{N1}])
    ComplexPoly p = ComplexPoly::monomial(1, a) + ComplexPoly::monomial(n + 2, b);
    if (model.impurity)
      p -= ComplexPoly::monomial(model.impurity->site + 1,
                                 model.impurity->strength * amps.at_impurity);
    return {p};
  }
  // z (tl psi_1 - z tr psi_N)(1 - z^N) [- V psi_1 z^2 for the site-1 impurity]
  const ComplexPoly factor =
      ComplexPoly{{a, -b}} * (ComplexPoly::constant(1.0) - ComplexPoly::monomial(n));
  ComplexPoly p = ComplexPoly::monomial(1) * factor;
  if (model.impurity) {
    if (model.impurity->site != 1)
      throw UnsupportedCombination(
          "the periodic-ring numerator is derived for an impurity at site 1");
    p -= ComplexPoly::monomial(2, model.impurity->strength * amps.left);
  }
  return {p};
}

DenseMatrix dense_matrix(const ModelSpec& model) {
  if (model.kind == ModelKind::hatano_nelson) {
    DenseMatrix h(model.n);
    for (int i = 0; i + 1 < model.n; ++i) {
      h.at(i, i + 1) = model.tl;
      h.at(i + 1, i) = model.tr;
    }
    if (model.bc == Boundary::periodic) {
      // Ring closure consistent with psi_{n+N} = psi_n.
      h.at(0, model.n - 1) += model.tr;
      h.at(model.n - 1, 0) += model.tl;
    }
    if (model.impurity) {
      const int s = model.impurity->site - 1;
      h.at(s, s) += model.impurity->strength;
    }
    return h;
  }

  DenseMatrix h(2 * model.n);
  for (int cell = 0; cell < model.n; ++cell) {
    const int a = 2 * cell, b = 2 * cell + 1;
    h.at(a, b) = model.tl;
    h.at(b, a) = model.tr;
    if (cell + 1 < model.n) {
      h.at(2 * (cell + 1), b) = model.trp;
      h.at(b, 2 * (cell + 1)) = model.tlp;
    }
  }
  return h;
}

std::vector<cplx> apply_hamiltonian(const ModelSpec& model, std::span<const cplx> psi) {
  const int dim = model.dimension();
  std::vector<cplx> out(static_cast<std::size_t>(dim), cplx{});
  auto at = [&](int i) -> cplx {
    if (model.bc == Boundary::periodic) {
      const int w = ((i % dim) + dim) % dim;
      return psi[static_cast<std::size_t>(w)];
    }
    if (i < 0 || i >= dim) return {};
    return psi[static_cast<std::size_t>(i)];
  };

  if (model.kind == ModelKind::hatano_nelson) {
    for (int i = 0; i < dim; ++i)
      out[static_cast<std::size_t>(i)] = model.tr * at(i - 1) + model.tl * at(i + 1);
    if (model.impurity) {
      const int s = model.impurity->site - 1;
      out[static_cast<std::size_t>(s)] += model.impurity->strength * at(s);
    }
    return out;
  }

  // Interleaved A, B sites; cell index runs over 0..n-1.
  for (int cell = 0; cell < model.n; ++cell) {
    out[static_cast<std::size_t>(2 * cell)] = model.tl * at(2 * cell + 1) + model.trp * at(2 * cell - 1);
    out[static_cast<std::size_t>(2 * cell + 1)] = model.tr * at(2 * cell) + model.tlp * at(2 * cell + 2);
  }
  return out;
}

}  // namespace gflat
