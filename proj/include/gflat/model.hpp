#ifndef GFLAT_MODEL_HPP
#define GFLAT_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "gflat/complex_poly.hpp"
#include "gflat/dense.hpp"

namespace gflat {

enum class ModelKind { hatano_nelson, ssh };
enum class Boundary { open, periodic };

struct Impurity {
  int site = 1;    // 1-based
  cplx strength;   // on-site potential V
};

/// Parameter record of a lattice model.
///
/// For the Hatano-Nelson chain, tl/tr are the leftward/rightward hoppings
/// and n is the number of sites. For the SSH chain, tl/tr are the intracell
/// hoppings, tlp/trp the intercell ones, and n counts unit cells.
struct ModelSpec {
  ModelKind kind = ModelKind::hatano_nelson;
  cplx tl{1.0};
  cplx tr{1.0};
  cplx tlp{1.0};
  cplx trp{1.0};
  int n = 2;
  Boundary bc = Boundary::open;
  std::optional<Impurity> impurity;

  int dimension() const { return kind == ModelKind::ssh ? 2 * n : n; }
  void validate() const;  // throws ConfigError / UnsupportedCombination
  std::string describe() const;
};

/// Boundary amplitudes entering the numerator, fixed up to overall scale.
/// For HN: left = psi_1, right = psi_N, at_impurity = psi_{N1}.
/// For SSH: left = psi_{A,1}, right = psi_{B,N}.
struct BoundaryAmplitudes {
  cplx left{1.0};
  cplx right{1.0};
  cplx at_impurity{};
};

/// Quadratic kernel whose roots are the propagating factors:
/// HN: tr z^2 - E z + tl;  SSH: (tr z + tlp)(trp z + tl) - E^2 z.
ComplexPoly kernel_q(const ModelSpec& model, cplx energy);

/// Boundary/impurity numerator(s). One polynomial for HN; the pair
/// {P_A, P_B} for SSH.
std::vector<ComplexPoly> numerator_p(const ModelSpec& model, cplx energy,
                                     const BoundaryAmplitudes& amps);

/// Hamiltonian as a banded dense matrix. SSH interleaves sites as
/// A1, B1, A2, B2, ...
DenseMatrix dense_matrix(const ModelSpec& model);

/// H applied through the site recurrences directly; an independent code
/// path from dense_matrix, used for residuals and cross-checks.
std::vector<cplx> apply_hamiltonian(const ModelSpec& model, std::span<const cplx> psi);

}  // namespace gflat

#endif
