#ifndef GFLAT_SOLVER_HPP
#define GFLAT_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gflat/model.hpp"

namespace gflat {

struct Residuals {
  double cancellation = 0.0;  // max_i |P(z_i)| / (largest term magnitude at z_i)
  double recurrence = 0.0;    // ||H psi - E psi|| / ||psi||
};

/// One admissible eigenstate: energy, propagating factors (the two roots of
/// the kernel at E), site amplitudes (max-amplitude normalised), residual
/// diagnostics and classification tags.
struct EigenPair {
  cplx energy;
  cplx z1, z2;
  std::vector<cplx> psi;  // length N for HN, 2N interleaved A,B for SSH
  Residuals residuals;
  std::vector<std::string> tags;

  /// Site (1-based) of the largest amplitude; SSH counts lattice sites.
  int argmax_site() const;
};

struct ZeroPairing {
  cplx q_zero;
  cplx p_zero;      // nearest numerator zero
  double distance;
};

struct SpectralResult {
  std::vector<EigenPair> pairs;
  double gbz_radius = 0.0;
  std::vector<ZeroPairing> pairing;
  ModelSpec model;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

struct SolverOptions {
  double tol = 1e-10;             // root finding / Newton tolerance
  double accept_residual = 1e-8;  // certification threshold for both residuals
  double class_band = 0.02;       // |z1| band around 1 counted as "extended"
  std::uint64_t seed = 0x5eed;
  bool with_pairing = true;       // populate the zero-pairing report
};

/// Full cancellation report for one eigenpair: the numerator is rebuilt from
/// the solved boundary amplitudes and its zeros are matched to the kernel
/// zeros. Diagnostic only; never rejects.
struct PairingReport {
  std::vector<ZeroPairing> entries;   // one per kernel zero
  std::vector<cplx> p_zeros;
  std::vector<cplx> q_zeros;
  double max_cancellation = 0.0;      // max_i |P(z_i)| / term scale
};

SpectralResult solve(const ModelSpec& model, const SolverOptions& options = {});

SpectralResult solve_hn_obc(const ModelSpec& model, const SolverOptions& options = {});
SpectralResult solve_hn_pbc(const ModelSpec& model, const SolverOptions& options = {});
SpectralResult solve_hn_impurity_obc(const ModelSpec& model, const SolverOptions& options = {});
SpectralResult solve_hn_impurity_pbc(const ModelSpec& model, const SolverOptions& options = {});
SpectralResult solve_ssh_obc(const ModelSpec& model, const SolverOptions& options = {});

PairingReport verify_cancellation(const ModelSpec& model, const EigenPair& pair,
                                  const SolverOptions& options = {});

/// |p(z)| divided by the largest single term magnitude max_m |c_m z^m|;
/// measures how completely the terms cancel at z.
double cancellation_residual(const ComplexPoly& p, cplx z);

}  // namespace gflat

#endif
