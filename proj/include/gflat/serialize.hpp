#ifndef GFLAT_SERIALIZE_HPP
#define GFLAT_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include "gflat/model.hpp"
#include "gflat/oracle.hpp"
#include "gflat/solver.hpp"
#include "gflat/topology.hpp"

namespace gflat {

/// Run-level options shared by the CLI subcommands.
struct RunConfig {
  ModelSpec model;
  double tol = 1e-10;
  std::uint64_t seed = 0x5eed;
  std::string format = "json";  // json | csv
  std::string output;           // empty = stdout
  int jobs = 1;
};

/// Deterministic JSON text with fixed key order and %.17g numbers; complex
/// values are emitted as [re, im] pairs.
std::string to_json(const SpectralResult& result);
std::string to_json(const OracleSpectrum& spectrum, const ModelSpec& model);
std::string to_json(const WindingReport& report, const std::string& name);
std::string to_json(const RunConfig& config);

/// Zero-scatter table: re, im, which (P or Q), paired_with, plus the GBZ
/// radius in the header comment.
std::string zeros_csv(const SpectralResult& result);

/// One row per (state, site) wavefunction table.
std::string wavefunction_csv(const SpectralResult& result);

std::string format_number(double v);

RunConfig parse_config_json(const std::string& text);
ModelSpec model_from_json(const std::string& text);

/// Re-parses an emitted SpectralResult JSON and re-checks the structural
/// invariants (pair count, z1 z2 product, residual bounds, normalisation).
void revalidate_result_json(const std::string& text);

}  // namespace gflat

#endif
