// Command-line front end: configure a lattice model, run the
// generating-function solvers, diagnostics and the dense oracle, and emit
// machine-readable JSON/CSV tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "gflat/errors.hpp"
#include "gflat/infinite.hpp"
#include "gflat/oracle.hpp"
#include "gflat/rational_gf.hpp"
#include "gflat/root_finder.hpp"
#include "gflat/serialize.hpp"
#include "gflat/solver.hpp"
#include "gflat/topology.hpp"

namespace {

using namespace gflat;

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return cplx{std::stod(text), 0.0};
    return cplx{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse complex value '" + text + "' (use re or re,im)");
  }
}

void write_output(const RunConfig& config, const std::string& text) {
  if (config.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + config.output + "'");
  out << text << "\n";
}

/// Flags shared by every model-driven subcommand. Values given on the
/// command line override the config file.
struct ModelFlags {
  std::string config_path;
  std::string model = "hn";
  std::string bc = "obc";
  std::string tl, tr, tlp, trp;
  int n = 0;
  int impurity_site = 0;
  std::string impurity_v;
  double tol = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string format;
  std::string output;
  int jobs = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--model", model, "model kind: hn | ssh");
    cmd->add_option("--bc", bc, "boundary condition: obc | pbc");
    cmd->add_option("--tl", tl, "left hopping (re or re,im)");
    cmd->add_option("--tr", tr, "right hopping");
    cmd->add_option("--tlp", tlp, "intercell left hopping (ssh)");
    cmd->add_option("--trp", trp, "intercell right hopping (ssh)");
    cmd->add_option("--n", n, "chain length (sites for hn, unit cells for ssh)");
    cmd->add_option("--impurity-site", impurity_site, "impurity site (1-based)");
    cmd->add_option("--impurity-v", impurity_v, "impurity strength");
    cmd->add_option("--tol", tol, "solver tolerance");
    cmd->add_option("--seed", seed, "root-finder seed")->each([this](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--format", format, "output format: json | csv");
    cmd->add_option("--output", output, "output path (default stdout)");
    cmd->add_option("--jobs", jobs, "worker threads for sweeps");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = parse_config_json(buf.str());
    }
    if (model == "hn")
      cfg.model.kind = ModelKind::hatano_nelson;
    else if (model == "ssh")
      cfg.model.kind = ModelKind::ssh;
    else
      throw ConfigError("unknown model '" + model + "'");
    if (bc == "obc")
      cfg.model.bc = Boundary::open;
    else if (bc == "pbc")
      cfg.model.bc = Boundary::periodic;
    else
      throw ConfigError("unknown boundary condition '" + bc + "'");
    if (!tl.empty()) cfg.model.tl = parse_complex(tl);
    if (!tr.empty()) cfg.model.tr = parse_complex(tr);
    if (!tlp.empty()) cfg.model.tlp = parse_complex(tlp);
    if (!trp.empty()) cfg.model.trp = parse_complex(trp);
    if (n > 0) cfg.model.n = n;
    if (impurity_site > 0) {
      Impurity imp;
      imp.site = impurity_site;
      imp.strength = impurity_v.empty() ? cplx{} : parse_complex(impurity_v);
      cfg.model.impurity = imp;
    }
    if (tol > 0.0) cfg.tol = tol;
    if (seed_set) cfg.seed = seed;
    if (!format.empty()) cfg.format = format;
    if (!output.empty()) cfg.output = output;
    if (jobs > 0) cfg.jobs = jobs;
    if (cfg.format != "json" && cfg.format != "csv")
      throw ConfigError("format must be 'json' or 'csv'");
    return cfg;
  }
};

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opt;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  return opt;
}

int cmd_solve(const RunConfig& cfg) {
  const SpectralResult result = solve(cfg.model, solver_options(cfg));
  write_output(cfg, cfg.format == "csv" ? wavefunction_csv(result) : to_json(result));
  return 0;
}

int cmd_zeros(const RunConfig& cfg) {
  const SpectralResult result = solve(cfg.model, solver_options(cfg));
  write_output(cfg, zeros_csv(result));
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  OracleOptions opt;
  opt.seed = cfg.seed;
  const OracleSpectrum spectrum = oracle_spectrum(cfg.model, opt);
  write_output(cfg, to_json(spectrum, cfg.model));
  return 0;
}

int cmd_winding(const RunConfig& cfg, const std::string& energy_text, double radius) {
  WindingReport report;
  std::string name;
  if (cfg.model.kind == ModelKind::ssh) {
    report = winding_nu_a(cfg.model);
    name = "nu_A";
  } else {
    report = winding_w(cfg.model, parse_complex(energy_text), radius);
    name = "W";
  }
  write_output(cfg, to_json(report, name));
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  const SpectralResult result = solve(cfg.model, solver_options(cfg));
  OracleOptions oopt;
  oopt.seed = cfg.seed;
  const OracleSpectrum spectrum = oracle_spectrum(cfg.model, oopt);
  const double diameter = std::max(spectrum.diameter(), 1e-12);

  std::vector<cplx> pool = spectrum.eigenvalues;
  double max_diff = 0.0;
  for (const EigenPair& p : result.pairs) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double d = std::abs(pool[i] - p.energy);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    max_diff = std::max(max_diff, bd);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }

  double min_overlap = 1.0;
  for (const EigenPair& p : result.pairs) {
    double nearest_other = std::numeric_limits<double>::infinity();
    for (const EigenPair& q : result.pairs)
      if (&q != &p) nearest_other = std::min(nearest_other, std::abs(q.energy - p.energy));
    if (nearest_other < 1e-6 * diameter) continue;  // overlap test targets simple eigenvalues
    const std::vector<cplx> reference = oracle_eigenvector(cfg.model, p.energy, oopt);
    cplx dot{};
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      dot += std::conj(reference[i]) * p.psi[i];
      na += std::norm(reference[i]);
      nb += std::norm(p.psi[i]);
    }
    min_overlap = std::min(min_overlap, std::abs(dot) / std::sqrt(na * nb));
  }

  std::ostringstream os;
  os << "{\"max_abs_dE\":" << format_number(max_diff)
     << ",\"relative_to_diameter\":" << format_number(max_diff / diameter)
     << ",\"min_overlap\":" << format_number(min_overlap) << "}";
  write_output(cfg, os.str());
  return 0;
}

struct SweepRecord {
  double v = 0.0;
  cplx energy;
  double abs_z1 = 0.0, abs_z2 = 0.0;
  int argmax_site = 0;
  std::string cls;
};

SweepRecord sweep_point(const ModelSpec& base, double v, const SolverOptions& opt) {
  ModelSpec m = base;
  m.impurity->strength = cplx{v, 0.0};
  const SpectralResult result = solve(m, opt);
  // Track the branch with the largest real part; for V > 0 it is the one
  // that splits off the band and becomes the impurity-bound state.
  const EigenPair* tracked = &result.pairs.front();
  for (const EigenPair& p : result.pairs)
    if (p.energy.real() > tracked->energy.real()) tracked = &p;
  SweepRecord rec;
  rec.v = v;
  rec.energy = tracked->energy;
  rec.abs_z1 = std::abs(tracked->z1);
  rec.abs_z2 = std::abs(tracked->z2);
  rec.argmax_site = tracked->argmax_site();
  const double band = opt.class_band;
  if (rec.abs_z1 > 1.0 + band)
    rec.cls = "boundary-localized";
  else if (rec.abs_z1 < 1.0 - band)
    rec.cls = (rec.argmax_site == base.impurity->site) ? "impurity-localized" : "extended";
  else
    rec.cls = "extended";
  return rec;
}

int cmd_sweep_impurity(const RunConfig& cfg, double v_from, double v_to, int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  ModelSpec base = cfg.model;
  if (!base.impurity) {
    Impurity imp;
    imp.site = std::max(1, base.n / 2);
    base.impurity = imp;
  }
  const SolverOptions opt = solver_options(cfg);

  std::vector<SweepRecord> records(static_cast<std::size_t>(steps));
  const int jobs = std::max(1, cfg.jobs);
  std::vector<std::future<void>> workers;
  std::atomic<int> next{0};
  for (int w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&]() {
      for (int i = next++; i < steps; i = next++) {
        const double v = v_from + (v_to - v_from) * i / (steps - 1);
        records[static_cast<std::size_t>(i)] = sweep_point(base, v, opt);
      }
    }));
  for (auto& w : workers) w.get();  // rethrows MissedRoots with the offending V context

  std::ostringstream os;
  os << "v,E_re,E_im,abs_z1,abs_z2,argmax_site,class\n";
  for (const SweepRecord& r : records)
    os << format_number(r.v) << "," << format_number(r.energy.real()) << ","
       << format_number(r.energy.imag()) << "," << format_number(r.abs_z1) << ","
       << format_number(r.abs_z2) << "," << r.argmax_site << "," << r.cls << "\n";
  write_output(cfg, os.str());
  return 0;
}

int cmd_ssh_phase(const RunConfig& cfg, const std::string& range_text) {
  double lo = 0.7, hi = 1.3;
  int steps = 50;
  if (!range_text.empty()) {
    const auto c1 = range_text.find(':'), c2 = range_text.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
      throw ConfigError("lambda range must be lo:hi:steps");
    lo = std::stod(range_text.substr(0, c1));
    hi = std::stod(range_text.substr(c1 + 1, c2 - c1 - 1));
    steps = std::stoi(range_text.substr(c2 + 1));
  }
  const SolverOptions opt = solver_options(cfg);
  const int n = cfg.model.n > 0 ? cfg.model.n : 20;

  std::ostringstream os;
  os << "lambda,nu_A,edge_pairs,min_abs_E\n";
  for (int i = 0; i < steps; ++i) {
    const double lam = lo + (hi - lo) * i / (steps - 1);
    ModelSpec m;
    m.kind = ModelKind::ssh;
    m.n = n;
    m.tl = 1.25 * lam;
    m.tr = lam / 1.25;
    m.tlp = 1.0;
    m.trp = 1.0;
    // Exactly at the transition the winding contour is degenerate; emit the
    // row without a winding value instead of aborting the sweep.
    std::string nu = "";
    try {
      nu = std::to_string(winding_nu_a(m).value);
    } catch (const ContourHitsZero&) {
    }
    const SpectralResult result = solve_ssh_obc(m, opt);
    int edge_pairs = 0;
    double min_abs_e = std::numeric_limits<double>::infinity();
    for (const EigenPair& p : result.pairs) {
      if (std::find(p.tags.begin(), p.tags.end(), "edge") != p.tags.end()) ++edge_pairs;
      min_abs_e = std::min(min_abs_e, std::abs(p.energy));
    }
    os << format_number(lam) << "," << nu << "," << edge_pairs << ","
       << format_number(min_abs_e) << "\n";
  }
  write_output(cfg, os.str());
  return 0;
}

int cmd_demo2d(const RunConfig& cfg, double k_x, double k_y, double hopping) {
  std::ostringstream os;
  os << "rho,residual_1d,residual_2d\n";
  for (const double rho : {0.9, 0.99, 0.999}) {
    RegularizedGF g;
    g.rho = rho;
    g.k_x = k_x;
    g.k_y = k_y;
    g.hopping = hopping;
    const double e1 = 2.0 * hopping * std::cos(k_x);
    const double e2 = 2.0 * hopping * (std::cos(k_x) + std::cos(k_y));
    os << format_number(rho) << "," << format_number(dispersion_residual_1d(g, e1)) << ","
       << format_number(dispersion_residual_2d(g, e2)) << "\n";
  }
  write_output(cfg, os.str());
  return 0;
}

int cmd_fib(const RunConfig& cfg) {
  RationalGF fib;
  fib.num = ComplexPoly::monomial(1);                      // z
  fib.den = ComplexPoly{{1.0, -1.0, -1.0}};                // 1 - z - z^2
  fib.label = "fibonacci";
  const SeriesWindow w = coefficients(fib, 20);

  RationalGF impulse = fib;
  impulse.num = ComplexPoly::monomial(1) + ComplexPoly::monomial(10);  // z (1 + z^9)
  const SeriesWindow wi = coefficients(impulse, 20);

  const std::vector<cplx> zeros = quadratic_roots(-1.0, -1.0, 1.0);

  std::ostringstream os;
  os << "m,b_m,b_m_impulse\n";
  for (int m = 0; m <= 20; ++m)
    os << m << "," << format_number(w.coeffs[static_cast<std::size_t>(m)].real()) << ","
       << format_number(wi.coeffs[static_cast<std::size_t>(m)].real()) << "\n";
  os << "# kernel zeros: z1 = " << format_number(std::max(zeros[0].real(), zeros[1].real()))
     << ", z2 = " << format_number(std::min(zeros[0].real(), zeros[1].real())) << "\n";
  write_output(cfg, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generating-function solver for 1D lattice models"};
  app.require_subcommand(1);

  ModelFlags solve_flags, zeros_flags, oracle_flags, winding_flags, compare_flags;
  ModelFlags sweep_flags, phase_flags, demo_flags, fib_flags;

  auto* solve_cmd = app.add_subcommand("solve", "solve a model and emit eigenpairs");
  solve_flags.attach(solve_cmd);

  auto* zeros_cmd = app.add_subcommand("zeros", "emit the P/Q zero scatter");
  zeros_flags.attach(zeros_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "dense reference spectrum");
  oracle_flags.attach(oracle_cmd);

  std::string winding_energy = "0";
  double winding_radius = 1.0;
  auto* winding_cmd = app.add_subcommand("winding", "winding number diagnostics");
  winding_flags.attach(winding_cmd);
  winding_cmd->add_option("--energy", winding_energy, "reference energy E for W(E)");
  winding_cmd->add_option("--radius", winding_radius, "contour radius for W(E)");

  auto* compare_cmd = app.add_subcommand("compare", "solver vs oracle matching report");
  compare_flags.attach(compare_cmd);

  double v_from = 0.0, v_to = 0.8;
  int v_steps = 33;
  auto* sweep_cmd = app.add_subcommand("sweep-impurity", "impurity strength sweep");
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->add_option("--v-from", v_from, "sweep start");
  sweep_cmd->add_option("--v-to", v_to, "sweep end");
  sweep_cmd->add_option("--v-steps", v_steps, "number of sweep points");

  std::string lambda_range;
  auto* phase_cmd = app.add_subcommand("ssh-phase", "SSH topological phase table");
  phase_flags.attach(phase_cmd);
  phase_cmd->add_option("--lambda", lambda_range, "lambda range lo:hi:steps");

  double demo_kx = 0.7, demo_ky = -0.4, demo_t = 1.0;
  auto* demo_cmd = app.add_subcommand("demo-2d", "regularised infinite-lattice residuals");
  demo_flags.attach(demo_cmd);
  demo_cmd->add_option("--kx", demo_kx, "momentum k_x");
  demo_cmd->add_option("--ky", demo_ky, "momentum k_y");
  demo_cmd->add_option("--t", demo_t, "hopping");

  auto* fib_cmd = app.add_subcommand("fib", "Fibonacci generating-function demo");
  fib_flags.attach(fib_cmd);

  try {
    app.parse(argc, argv);
    if (solve_cmd->parsed()) return cmd_solve(solve_flags.resolve());
    if (zeros_cmd->parsed()) return cmd_zeros(zeros_flags.resolve());
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_flags.resolve());
    if (winding_cmd->parsed())
      return cmd_winding(winding_flags.resolve(), winding_energy, winding_radius);
    if (compare_cmd->parsed()) return cmd_compare(compare_flags.resolve());
    if (sweep_cmd->parsed())
      return cmd_sweep_impurity(sweep_flags.resolve(), v_from, v_to, v_steps);
    if (phase_cmd->parsed()) return cmd_ssh_phase(phase_flags.resolve(), lambda_range);
    if (demo_cmd->parsed()) return cmd_demo2d(demo_flags.resolve(), demo_kx, demo_ky, demo_t);
    if (fib_cmd->parsed()) return cmd_fib(fib_flags.resolve());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
