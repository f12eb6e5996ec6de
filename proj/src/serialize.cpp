#include "gflat/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gflat/errors.hpp"

namespace gflat {

namespace {

using nlohmann::json;

std::string complex_json(cplx z) {
  return "[" + format_number(z.real()) + "," + format_number(z.imag()) + "]";
}

std::string model_json(const ModelSpec& m) {
  std::ostringstream os;
  os << "{\"kind\":\"" << (m.kind == ModelKind::ssh ? "ssh" : "hn") << "\"";
  os << ",\"bc\":\"" << (m.bc == Boundary::open ? "obc" : "pbc") << "\"";
  os << ",\"tl\":" << complex_json(m.tl) << ",\"tr\":" << complex_json(m.tr);
  if (m.kind == ModelKind::ssh)
    os << ",\"tlp\":" << complex_json(m.tlp) << ",\"trp\":" << complex_json(m.trp);
  os << ",\"n\":" << m.n;
  if (m.impurity)
    os << ",\"impurity\":{\"site\":" << m.impurity->site
       << ",\"v\":" << complex_json(m.impurity->strength) << "}";
  os << "}";
  return os.str();
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return cplx{j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex values must be numbers or [re, im] pairs");
}

ModelSpec model_from(const json& j) {
  ModelSpec m;
  const std::string kind = j.value("kind", "hn");
  if (kind == "hn")
    m.kind = ModelKind::hatano_nelson;
  else if (kind == "ssh")
    m.kind = ModelKind::ssh;
  else
    throw ConfigError("model kind must be 'hn' or 'ssh'");
  const std::string bc = j.value("bc", "obc");
  if (bc == "obc")
    m.bc = Boundary::open;
  else if (bc == "pbc")
    m.bc = Boundary::periodic;
  else
    throw ConfigError("bc must be 'obc' or 'pbc'");
  if (j.contains("tl")) m.tl = complex_from_json(j.at("tl"));
  if (j.contains("tr")) m.tr = complex_from_json(j.at("tr"));
  if (j.contains("tlp")) m.tlp = complex_from_json(j.at("tlp"));
  if (j.contains("trp")) m.trp = complex_from_json(j.at("trp"));
  m.n = j.value("n", 2);
  if (j.contains("impurity")) {
    Impurity imp;
    imp.site = j.at("impurity").value("site", 1);
    imp.strength = complex_from_json(j.at("impurity").at("v"));
    m.impurity = imp;
  }
  return m;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const SpectralResult& result) {
  std::ostringstream os;
  os << "{\"model\":" << model_json(result.model);
  os << ",\"tolerances\":{\"solver\":" << format_number(result.tolerance) << "}";
  os << ",\"seed\":" << result.seed;
  os << ",\"pairs\":[";
  for (std::size_t i = 0; i < result.pairs.size(); ++i) {
    const EigenPair& p = result.pairs[i];
    if (i) os << ",";
    os << "{\"E\":" << complex_json(p.energy);
    os << ",\"z1\":" << complex_json(p.z1) << ",\"z2\":" << complex_json(p.z2);
    os << ",\"psi\":[";
    for (std::size_t m = 0; m < p.psi.size(); ++m) {
      if (m) os << ",";
      os << complex_json(p.psi[m]);
    }
    os << "],\"residuals\":{\"cancellation\":" << format_number(p.residuals.cancellation)
       << ",\"recurrence\":" << format_number(p.residuals.recurrence) << "}";
    os << ",\"tags\":[";
    for (std::size_t t = 0; t < p.tags.size(); ++t) {
      if (t) os << ",";
      os << "\"" << p.tags[t] << "\"";
    }
    os << "]}";
  }
  os << "]";
  os << ",\"diagnostics\":{\"gbz_radius\":" << format_number(result.gbz_radius);
  os << ",\"pairing\":[";
  for (std::size_t i = 0; i < result.pairing.size(); ++i) {
    const ZeroPairing& zp = result.pairing[i];
    if (i) os << ",";
    os << "{\"q_zero\":" << complex_json(zp.q_zero) << ",\"p_zero\":" << complex_json(zp.p_zero)
       << ",\"distance\":" << format_number(zp.distance) << "}";
  }
  os << "]}}";
  return os.str();
}

std::string to_json(const OracleSpectrum& spectrum, const ModelSpec& model) {
  std::ostringstream os;
  os << "{\"model\":" << model_json(model);
  os << ",\"sample_radius\":" << format_number(spectrum.sample_radius);
  os << ",\"eigenvalues\":[";
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    if (i) os << ",";
    os << complex_json(spectrum.eigenvalues[i]);
  }
  os << "]}";
  return os.str();
}

std::string to_json(const WindingReport& report, const std::string& name) {
  std::ostringstream os;
  os << "{\"winding\":\"" << name << "\"";
  os << ",\"value\":" << report.value;
  os << ",\"contour_radius\":" << format_number(report.contour_radius);
  os << ",\"quadrature_points\":" << report.quadrature_points;
  os << ",\"raw\":" << complex_json(report.raw_integral);
  os << ",\"agreement_gap\":" << format_number(report.agreement_gap) << "}";
  return os.str();
}

std::string to_json(const RunConfig& config) {
  std::ostringstream os;
  os << "{\"model\":" << model_json(config.model);
  os << ",\"tol\":" << format_number(config.tol);
  os << ",\"seed\":" << config.seed;
  os << ",\"format\":\"" << config.format << "\"";
  os << ",\"output\":\"" << config.output << "\"";
  os << ",\"jobs\":" << config.jobs << "}";
  return os.str();
}

std::string zeros_csv(const SpectralResult& result) {
  std::ostringstream os;
  os << "# gbz_radius = " << format_number(result.gbz_radius) << "\n";
  os << "re,im,which,paired_with\n";
  // Q zeros first with their matched P zero, then the full P scatter.
  for (const ZeroPairing& zp : result.pairing) {
    os << format_number(zp.q_zero.real()) << "," << format_number(zp.q_zero.imag()) << ",Q,"
       << format_number(zp.distance) << "\n";
  }
  for (const ZeroPairing& zp : result.pairing) {
    os << format_number(zp.p_zero.real()) << "," << format_number(zp.p_zero.imag()) << ",P,\n";
  }
  return os.str();
}

std::string wavefunction_csv(const SpectralResult& result) {
  std::ostringstream os;
  os << "state,E_re,E_im,site,psi_re,psi_im\n";
  for (std::size_t i = 0; i < result.pairs.size(); ++i) {
    const EigenPair& p = result.pairs[i];
    for (std::size_t m = 0; m < p.psi.size(); ++m) {
      os << i << "," << format_number(p.energy.real()) << "," << format_number(p.energy.imag())
         << "," << (m + 1) << "," << format_number(p.psi[m].real()) << ","
         << format_number(p.psi[m].imag()) << "\n";
    }
  }
  return os.str();
}

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  if (j.contains("model")) c.model = model_from(j.at("model"));
  c.tol = j.value("tol", 1e-10);
  c.seed = j.value("seed", static_cast<std::uint64_t>(0x5eed));
  c.format = j.value("format", "json");
  c.output = j.value("output", "");
  c.jobs = j.value("jobs", 1);
  if (c.format != "json" && c.format != "csv")
    throw ConfigError("format must be 'json' or 'csv'");
  return c;
}

ModelSpec model_from_json(const std::string& text) {
  try {
    return model_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model is not valid JSON: ") + e.what());
  }
}

void revalidate_result_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw NumericalError(std::string("emitted result does not re-parse: ") + e.what());
  }
  const ModelSpec model = model_from(j.at("model"));
  const auto& pairs = j.at("pairs");
  const int expected = model.dimension();
  if (static_cast<int>(pairs.size()) != expected)
    throw NumericalError("pair count does not match the model dimension");

  const cplx ratio = model.kind == ModelKind::ssh
                         ? model.tl * model.tlp / (model.tr * model.trp)
                         : model.tl / model.tr;
  for (const auto& p : pairs) {
    const cplx z1 = complex_from_json(p.at("z1")), z2 = complex_from_json(p.at("z2"));
    if (std::abs(z1 * z2 - ratio) > 1e-10 * std::abs(ratio))
      throw NumericalError("z1 z2 invariant violated in emitted result");
    double peak = 0.0;
    for (const auto& amp : p.at("psi")) peak = std::max(peak, std::abs(complex_from_json(amp)));
    if (std::abs(peak - 1.0) > 1e-12)
      throw NumericalError("wavefunction is not max-amplitude normalised");
    if (p.at("residuals").at("recurrence").get<double>() > 1e-8 ||
        p.at("residuals").at("cancellation").get<double>() > 1e-8)
      throw NumericalError("residual bound violated in emitted result");
  }
}

}  // namespace gflat
