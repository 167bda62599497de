#include "dnls/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dnls {

using nlohmann::json;

namespace {

const char* which_name(MeasureConfig::Which w) {
  switch (w) {
    case MeasureConfig::Which::rho: return "rho";
    case MeasureConfig::Which::nu: return "nu";
    default: return "mu";
  }
}

MeasureConfig::Which which_from(const std::string& s) {
  if (s == "rho") return MeasureConfig::Which::rho;
  if (s == "nu") return MeasureConfig::Which::nu;
  if (s == "mu") return MeasureConfig::Which::mu;
  throw std::runtime_error("unknown measure name: " + s);
}

}  // namespace

void save_ensemble(const WeightedEnsemble& ensemble, const std::string& prefix) {
  std::ofstream bin(prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + prefix + ".bin for writing");
  for (const SpectralField& f : ensemble.samples) {
    for (const cplx& c : f.coeffs()) {
      const double re = c.real(), im = c.imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
      bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
  }
  bin.close();

  json sidecar;
  sidecar["format_version"] = kFormatVersion;
  sidecar["N"] = ensemble.config.cutoff;
  sidecar["count"] = ensemble.samples.size();
  sidecar["seed"] = ensemble.seed;
  sidecar["config"] = {{"N", ensemble.config.cutoff},
                       {"mass_cutoff", ensemble.config.mass_cutoff},
                       {"beta", ensemble.config.beta},
                       {"which", which_name(ensemble.config.which)}};
  sidecar["log_weights"] = ensemble.log_weights;
  std::ofstream meta(prefix + ".json");
  if (!meta) throw std::runtime_error("cannot open " + prefix + ".json for writing");
  meta << sidecar.dump(2) << "\n";
}

WeightedEnsemble load_ensemble(const std::string& prefix) {
  std::ifstream meta(prefix + ".json");
  if (!meta) throw std::runtime_error("cannot open " + prefix + ".json");
  json sidecar = json::parse(meta);
  if (sidecar.at("format_version").get<int>() != kFormatVersion) {
    throw std::runtime_error("unsupported ensemble format version");
  }
  WeightedEnsemble e;
  e.seed = sidecar.at("seed").get<uint64_t>();
  const auto& cfg = sidecar.at("config");
  e.config.cutoff = cfg.at("N").get<int>();
  e.config.mass_cutoff = cfg.at("mass_cutoff").get<double>();
  e.config.beta = cfg.at("beta").get<double>();
  e.config.which = which_from(cfg.at("which").get<std::string>());
  e.log_weights = sidecar.at("log_weights").get<std::vector<double>>();
  const size_t count = sidecar.at("count").get<size_t>();

  std::ifstream bin(prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + prefix + ".bin");
  const int n_coeffs = 2 * e.config.cutoff + 1;
  for (size_t i = 0; i < count; ++i) {
    SpectralField f(e.config.cutoff);
    for (int k = 0; k < n_coeffs; ++k) {
      double re = 0.0, im = 0.0;
      bin.read(reinterpret_cast<char*>(&re), sizeof(double));
      bin.read(reinterpret_cast<char*>(&im), sizeof(double));
      f.coeffs()[static_cast<size_t>(k)] = cplx(re, im);
    }
    if (!bin) throw std::runtime_error("ensemble data file truncated");
    e.samples.push_back(std::move(f));
  }
  return e;
}

}  // namespace dnls
