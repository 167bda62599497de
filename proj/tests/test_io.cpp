#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "dnls/io.hpp"

using namespace dnls;

TEST_CASE("ensemble round trip") {
  MeasureConfig cfg;
  cfg.cutoff = 6;
  cfg.mass_cutoff = 2.5;
  cfg.beta = 1.0;
  cfg.which = MeasureConfig::Which::nu;
  WeightedEnsemble ens = sample_rho(cfg, 91, 25);

  const std::string prefix =
      (std::filesystem::temp_directory_path() / "dnlsgm_io_test").string();
  save_ensemble(ens, prefix);
  CHECK(std::filesystem::exists(prefix + ".bin"));
  CHECK(std::filesystem::exists(prefix + ".json"));
  // 25 samples x 13 modes x 2 doubles
  CHECK(std::filesystem::file_size(prefix + ".bin") == 25u * 13u * 2u * 8u);

  WeightedEnsemble back = load_ensemble(prefix);
  CHECK(back.samples.size() == ens.samples.size());
  CHECK(back.seed == ens.seed);
  CHECK(back.config.cutoff == cfg.cutoff);
  CHECK(back.config.mass_cutoff == cfg.mass_cutoff);
  CHECK(back.config.beta == cfg.beta);
  CHECK(back.config.which == cfg.which);
  for (size_t i = 0; i < ens.samples.size(); ++i) {
    CHECK(back.log_weights[i] == ens.log_weights[i]);
    for (int n = -6; n <= 6; ++n) {
      CHECK(back.samples[i].mode(n) == ens.samples[i].mode(n));
    }
  }
  std::remove((prefix + ".bin").c_str());
  std::remove((prefix + ".json").c_str());
}

TEST_CASE("missing file throws") {
  CHECK_THROWS(load_ensemble("/nonexistent/dnlsgm_missing"));
}
