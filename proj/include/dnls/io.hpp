#ifndef DNLS_IO_HPP
#define DNLS_IO_HPP

#include <string>

#include "dnls/measures.hpp"

namespace dnls {

inline constexpr int kFormatVersion = 1;

/// Writes prefix.bin (raw little-endian float64, interleaved re/im,
/// mode-major per sample) and prefix.json (sidecar with N, count, seed,
/// config, format_version, log_weights).
void save_ensemble(const WeightedEnsemble& ensemble, const std::string& prefix);

WeightedEnsemble load_ensemble(const std::string& prefix);

}  // namespace dnls

#endif
