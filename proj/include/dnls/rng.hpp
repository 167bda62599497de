#ifndef DNLS_RNG_HPP
#define DNLS_RNG_HPP

#include <array>
#include <cstdint>

namespace dnls {

/// Philox4x32-10 counter-based generator. A stream is keyed by
/// (seed, stream index), so sample i of a run is bit-identical whether
/// the ensemble is generated serially or split across workers.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream);

  uint32_t next_u32();

  /// Uniform on (0, 1), never exactly 0.
  double uniform();

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

 private:
  std::array<uint32_t, 4> block();

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> counter_;
  std::array<uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace dnls

#endif
