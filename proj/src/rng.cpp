#include "dnls/rng.hpp"

#include <cmath>

namespace dnls {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& ctr, const std::array<uint32_t, 2>& key) {
  uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * ctr[0];
  uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * ctr[2];
  std::array<uint32_t, 4> out;
  out[0] = static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
  out[1] = static_cast<uint32_t>(p1);
  out[2] = static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
  out[3] = static_cast<uint32_t>(p0);
  ctr = out;
}

}  // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t stream) {
  key_[0] = static_cast<uint32_t>(seed);
  key_[1] = static_cast<uint32_t>(seed >> 32);
  counter_[0] = 0;
  counter_[1] = 0;
  counter_[2] = static_cast<uint32_t>(stream);
  counter_[3] = static_cast<uint32_t>(stream >> 32);
}

std::array<uint32_t, 4> CounterRng::block() {
  std::array<uint32_t, 4> ctr = counter_;
  std::array<uint32_t, 2> key = key_;
  for (int r = 0; r < 10; ++r) {
    philox_round(ctr, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  if (++counter_[0] == 0) ++counter_[1];
  return ctr;
}

uint32_t CounterRng::next_u32() {
  if (buffer_pos_ == 4) {
    buffer_ = block();
    buffer_pos_ = 0;
  }
  return buffer_[static_cast<size_t>(buffer_pos_++)];
}

double CounterRng::uniform() {
  // 53-bit mantissa from two words, shifted into (0, 1).
  uint64_t hi = next_u32();
  uint64_t lo = next_u32();
  uint64_t bits = (hi << 21) ^ (lo >> 11);
  return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

double CounterRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

}  // namespace dnls
