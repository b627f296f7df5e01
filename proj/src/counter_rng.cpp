#include "trimcusum/counter_rng.hpp"

#include <stdexcept>
#include <string>

namespace trimcusum {

namespace {

__extension__ typedef unsigned __int128 uint128_t;

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = std::uint64_t{a} * std::uint64_t{b};
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    ctr = round(ctr, key);
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream, StreamDomain domain)
    : seed_(seed), stream_(stream), domain_(domain) {
  if (stream >= kMaxStreams) {
    throw std::out_of_range("stream index " + std::to_string(stream) + " exceeds counter space");
  }
}

std::uint64_t CounterStream::bits(std::uint64_t draw) const {
  if (draw >= kStride) {
    throw std::out_of_range("draw index " + std::to_string(draw) + " exceeds stream stride");
  }
  const std::uint64_t absolute = offset() + draw;
  const PhiloxCounter ctr{static_cast<std::uint32_t>(absolute),
                          static_cast<std::uint32_t>(absolute >> 32),
                          static_cast<std::uint32_t>(domain_), 0u};
  const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key);
  return (std::uint64_t{out[0]} << 32) | std::uint64_t{out[1]};
}

double CounterStream::uniform(std::uint64_t draw) const {
  const std::uint64_t k = bits(draw) >> 12;  // 52 bits
  return static_cast<double>(2 * k + 1) * 0x1p-53;
}

std::uint64_t CounterStream::below(std::uint64_t range, std::uint64_t draw) const {
  const uint128_t wide = static_cast<uint128_t>(bits(draw)) * range;
  return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace trimcusum
