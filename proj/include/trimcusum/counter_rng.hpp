#pragma once

// Counter-based random numbers (Philox4x32-10).
//
// Every draw is a pure function of (seed, stream, domain, draw index), so a
// replicate can be regenerated in isolation and parallel runs are
// bit-identical to serial ones regardless of scheduling.

#include <array>
#include <cstdint>

namespace trimcusum {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// Separates independent uses of the same seed (data generation vs resampling).
enum class StreamDomain : std::uint32_t {
  sampling = 0,
  resampling = 1,
};

/// A view of one stream in the counter space.
///
/// Stream `s` owns the absolute counters [s * kStride, (s + 1) * kStride).
/// Draw `i` maps to counter `offset() + i`; asking for i >= kStride throws, so
/// streams can never overlap.
class CounterStream {
 public:
  static constexpr std::uint64_t kStride = std::uint64_t{1} << 32;
  static constexpr std::uint64_t kMaxStreams = std::uint64_t{1} << 32;

  CounterStream(std::uint64_t seed, std::uint64_t stream,
                StreamDomain domain = StreamDomain::sampling);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t offset() const noexcept { return stream_ * kStride; }

  /// 64 random bits for draw `draw`.
  std::uint64_t bits(std::uint64_t draw) const;

  /// Uniform on the open interval (0,1): (2k+1) * 2^-53, so both u and 1-u are exact.
  double uniform(std::uint64_t draw) const;

  /// Integer in [0, range) by multiply-shift (bias below range / 2^64).
  std::uint64_t below(std::uint64_t range, std::uint64_t draw) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  StreamDomain domain_;
};

}  // namespace trimcusum
