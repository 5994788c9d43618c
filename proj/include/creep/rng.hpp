#pragma once

#include <array>
#include <cstdint>

namespace creep {

using Philox4x32Ctr = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds.
Philox4x32Ctr philox4x32_10(Philox4x32Ctr ctr, Philox4x32Key key);

/// Well-known substream ids. Draws for (seed, path, substream) never overlap
/// those of any other triple.
enum Substream : std::uint32_t {
  kStreamKill = 0,
  kStreamY = 1,
  kStreamZ = 2,
  kStreamGrid = 3,
  kStreamAux = 4,
  kStreamRouteB = 8,
};

/// Counter-based stream for a single (master seed, path index, substream).
/// The sequence is a pure function of those three numbers.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t path, std::uint32_t substream);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Exponential with unit mean.
  double exponential();
  /// Standard normal (Box-Muller, pairs cached).
  double normal();

 private:
  void refill();

  Philox4x32Key key_;
  Philox4x32Ctr ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace creep
