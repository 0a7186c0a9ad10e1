#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pgg {

/// SplitMix64. Tiny and platform-stable, which is the whole point: seed
/// derivation, scripted agents, and bootstrap resampling must reproduce
/// bit-identically across compilers, so std:: distributions are out.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform on [lo, hi] via modulo. Ranges here are tiny (an endowment),
  /// so modulo bias is negligible next to cross-platform stability.
  int next_int(int lo, int hi);

  /// Uniform on [0, 1).
  double next_unit();

 private:
  std::uint64_t state_;
};

/// The SplitMix64 output finalizer applied to (master_seed + (index+1) * gamma)
/// with the golden-gamma constant. Adjacent indices land far apart, and game i
/// of a batch is reproducible in isolation.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// FNV-1a 64-bit. The stable content hash behind fixture keys and template
/// checksums.
std::uint64_t fnv1a64(std::string_view bytes);

/// Lower-case 16-digit hex, zero padded.
std::string hash_hex(std::uint64_t h);

}  // namespace pgg
