#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rysint/kernel.hpp"

namespace rysint {

inline constexpr int kChunkBytes = 64;   // one 512-bit chunk
inline constexpr int kChunkBits = 512;

// Bits per quantized ERI code; 12 and 16 are the evaluated defaults.
struct BitWidth {
  int n;

  explicit BitWidth(int bits);
  int max_code() const { return (1 << (n - 1)) - 1; }
  int codes_per_chunk() const { return kChunkBits / n; }
};

int chunk_count(int n_eriq, BitWidth n);  // n_CS

// Quantization step: eps = b_max / (2^{n-1} - 1), reported in single
// precision as in the 32-bit output field.  b_max = 0 yields eps = 0.
float quantum_value(double b_max, BitWidth n);

// Nearest-integer codes (round half away from zero) in units of the
// quantum value; |code| <= 2^{n-1} - 1.
std::vector<std::int64_t> quantize(const QuartetERIs& values, BitWidth n);

// Consecutive little-endian two's-complement codes, floor(512/n) per
// chunk, code 0 in the lowest-order bits, per-chunk tail padding zeroed.
std::vector<std::uint8_t> pack(std::span<const std::int64_t> codes, BitWidth n);
std::vector<std::int64_t> unpack(std::span<const std::uint8_t> chunks, int count,
                                 BitWidth n);

// Per-quartet scale plus packed codes in Table-II value order.
struct CompressedQuartet {
  float epsilon = 0.0f;
  int bits = 16;
  int count = 0;  // n_ERIQ
  std::vector<std::uint8_t> chunks;  // chunk_count * 64 bytes

  int num_chunks() const { return static_cast<int>(chunks.size()) / kChunkBytes; }
};

CompressedQuartet compress(const QuartetERIs& values, BitWidth n);

// values'_i = code_i * eps; the round-trip error of every value is
// bounded by eps/2 * (1 + 1e-6).
std::vector<double> decompress(const CompressedQuartet& c);

}  // namespace rysint
