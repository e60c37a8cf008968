#include "rysint/compress.hpp"

#include <cmath>
#include <stdexcept>

namespace rysint {

BitWidth::BitWidth(int bits) : n(bits) {
  if (bits < 2 || bits > 32)
    throw std::out_of_range("BitWidth: bits must be in [2, 32], got " +
                            std::to_string(bits));
}

int chunk_count(int n_eriq, BitWidth n) {
  const int per_chunk = n.codes_per_chunk();
  return (n_eriq + per_chunk - 1) / per_chunk;
}

float quantum_value(double b_max, BitWidth n) {
  if (!std::isfinite(b_max) || b_max < 0.0)
    throw std::domain_error("quantum_value: b_max must be finite and non-negative");
  return static_cast<float>(b_max / n.max_code());
}

std::vector<std::int64_t> quantize(const QuartetERIs& values, BitWidth n) {
  const double eps = quantum_value(values.b_max, n);
  const std::int64_t max_code = n.max_code();
  std::vector<std::int64_t> codes(values.count());
  if (eps == 0.0) return codes;  // all-zero quartet
  const double inv_eps = 1.0 / eps;
  for (int i = 0; i < values.count(); ++i) {
    const double v = values.value(i);
    if (!std::isfinite(v)) throw std::domain_error("quantize: non-finite ERI value");
    // ANINT: nearest integer, half away from zero.
    std::int64_t code = static_cast<std::int64_t>(std::round(v * inv_eps));
    if (code > max_code) code = max_code;
    if (code < -max_code) code = -max_code;
    codes[i] = code;
  }
  return codes;
}

std::vector<std::uint8_t> pack(std::span<const std::int64_t> codes, BitWidth n) {
  const int per_chunk = n.codes_per_chunk();
  const int n_chunks = chunk_count(static_cast<int>(codes.size()), n);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n_chunks) * kChunkBytes, 0);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::size_t chunk = i / per_chunk;
    const std::uint64_t mask = (n.n == 32) ? 0xffffffffu : ((1u << n.n) - 1u);
    const std::uint64_t bits = static_cast<std::uint64_t>(codes[i]) & mask;
    std::size_t bit_pos = chunk * kChunkBits + (i % per_chunk) * n.n;
    for (int b = 0; b < n.n; ++b, ++bit_pos)
      out[bit_pos >> 3] |= static_cast<std::uint8_t>(((bits >> b) & 1u) << (bit_pos & 7));
  }
  return out;
}

std::vector<std::int64_t> unpack(std::span<const std::uint8_t> chunks, int count,
                                 BitWidth n) {
  const int per_chunk = n.codes_per_chunk();
  if (chunks.size() != static_cast<std::size_t>(chunk_count(count, n)) * kChunkBytes)
    throw std::invalid_argument("unpack: malformed chunk count for " +
                                std::to_string(count) + " codes");
  std::vector<std::int64_t> codes(count);
  for (int i = 0; i < count; ++i) {
    const std::size_t chunk = i / per_chunk;
    std::size_t bit_pos = chunk * kChunkBits + (i % per_chunk) * n.n;
    std::uint64_t bits = 0;
    for (int b = 0; b < n.n; ++b, ++bit_pos)
      bits |= static_cast<std::uint64_t>((chunks[bit_pos >> 3] >> (bit_pos & 7)) & 1u) << b;
    // Sign-extend the n-bit two's-complement code.
    const std::uint64_t sign = 1ull << (n.n - 1);
    codes[i] = static_cast<std::int64_t>((bits ^ sign) - sign);
  }
  return codes;
}

CompressedQuartet compress(const QuartetERIs& values, BitWidth n) {
  CompressedQuartet c;
  c.epsilon = quantum_value(values.b_max, n);
  c.bits = n.n;
  c.count = values.count();
  c.chunks = pack(quantize(values, n), n);
  return c;
}

std::vector<double> decompress(const CompressedQuartet& c) {
  const BitWidth n(c.bits);
  const std::vector<std::int64_t> codes = unpack(c.chunks, c.count, n);
  std::vector<double> out(c.count);
  for (int i = 0; i < c.count; ++i) out[i] = codes[i] * static_cast<double>(c.epsilon);
  return out;
}

}  // namespace rysint
