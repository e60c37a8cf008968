#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rysint/compress.hpp"
#include "rysint/kernel.hpp"
#include "rysint/oracle.hpp"

namespace rysint {

// Synthetic benchmark system: identical primitive shells on a cubic
// lattice, no screening.
struct LatticeSpec {
  std::array<int, 3> dims{4, 4, 2};
  double spacing_angstrom = 1.0;
  double exponent = 1.5;                 // Bohr^-2, shared by all shells
  std::vector<int> shells{0, 1, 2, 3};   // one shell per L per site
};

// Site positions in Bohr, x fastest.
std::vector<std::array<double, 3>> lattice_sites(const LatticeSpec& spec);

// Ordered, unscreened site quartet enumeration: index runs over
// n_sites^4 with the a-site slowest.
std::size_t num_lattice_quartets(const LatticeSpec& spec);
QuartetInput lattice_quartet(const std::vector<std::array<double, 3>>& sites,
                             const QuartetClass& cls, double alpha, std::size_t index);

// 128-byte input record: two 512-bit words, little-endian single
// precision.  Word 1: 12 center coordinates (a,b,c,d x x,y,z), then 4
// exponents.  Word 2: up to 7 (root, weight) pairs, zero padded.
inline constexpr std::size_t kRecordBytes = 128;

std::array<std::uint8_t, kRecordBytes> encode_record(const QuartetInput& q,
                                                     const RysNodeSet& rys);
// The class is carried out of band (one stream per class).  Records
// whose second word is all zero get fresh roots/weights from the
// geometry.
std::pair<QuartetInput, RysNodeSet> decode_record(
    std::span<const std::uint8_t, kRecordBytes> rec, const QuartetClass& cls);

// Byte size of one quartet in the compressed output stream.
std::size_t stream_bytes_per_quartet(const QuartetClass& cls, BitWidth n);

struct BenchStats {
  QuartetClass cls;
  int bits = 16;
  int threads = 1;
  std::size_t quartets = 0;
  std::size_t eris = 0;
  double wall_seconds = 0.0;     // everything
  double prep_seconds = 0.0;     // host-side roots/weights
  double kernel_seconds = 0.0;   // compute + compress + store
  double geris_wall = 0.0;
  double geris_kernel = 0.0;     // excluding host preparation
};

// Computes and compresses quartets [0, count) delivered by the source
// callback; the stream layout (epsilon then chunks, input order) is
// independent of the thread count.  When a roots callback is given its
// node sets are used instead of fresh host-side preparation (record
// files carry roots in word 2).
BenchStats run_class(const QuartetClass& cls,
                     const std::function<QuartetInput(std::size_t)>& source,
                     std::size_t count, BitWidth n, int threads, PrecisionMode mode,
                     std::vector<std::uint8_t>* stream,
                     const std::function<RysNodeSet(std::size_t)>& roots = {});

struct ValidationReport {
  QuartetClass cls;
  int bits = 16;
  std::size_t samples = 0;
  double max_abs_error = 0.0;      // decompressed vs oracle, Hartree
  double max_quant_error = 0.0;    // decompressed vs own kernel values
  bool quant_bound_ok = true;      // max_quant_error <= eps/2 per quartet
};

// Decompressed-output accuracy against the double-precision oracle on
// sampled quartets.
ValidationReport validate_class(const QuartetClass& cls,
                                const std::function<QuartetInput(std::size_t)>& source,
                                std::size_t count, std::size_t sample_size, BitWidth n,
                                std::uint64_t seed, PrecisionMode mode, int threads);

}  // namespace rysint
