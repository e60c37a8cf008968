#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rysint/compress.hpp"
#include "rysint/kernel.hpp"

using namespace rysint;

namespace {

QuartetERIs make_eris(std::vector<double> vals) {
  QuartetERIs e;
  e.n_ab = static_cast<int>(vals.size());
  e.padded_ab = pow2_ceil(e.n_ab);
  e.n_cd = 1;
  e.storage = std::move(vals);
  e.storage.resize(e.padded_ab, 0.0);
  for (double v : e.storage) e.b_max = std::max(e.b_max, std::fabs(v));
  return e;
}

}  // namespace

TEST_CASE("quantum value") {
  CHECK(quantum_value(1.0, BitWidth(16)) == doctest::Approx(1.0 / 32767.0).epsilon(1e-7));
  CHECK(quantum_value(1.0, BitWidth(12)) == doctest::Approx(1.0 / 2047.0).epsilon(1e-7));
  CHECK(quantum_value(0.0, BitWidth(16)) == 0.0f);
  CHECK_THROWS_AS(quantum_value(-1.0, BitWidth(16)),
                  std::domain_error);
}

TEST_CASE("bit width bounds") {
  CHECK(BitWidth(16).max_code() == 32767);
  CHECK(BitWidth(12).max_code() == 2047);
  CHECK(BitWidth(16).codes_per_chunk() == 32);
  CHECK(BitWidth(12).codes_per_chunk() == 42);
  CHECK_THROWS_AS(BitWidth(1), std::out_of_range);
  CHECK_THROWS_AS(BitWidth(33), std::out_of_range);
}

TEST_CASE("chunk counts") {
  CHECK(chunk_count(10000, BitWidth(16)) == 313);  // ceil(10000/32)
  CHECK(chunk_count(10000, BitWidth(12)) == 239);  // ceil(10000/42)
  CHECK(chunk_count(81, BitWidth(16)) == 3);
  CHECK(chunk_count(1, BitWidth(16)) == 1);
  CHECK(chunk_count(32, BitWidth(16)) == 1);
  CHECK(chunk_count(33, BitWidth(16)) == 2);
}

TEST_CASE("quantization rounds half away from zero") {
  // b_max = 32767 makes the 16-bit quantum exactly 1.0.
  const BitWidth n(16);
  QuartetERIs e = make_eris({0.4, 0.6, 0.5, -0.5, -0.4, 32767.0, -32767.0, 1234.49});
  const auto codes = quantize(e, n);
  CHECK(codes[0] == 0);
  CHECK(codes[1] == 1);
  CHECK(codes[2] == 1);
  CHECK(codes[3] == -1);
  CHECK(codes[4] == 0);
  CHECK(codes[5] == 32767);
  CHECK(codes[6] == -32767);
  CHECK(codes[7] == 1234);
}

TEST_CASE("extreme values clamp to the symmetric code range") {
  QuartetERIs e = make_eris({3.0, -3.0, 1.4});
  for (int bits : {8, 12, 16}) {
    const auto codes = quantize(e, BitWidth(bits));
    const int m = BitWidth(bits).max_code();
    CHECK(codes[0] <= m);
    CHECK(codes[1] >= -m);
  }
}

TEST_CASE("explicit bit layout: little-endian, code 0 in lowest bits") {
  const std::vector<std::int64_t> codes = {1, -1, 2};
  const auto chunks = pack(codes, BitWidth(16));
  REQUIRE(chunks.size() == 64);
  // code 0 = 0x0001, code 1 = 0xffff, code 2 = 0x0002, rest zero.
  CHECK(chunks[0] == 0x01);
  CHECK(chunks[1] == 0x00);
  CHECK(chunks[2] == 0xff);
  CHECK(chunks[3] == 0xff);
  CHECK(chunks[4] == 0x02);
  CHECK(chunks[5] == 0x00);
  for (std::size_t i = 6; i < 64; ++i) CHECK(chunks[i] == 0);

  // 12-bit: codes straddle byte boundaries; 5 = 0x005, -2 = 0xffe.
  const auto c12 = pack(std::vector<std::int64_t>{5, -2}, BitWidth(12));
  CHECK(c12[0] == 0x05);         // low 8 bits of code 0
  CHECK(c12[1] == 0xe0);         // high 4 bits of code 0 | low 4 bits of code 1
  CHECK(c12[2] == 0xff);         // high 8 bits of code 1
}

TEST_CASE("pack/unpack is the identity on code vectors") {
  std::mt19937_64 rng(99);
  for (int bits = 2; bits <= 32; ++bits) {
    const BitWidth n(bits);
    const int m = n.max_code();
    std::uniform_int_distribution<std::int64_t> dist(-m, m);
    std::uniform_int_distribution<int> len(1, 3 * n.codes_per_chunk());
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::int64_t> codes(len(rng));
      for (auto& c : codes) c = dist(rng);
      const auto chunks = pack(codes, n);
      CHECK(chunks.size() ==
            static_cast<std::size_t>(chunk_count(codes.size(), n)) * kChunkBytes);
      const auto back = unpack(chunks, static_cast<int>(codes.size()), n);
      CHECK(back == codes);
    }
  }
}

TEST_CASE("unpack rejects malformed chunk buffers") {
  const auto chunks = pack(std::vector<std::int64_t>{1, 2, 3}, BitWidth(16));
  CHECK_THROWS_AS(unpack(chunks, 64, BitWidth(16)), std::invalid_argument);
}

TEST_CASE("round-trip error bounded by half a quantum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int bits : {8, 12, 16, 24}) {
    const BitWidth n(bits);
    std::vector<double> vals(200);
    for (auto& v : vals) v = dist(rng);
    const QuartetERIs e = make_eris(vals);
    const CompressedQuartet c = compress(e, n);
    CHECK(c.bits == bits);
    CHECK(c.count == 200);
    CHECK(c.num_chunks() == chunk_count(200, n));
    const auto back = decompress(c);
    const double bound = 0.5 * c.epsilon * (1.0 + 1e-6);
    for (int i = 0; i < c.count; ++i) CHECK(std::fabs(back[i] - e.value(i)) <= bound);
  }
}

TEST_CASE("scaling covariance: doubling the values doubles only epsilon") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> vals(50);
  for (auto& v : vals) v = dist(rng);
  std::vector<double> doubled = vals;
  for (auto& v : doubled) v *= 2.0;

  const QuartetERIs a = make_eris(vals), b = make_eris(doubled);
  const auto ca = quantize(a, BitWidth(16));
  const auto cb = quantize(b, BitWidth(16));
  CHECK(ca == cb);
  CHECK(quantum_value(b.b_max, BitWidth(16)) ==
        doctest::Approx(2.0 * quantum_value(a.b_max, BitWidth(16))).epsilon(1e-6));
}

TEST_CASE("all-zero quartet compresses exactly") {
  const QuartetERIs e = make_eris(std::vector<double>(10, 0.0));
  const CompressedQuartet c = compress(e, BitWidth(16));
  CHECK(c.epsilon == 0.0f);
  for (double v : decompress(c)) CHECK(v == 0.0);
}
