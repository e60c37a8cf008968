#include "rysint/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace rysint {

namespace {

void put_f32(std::uint8_t* p, float v) {
  const std::uint32_t u = std::bit_cast<std::uint32_t>(v);
  p[0] = static_cast<std::uint8_t>(u);
  p[1] = static_cast<std::uint8_t>(u >> 8);
  p[2] = static_cast<std::uint8_t>(u >> 16);
  p[3] = static_cast<std::uint8_t>(u >> 24);
}

float get_f32(const std::uint8_t* p) {
  const std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                          (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) |
                          (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(u);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int clamp_threads(int threads, std::size_t work) {
  if (threads < 1) threads = 1;
  if (static_cast<std::size_t>(threads) > work && work > 0)
    threads = static_cast<int>(work);
  return threads;
}

}  // namespace

std::vector<std::array<double, 3>> lattice_sites(const LatticeSpec& spec) {
  if (spec.dims[0] < 1 || spec.dims[1] < 1 || spec.dims[2] < 1)
    throw std::domain_error("lattice_sites: dims must be positive");
  if (!(spec.spacing_angstrom > 0.0))
    throw std::domain_error("lattice_sites: spacing must be positive");
  const double a = spec.spacing_angstrom * kBohrPerAngstrom;
  std::vector<std::array<double, 3>> sites;
  sites.reserve(static_cast<std::size_t>(spec.dims[0]) * spec.dims[1] * spec.dims[2]);
  for (int z = 0; z < spec.dims[2]; ++z)
    for (int y = 0; y < spec.dims[1]; ++y)
      for (int x = 0; x < spec.dims[0]; ++x)
        sites.push_back({x * a, y * a, z * a});
  return sites;
}

std::size_t num_lattice_quartets(const LatticeSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(spec.dims[0]) * spec.dims[1] *
                        spec.dims[2];
  return n * n * n * n;
}

QuartetInput lattice_quartet(const std::vector<std::array<double, 3>>& sites,
                             const QuartetClass& cls, double alpha, std::size_t index) {
  const std::size_t n = sites.size();
  const std::size_t d = index % n;
  const std::size_t c = (index / n) % n;
  const std::size_t b = (index / (n * n)) % n;
  const std::size_t a = index / (n * n * n);
  if (a >= n) throw std::out_of_range("lattice_quartet: index out of range");
  QuartetInput q;
  q.shells[0] = {sites[a], alpha, cls.la};
  q.shells[1] = {sites[b], alpha, cls.lb};
  q.shells[2] = {sites[c], alpha, cls.lc};
  q.shells[3] = {sites[d], alpha, cls.ld};
  return q;
}

std::array<std::uint8_t, kRecordBytes> encode_record(const QuartetInput& q,
                                                     const RysNodeSet& rys) {
  std::array<std::uint8_t, kRecordBytes> rec{};
  std::uint8_t* p = rec.data();
  for (int s = 0; s < 4; ++s)
    for (int x = 0; x < 3; ++x)
      put_f32(p + 4 * (3 * s + x), static_cast<float>(q.shells[s].center[x]));
  for (int s = 0; s < 4; ++s)
    put_f32(p + 4 * (12 + s), static_cast<float>(q.shells[s].exponent));
  for (int mu = 0; mu < rys.order; ++mu) {
    put_f32(p + 64 + 8 * mu, static_cast<float>(rys.roots[mu]));
    put_f32(p + 64 + 8 * mu + 4, static_cast<float>(rys.weights[mu]));
  }
  return rec;
}

std::pair<QuartetInput, RysNodeSet> decode_record(
    std::span<const std::uint8_t, kRecordBytes> rec, const QuartetClass& cls) {
  if (!cls.valid()) throw std::out_of_range("decode_record: invalid quartet class");
  QuartetInput q;
  const std::uint8_t* p = rec.data();
  for (int s = 0; s < 4; ++s) {
    for (int x = 0; x < 3; ++x)
      q.shells[s].center[x] = get_f32(p + 4 * (3 * s + x));
    q.shells[s].exponent = get_f32(p + 4 * (12 + s));
    q.shells[s].l = (s == 0 ? cls.la : s == 1 ? cls.lb : s == 2 ? cls.lc : cls.ld);
    if (!std::isfinite(q.shells[s].exponent) || q.shells[s].exponent <= 0.0f ||
        !std::isfinite(q.shells[s].center[0]) || !std::isfinite(q.shells[s].center[1]) ||
        !std::isfinite(q.shells[s].center[2]))
      throw std::runtime_error("decode_record: malformed record (non-finite field)");
  }

  const int order = cls.n_rys();
  bool have_roots = false;
  for (int mu = 0; mu < order && !have_roots; ++mu)
    have_roots = get_f32(p + 64 + 8 * mu) != 0.0f || get_f32(p + 64 + 8 * mu + 4) != 0.0f;
  if (!have_roots) return {q, prepare_quartet_rys(q)};

  RysNodeSet rys;
  rys.order = order;
  rys.t_arg = rys_argument(q);
  for (int mu = 0; mu < order; ++mu) {
    rys.roots[mu] = get_f32(p + 64 + 8 * mu);
    rys.weights[mu] = get_f32(p + 64 + 8 * mu + 4);
    if (!(rys.roots[mu] > 0.0 && rys.roots[mu] < 1.0) || !(rys.weights[mu] > 0.0))
      throw std::runtime_error("decode_record: malformed record (bad roots/weights)");
  }
  return {q, rys};
}

std::size_t stream_bytes_per_quartet(const QuartetClass& cls, BitWidth n) {
  return 4 + static_cast<std::size_t>(chunk_count(num_eriq(cls), n)) * kChunkBytes;
}

BenchStats run_class(const QuartetClass& cls,
                     const std::function<QuartetInput(std::size_t)>& source,
                     std::size_t count, BitWidth n, int threads, PrecisionMode mode,
                     std::vector<std::uint8_t>* stream,
                     const std::function<RysNodeSet(std::size_t)>& roots) {
  if (!cls.valid()) throw std::out_of_range("run_class: invalid quartet class");
  threads = clamp_threads(threads, count);

  const std::size_t per_quartet = stream_bytes_per_quartet(cls, n);
  if (stream) stream->assign(count * per_quartet, 0);

  std::vector<double> prep_time(threads, 0.0), kern_time(threads, 0.0);
  const double wall0 = now_seconds();

  auto worker = [&](int tid) {
    const std::size_t lo = count * tid / threads;
    const std::size_t hi = count * (tid + 1) / threads;
    double prep = 0.0, kern = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const QuartetInput q = source(i);
      const double t0 = now_seconds();
      const RysNodeSet rys = roots ? roots(i) : prepare_quartet_rys(q);
      const double t1 = now_seconds();
      const QuartetERIs eris = compute_quartet(q, rys, mode);
      const CompressedQuartet c = compress(eris, n);
      if (stream) {
        std::uint8_t* out = stream->data() + i * per_quartet;
        put_f32(out, c.epsilon);
        std::memcpy(out + 4, c.chunks.data(), c.chunks.size());
      }
      const double t2 = now_seconds();
      prep += t1 - t0;
      kern += t2 - t1;
    }
    prep_time[tid] = prep;
    kern_time[tid] = kern;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }

  BenchStats s;
  s.cls = cls;
  s.bits = n.n;
  s.threads = threads;
  s.quartets = count;
  s.eris = count * static_cast<std::size_t>(num_eriq(cls));
  s.wall_seconds = now_seconds() - wall0;
  s.prep_seconds = *std::max_element(prep_time.begin(), prep_time.end());
  s.kernel_seconds = *std::max_element(kern_time.begin(), kern_time.end());
  if (s.wall_seconds > 0.0) s.geris_wall = s.eris / s.wall_seconds * 1e-9;
  if (s.kernel_seconds > 0.0) s.geris_kernel = s.eris / s.kernel_seconds * 1e-9;
  return s;
}

ValidationReport validate_class(const QuartetClass& cls,
                                const std::function<QuartetInput(std::size_t)>& source,
                                std::size_t count, std::size_t sample_size, BitWidth n,
                                std::uint64_t seed, PrecisionMode mode, int threads) {
  if (!cls.valid()) throw std::out_of_range("validate_class: invalid quartet class");
  if (count == 0) throw std::domain_error("validate_class: empty quartet set");
  sample_size = std::min(sample_size, count);
  threads = clamp_threads(threads, sample_size);

  std::vector<std::size_t> picks(sample_size);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dist(0, count - 1);
  for (auto& p : picks) p = dist(rng);

  std::mutex mtx;
  ValidationReport rep;
  rep.cls = cls;
  rep.bits = n.n;
  rep.samples = sample_size;

  auto worker = [&](int tid) {
    const std::size_t lo = sample_size * tid / threads;
    const std::size_t hi = sample_size * (tid + 1) / threads;
    double max_abs = 0.0, max_quant = 0.0;
    bool bound_ok = true;
    for (std::size_t s = lo; s < hi; ++s) {
      const QuartetInput q = source(picks[s]);
      const QuartetERIs eris = compute_quartet(q, mode);
      const CompressedQuartet c = compress(eris, n);
      const std::vector<double> dec = decompress(c);
      const OracleResult ref = md_eri(q);
      const double bound = 0.5 * c.epsilon * (1.0 + 1e-6);
      for (int i = 0; i < eris.count(); ++i) {
        max_abs = std::max(max_abs, std::fabs(dec[i] - ref.values[i]));
        const double qerr = std::fabs(dec[i] - eris.value(i));
        max_quant = std::max(max_quant, qerr);
        if (qerr > bound) bound_ok = false;
      }
    }
    std::lock_guard<std::mutex> lock(mtx);
    rep.max_abs_error = std::max(rep.max_abs_error, max_abs);
    rep.max_quant_error = std::max(rep.max_quant_error, max_quant);
    rep.quant_bound_ok = rep.quant_bound_ok && bound_ok;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  return rep;
}

}  // namespace rysint
