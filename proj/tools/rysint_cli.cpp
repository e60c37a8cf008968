// Command-line front end: batch compute+compress, decompression,
// lattice benchmark, throughput model and FLOP reports, accuracy
// validation against the oracle.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rysint/bench.hpp"
#include "rysint/compress.hpp"
#include "rysint/gto.hpp"
#include "rysint/kernel.hpp"
#include "rysint/perf_model.hpp"

namespace {

using namespace rysint;

std::vector<QuartetClass> parse_class_list(const std::string& list) {
  // Comma/space separated "ab|cd" (or "abcd") names; "all" expands to
  // the 256 generic classes, "canonical" to the 55 canonical ones.
  if (list.empty() || list == "all") return all_classes();
  if (list == "canonical") return canonical_classes();
  std::vector<QuartetClass> out;
  std::string tok;
  std::istringstream is(list);
  while (std::getline(is, tok, ';')) {
    if (!tok.empty()) out.push_back(QuartetClass::parse(tok));
  }
  if (out.empty()) throw std::invalid_argument("unknown quartet class list: " + list);
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::map<int, double> read_fmax_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open f_max file: " + path);
  std::map<int, double> out;
  std::string cls_name;
  double mhz;
  while (f >> cls_name >> mhz) out[QuartetClass::parse(cls_name).index()] = mhz;
  return out;
}

PrecisionMode parse_mode(const std::string& s) {
  if (s == "single") return PrecisionMode::kSingle;
  if (s == "double") return PrecisionMode::kDouble;
  throw std::invalid_argument("invalid precision (expected single or double): " + s);
}

int cmd_compute(const std::string& cls_name, int bits, const std::string& precision,
                int threads, const std::string& input, const std::string& output) {
  const QuartetClass cls = QuartetClass::parse(cls_name);
  const BitWidth n(bits);
  const PrecisionMode mode = parse_mode(precision);
  const std::vector<std::uint8_t> raw = read_file(input);
  if (raw.size() % kRecordBytes != 0)
    throw std::runtime_error("malformed record file (size not a multiple of 128): " +
                             input);
  const std::size_t count = raw.size() / kRecordBytes;

  // Decode up front so the timed loop sees in-memory inputs.
  std::vector<QuartetInput> inputs(count);
  std::vector<RysNodeSet> roots(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::span<const std::uint8_t, kRecordBytes> rec(raw.data() + i * kRecordBytes,
                                                    kRecordBytes);
    std::tie(inputs[i], roots[i]) = decode_record(rec, cls);
    if (inputs[i].cls() != cls)
      throw std::runtime_error("record class mismatch in " + input);
  }

  std::vector<std::uint8_t> stream;
  BenchStats stats = run_class(
      cls, [&](std::size_t i) { return inputs[i]; }, count, n, threads, mode, &stream,
      [&](std::size_t i) { return roots[i]; });
  write_file(output, stream.data(), stream.size());
  std::printf("%zu quartets [%s], %zu ERIs -> %zu bytes (%s)\n", stats.quartets,
              cls.name().c_str(), stats.eris, stream.size(), output.c_str());
  return 0;
}

int cmd_decompress(const std::string& cls_name, int bits, const std::string& input,
                   const std::string& output) {
  const QuartetClass cls = QuartetClass::parse(cls_name);
  const BitWidth n(bits);
  const std::vector<std::uint8_t> raw = read_file(input);
  const std::size_t per_quartet = stream_bytes_per_quartet(cls, n);
  if (raw.size() % per_quartet != 0)
    throw std::runtime_error("malformed compressed stream (bad length): " + input);
  const std::size_t count = raw.size() / per_quartet;
  const int eriq = num_eriq(cls);

  std::vector<float> values;
  values.reserve(count * static_cast<std::size_t>(eriq));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* p = raw.data() + i * per_quartet;
    CompressedQuartet c;
    std::uint32_t eps_bits = static_cast<std::uint32_t>(p[0]) |
                             (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
    std::memcpy(&c.epsilon, &eps_bits, 4);
    c.bits = n.n;
    c.count = eriq;
    c.chunks.assign(p + 4, p + per_quartet);
    for (double v : decompress(c)) values.push_back(static_cast<float>(v));
  }
  write_file(output, values.data(), values.size() * sizeof(float));
  std::printf("%zu quartets [%s] -> %zu values (%s)\n", count, cls.name().c_str(),
              values.size(), output.c_str());
  return 0;
}

int cmd_bench(const std::string& classes, int bits, int threads,
              const std::string& precision, std::vector<int> dims, double spacing,
              double exponent, std::size_t limit, bool write_streams,
              const std::string& output_prefix) {
  const BitWidth n(bits);
  const PrecisionMode mode = parse_mode(precision);
  LatticeSpec spec;
  if (!dims.empty()) {
    if (dims.size() != 3) throw std::invalid_argument("--dims needs three integers");
    spec.dims = {dims[0], dims[1], dims[2]};
  }
  spec.spacing_angstrom = spacing;
  spec.exponent = exponent;
  const auto sites = lattice_sites(spec);
  std::size_t count = num_lattice_quartets(spec);
  if (limit > 0) count = std::min(count, limit);

  std::printf("%-8s %6s %10s %12s %12s %12s %10s %10s\n", "class", "bits", "quartets",
              "ERIs", "wall[s]", "kernel[s]", "GERIS", "GERIS(k)");
  for (const QuartetClass& cls : parse_class_list(classes)) {
    auto source = [&](std::size_t i) {
      return lattice_quartet(sites, cls, spec.exponent, i);
    };
    std::vector<std::uint8_t> stream;
    const BenchStats s = run_class(cls, source, count, n, threads, mode,
                                   write_streams ? &stream : nullptr);
    if (write_streams) {
      std::string path = output_prefix + cls.name();
      path.replace(path.find('|'), 1, "_");
      path += ".bin";
      write_file(path, stream.data(), stream.size());
    }
    std::printf("[%s] %6d %10zu %12zu %12.3f %12.3f %10.4f %10.4f\n",
                cls.name().c_str(), s.bits, s.quartets, s.eris, s.wall_seconds,
                s.kernel_seconds, s.geris_wall, s.geris_kernel);
  }
  return 0;
}

int cmd_perf_model(const std::string& classes, int bits, const std::string& fmax_path,
                   bool csv) {
  const BitWidth n(bits);
  std::map<int, double> fmax;
  if (!fmax_path.empty()) fmax = read_fmax_file(fmax_path);
  const auto rows = model_rows(parse_class_list(classes), n, fmax);
  std::fputs((csv ? render_model_csv(rows) : render_model_table(rows)).c_str(), stdout);
  return 0;
}

int cmd_flops(const std::string& classes, int bits, bool csv) {
  const BitWidth n(bits);
  if (csv)
    std::printf("class,n_ERIQ,setup,recurrence,quadrature,compress_store,total\n");
  else
    std::printf("%-8s %8s %10s %12s %12s %10s %12s\n", "class", "n_ERIQ", "setup",
                "recurrence", "quadrature", "compress", "total");
  for (const QuartetClass& cls : parse_class_list(classes)) {
    const FlopCounts f = count_flops(cls, n);
    if (csv)
      std::printf("%s,%d,%lld,%lld,%lld,%lld,%lld\n", cls.name().c_str(),
                  num_eriq(cls), f.setup.total(), f.recurrence.total(),
                  f.quadrature.total(), f.compress_store.total(), f.total().total());
    else
      std::printf("[%s] %8d %10lld %12lld %12lld %10lld %12lld\n", cls.name().c_str(),
                  num_eriq(cls), f.setup.total(), f.recurrence.total(),
                  f.quadrature.total(), f.compress_store.total(), f.total().total());
  }
  return 0;
}

int cmd_validate(const std::string& classes, int bits, std::size_t samples,
                 std::uint64_t seed, int threads, const std::string& precision,
                 std::vector<int> dims, double spacing, double exponent) {
  const BitWidth n(bits);
  const PrecisionMode mode = parse_mode(precision);
  LatticeSpec spec;
  spec.dims = {2, 2, 2};
  if (!dims.empty()) {
    if (dims.size() != 3) throw std::invalid_argument("--dims needs three integers");
    spec.dims = {dims[0], dims[1], dims[2]};
  }
  spec.spacing_angstrom = spacing;
  spec.exponent = exponent;
  const auto sites = lattice_sites(spec);
  const std::size_t count = num_lattice_quartets(spec);

  std::printf("%-8s %6s %10s %16s %16s %8s\n", "class", "bits", "samples",
              "max|err|/Ha", "max quant err", "bound");
  for (const QuartetClass& cls : parse_class_list(classes)) {
    auto source = [&](std::size_t i) {
      return lattice_quartet(sites, cls, spec.exponent, i);
    };
    const ValidationReport r =
        validate_class(cls, source, count, samples, n, seed, mode, threads);
    std::printf("[%s] %6d %10zu %16.3e %16.3e %8s\n", cls.name().c_str(), r.bits,
                r.samples, r.max_abs_error, r.max_quant_error,
                r.quant_bound_ok ? "ok" : "VIOLATED");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rys-quadrature ERI computation, compression, and modeling"};
  app.require_subcommand(1);

  std::string cls = "all", precision = "single", input, output = "out.bin";
  std::string fmax_path, output_prefix = "stream_";
  int bits = 16, threads = 1;
  bool csv = false, write_streams = false;
  std::vector<int> dims;
  double spacing = 1.0, exponent = 1.5;
  std::size_t samples = 1000, limit = 0;
  std::uint64_t seed = 12345;

  auto* compute = app.add_subcommand("compute", "compress ERIs of a record file");
  compute->add_option("--class", cls, "quartet class, e.g. pp|pp")->required();
  compute->add_option("--bits", bits, "code bitwidth [2,32]");
  compute->add_option("--precision", precision, "single or double");
  compute->add_option("--threads", threads, "worker threads");
  compute->add_option("--input", input, "128-byte quartet records")->required();
  compute->add_option("--output", output, "compressed stream path");

  auto* dec = app.add_subcommand("decompress", "expand a compressed stream");
  dec->add_option("--class", cls)->required();
  dec->add_option("--bits", bits);
  dec->add_option("--input", input)->required();
  dec->add_option("--output", output);

  auto* bench = app.add_subcommand("bench", "lattice benchmark");
  bench->add_option("--class", cls, "class list, 'all' or 'canonical'");
  bench->add_option("--bits", bits);
  bench->add_option("--threads", threads);
  bench->add_option("--precision", precision);
  bench->add_option("--dims", dims, "lattice dimensions, e.g. 4 4 2")->expected(3);
  bench->add_option("--spacing", spacing, "lattice constant in Angstrom");
  bench->add_option("--exponent", exponent, "shared Gaussian exponent");
  bench->add_option("--limit", limit, "max quartets per class (0 = all)");
  bench->add_flag("--write-streams", write_streams, "write compressed streams");
  bench->add_option("--output-prefix", output_prefix);

  auto* model = app.add_subcommand("perf-model", "trip-count/throughput model");
  model->add_option("--class", cls);
  model->add_option("--bits", bits);
  model->add_option("--fmax", fmax_path, "file of 'class MHz' lines");
  model->add_flag("--csv", csv);

  auto* flops = app.add_subcommand("flops", "per-stage FLOP counts");
  flops->add_option("--class", cls);
  flops->add_option("--bits", bits);
  flops->add_flag("--csv", csv);

  auto* validate = app.add_subcommand("validate", "accuracy vs the oracle");
  validate->add_option("--class", cls);
  validate->add_option("--bits", bits);
  validate->add_option("--samples", samples);
  validate->add_option("--seed", seed);
  validate->add_option("--threads", threads);
  validate->add_option("--precision", precision);
  validate->add_option("--dims", dims)->expected(3);
  validate->add_option("--spacing", spacing);
  validate->add_option("--exponent", exponent);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed())
      return cmd_compute(cls, bits, precision, threads, input, output);
    if (dec->parsed()) return cmd_decompress(cls, bits, input, output);
    if (bench->parsed())
      return cmd_bench(cls, bits, threads, precision, dims, spacing, exponent, limit,
                       write_streams, output_prefix);
    if (model->parsed()) return cmd_perf_model(cls, bits, fmax_path, csv);
    if (flops->parsed()) return cmd_flops(cls, bits, csv);
    if (validate->parsed())
      return cmd_validate(cls, bits, samples, seed, threads, precision, dims, spacing,
                          exponent);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
