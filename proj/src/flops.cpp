// Operation counting by running the kernel class specializations on an
// instrumented scalar type.

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rysint/kernel.hpp"
#include "rysint/perf_model.hpp"

namespace rysint {

namespace {

struct OpSink {
  long long adds = 0;
  long long muls = 0;
  long long divs = 0;
};

thread_local OpSink* g_sink = nullptr;

// Drop-in scalar that reports every addition, multiplication, and
// division to the active sink.  Transcendentals and comparisons are
// not floating-point operations in the Fig.-2 sense and stay silent.
struct CReal {
  double v = 0.0;

  CReal() = default;
  explicit CReal(double x) : v(x) {}

  friend CReal operator+(CReal a, CReal b) {
    if (g_sink) ++g_sink->adds;
    return CReal(a.v + b.v);
  }
  friend CReal operator-(CReal a, CReal b) {
    if (g_sink) ++g_sink->adds;
    return CReal(a.v - b.v);
  }
  friend CReal operator*(CReal a, CReal b) {
    if (g_sink) ++g_sink->muls;
    return CReal(a.v * b.v);
  }
  friend CReal operator/(CReal a, CReal b) {
    if (g_sink) ++g_sink->divs;
    return CReal(a.v / b.v);
  }
  CReal operator-() const { return CReal(-v); }

  friend CReal exp(CReal a) { return CReal(std::exp(a.v)); }
  friend CReal sqrt(CReal a) { return CReal(std::sqrt(a.v)); }
  friend CReal fabs(CReal a) { return CReal(std::fabs(a.v)); }

  friend bool operator>(CReal a, CReal b) { return a.v > b.v; }
  friend bool operator<(CReal a, CReal b) { return a.v < b.v; }
};

using MeasureFn = FlopCounts (*)(const QuartetInput&, const RysNodeSet&);

template <int LA, int LB, int LC, int LD>
FlopCounts measure(const QuartetInput& q, const RysNodeSet& rys) {
  using K = QuartetKernel<LA, LB, LC, LD, CReal>;
  FlopCounts f;
  OpSink sink;
  g_sink = &sink;
  auto take = [&sink](OpCount& dst) {
    dst = {sink.adds, sink.muls, sink.divs};
    sink = {};
  };

  const auto setup = K::setup_stage(q, rys);
  take(f.setup);

  std::vector<CReal> tensor(K::kTensorSize, CReal(0));
  K::initial_intermediates(setup, rys, tensor.data());
  K::vrr_stage(setup, tensor.data());
  K::hrr_stage(setup, tensor.data());
  take(f.recurrence);

  std::vector<CReal> out(K::kOutSize, CReal(0));
  CReal b_max(0);
  K::quadrature_stage(tensor.data(), out.data(), b_max);
  take(f.quadrature);

  g_sink = nullptr;
  return f;
}

template <std::size_t... Is>
constexpr std::array<MeasureFn, kNumClasses> make_measure_table(
    std::index_sequence<Is...>) {
  return {&measure<(Is / 64), (Is / 16) % 4, (Is / 4) % 4, Is % 4>...};
}

const std::array<MeasureFn, kNumClasses> kMeasureTable =
    make_measure_table(std::make_index_sequence<kNumClasses>{});

}  // namespace

FlopCounts count_flops(const QuartetClass& cls, BitWidth n) {
  if (!cls.valid()) throw std::out_of_range("count_flops: invalid quartet class");
  (void)n;  // the per-code width does not change the operation count

  QuartetInput q;
  q.shells[0] = {{0.0, 0.0, 0.0}, 1.1, cls.la};
  q.shells[1] = {{0.8, -0.3, 0.5}, 0.7, cls.lb};
  q.shells[2] = {{1.1, 0.7, -0.4}, 1.3, cls.lc};
  q.shells[3] = {{-0.6, 0.2, 0.9}, 0.9, cls.ld};
  const RysNodeSet rys = prepare_quartet_rys(q);

  FlopCounts f = kMeasureTable[cls.index()](q, rys);
  // Quantization: one division for the reciprocal quantum value, one
  // multiplication per ERI.
  f.compress_store = {0, num_eriq(cls), 1};
  return f;
}

}  // namespace rysint
