#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rysint/boys.hpp"
#include "rysint/kernel.hpp"
#include "rysint/oracle.hpp"

using namespace rysint;

namespace {

// Map a logical output index of `cls` to the corresponding logical index
// after permuting the input with `p` (same physical integral).
int permuted_logical(const QuartetClass& cls, const QuartetPermutation& p, int logical) {
  const int nga = num_gtos(cls.la), ngb = num_gtos(cls.lb), ngc = num_gtos(cls.lc);
  int a = logical % nga;
  int b = (logical / nga) % ngb;
  int c = (logical / (nga * ngb)) % ngc;
  int d = logical / (nga * ngb * ngc);
  if (p.swap_ab) std::swap(a, b);
  if (p.swap_cd) std::swap(c, d);
  if (p.swap_braket) {
    std::swap(a, c);
    std::swap(b, d);
  }
  const QuartetClass pc = apply_permutation(cls, p);
  return ((d * num_gtos(pc.lc) + c) * num_gtos(pc.lb) + b) * num_gtos(pc.la) + a;
}

}  // namespace

TEST_CASE("[ss|ss] agrees with the closed form") {
  test_util::QuartetSampler sampler(11);
  sampler.box = 1.0;
  sampler.e_hi = 8.0;
  for (int trial = 0; trial < 50; ++trial) {
    const QuartetInput q = sampler.next({0, 0, 0, 0});
    const double ref = ssss_closed_form(q);
    const QuartetERIs dres = compute_quartet(q, PrecisionMode::kDouble);
    CHECK(dres.count() == 1);
    CHECK(std::fabs(dres.value(0) - ref) <= 1e-12 * std::fabs(ref));
    const QuartetERIs sres = compute_quartet(q, PrecisionMode::kSingle);
    CHECK(std::fabs(sres.value(0) - ref) <= 1e-5 * std::fabs(ref));
  }
}

TEST_CASE("coincident [ss|ss] at alpha = 1.5") {
  QuartetInput q;
  for (auto& s : q.shells) {
    s.center = {0.0, 0.0, 0.0};
    s.exponent = 1.5;
    s.l = 0;
  }
  const double got = compute_quartet(q, PrecisionMode::kDouble).value(0);
  CHECK(got == doctest::Approx(ssss_closed_form(q)).epsilon(1e-13));
}

TEST_CASE("pipeline matches a straight-line scalar evaluation for all 256 classes") {
  test_util::QuartetSampler sampler(23);
  for (const QuartetClass& cls : all_classes()) {
    const QuartetInput q = sampler.next(cls);
    const RysNodeSet rys = prepare_quartet_rys(q);
    const std::vector<double> ref = test_util::straight_line_eri(q, rys);
    double ref_max = 0.0;
    for (double v : ref) ref_max = std::max(ref_max, std::fabs(v));

    const QuartetERIs out = compute_quartet(q, rys, PrecisionMode::kDouble);
    REQUIRE(out.count() == static_cast<int>(ref.size()));
    for (int i = 0; i < out.count(); ++i)
      CHECK(std::fabs(out.value(i) - ref[i]) <=
            std::max(1e-11 * std::fabs(ref[i]), 1e-12 * ref_max));
  }
}

TEST_CASE("double-precision pipeline matches the independent reference for all classes") {
  test_util::QuartetSampler sampler(5);
  for (const QuartetClass& cls : all_classes()) {
    const QuartetInput q = sampler.next(cls);
    const OracleResult ref = md_eri(q);
    const QuartetERIs out = compute_quartet(q, PrecisionMode::kDouble);
    REQUIRE(out.count() == static_cast<int>(ref.values.size()));
    double b_max = 0.0;
    for (double v : ref.values) b_max = std::max(b_max, std::fabs(v));
    for (int i = 0; i < out.count(); ++i)
      CHECK(std::fabs(out.value(i) - ref.values[i]) <=
            std::max(1e-11 * std::fabs(ref.values[i]), 1e-14 * b_max));
  }
}

TEST_CASE("single-precision pipeline stays within float tolerance on [pp|pp]") {
  test_util::QuartetSampler sampler(7);
  for (int trial = 0; trial < 20; ++trial) {
    const QuartetInput q = sampler.next({1, 1, 1, 1});
    const OracleResult ref = md_eri(q);
    const QuartetERIs out = compute_quartet(q, PrecisionMode::kSingle);
    double b_max = 0.0;
    for (double v : ref.values) b_max = std::max(b_max, std::fabs(v));
    for (int i = 0; i < out.count(); ++i)
      CHECK(std::fabs(out.value(i) - ref.values[i]) <=
            std::max(1e-5 * std::fabs(ref.values[i]), 6e-6 * b_max));
  }
}

TEST_CASE("translation invariance") {
  test_util::QuartetSampler sampler(13);
  const std::array<double, 3> shift = {5.0, -3.0, 1.5};
  for (const char* name : {"ss|ss", "pp|dd", "fd|ps", "ff|ff"}) {
    const QuartetInput q = sampler.next(QuartetClass::parse(name));
    QuartetInput moved = q;
    for (auto& s : moved.shells)
      for (int x = 0; x < 3; ++x) s.center[x] += shift[x];
    const QuartetERIs a = compute_quartet(q, PrecisionMode::kDouble);
    const QuartetERIs b = compute_quartet(moved, PrecisionMode::kDouble);
    for (int i = 0; i < a.count(); ++i)
      CHECK(std::fabs(a.value(i) - b.value(i)) <=
            std::max(1e-10 * std::fabs(a.value(i)), 1e-11 * a.b_max));
  }
}

TEST_CASE("the eight permutation variants agree to within 4 ulps") {
  test_util::QuartetSampler sampler(29);
  for (const char* name : {"ss|ss", "ps|ss", "dp|ps", "fd|pp", "ff|ff"}) {
    const QuartetClass cls = QuartetClass::parse(name);
    for (int trial = 0; trial < 5; ++trial) {
      const QuartetInput q = sampler.next(cls);
      const QuartetERIs base = compute_quartet(q, PrecisionMode::kDouble);
      for (int mask = 1; mask < 8; ++mask) {
        const QuartetPermutation p{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
        const QuartetERIs alt = compute_quartet(permute_input(q, p),
                                                PrecisionMode::kDouble);
        for (int i = 0; i < base.count(); ++i) {
          const double v = alt.value(permuted_logical(cls, p, i));
          CHECK(test_util::ulp_distance(base.value(i), v) <= 4);
        }
      }
    }
  }
}

TEST_CASE("output layout: padding, b_max, determinism") {
  test_util::QuartetSampler sampler(31);
  const QuartetInput q = sampler.next({1, 1, 0, 0});  // n_ab = 9 -> padded to 16
  const QuartetERIs out = compute_quartet(q, PrecisionMode::kDouble);
  CHECK(out.n_ab == 9);
  CHECK(out.padded_ab == 16);
  CHECK(out.n_cd == 1);
  CHECK(out.storage.size() == 16);
  for (int cd = 0; cd < out.n_cd; ++cd)
    for (int slot = out.n_ab; slot < out.padded_ab; ++slot)
      CHECK(out.storage[cd * out.padded_ab + slot] == 0.0);

  double vmax = 0.0;
  for (int i = 0; i < out.count(); ++i) vmax = std::max(vmax, std::fabs(out.value(i)));
  CHECK(out.b_max == vmax);

  const QuartetERIs again = compute_quartet(q, PrecisionMode::kDouble);
  for (std::size_t i = 0; i < out.storage.size(); ++i)
    CHECK(out.storage[i] == again.storage[i]);
}

TEST_CASE("input validation") {
  test_util::QuartetSampler sampler(37);
  QuartetInput q = sampler.next({1, 0, 0, 0});
  QuartetInput bad = q;
  bad.shells[2].l = 5;
  CHECK_THROWS_AS(compute_quartet(bad, PrecisionMode::kDouble), std::out_of_range);

  const RysNodeSet wrong = rys_roots_weights(3, rys_argument(q));  // class needs order 1
  CHECK_THROWS_AS(compute_quartet(q, wrong, PrecisionMode::kDouble), std::invalid_argument);
}

TEST_CASE("quadrature stage is a pure product-sum over the tensor") {
  // With the intermediates replaced by 1 everywhere except the x rows,
  // which carry only the quadrature weights, every ERI reduces to
  // sum_mu w_mu = F_0(T).
  using K = QuartetKernel<1, 1, 1, 1, double>;
  const RysNodeSet rys = rys_roots_weights(3, 2.0);
  std::vector<double> tensor(K::kTensorSize, 0.0);
  for (int l = 0; l < K::kExtL; ++l)
    for (int k = 0; k < K::kExtK; ++k)
      for (int j = 0; j < K::kExtJ; ++j)
        for (int i = 0; i < K::kExtI; ++i)
          for (int mu = 0; mu < K::kOrder; ++mu) {
            tensor[K::idx(i, j, k, l, mu, 0)] = rys.weights[mu];
            tensor[K::idx(i, j, k, l, mu, 1)] = 1.0;
            tensor[K::idx(i, j, k, l, mu, 2)] = 1.0;
          }
  double out[K::kOutSize] = {};
  double b_max = 0.0;
  K::quadrature_stage(tensor.data(), out, b_max);
  const double f0 = boys(0, 2.0)[0];
  for (int cd = 0; cd < K::kNumCd; ++cd)
    for (int ab = 0; ab < K::kNumAb; ++ab)
      CHECK(out[cd * K::kPadAb + ab] == doctest::Approx(f0).epsilon(1e-12));
  CHECK(b_max == doctest::Approx(f0).epsilon(1e-12));
}

TEST_CASE("tensor footprint of the quadrature stage") {
  // The quadrature stage consumes (La+1)(Lb+1)(Lc+1)(Ld+1) * 3 * n_rys
  // distinct tensor entries: 3 for [ss|ss], 5376 for [ff|ff].
  auto consumed = [](const QuartetClass& c) {
    return (c.la + 1) * (c.lb + 1) * (c.lc + 1) * (c.ld + 1) * 3 * c.n_rys();
  };
  CHECK(consumed({0, 0, 0, 0}) == 3);
  CHECK(consumed({3, 3, 3, 3}) == 5376);
}
