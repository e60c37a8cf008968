#include "rysint/kernel.hpp"

#include <stdexcept>
#include <utility>

namespace rysint {

namespace {

template <class Real>
using KernelFn = void (*)(const QuartetInput&, const RysNodeSet&, QuartetERIs&);

template <int LA, int LB, int LC, int LD, class Real>
void run_kernel(const QuartetInput& q, const RysNodeSet& rys, QuartetERIs& out) {
  using K = QuartetKernel<LA, LB, LC, LD, Real>;
  Real buf[K::kOutSize] = {};
  Real b_max = Real(0);
  K::compute(q, rys, buf, b_max);
  out.n_ab = K::kNumAb;
  out.padded_ab = K::kPadAb;
  out.n_cd = K::kNumCd;
  out.b_max = static_cast<double>(b_max);
  out.storage.assign(buf, buf + K::kOutSize);
}

template <class Real, std::size_t... Is>
constexpr std::array<KernelFn<Real>, kNumClasses> make_table(std::index_sequence<Is...>) {
  return {&run_kernel<(Is / 64), (Is / 16) % 4, (Is / 4) % 4, Is % 4, Real>...};
}

template <class Real>
const std::array<KernelFn<Real>, kNumClasses> kTable =
    make_table<Real>(std::make_index_sequence<kNumClasses>{});

}  // namespace

namespace {

// Deterministic ordering of shells sharing one angular momentum, used to
// pick a unique representative among permutation-equivalent inputs.
bool shell_less(const PrimitiveShell& a, const PrimitiveShell& b) {
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  return a.center < b.center;
}

bool pair_less(const PrimitiveShell& a0, const PrimitiveShell& a1,
               const PrimitiveShell& b0, const PrimitiveShell& b1) {
  if (shell_less(a0, b0)) return true;
  if (shell_less(b0, a0)) return false;
  return shell_less(a1, b1);
}

}  // namespace

QuartetERIs compute_quartet(const QuartetInput& q, const RysNodeSet& rys,
                            PrecisionMode mode) {
  const QuartetClass cls = q.cls();
  if (!cls.valid()) throw std::out_of_range("compute_quartet: invalid quartet class");
  if (rys.order != cls.n_rys())
    throw std::invalid_argument("compute_quartet: Rys node set order does not match class");

  // All eight permutation variants reduce to one representative input:
  // the class is canonicalized, and shells whose angular momenta tie are
  // ordered by their data.  Every variant then runs the very same
  // arithmetic, so the eight results are bitwise identical up to index
  // reordering.
  const auto [canon, perm] = canonicalize(cls);
  QuartetInput cq = permute_input(q, perm);

  QuartetPermutation tie;
  if (canon.la == canon.lb) tie.swap_ab = shell_less(cq.shells[1], cq.shells[0]);
  if (canon.lc == canon.ld) tie.swap_cd = shell_less(cq.shells[3], cq.shells[2]);
  cq = permute_input(cq, tie);

  QuartetPermutation flip;
  if (canon.la == canon.lc && canon.lb == canon.ld)
    flip.swap_braket = pair_less(cq.shells[2], cq.shells[3], cq.shells[0], cq.shells[1]);
  cq = permute_input(cq, flip);

  QuartetERIs canon_out;
  canon_out.cls = canon;
  if (mode == PrecisionMode::kDouble)
    kTable<double>[canon.index()](cq, rys, canon_out);
  else
    kTable<float>[canon.index()](cq, rys, canon_out);

  const QuartetPermutation steps[3] = {perm, tie, flip};
  if (cls == canon && perm.identity() && tie.identity() && flip.identity())
    return canon_out;

  const int nga = num_gtos(cls.la), ngb = num_gtos(cls.lb);
  const int ngc = num_gtos(cls.lc), ngd = num_gtos(cls.ld);
  const int cga = num_gtos(canon.la), cgb = num_gtos(canon.lb);
  const int cgc = num_gtos(canon.lc);

  QuartetERIs out;
  out.cls = cls;
  out.b_max = canon_out.b_max;
  out.n_ab = nga * ngb;
  out.padded_ab = pow2_ceil(out.n_ab);
  out.n_cd = ngc * ngd;
  out.storage.assign(static_cast<std::size_t>(out.n_cd) * out.padded_ab, 0.0);
  for (int d = 0; d < ngd; ++d)
    for (int c = 0; c < ngc; ++c)
      for (int b = 0; b < ngb; ++b)
        for (int a = 0; a < nga; ++a) {
          int pa = a, pb = b, pc = c, pd = d;
          for (const QuartetPermutation& p : steps) {
            if (p.swap_ab) std::swap(pa, pb);
            if (p.swap_cd) std::swap(pc, pd);
            if (p.swap_braket) {
              std::swap(pa, pc);
              std::swap(pb, pd);
            }
          }
          const int canon_logical = ((pd * cgc + pc) * cgb + pb) * cga + pa;
          const int ab = b * nga + a;
          const int cd = d * ngc + c;
          out.storage[static_cast<std::size_t>(cd) * out.padded_ab + ab] =
              canon_out.value(canon_logical);
        }
  return out;
}

QuartetERIs compute_quartet(const QuartetInput& q, PrecisionMode mode) {
  return compute_quartet(q, prepare_quartet_rys(q), mode);
}

}  // namespace rysint
