#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "rysint/gto.hpp"
#include "rysint/rys.hpp"

namespace rysint {

enum class PrecisionMode { kSingle, kDouble };

// 2 * pi^{5/2}
inline constexpr double kTwoPi52 = 34.986836655249725;

constexpr double constexpr_sqrt(double x) {
  double r = x > 1.0 ? x : 1.0;
  for (int it = 0; it < 64; ++it) r = 0.5 * (r + x / r);
  return r;
}

constexpr int pow2_ceil(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

// All ERIs of one quartet in the padded local-memory layout: the fused
// (a, b) component index runs fastest and is padded to a power of two,
// the fused (c, d) index is the depth.  Padding slots stay zero.
struct QuartetERIs {
  QuartetClass cls;
  double b_max = 0.0;
  int n_ab = 0;      // n_ga * n_gb
  int padded_ab = 0; // pow2 of n_ab
  int n_cd = 0;      // n_gc * n_gd
  std::vector<double> storage;  // size n_cd * padded_ab

  int count() const { return n_ab * n_cd; }
  // Logical value order: index = ((d*n_gc + c)*n_gb + b)*n_ga + a.
  double value(int logical) const {
    return storage[(logical / n_ab) * padded_ab + logical % n_ab];
  }
};

// Four-stage Rys pipeline specialized on the quartet class.  The class
// parameters and all array extents are compile-time constants; Real is
// float or double (or an instrumented scalar for operation counting).
template <int LA, int LB, int LC, int LD, class Real>
struct QuartetKernel {
  static constexpr int kLTotal = LA + LB + LC + LD;
  static constexpr int kOrder = kLTotal / 2 + 1;
  static constexpr int kNgA = num_gtos_unchecked(LA);
  static constexpr int kNgB = num_gtos_unchecked(LB);
  static constexpr int kNgC = num_gtos_unchecked(LC);
  static constexpr int kNgD = num_gtos_unchecked(LD);
  static constexpr int kNEriq = kNgA * kNgB * kNgC * kNgD;

  // Intermediate tensor I(i,j,k,l,mu,xi): mu fastest, then xi, i, j, k,
  // and l outermost; mu/xi/i/j/k extents padded to powers of two.
  static constexpr int kExtI = LA + LB + 1;
  static constexpr int kExtJ = LB + 1;
  static constexpr int kExtK = LC + LD + 1;
  static constexpr int kExtL = LD + 1;
  static constexpr int kPadMu = pow2_ceil(kOrder);
  static constexpr int kPadXi = 4;
  static constexpr int kPadI = pow2_ceil(kExtI);
  static constexpr int kPadJ = pow2_ceil(kExtJ);
  static constexpr int kPadK = pow2_ceil(kExtK);
  static constexpr int kTensorSize = kExtL * kPadK * kPadJ * kPadI * kPadXi * kPadMu;

  static constexpr int kNumAb = kNgA * kNgB;
  static constexpr int kPadAb = pow2_ceil(kNumAb);
  static constexpr int kNumCd = kNgC * kNgD;
  static constexpr int kOutSize = kNumCd * kPadAb;

  static constexpr ComponentTable kCompA = make_component_table(LA);
  static constexpr ComponentTable kCompB = make_component_table(LB);
  static constexpr ComponentTable kCompC = make_component_table(LC);
  static constexpr ComponentTable kCompD = make_component_table(LD);

  static constexpr std::size_t idx(int i, int j, int k, int l, int mu, int xi) {
    return ((((static_cast<std::size_t>(l) * kPadK + k) * kPadJ + j) * kPadI + i) *
                kPadXi +
            xi) *
               kPadMu +
           mu;
  }

  // Auxiliary arrays of the setup stage plus the quartet scalar
  // prefactor and the two HRR center differences.
  struct Setup {
    Real b[3][kOrder];   // rows: B1 (cross), B2 (bra), B3 (ket)
    Real c[6][kOrder];   // rows: C_x, C_y, C_z, C_2x, C_2y, C_2z
    Real pref;
    Real ab_diff[3];     // R_A - R_B
    Real cd_diff[3];     // R_C - R_D
  };

  static Setup setup_stage(const QuartetInput& q, const RysNodeSet& rys) {
    Setup s;
    const Real aa = Real(q.shells[0].exponent);
    const Real ab = Real(q.shells[1].exponent);
    const Real ac = Real(q.shells[2].exponent);
    const Real ad = Real(q.shells[3].exponent);

    Real ra[3], rb[3], rc[3], rd[3];
    for (int x = 0; x < 3; ++x) {
      ra[x] = Real(q.shells[0].center[x]);
      rb[x] = Real(q.shells[1].center[x]);
      rc[x] = Real(q.shells[2].center[x]);
      rd[x] = Real(q.shells[3].center[x]);
    }

    const Real p = aa + ab;
    const Real qq = ac + ad;
    const Real inv_p = Real(1) / p;
    const Real inv_q = Real(1) / qq;

    Real pp[3], qp[3];  // P and Q
    Real ab2 = Real(0), cd2 = Real(0);
    for (int x = 0; x < 3; ++x) {
      pp[x] = (aa * ra[x] + ab * rb[x]) * inv_p;
      qp[x] = (ac * rc[x] + ad * rd[x]) * inv_q;
      s.ab_diff[x] = ra[x] - rb[x];
      s.cd_diff[x] = rc[x] - rd[x];
      ab2 = ab2 + s.ab_diff[x] * s.ab_diff[x];
      cd2 = cd2 + s.cd_diff[x] * s.cd_diff[x];
    }
    using std::exp;
    using std::sqrt;
    const Real g_bra = aa * ab;
    const Real g_ket = ac * ad;
    const Real k_ab = exp(-(g_bra * inv_p) * ab2);
    const Real k_cd = exp(-(g_ket * inv_q) * cd2);

    const Real sum_pq = p + qq;
    const Real inv_sum = Real(1) / sum_pq;
    const Real inv_2p = Real(0.5) / p;
    const Real inv_2q = Real(0.5) / qq;

    // Constant part of the prefactor: 2 pi^{5/2} times the alpha-free
    // part of the four shell normalizations.
    constexpr double df_prod = double_factorial_unchecked(2 * LA - 1) *
                               double_factorial_unchecked(2 * LB - 1) *
                               double_factorial_unchecked(2 * LC - 1) *
                               double_factorial_unchecked(2 * LD - 1);
    constexpr double norm_const =
        (2.0 * M_1_PI) * (2.0 * M_1_PI) * (2.0 * M_1_PI) / constexpr_sqrt(df_prod);
    // (alpha_a alpha_b alpha_c alpha_d)^{3/4}
    const Real g_all = g_bra * g_ket;
    const Real g34 = sqrt(sqrt(g_all * g_all * g_all));
    s.pref = Real(kTwoPi52 * norm_const) * g34 / (p * qq * sqrt(sum_pq)) * k_ab * k_cd;
    if constexpr (LA > 0)
      s.pref = s.pref * exponent_norm(aa, std::integral_constant<int, LA>{});
    if constexpr (LB > 0)
      s.pref = s.pref * exponent_norm(ab, std::integral_constant<int, LB>{});
    if constexpr (LC > 0)
      s.pref = s.pref * exponent_norm(ac, std::integral_constant<int, LC>{});
    if constexpr (LD > 0)
      s.pref = s.pref * exponent_norm(ad, std::integral_constant<int, LD>{});

    if constexpr (kLTotal > 0) {
      const Real wq = qq * inv_sum;  // q / (p + q)
      const Real wp = Real(1) - wq;  // p / (p + q)
      Real pa[3], qc[3], pq_gap[3];
      for (int x = 0; x < 3; ++x) {
        pa[x] = pp[x] - ra[x];
        qc[x] = qp[x] - rc[x];
        pq_gap[x] = qp[x] - pp[x];  // Q - P
      }
      for (int mu = 0; mu < kOrder; ++mu) {
        const Real t = Real(rys.roots[mu]);
        const Real u = t * t;
        const Real su = wq * u;
        const Real tu = wp * u;
        s.b[0][mu] = su * inv_2q;                // B1: cross term, u/(2(p+q))
        s.b[1][mu] = (Real(1) - su) * inv_2p;    // B2: bra ladder
        s.b[2][mu] = (Real(1) - tu) * inv_2q;    // B3: ket ladder
        for (int x = 0; x < 3; ++x) {
          s.c[x][mu] = pa[x] + su * pq_gap[x];
          s.c[3 + x][mu] = qc[x] - tu * pq_gap[x];
        }
      }
    }
    return s;
  }

  // I(0,0,0,0,mu,xi): the prefactor and the quadrature weight w_mu are
  // folded into the x axis, so the quadrature stage is a pure
  // product-sum over the tensor.
  static void initial_intermediates(const Setup& s, const RysNodeSet& rys,
                                    Real* tensor) {
    for (int mu = 0; mu < kOrder; ++mu) {
      tensor[idx(0, 0, 0, 0, mu, 0)] = s.pref * Real(rys.weights[mu]);
      tensor[idx(0, 0, 0, 0, mu, 1)] = Real(1);
      tensor[idx(0, 0, 0, 0, mu, 2)] = Real(1);
    }
  }

  // Vertical recurrences fill I(i,0,k,0,mu,xi) for the full slab
  // i in [0, LA+LB], k in [0, LC+LD].
  static void vrr_stage(const Setup& s, Real* tensor) {
    for (int xi = 0; xi < 3; ++xi) {
      for (int mu = 0; mu < kOrder; ++mu) {
        const Real b1 = s.b[0][mu], b2 = s.b[1][mu], b3 = s.b[2][mu];
        const Real cx = s.c[xi][mu], c2x = s.c[3 + xi][mu];
        // Bra ladder at k = 0.
        for (int i = 1; i < kExtI; ++i) {
          Real v = cx * tensor[idx(i - 1, 0, 0, 0, mu, xi)];
          if (i >= 2) v = v + Real(i - 1) * b2 * tensor[idx(i - 2, 0, 0, 0, mu, xi)];
          tensor[idx(i, 0, 0, 0, mu, xi)] = v;
        }
        // Ket ladder across all bra indices.
        for (int k = 0; k + 1 < kExtK; ++k) {
          for (int i = 0; i < kExtI; ++i) {
            Real v = c2x * tensor[idx(i, 0, k, 0, mu, xi)];
            if (k >= 1) v = v + Real(k) * b3 * tensor[idx(i, 0, k - 1, 0, mu, xi)];
            if (i >= 1) v = v + Real(i) * b1 * tensor[idx(i - 1, 0, k, 0, mu, xi)];
            tensor[idx(i, 0, k + 1, 0, mu, xi)] = v;
          }
        }
      }
    }
  }

  // Horizontal recurrences build the j and l dimensions from center
  // differences only.
  static void hrr_stage(const Setup& s, Real* tensor) {
    for (int xi = 0; xi < 3; ++xi) {
      const Real abx = s.ab_diff[xi];
      const Real cdx = s.cd_diff[xi];
      for (int mu = 0; mu < kOrder; ++mu) {
        for (int j = 1; j <= LB; ++j)
          for (int k = 0; k < kExtK; ++k)
            for (int i = 0; i <= LA + LB - j; ++i)
              tensor[idx(i, j, k, 0, mu, xi)] =
                  tensor[idx(i + 1, j - 1, k, 0, mu, xi)] +
                  abx * tensor[idx(i, j - 1, k, 0, mu, xi)];
        for (int l = 1; l <= LD; ++l)
          for (int k = 0; k <= LC + LD - l; ++k)
            for (int j = 0; j <= LB; ++j)
              for (int i = 0; i <= LA; ++i)
                tensor[idx(i, j, k, l, mu, xi)] =
                    tensor[idx(i, j, k + 1, l - 1, mu, xi)] +
                    cdx * tensor[idx(i, j, k, l - 1, mu, xi)];
      }
    }
  }

  // Gaussian quadrature over the Rys nodes; out has the Table-II layout
  // (size kOutSize, padding slots untouched).  The weights already sit
  // in the x axis of the tensor (initial_intermediates).
  static void quadrature_stage(const Real* tensor, Real* out, Real& b_max) {
    using std::fabs;
    b_max = Real(0);
    for (int d = 0; d < kNgD; ++d) {
      for (int c = 0; c < kNgC; ++c) {
        const int cd = d * kNgC + c;
        for (int b = 0; b < kNgB; ++b) {
          for (int a = 0; a < kNgA; ++a) {
            Real sum = Real(0);
            for (int mu = 0; mu < kOrder; ++mu) {
              Real prod = tensor[idx(kCompA.comp[a][0], kCompB.comp[b][0],
                                     kCompC.comp[c][0], kCompD.comp[d][0], mu, 0)];
              for (int xi = 1; xi < 3; ++xi)
                prod = prod * tensor[idx(kCompA.comp[a][xi], kCompB.comp[b][xi],
                                         kCompC.comp[c][xi], kCompD.comp[d][xi], mu, xi)];
              sum = sum + prod;
            }
            out[cd * kPadAb + b * kNgA + a] = sum;
            const Real mag = fabs(sum);
            if (mag > b_max) b_max = mag;
          }
        }
      }
    }
  }

  static void compute(const QuartetInput& q, const RysNodeSet& rys, Real* out,
                      Real& b_max) {
    const Setup s = setup_stage(q, rys);
    std::vector<Real> tensor(kTensorSize, Real(0));
    initial_intermediates(s, rys, tensor.data());
    vrr_stage(s, tensor.data());
    hrr_stage(s, tensor.data());
    quadrature_stage(tensor.data(), out, b_max);
  }

 private:
  // alpha-dependent part of the shell normalization beyond the shared
  // (prod alpha)^{3/4} factor: (4 alpha)^{L/2}.
  static Real exponent_norm(Real, std::integral_constant<int, 0>) { return Real(1); }
  static Real exponent_norm(Real alpha, std::integral_constant<int, 1>) {
    using std::sqrt;
    return sqrt(Real(4) * alpha);
  }
  static Real exponent_norm(Real alpha, std::integral_constant<int, 2>) {
    return Real(4) * alpha;
  }
  static Real exponent_norm(Real alpha, std::integral_constant<int, 3>) {
    using std::sqrt;
    const Real fa = Real(4) * alpha;
    return fa * sqrt(fa);
  }
};

// Runtime dispatch over the 256 class specializations.
QuartetERIs compute_quartet(const QuartetInput& q, const RysNodeSet& rys,
                            PrecisionMode mode = PrecisionMode::kSingle);
QuartetERIs compute_quartet(const QuartetInput& q,
                            PrecisionMode mode = PrecisionMode::kSingle);

}  // namespace rysint
