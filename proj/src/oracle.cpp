#include "rysint/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rysint/boys.hpp"

namespace rysint {

namespace {

constexpr int kMaxHermite = 4 * kMaxL;  // total Hermite order, <= 12

// The reference evaluation runs in extended precision throughout: the
// McMurchie-Davidson contraction assembles small ERIs from large
// cancelling terms, so plain double internals would limit the achievable
// agreement with the quadrature pipeline.  Results are rounded to double
// on output.
using real = long double;

// Boys function values F_0..F_m in extended precision.  Series plus
// downward recursion for small arguments, closed-form F_0 with upward
// recursion for large ones.
std::vector<real> boys_ext(int m_max, real t) {
  std::vector<real> f(m_max + 1);
  if (t < 40.0L) {
    const real et = expl(-t);
    // F_{m_max} by its everywhere-convergent series, then downward:
    // F_m(T) = e^{-T} sum_k (2T)^k / ((2m+1)(2m+3)...(2m+2k+1)).
    real term = 1.0L / (2 * m_max + 1);
    real sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= 2.0L * t / (2 * m_max + 2 * k + 1);
      sum += term;
      if (term < sum * 1e-22L) break;
    }
    f[m_max] = et * sum;
    for (int m = m_max; m > 0; --m)
      f[m - 1] = (2.0L * t * f[m] + et) / (2 * m - 1);
  } else {
    const real sqt = sqrtl(t);
    f[0] = 0.5L * sqrtl(M_PIl) * erfl(sqt) / sqt;
    const real et = expl(-t);
    const real inv_2t = 0.5L / t;
    for (int m = 1; m <= m_max; ++m)
      f[m] = ((2.0L * m - 1.0L) * f[m - 1] - et) * inv_2t;
  }
  return f;
}

real norm_ext(real alpha, int l) {
  real df = 1.0L;
  for (int k = 2 * l - 1; k > 1; k -= 2) df *= k;
  return powl(2.0L * alpha / M_PIl, 0.75L) * powl(4.0L * alpha, 0.5L * l) / sqrtl(df);
}

// Hermite expansion coefficients E_t^{ij} of a Gaussian product pair
// along one axis, with the pair exponential folded into E_0^{00}.
struct HermiteCoeffs {
  real e[kMaxL + 1][kMaxL + 1][2 * kMaxL + 1] = {};
};

HermiteCoeffs hermite_coeffs(real alpha1, real alpha2, real x1, real x2) {
  HermiteCoeffs h;
  const real p = alpha1 + alpha2;
  const real mu = alpha1 * alpha2 / p;
  const real px = (alpha1 * x1 + alpha2 * x2) / p;
  const real x12 = x1 - x2;
  const real inv_2p = 0.5L / p;

  h.e[0][0][0] = expl(-mu * x12 * x12);
  for (int i = 0; i <= kMaxL; ++i) {
    for (int j = 0; j <= kMaxL; ++j) {
      if (i == 0 && j == 0) continue;
      // Step down in whichever index is nonzero.
      const bool step_i = i > 0;
      const int si = step_i ? i - 1 : i;
      const int sj = step_i ? j : j - 1;
      const real xd = step_i ? px - x1 : px - x2;
      for (int t = 0; t <= i + j; ++t) {
        real v = xd * h.e[si][sj][t];
        if (t > 0) v += inv_2p * h.e[si][sj][t - 1];
        if (t + 1 <= si + sj) v += (t + 1) * h.e[si][sj][t + 1];
        h.e[i][j][t] = v;
      }
    }
  }
  return h;
}

}  // namespace

OracleResult md_eri(const QuartetInput& q) {
  const QuartetClass cls = q.cls();
  if (!cls.valid()) throw std::out_of_range("md_eri: invalid quartet class");

  const auto& sa = q.shells[0];
  const auto& sb = q.shells[1];
  const auto& sc = q.shells[2];
  const auto& sd = q.shells[3];
  const real p = static_cast<real>(sa.exponent) + sb.exponent;
  const real pq = static_cast<real>(sc.exponent) + sd.exponent;
  const real rho = p * pq / (p + pq);

  HermiteCoeffs bra[3], ket[3];
  real pqd[3];  // P - Q
  real t_arg = 0.0L;
  for (int x = 0; x < 3; ++x) {
    bra[x] = hermite_coeffs(sa.exponent, sb.exponent, sa.center[x], sb.center[x]);
    ket[x] = hermite_coeffs(sc.exponent, sd.exponent, sc.center[x], sd.center[x]);
    const real px = (sa.exponent * static_cast<real>(sa.center[x]) +
                     sb.exponent * static_cast<real>(sb.center[x])) / p;
    const real qx = (sc.exponent * static_cast<real>(sc.center[x]) +
                     sd.exponent * static_cast<real>(sd.center[x])) / pq;
    pqd[x] = px - qx;
    t_arg += pqd[x] * pqd[x];
  }
  t_arg *= rho;

  // Hermite Coulomb tensor R_{tuv} = R^0_{tuv} from the Boys values.
  const int tmax = cls.l_total();
  const std::vector<real> f = boys_ext(tmax, t_arg);
  static thread_local std::vector<real> r_levels;
  const int dim = kMaxHermite + 1;
  r_levels.assign(static_cast<std::size_t>(tmax + 1) * dim * dim * dim, 0.0L);
  auto rr = [&](int n, int t, int u, int v) -> real& {
    return r_levels[((static_cast<std::size_t>(n) * dim + t) * dim + u) * dim + v];
  };
  real m2rho = 1.0L;
  for (int n = 0; n <= tmax; ++n) {
    rr(n, 0, 0, 0) = m2rho * f[n];
    m2rho *= -2.0L * rho;
  }
  for (int s = 1; s <= tmax; ++s) {
    for (int t = 0; t <= s; ++t)
      for (int u = 0; u + t <= s; ++u) {
        const int v = s - t - u;
        for (int n = 0; n <= tmax - s; ++n) {
          real val;
          if (t > 0) {
            val = pqd[0] * rr(n + 1, t - 1, u, v);
            if (t > 1) val += (t - 1) * rr(n + 1, t - 2, u, v);
          } else if (u > 0) {
            val = pqd[1] * rr(n + 1, t, u - 1, v);
            if (u > 1) val += (u - 1) * rr(n + 1, t, u - 2, v);
          } else {
            val = pqd[2] * rr(n + 1, t, u, v - 1);
            if (v > 1) val += (v - 1) * rr(n + 1, t, u, v - 2);
          }
          rr(n, t, u, v) = val;
        }
      }
  }

  const real pref = 2.0L * powl(M_PIl, 2.5L) / (p * pq * sqrtl(p + pq)) *
                    norm_ext(sa.exponent, sa.l) * norm_ext(sb.exponent, sb.l) *
                    norm_ext(sc.exponent, sc.l) * norm_ext(sd.exponent, sd.l);

  const auto& ca = cartesian_components(cls.la);
  const auto& cb = cartesian_components(cls.lb);
  const auto& cc = cartesian_components(cls.lc);
  const auto& cd = cartesian_components(cls.ld);
  const int bx_max = cls.la + cls.lb;  // bra Hermite range per axis

  OracleResult res;
  res.cls = cls;
  res.values.resize(num_eriq(cls));

  // Scratch for the per-(c,d) contractions of R with the ket coefficients.
  // Indices reach bra + ket Hermite order combined, up to kMaxHermite.
  static thread_local real t1[kMaxHermite + 1][kMaxHermite + 1][kMaxHermite + 1];
  static thread_local real t2[kMaxHermite + 1][kMaxHermite + 1][kMaxHermite + 1];
  static thread_local real g[kMaxHermite + 1][kMaxHermite + 1][kMaxHermite + 1];

  std::size_t out = 0;
  for (const auto& d : cd) {
    for (const auto& c : cc) {
      const real* ex = ket[0].e[c.ax][d.ax];
      const real* ey = ket[1].e[c.ay][d.ay];
      const real* ez = ket[2].e[c.az][d.az];
      const int kx = c.ax + d.ax, ky = c.ay + d.ay, kz = c.az + d.az;
      for (int t = 0; t <= bx_max + kx; ++t)
        for (int u = 0; u <= bx_max + ky; ++u)
          for (int v = 0; v <= bx_max; ++v) {
            real acc = 0.0L;
            for (int phi = 0, sg = 1; phi <= kz; ++phi, sg = -sg)
              acc += sg * ez[phi] * rr(0, t, u, v + phi);
            t1[t][u][v] = acc;
          }
      for (int t = 0; t <= bx_max + kx; ++t)
        for (int u = 0; u <= bx_max; ++u)
          for (int v = 0; v <= bx_max; ++v) {
            real acc = 0.0L;
            for (int nu = 0, sg = 1; nu <= ky; ++nu, sg = -sg)
              acc += sg * ey[nu] * t1[t][u + nu][v];
            t2[t][u][v] = acc;
          }
      for (int t = 0; t <= bx_max; ++t)
        for (int u = 0; u <= bx_max; ++u)
          for (int v = 0; v <= bx_max; ++v) {
            real acc = 0.0L;
            for (int tau = 0, sg = 1; tau <= kx; ++tau, sg = -sg)
              acc += sg * ex[tau] * t2[t + tau][u][v];
            g[t][u][v] = acc;
          }

      for (const auto& b : cb) {
        for (const auto& a : ca) {
          const real* fx = bra[0].e[a.ax][b.ax];
          const real* fy = bra[1].e[a.ay][b.ay];
          const real* fz = bra[2].e[a.az][b.az];
          real sum = 0.0L;
          for (int t = 0; t <= a.ax + b.ax; ++t)
            for (int u = 0; u <= a.ay + b.ay; ++u) {
              real inner = 0.0L;
              for (int v = 0; v <= a.az + b.az; ++v) inner += fz[v] * g[t][u][v];
              sum += fx[t] * fy[u] * inner;
            }
          res.values[out++] = static_cast<double>(pref * sum);
        }
      }
    }
  }
  return res;
}

double ssss_closed_form(const QuartetInput& q) {
  for (const auto& s : q.shells)
    if (s.l != 0) throw std::invalid_argument("ssss_closed_form: all shells must be s-type");
  const double aa = q.shells[0].exponent, ab = q.shells[1].exponent;
  const double ac = q.shells[2].exponent, ad = q.shells[3].exponent;
  const double p = aa + ab, pq = ac + ad;
  double ab2 = 0.0, cd2 = 0.0, t_arg = 0.0;
  for (int x = 0; x < 3; ++x) {
    const double dab = q.shells[0].center[x] - q.shells[1].center[x];
    const double dcd = q.shells[2].center[x] - q.shells[3].center[x];
    ab2 += dab * dab;
    cd2 += dcd * dcd;
    const double px = (aa * q.shells[0].center[x] + ab * q.shells[1].center[x]) / p;
    const double qx = (ac * q.shells[2].center[x] + ad * q.shells[3].center[x]) / pq;
    t_arg += (px - qx) * (px - qx);
  }
  t_arg *= p * pq / (p + pq);
  const double k_ab = std::exp(-aa * ab / p * ab2);
  const double k_cd = std::exp(-ac * ad / pq * cd2);
  const double norms = normalization(aa, 0) * normalization(ab, 0) *
                       normalization(ac, 0) * normalization(ad, 0);
  return 2.0 * std::pow(M_PI, 2.5) / (p * pq * std::sqrt(p + pq)) * k_ab * k_cd * norms *
         boys(0, t_arg)[0];
}

}  // namespace rysint
