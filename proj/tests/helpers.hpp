#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rysint/gto.hpp"
#include "rysint/rys.hpp"

namespace test_util {

// Random primitive quartets with healthy overlap: centers in a cube of
// half-width `box` (Bohr), exponents uniform in [e_lo, e_hi].
struct QuartetSampler {
  std::mt19937_64 rng;
  double box = 0.25;
  double e_lo = 1.0;
  double e_hi = 3.0;

  explicit QuartetSampler(std::uint64_t seed) : rng(seed) {}

  rysint::QuartetInput next(const rysint::QuartetClass& cls) {
    std::uniform_real_distribution<double> pos(-box, box), expn(e_lo, e_hi);
    rysint::QuartetInput q;
    const int ls[4] = {cls.la, cls.lb, cls.lc, cls.ld};
    for (int s = 0; s < 4; ++s) {
      q.shells[s].center = {pos(rng), pos(rng), pos(rng)};
      q.shells[s].exponent = expn(rng);
      q.shells[s].l = ls[s];
    }
    return q;
  }
};

// Distance in representable doubles (monotone integer mapping of the
// IEEE bit patterns); 0 for bitwise-equal values including -0 vs +0.
inline std::uint64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  if (std::isnan(a) || std::isnan(b)) return ~0ull;
  auto key = [](double x) {
    std::int64_t i = std::bit_cast<std::int64_t>(x);
    return i < 0 ? std::int64_t(0x8000000000000000ull) - i : i;
  };
  const std::int64_t ka = key(a), kb = key(b);
  return static_cast<std::uint64_t>(ka > kb ? ka - kb : kb - ka);
}

// |got - ref| <= max(rtol*|ref|, atol)
inline bool close(double got, double ref, double rtol, double atol) {
  return std::fabs(got - ref) <= std::max(rtol * std::fabs(ref), atol);
}

// 16-point Gauss-Legendre nodes/weights on [0, 1].
struct Gl16 {
  std::array<double, 16> x{}, w{};
  Gl16() {
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
      x[i] = 0.5 * (1.0 - z);
      x[n - 1 - i] = 0.5 * (1.0 + z);
      w[i] = w[n - 1 - i] = 0.5 * wi;
    }
  }
};

// Composite 16-point Gauss-Legendre integration on [a, b] with
// panel-count doubling until two successive refinements agree.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol_rel = 1e-14) {
  static const Gl16 gl;
  auto composite = [&](int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p)
      for (int i = 0; i < 16; ++i) s += h * gl.w[i] * f(a + h * (p + gl.x[i]));
    return s;
  };
  double prev = composite(4);
  for (int panels = 8; panels <= 4096; panels *= 2) {
    const double cur = composite(panels);
    if (std::fabs(cur - prev) <= tol_rel * std::fabs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

// Scalar, loop-based reimplementation of the quadrature pipeline with
// plain nested loops over a flat array (no class templates, no padded
// layouts).  Output in the same logical order as QuartetERIs::value.
inline std::vector<double> straight_line_eri(const rysint::QuartetInput& q,
                                             const rysint::RysNodeSet& rys) {
  using namespace rysint;
  const QuartetClass cls = q.cls();
  const int la = cls.la, lb = cls.lb, lc = cls.lc, ld = cls.ld;
  const int n = rys.order;

  const double aa = q.shells[0].exponent, ab = q.shells[1].exponent;
  const double ac = q.shells[2].exponent, ad = q.shells[3].exponent;
  const double p = aa + ab, qq = ac + ad;
  double P[3], Q[3], abd[3], cdd[3];
  double ab2 = 0.0, cd2 = 0.0;
  for (int x = 0; x < 3; ++x) {
    P[x] = (aa * q.shells[0].center[x] + ab * q.shells[1].center[x]) / p;
    Q[x] = (ac * q.shells[2].center[x] + ad * q.shells[3].center[x]) / qq;
    abd[x] = q.shells[0].center[x] - q.shells[1].center[x];
    cdd[x] = q.shells[2].center[x] - q.shells[3].center[x];
    ab2 += abd[x] * abd[x];
    cd2 += cdd[x] * cdd[x];
  }
  const double pref = 2.0 * std::pow(M_PI, 2.5) / (p * qq * std::sqrt(p + qq)) *
                      std::exp(-aa * ab / p * ab2) * std::exp(-ac * ad / qq * cd2) *
                      normalization(aa, la) * normalization(ab, lb) *
                      normalization(ac, lc) * normalization(ad, ld);

  double b1[7], b2[7], b3[7], cx[3][7], c2x[3][7];
  for (int mu = 0; mu < n; ++mu) {
    const double u = rys.roots[mu] * rys.roots[mu];
    const double su = qq / (p + qq) * u;
    const double tu = p / (p + qq) * u;
    b1[mu] = su * 0.5 / qq;
    b2[mu] = (1.0 - su) * 0.5 / p;
    b3[mu] = (1.0 - tu) * 0.5 / qq;
    for (int x = 0; x < 3; ++x) {
      cx[x][mu] = (P[x] - q.shells[0].center[x]) + su * (Q[x] - P[x]);
      c2x[x][mu] = (Q[x] - q.shells[2].center[x]) - tu * (Q[x] - P[x]);
    }
  }

  // I(i, j, k, l, xi, mu), unpadded flat storage.
  const int ei = la + lb + 1, ej = lb + 1, ek = lc + ld + 1, el = ld + 1;
  std::vector<double> t(static_cast<std::size_t>(ei) * ej * ek * el * 3 * n, 0.0);
  auto I = [&](int i, int j, int k, int l, int xi, int mu) -> double& {
    return t[((((static_cast<std::size_t>(l) * ek + k) * ej + j) * ei + i) * 3 + xi) * n +
             mu];
  };

  for (int mu = 0; mu < n; ++mu) {
    I(0, 0, 0, 0, 0, mu) = pref * rys.weights[mu];
    I(0, 0, 0, 0, 1, mu) = 1.0;
    I(0, 0, 0, 0, 2, mu) = 1.0;
  }
  for (int xi = 0; xi < 3; ++xi)
    for (int mu = 0; mu < n; ++mu) {
      for (int i = 1; i < ei; ++i) {
        double v = cx[xi][mu] * I(i - 1, 0, 0, 0, xi, mu);
        if (i >= 2) v += (i - 1) * b2[mu] * I(i - 2, 0, 0, 0, xi, mu);
        I(i, 0, 0, 0, xi, mu) = v;
      }
      for (int k = 0; k + 1 < ek; ++k)
        for (int i = 0; i < ei; ++i) {
          double v = c2x[xi][mu] * I(i, 0, k, 0, xi, mu);
          if (k >= 1) v += k * b3[mu] * I(i, 0, k - 1, 0, xi, mu);
          if (i >= 1) v += i * b1[mu] * I(i - 1, 0, k, 0, xi, mu);
          I(i, 0, k + 1, 0, xi, mu) = v;
        }
      for (int j = 1; j <= lb; ++j)
        for (int k = 0; k < ek; ++k)
          for (int i = 0; i <= la + lb - j; ++i)
            I(i, j, k, 0, xi, mu) =
                I(i + 1, j - 1, k, 0, xi, mu) + abd[xi] * I(i, j - 1, k, 0, xi, mu);
      for (int l = 1; l <= ld; ++l)
        for (int k = 0; k <= lc + ld - l; ++k)
          for (int j = 0; j <= lb; ++j)
            for (int i = 0; i <= la; ++i)
              I(i, j, k, l, xi, mu) =
                  I(i, j, k + 1, l - 1, xi, mu) + cdd[xi] * I(i, j, k, l - 1, xi, mu);
    }

  const auto& ca = cartesian_components(la);
  const auto& cb = cartesian_components(lb);
  const auto& cc = cartesian_components(lc);
  const auto& cdc = cartesian_components(ld);
  std::vector<double> out;
  out.reserve(num_eriq(cls));
  for (const auto& d : cdc)
    for (const auto& c : cc)
      for (const auto& b : cb)
        for (const auto& a : ca) {
          double sum = 0.0;
          for (int mu = 0; mu < n; ++mu)
            sum += I(a.ax, b.ax, c.ax, d.ax, 0, mu) * I(a.ay, b.ay, c.ay, d.ay, 1, mu) *
                   I(a.az, b.az, c.az, d.az, 2, mu);
          out.push_back(sum);
        }
  return out;
}

}  // namespace test_util
