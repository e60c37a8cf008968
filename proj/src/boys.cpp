#include "rysint/boys.hpp"

#include <cmath>
#include <stdexcept>

namespace rysint {

namespace {

// Below this threshold the highest order is evaluated by the everywhere-
// convergent series and lower orders follow by downward recursion; above
// it F_0 has a closed form and upward recursion is stable (2T > 2m+1 for
// all m <= 28).
constexpr double kSeriesThreshold = 40.0;

double boys_series(int m, double t) {
  // F_m(T) = e^{-T} sum_k (2T)^k / ((2m+1)(2m+3)...(2m+2k+1))
  double term = 1.0 / (2 * m + 1);
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= 2.0 * t / (2 * m + 2 * k + 1);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(-t) * sum;
}

}  // namespace

BoysTable boys(int m_max, double t) {
  if (t < 0.0) throw std::domain_error("boys: T must be non-negative");
  if (m_max < 0 || m_max > kMaxBoysOrder)
    throw std::out_of_range("boys: m_max must be in [0, 28]");

  BoysTable table;
  table.t = t;
  table.m_max = m_max;

  const double exp_mt = std::exp(-t);
  if (t < kSeriesThreshold) {
    table.f[m_max] = boys_series(m_max, t);
    for (int m = m_max; m > 0; --m)
      table.f[m - 1] = (2.0 * t * table.f[m] + exp_mt) / (2 * m - 1);
  } else {
    table.f[0] = 0.5 * std::sqrt(M_PI / t) * std::erf(std::sqrt(t));
    for (int m = 0; m < m_max; ++m)
      table.f[m + 1] = ((2 * m + 1) * table.f[m] - exp_mt) / (2.0 * t);
  }
  return table;
}

}  // namespace rysint
