#pragma once

#include <array>

namespace rysint {

inline constexpr int kMaxBoysOrder = 28;

// Boys function values F_0(T) .. F_mmax(T), F_m(T) = int_0^1 u^{2m} e^{-T u^2} du.
struct BoysTable {
  double t = 0.0;
  int m_max = 0;
  std::array<double, kMaxBoysOrder + 1> f{};

  double operator[](int m) const { return f[m]; }
};

// Relative error <= 1e-13 for T >= 0, m_max <= 28.  Throws on negative T
// or out-of-range m_max.
BoysTable boys(int m_max, double t);

}  // namespace rysint
