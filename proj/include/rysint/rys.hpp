#pragma once

#include <array>
#include <stdexcept>

#include "rysint/gto.hpp"

namespace rysint {

inline constexpr int kMaxRysOrder = 7;

// Roots t_mu in (0,1) and weights w_mu > 0 of the Rys polynomials for a
// given order and argument T: the n-point rule satisfying
//   sum_mu w_mu t_mu^{2m} = F_m(T)   for 0 <= m <= 2n-1.
struct RysNodeSet {
  int order = 0;
  double t_arg = 0.0;
  std::array<double, kMaxRysOrder> roots{};
  std::array<double, kMaxRysOrder> weights{};
};

// Thrown when the Jacobi-matrix construction or its eigendecomposition
// does not converge; distinct from precondition violations.
struct RysConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gaussian quadrature rule for weight e^{-T t^2} in t^2 on t in [0,1].
// Order must be in [1, 7], T >= 0.
RysNodeSet rys_roots_weights(int order, double t_arg);

// Quadrature argument of a quartet: T = rho |P - Q|^2 with the standard
// Gaussian-product parameters of the bra and ket pairs.
double rys_argument(const QuartetInput& q);

// Roots and weights for the quartet's class and argument.  Always double
// precision regardless of the kernel precision mode.
RysNodeSet prepare_quartet_rys(const QuartetInput& q);

}  // namespace rysint
