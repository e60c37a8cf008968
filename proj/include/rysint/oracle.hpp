#pragma once

#include <vector>

#include "rysint/gto.hpp"

namespace rysint {

// Independent double-precision reference ERIs in the same logical value
// order as QuartetERIs (fused (a,b) fastest).
struct OracleResult {
  QuartetClass cls;
  std::vector<double> values;  // n_ERIQ doubles
};

// Reference engine: Hermite expansion coefficients by two-term
// recurrence and the Hermite Coulomb tensor from Boys functions.
// Shares no recurrence code with the Rys pipeline.
OracleResult md_eri(const QuartetInput& q);

// Analytic [ss|ss] value; rejects non-s input.
double ssss_closed_form(const QuartetInput& q);

}  // namespace rysint
