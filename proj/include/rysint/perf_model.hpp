#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rysint/compress.hpp"
#include "rysint/gto.hpp"

namespace rysint {

// Sequential trip counts (cycles) of the three pipelined loop nests:
// recurrence relations, Gaussian quadrature, compress-store.
struct TripCounts {
  int n_rr = 1;
  int n_gq = 1;
  int n_cs = 1;

  bool operator==(const TripCounts&) const = default;
};

enum class RrPattern { kIjk, kIjkl, kIjklMu, kIjklMuXi };
enum class GqPattern { kXiMuAb, kXiMuAbc, kXiMuAbcd };
enum class Storage { kBlockMemory, kRegisters };

struct UnrollPlan {
  RrPattern rr = RrPattern::kIjk;
  GqPattern gq = GqPattern::kXiMuAb;

  Storage rr_storage() const {
    return (rr == RrPattern::kIjklMu || rr == RrPattern::kIjklMuXi)
               ? Storage::kRegisters
               : Storage::kBlockMemory;
  }
  Storage gq_storage() const {
    return gq == GqPattern::kXiMuAb ? Storage::kBlockMemory : Storage::kRegisters;
  }
};

enum class Stage { kRecurrence, kQuadrature, kCompressStore };

struct PerfEstimate {
  double f_max_mhz = 0.0;
  double geris = 0.0;  // 1e9 ERIs per second
};

// Trip counts after the general optimization (fully sequential l, mu,
// xi in the recurrences; a, b unrolled in the quadrature).
TripCounts base_trip_counts(const QuartetClass& cls, BitWidth n);

// Stepwise escalation of the unroll patterns against the compress-store
// target, subject to the 108-element local-memory constraints.
std::pair<UnrollPlan, TripCounts> apply_further_unrolling(const QuartetClass& cls,
                                                          const TripCounts& base);

// The stage with the largest trip count; ties resolve toward
// compress-store (the design target), then toward the recurrences.
Stage bottleneck(const TripCounts& t);

PerfEstimate modeled_geris(const QuartetClass& cls, const TripCounts& final,
                           double f_max_mhz);

// Floating-point operation counts (additions, multiplications,
// divisions; nothing else) per quartet.
struct OpCount {
  long long adds = 0;
  long long muls = 0;
  long long divs = 0;

  long long total() const { return adds + muls + divs; }
  OpCount& operator+=(const OpCount& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    return *this;
  }
};

struct FlopCounts {
  OpCount setup;
  OpCount recurrence;  // initial intermediates + VRR + HRR
  OpCount quadrature;
  OpCount compress_store;

  OpCount total() const;
};

// Exact per-stage operation counts obtained by executing the class's
// kernel specialization on an instrumented scalar type.
FlopCounts count_flops(const QuartetClass& cls, BitWidth n);

// One report row of the throughput model.
struct ModelRow {
  QuartetClass cls;
  TripCounts base;
  UnrollPlan plan;
  TripCounts unrolled;
  Stage bottleneck_stage = Stage::kCompressStore;
  double f_max_mhz = 0.0;  // 0 when not provided
  double geris = 0.0;      // 0 when f_max not provided
};

std::vector<ModelRow> model_rows(const std::vector<QuartetClass>& classes, BitWidth n,
                                 const std::map<int, double>& f_max_mhz_by_index = {});

// Aligned text table / machine-readable CSV of the same rows.
std::string render_model_table(const std::vector<ModelRow>& rows);
std::string render_model_csv(const std::vector<ModelRow>& rows);

}  // namespace rysint
