#include "rysint/perf_model.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rysint {

namespace {

// Product of the logical i, j, k, l extents of the intermediate tensor:
// the "basic size" against which the 108-element constraint is checked.
int tensor_depth(const QuartetClass& cls) {
  return (cls.la + cls.lb + 1) * (cls.lb + 1) * (cls.lc + cls.ld + 1) * (cls.ld + 1);
}

int rr_cycles(const QuartetClass& cls, RrPattern p, int base_rr) {
  switch (p) {
    case RrPattern::kIjk: return base_rr;
    case RrPattern::kIjkl: return 3 * cls.n_rys();
    case RrPattern::kIjklMu: return 3;
    case RrPattern::kIjklMuXi: return 1;
  }
  return base_rr;
}

int gq_cycles(const QuartetClass& cls, GqPattern p) {
  switch (p) {
    case GqPattern::kXiMuAb: return num_gtos(cls.ld) * num_gtos(cls.lc);
    case GqPattern::kXiMuAbc: return num_gtos(cls.ld);
    case GqPattern::kXiMuAbcd: return 1;
  }
  return 1;
}

bool rr_step_allowed(const QuartetClass& cls, RrPattern next) {
  const int depth = tensor_depth(cls);
  if (next == RrPattern::kIjkl) return depth <= 108;
  return depth * cls.n_rys() <= 108;  // register patterns
}

bool gq_step_allowed(const QuartetClass& cls, const UnrollPlan& plan, GqPattern next) {
  if (plan.rr_storage() != Storage::kRegisters) return false;
  const int abc = num_gtos(cls.la) * num_gtos(cls.lb) * num_gtos(cls.lc);
  if (next == GqPattern::kXiMuAbc) return abc <= 108;
  return abc * num_gtos(cls.ld) <= 108;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kRecurrence: return "RR";
    case Stage::kQuadrature: return "GQ";
    case Stage::kCompressStore: return "CS";
  }
  return "?";
}

const char* rr_name(RrPattern p) {
  switch (p) {
    case RrPattern::kIjk: return "ijk";
    case RrPattern::kIjkl: return "ijkl";
    case RrPattern::kIjklMu: return "ijklu";
    case RrPattern::kIjklMuXi: return "ijklux";
  }
  return "?";
}

const char* gq_name(GqPattern p) {
  switch (p) {
    case GqPattern::kXiMuAb: return "xuab";
    case GqPattern::kXiMuAbc: return "xuabc";
    case GqPattern::kXiMuAbcd: return "xuabcd";
  }
  return "?";
}

}  // namespace

TripCounts base_trip_counts(const QuartetClass& cls, BitWidth n) {
  if (!cls.valid()) throw std::out_of_range("base_trip_counts: invalid quartet class");
  TripCounts t;
  // The recurrence nest iterates l, mu, xi sequentially; an extra l
  // sweep is spent when both the bra and the ket need HRR processing.
  const int extra = (cls.la != cls.lb && cls.lc != cls.ld) ? 1 : 0;
  t.n_rr = 3 * cls.n_rys() * (cls.ld + 1 + extra);
  t.n_gq = num_gtos(cls.ld) * num_gtos(cls.lc);
  t.n_cs = chunk_count(num_eriq(cls), n);
  return t;
}

std::pair<UnrollPlan, TripCounts> apply_further_unrolling(const QuartetClass& cls,
                                                          const TripCounts& base) {
  UnrollPlan plan;
  TripCounts t = base;

  static constexpr RrPattern kRrOrder[] = {RrPattern::kIjk, RrPattern::kIjkl,
                                           RrPattern::kIjklMu, RrPattern::kIjklMuXi};
  for (int step = 1; step < 4 && t.n_rr > t.n_cs; ++step) {
    if (!rr_step_allowed(cls, kRrOrder[step])) break;
    plan.rr = kRrOrder[step];
    t.n_rr = std::min(t.n_rr, rr_cycles(cls, plan.rr, base.n_rr));
  }

  static constexpr GqPattern kGqOrder[] = {GqPattern::kXiMuAb, GqPattern::kXiMuAbc,
                                           GqPattern::kXiMuAbcd};
  for (int step = 1; step < 3 && t.n_gq > t.n_cs; ++step) {
    if (!gq_step_allowed(cls, plan, kGqOrder[step])) break;
    plan.gq = kGqOrder[step];
    t.n_gq = std::min(t.n_gq, gq_cycles(cls, plan.gq));
  }
  return {plan, t};
}

Stage bottleneck(const TripCounts& t) {
  const int m = std::max({t.n_rr, t.n_gq, t.n_cs});
  if (t.n_cs == m) return Stage::kCompressStore;
  if (t.n_rr == m) return Stage::kRecurrence;
  return Stage::kQuadrature;
}

PerfEstimate modeled_geris(const QuartetClass& cls, const TripCounts& final,
                           double f_max_mhz) {
  if (f_max_mhz <= 0.0) throw std::domain_error("modeled_geris: f_max must be > 0");
  PerfEstimate e;
  e.f_max_mhz = f_max_mhz;
  const int cycles = std::max({final.n_rr, final.n_gq, final.n_cs}) + 10;
  e.geris = f_max_mhz * 1e-3 * num_eriq(cls) / cycles;
  return e;
}

OpCount FlopCounts::total() const {
  OpCount t;
  t += setup;
  t += recurrence;
  t += quadrature;
  t += compress_store;
  return t;
}

std::vector<ModelRow> model_rows(const std::vector<QuartetClass>& classes, BitWidth n,
                                 const std::map<int, double>& f_max_mhz_by_index) {
  std::vector<ModelRow> rows;
  rows.reserve(classes.size());
  for (const auto& cls : classes) {
    ModelRow r;
    r.cls = cls;
    r.base = base_trip_counts(cls, n);
    std::tie(r.plan, r.unrolled) = apply_further_unrolling(cls, r.base);
    r.bottleneck_stage = bottleneck(r.unrolled);
    if (auto it = f_max_mhz_by_index.find(cls.index()); it != f_max_mhz_by_index.end()) {
      r.f_max_mhz = it->second;
      r.geris = modeled_geris(cls, r.unrolled, r.f_max_mhz).geris;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string render_model_table(const std::vector<ModelRow>& rows) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %6s %6s %6s   %-7s %-7s %6s %6s %6s  %-4s %8s %8s\n",
                "class", "n_RR", "n_GQ", "n_CS", "rr", "gq", "n_RR'", "n_GQ'", "n_CS'",
                "bott", "f/MHz", "GERIS");
  os << line;
  for (const auto& r : rows) {
    if (r.f_max_mhz > 0.0)
      std::snprintf(line, sizeof(line),
                    "[%s] %6d %6d %6d   %-7s %-7s %6d %6d %6d  %-4s %8.1f %8.2f\n",
                    r.cls.name().c_str(), r.base.n_rr, r.base.n_gq, r.base.n_cs,
                    rr_name(r.plan.rr), gq_name(r.plan.gq), r.unrolled.n_rr,
                    r.unrolled.n_gq, r.unrolled.n_cs, stage_name(r.bottleneck_stage),
                    r.f_max_mhz, r.geris);
    else
      std::snprintf(line, sizeof(line),
                    "[%s] %6d %6d %6d   %-7s %-7s %6d %6d %6d  %-4s %8s %8s\n",
                    r.cls.name().c_str(), r.base.n_rr, r.base.n_gq, r.base.n_cs,
                    rr_name(r.plan.rr), gq_name(r.plan.gq), r.unrolled.n_rr,
                    r.unrolled.n_gq, r.unrolled.n_cs, stage_name(r.bottleneck_stage),
                    "-", "-");
    os << line;
  }
  return os.str();
}

std::string render_model_csv(const std::vector<ModelRow>& rows) {
  std::ostringstream os;
  os << "class,n_RR,n_GQ,n_CS,bottleneck,geris\n";
  for (const auto& r : rows) {
    char line[120];
    std::snprintf(line, sizeof(line), "%s,%d,%d,%d,%s,%.2f\n", r.cls.name().c_str(),
                  r.unrolled.n_rr, r.unrolled.n_gq, r.unrolled.n_cs,
                  stage_name(r.bottleneck_stage), r.geris);
    os << line;
  }
  return os.str();
}

}  // namespace rysint
