#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rysint {

inline constexpr int kMaxL = 3;
inline constexpr int kNumClasses = 256;
inline constexpr double kBohrPerAngstrom = 1.8897259886;

// (L+1)(L+2)/2 Cartesian GTOs in a shell of angular momentum L.
int num_gtos(int l);

constexpr int num_gtos_unchecked(int l) { return (l + 1) * (l + 2) / 2; }

// (2l-1)!! with the usual (-1)!! = 1 convention.
constexpr double double_factorial_unchecked(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

// One Cartesian exponent vector a = [ax, ay, az] with ax+ay+az = L.
struct CartesianComponent {
  int ax = 0;
  int ay = 0;
  int az = 0;

  int l() const { return ax + ay + az; }
  int operator[](int axis) const { return axis == 0 ? ax : (axis == 1 ? ay : az); }
  bool operator==(const CartesianComponent&) const = default;
};

// Components of a shell in the fixed ordering used everywhere in this
// library: lexicographic descending in (ax, then ay), e.g. for d:
// xx, xy, xz, yy, yz, zz.
const std::vector<CartesianComponent>& cartesian_components(int l);

// Constexpr variant for the class-templated kernels.
struct ComponentTable {
  int count = 0;
  int comp[10][3] = {};
};

constexpr ComponentTable make_component_table(int l) {
  ComponentTable t;
  for (int ax = l; ax >= 0; --ax)
    for (int ay = l - ax; ay >= 0; --ay) {
      t.comp[t.count][0] = ax;
      t.comp[t.count][1] = ay;
      t.comp[t.count][2] = l - ax - ay;
      ++t.count;
    }
  return t;
}

// The four shell angular momenta identifying one of the 256 generic
// quartet classes [ab|cd].
struct QuartetClass {
  int la = 0;
  int lb = 0;
  int lc = 0;
  int ld = 0;

  bool operator==(const QuartetClass&) const = default;

  bool valid() const {
    auto ok = [](int l) { return l >= 0 && l <= kMaxL; };
    return ok(la) && ok(lb) && ok(lc) && ok(ld);
  }
  int l_total() const { return la + lb + lc + ld; }
  int n_rys() const { return l_total() / 2 + 1; }
  int index() const { return ((la * 4 + lb) * 4 + lc) * 4 + ld; }
  static QuartetClass from_index(int idx);

  // e.g. "fd|ps"; parse() also accepts "fd,ps" and "fdps".
  std::string name() const;
  static QuartetClass parse(const std::string& s);
};

// Product of the four shell sizes: ERIs per quartet.
int num_eriq(const QuartetClass& cls);

// Element of the eightfold permutation symmetry group of [ab|cd]:
// swap within bra, swap within ket, swap bra with ket.  Application
// order is ab, then cd, then bra<->ket.
struct QuartetPermutation {
  bool swap_ab = false;
  bool swap_cd = false;
  bool swap_braket = false;

  bool identity() const { return !swap_ab && !swap_cd && !swap_braket; }
  bool operator==(const QuartetPermutation&) const = default;
};

QuartetClass apply_permutation(const QuartetClass& cls, const QuartetPermutation& p);

// Canonical form: La >= Lb, Lc >= Ld and n_ga*n_gb >= n_gc*n_gd.
bool is_canonical(const QuartetClass& cls);

// Returns the canonical representative of the symmetry orbit of cls and
// the permutation that maps cls onto it.  Exactly 55 canonical classes
// arise over the 256 generic ones.
std::pair<QuartetClass, QuartetPermutation> canonicalize(const QuartetClass& cls);

std::vector<QuartetClass> all_classes();
std::vector<QuartetClass> canonical_classes();

// One primitive Cartesian shell: center (Bohr), exponent (Bohr^-2), L.
struct PrimitiveShell {
  std::array<double, 3> center{};
  double exponent = 1.0;
  int l = 0;
};

// The G_abcd input record: four primitive shells in (a, b, c, d) order.
struct QuartetInput {
  std::array<PrimitiveShell, 4> shells;

  QuartetClass cls() const {
    return {shells[0].l, shells[1].l, shells[2].l, shells[3].l};
  }
};

QuartetInput permute_input(const QuartetInput& q, const QuartetPermutation& p);

// Normalization factor of Eq-1-style primitives: chosen so that the
// axis-aligned members of the shell have unit self-overlap.  Shared by
// all components of a shell.
double normalization(double alpha, int l);
double normalization(double alpha, const CartesianComponent& comp);

}  // namespace rysint
