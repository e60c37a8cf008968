#include "rysint/gto.hpp"

#include <cmath>
#include <stdexcept>

namespace rysint {

namespace {

constexpr char kShellLetters[] = "spdf";

int letter_to_l(char c) {
  switch (c) {
    case 's': return 0;
    case 'p': return 1;
    case 'd': return 2;
    case 'f': return 3;
    default:
      throw std::invalid_argument(std::string("unknown shell letter '") + c + "'");
  }
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace

int num_gtos(int l) {
  if (l < 0 || l > kMaxL)
    throw std::out_of_range("num_gtos: L must be in [0, 3], got " + std::to_string(l));
  return num_gtos_unchecked(l);
}

const std::vector<CartesianComponent>& cartesian_components(int l) {
  static const auto tables = [] {
    std::array<std::vector<CartesianComponent>, kMaxL + 1> t;
    for (int ll = 0; ll <= kMaxL; ++ll) {
      const ComponentTable ct = make_component_table(ll);
      for (int i = 0; i < ct.count; ++i)
        t[ll].push_back({ct.comp[i][0], ct.comp[i][1], ct.comp[i][2]});
    }
    return t;
  }();
  if (l < 0 || l > kMaxL)
    throw std::out_of_range("cartesian_components: L must be in [0, 3]");
  return tables[l];
}

QuartetClass QuartetClass::from_index(int idx) {
  if (idx < 0 || idx >= kNumClasses)
    throw std::out_of_range("QuartetClass::from_index: index must be in [0, 256)");
  return {idx / 64, (idx / 16) % 4, (idx / 4) % 4, idx % 4};
}

std::string QuartetClass::name() const {
  std::string s;
  s += kShellLetters[la];
  s += kShellLetters[lb];
  s += '|';
  s += kShellLetters[lc];
  s += kShellLetters[ld];
  return s;
}

QuartetClass QuartetClass::parse(const std::string& s) {
  std::string letters;
  for (char c : s) {
    if (c == '|' || c == ',' || c == '[' || c == ']' || c == ' ') continue;
    letters += c;
  }
  if (letters.size() != 4)
    throw std::invalid_argument("quartet class '" + s + "' must name four shells");
  return {letter_to_l(letters[0]), letter_to_l(letters[1]),
          letter_to_l(letters[2]), letter_to_l(letters[3])};
}

int num_eriq(const QuartetClass& cls) {
  if (!cls.valid()) throw std::out_of_range("num_eriq: invalid quartet class");
  return num_gtos(cls.la) * num_gtos(cls.lb) * num_gtos(cls.lc) * num_gtos(cls.ld);
}

QuartetClass apply_permutation(const QuartetClass& cls, const QuartetPermutation& p) {
  QuartetClass r = cls;
  if (p.swap_ab) std::swap(r.la, r.lb);
  if (p.swap_cd) std::swap(r.lc, r.ld);
  if (p.swap_braket) {
    std::swap(r.la, r.lc);
    std::swap(r.lb, r.ld);
  }
  return r;
}

bool is_canonical(const QuartetClass& cls) {
  if (!cls.valid()) throw std::out_of_range("is_canonical: invalid quartet class");
  const int ngab = num_gtos(cls.la) * num_gtos(cls.lb);
  const int ngcd = num_gtos(cls.lc) * num_gtos(cls.ld);
  return cls.la >= cls.lb && cls.lc >= cls.ld && ngab >= ngcd;
}

std::pair<QuartetClass, QuartetPermutation> canonicalize(const QuartetClass& cls) {
  if (!cls.valid()) throw std::out_of_range("canonicalize: invalid quartet class");
  QuartetPermutation p;
  p.swap_ab = cls.la < cls.lb;
  p.swap_cd = cls.lc < cls.ld;
  QuartetClass sorted = apply_permutation(cls, p);
  const int ngab = num_gtos(sorted.la) * num_gtos(sorted.lb);
  const int ngcd = num_gtos(sorted.lc) * num_gtos(sorted.ld);
  p.swap_braket = ngab < ngcd;
  return {apply_permutation(cls, p), p};
}

std::vector<QuartetClass> all_classes() {
  std::vector<QuartetClass> v;
  v.reserve(kNumClasses);
  for (int i = 0; i < kNumClasses; ++i) v.push_back(QuartetClass::from_index(i));
  return v;
}

std::vector<QuartetClass> canonical_classes() {
  std::vector<QuartetClass> v;
  for (const QuartetClass& c : all_classes())
    if (is_canonical(c)) v.push_back(c);
  return v;
}

QuartetInput permute_input(const QuartetInput& q, const QuartetPermutation& p) {
  QuartetInput r = q;
  if (p.swap_ab) std::swap(r.shells[0], r.shells[1]);
  if (p.swap_cd) std::swap(r.shells[2], r.shells[3]);
  if (p.swap_braket) {
    std::swap(r.shells[0], r.shells[2]);
    std::swap(r.shells[1], r.shells[3]);
  }
  return r;
}

double normalization(double alpha, int l) {
  if (!(alpha > 0.0)) throw std::domain_error("normalization: exponent must be > 0");
  if (l < 0 || l > kMaxL) throw std::out_of_range("normalization: L must be in [0, 3]");
  // Unit self-overlap for the axis-aligned member (x^L e^{-alpha r^2}).
  const double pre = std::pow(2.0 * alpha / M_PI, 0.75);
  return pre * std::pow(4.0 * alpha, 0.5 * l) / std::sqrt(double_factorial(2 * l - 1));
}

double normalization(double alpha, const CartesianComponent& comp) {
  return normalization(alpha, comp.l());
}

}  // namespace rysint
