#include "bubble/compact.hpp"

#include <algorithm>
#include <cmath>

namespace bubble {

KoenigsMap::KoenigsMap(BranchingParameter b, double tolerance, int max_depth)
    : f_(DecimationFunctions::canonical(b)), lambda0_(to_double(multiplier_at_zero(b))),
      tolerance_(tolerance), max_depth_(max_depth) {}

KoenigsMap::Result KoenigsMap::evaluate(double z, int min_depth) const {
  if (!(z >= 0.0 && z <= 2.0)) throw DomainError("Koenigs map is defined on [0, 2]");
  if (min_depth < 1) throw DomainError("Koenigs depth must be >= 1");
  double y = z;
  double scale = 1.0;
  for (int l = 0; l < min_depth; ++l) {
    y = f_.inverse_branch(Branch::Zero, y);
    scale *= lambda0_;
  }
  double current = scale * y;
  double increment = 0.0;
  for (int l = min_depth; l < max_depth_; ++l) {
    y = f_.inverse_branch(Branch::Zero, y);
    scale *= lambda0_;
    const double next = scale * y;
    increment = std::abs(next - current);
    current = next;
    if (increment < tolerance_ * std::max(1.0, std::abs(current))) return {current, l + 1};
  }
  throw NonConvergence("Koenigs iteration did not converge", increment);
}

double KoenigsMap::operator()(double z, int min_depth) const { return evaluate(z, min_depth).value; }

int KoenigsMap::depth_for(double z, int min_depth) const { return evaluate(z, min_depth).depth; }

double koenigs_T(BranchingParameter b, double z, int min_depth) {
  return KoenigsMap(b)(z, min_depth);
}

namespace {

// Index of the first digit (from the least significant end) that differs from
// `digit`, or -1 if all `depth` digits equal it.
int first_other_digit(std::uint64_t word, int depth, std::uint64_t digit, std::uint64_t &found) {
  for (int t = 0; t < depth; ++t, word /= 3) {
    if (word % 3 != digit) {
      found = word % 3;
      return t;
    }
  }
  return -1;
}

// Generation m with R^m(z) in E_b, for z = S_w(seed) in a Neumann preimage
// tree over sigma(Delta_1); empty if z is not in any Dirichlet generation.
std::optional<int> dirichlet_generation(const PreimagePoint &p) {
  if (p.seed != 0 && p.seed != 3) return std::nullopt;
  const std::uint64_t fixed = p.seed == 0 ? 0 : 2;
  const std::uint64_t into_eb = p.seed == 0 ? 2 : 0;
  std::uint64_t digit = 0;
  const int t = first_other_digit(p.word, p.depth, fixed, digit);
  if (t < 0 || digit != into_eb) return std::nullopt;
  return p.depth - t - 1;
}

} // namespace

std::vector<CompactEigenvalue> compact_spectrum(const KoenigsMap &t, int k_max) {
  if (k_max < 1) throw DomainError("compact_spectrum needs k_max >= 1");
  const int b = t.b();
  const auto f = DecimationFunctions::canonical(b);
  const double lambda0 = t.multiplier();
  const double cut = static_cast<double>(b) / (b + 1) - 1e-12;
  const std::vector<double> level_one{0.0, to_double(make_rational(b, b + 1)),
                                      to_double(make_rational(b + 2, b + 1)), 2.0};

  std::vector<CompactEigenvalue> out{{0.0, 0, 0.0, std::nullopt}, {2.0 * t(2.0), 0, 2.0, std::nullopt}};
  double scale = 2.0;
  for (int k = 1; k <= k_max; ++k) {
    scale *= lambda0;
    for (const auto &p : preimage_tree(f, level_one, k - 1)) {
      if (p.location < cut) continue;
      std::optional<std::int64_t> mult;
      if (auto m = dirichlet_generation(p)) mult = dirichlet_multiplicity(b, k, *m);
      out.push_back({scale * t(p.location), k, p.location, mult});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CompactEigenvalue &x, const CompactEigenvalue &y) { return x.value < y.value; });
  return out;
}

std::vector<CompactEigenvalue> compact_spectrum(BranchingParameter b, int k_max) {
  return compact_spectrum(KoenigsMap(b), k_max);
}

double compact_gap_label(const KoenigsMap &t, double g1, double g2) {
  if (!(g1 < g2)) throw DomainError("compact gap needs g1 < g2");
  return t(g2) / t(g1) - 1.0;
}

double compact_gap_label(BranchingParameter b, double g1, double g2) {
  return compact_gap_label(KoenigsMap(b), g1, g2);
}

GapSequenceReport gap_sequence_check(const KoenigsMap &t, double g1, double g2, int k_max) {
  if (!(g1 < g2)) throw DomainError("compact gap needs g1 < g2");
  const double t1 = t(g1);
  const double t2 = t(g2);
  const auto spectrum = compact_spectrum(t, k_max);
  std::vector<double> values;
  values.reserve(spectrum.size());
  for (const auto &e : spectrum) values.push_back(e.value);

  GapSequenceReport r{{}, 0.0, 0.0, true};
  double scale = 2.0;
  for (int k = 1; k <= k_max; ++k) {
    scale *= t.multiplier();
    const double lo = scale * t1;
    const double hi = scale * t2;
    r.ratios.push_back(hi / lo - 1.0);
    const double margin = 1e-9 * hi;
    auto it = std::upper_bound(values.begin(), values.end(), lo + margin);
    if (it != values.end() && *it < hi - margin) r.images_empty = false;
  }
  r.min_ratio = *std::min_element(r.ratios.begin(), r.ratios.end());
  r.max_ratio = *std::max_element(r.ratios.begin(), r.ratios.end());
  return r;
}

GapSequenceReport gap_sequence_check(BranchingParameter b, double g1, double g2, int k_max) {
  return gap_sequence_check(KoenigsMap(b), g1, g2, k_max);
}

} // namespace bubble
