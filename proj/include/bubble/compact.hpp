#ifndef BUBBLE_COMPACT_HPP
#define BUBBLE_COMPACT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bubble/decimation.hpp"

namespace bubble {

/// Koenigs linearization of S_0 at its attracting fixed point 0:
/// T(z) = lim lambda0^L S_0^L(z), so that T(S_0 z) = T(z) / lambda0.
class KoenigsMap {
public:
  explicit KoenigsMap(BranchingParameter b, double tolerance = 1e-10, int max_depth = 200);

  int b() const noexcept { return f_.b(); }
  double multiplier() const noexcept { return lambda0_; }

  /// Stops at the first L >= min_depth whose next increment is below
  /// tolerance * max(1, |T|); throws NonConvergence past max_depth.
  double operator()(double z, int min_depth = 1) const;
  /// Depth L at which the evaluation of `z` stops.
  int depth_for(double z, int min_depth = 1) const;

private:
  struct Result {
    double value;
    int depth;
  };
  Result evaluate(double z, int min_depth) const;

  DecimationFunctions f_;
  double lambda0_;
  double tolerance_;
  int max_depth_;
};

double koenigs_T(BranchingParameter b, double z, int min_depth = 1);

struct CompactEigenvalue {
  double value;
  int generation;
  double source;
  std::optional<std::int64_t> multiplicity; // empty when flagged unknown
};

/// {0, 2T(2)} together with 2 lambda0^k T(z) for z in sigma(Delta_k) with
/// z >= b/(b+1), k = 1..k_max; ascending.
std::vector<CompactEigenvalue> compact_spectrum(BranchingParameter b, int k_max);
std::vector<CompactEigenvalue> compact_spectrum(const KoenigsMap &t, int k_max);

/// T(g2)/T(g1) - 1.
double compact_gap_label(BranchingParameter b, double g1, double g2);
double compact_gap_label(const KoenigsMap &t, double g1, double g2);

struct GapSequenceReport {
  std::vector<double> ratios; // generation k = 1..k_max
  double min_ratio;
  double max_ratio;
  bool images_empty; // no compact eigenvalue strictly inside any image
};

/// For each generation k <= k_max the gap (g1, g2) maps to
/// (2 lambda0^k T(g1), 2 lambda0^k T(g2)); reports lambda_{N+1}/lambda_N - 1
/// across each image and whether the images avoid compact_spectrum(b, k_max).
GapSequenceReport gap_sequence_check(BranchingParameter b, double g1, double g2, int k_max);
GapSequenceReport gap_sequence_check(const KoenigsMap &t, double g1, double g2, int k_max);

} // namespace bubble

#endif // BUBBLE_COMPACT_HPP
