#ifndef BUBBLE_GAPS_HPP
#define BUBBLE_GAPS_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bubble/dos.hpp"
#include "bubble/rational.hpp"

namespace bubble {

/// Letters w_1..w_k, w_j in {0,1,2} for j < k and w_k in {0,1}.
class GapWord {
public:
  explicit GapWord(std::vector<int> letters);

  int scale() const noexcept { return static_cast<int>(letters_.size()); }
  const std::vector<int> &letters() const noexcept { return letters_; }
  int operator[](std::size_t i) const { return letters_[i]; }
  std::string str() const;

  auto operator<=>(const GapWord &) const = default;

private:
  std::vector<int> letters_;
};

struct Gap {
  GapWord word;
  double left;
  double right;

  int scale() const noexcept { return word.scale(); }
  double midpoint() const noexcept { return 0.5 * (left + right); }
};

/// E_1^0 = (1/(b+1), b/(b+1)) and E_1^1 = ((b+2)/(b+1), (2b+1)/(b+1)).
std::pair<Gap, Gap> base_gaps(BranchingParameter b);

/// (2-w_1)...(2-w_{k-1})(1-w_k); an involution.
GapWord tilde_word(const GapWord &w);

/// The interval E_k^w, built from E^{0w} = S_0(E^w), E^{1w} = S_1(E^{~w}),
/// E^{2w} = S_2(E^w).
Gap gap_for_word(BranchingParameter b, const GapWord &w);

/// All 2*3^{k-1} gaps of scale k in lexicographic word order, which is also
/// their left-to-right order.
std::vector<Gap> enumerate_gaps(BranchingParameter b, int k);

/// Gaps of every scale 1..k, sorted left to right.
std::vector<Gap> enumerate_gaps_up_to(BranchingParameter b, int k);

/// (b+1+2w_k)/(2(b+2)^k) + ((b+1)/2) sum_{j<k} w_j/(b+2)^j.
Rational gap_label(BranchingParameter b, const GapWord &w);

/// Q_0(y) = y/(b+2), Q_1(y) = 1/2 + (1-2y)/(2(b+2)), Q_2(y) = 1 + (y-1)/(b+2).
Rational ifs_map(BranchingParameter b, int l, const Rational &y);

/// Base labels (b+1)/(2(b+2)), (b+3)/(2(b+2)) and their images under up to
/// depth-1 applications of Q_0, Q_1, Q_2.
std::set<Rational> ifs_orbit(BranchingParameter b, int depth);

/// {gap_label(b, w) : |w| <= depth}.
std::set<Rational> labels_up_to(BranchingParameter b, int depth);

struct LabelCrosscheck {
  Rational worst_discrepancy;
  Rational bound;
  bool passed() const { return worst_discrepancy <= bound; }
};

/// |counting_function(midpoint) - gap_label| over all scale-k gaps, against
/// the truncation bound (3/(b+2))^{M+1}.
LabelCrosscheck crosscheck_labels(BranchingParameter b, int k, int depth);
LabelCrosscheck crosscheck_labels(const AtomicMeasure &limit, int k);

/// Integrated density of states of nu_b, exact on gaps of scale <= k:
/// atoms of generation < k are counted individually and each level-k
/// cylinder S_u([0,2]) left of x contributes its full mass (b+2)^{-k}.
class InfiniteVolumeIds {
public:
  InfiniteVolumeIds(BranchingParameter b, int k);

  int b() const noexcept { return b_; }
  int depth() const noexcept { return k_; }
  Rational operator()(double x) const;

private:
  int b_;
  int k_;
  std::vector<std::vector<double>> atoms_; // per generation, sorted
  std::vector<double> cylinder_right_ends; // sorted
};

struct Plateau {
  Gap gap;
  Rational height;
};

/// Plateaus of the infinite-volume IDS on every gap of scale <= k, left to right.
std::vector<Plateau> exact_plateaus(BranchingParameter b, int k);

} // namespace bubble

#endif // BUBBLE_GAPS_HPP
