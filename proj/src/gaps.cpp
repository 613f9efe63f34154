#include "bubble/gaps.hpp"

#include <algorithm>

namespace bubble {

GapWord::GapWord(std::vector<int> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw DomainError("gap word must have at least one letter");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const int hi = (i + 1 == letters_.size()) ? 1 : 2;
    if (letters_[i] < 0 || letters_[i] > hi) throw DomainError("invalid gap word letter");
  }
}

std::string GapWord::str() const {
  std::string s;
  for (int l : letters_) s.push_back(static_cast<char>('0' + l));
  return s;
}

std::pair<Gap, Gap> base_gaps(BranchingParameter b) {
  const double bb = b.value();
  return {Gap{GapWord({0}), 1.0 / (bb + 1), bb / (bb + 1)},
          Gap{GapWord({1}), (bb + 2) / (bb + 1), (2 * bb + 1) / (bb + 1)}};
}

GapWord tilde_word(const GapWord &w) {
  std::vector<int> out = w.letters();
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = 2 - out[i];
  out.back() = 1 - out.back();
  return GapWord(out);
}

namespace {

Gap gap_for_word_impl(const DecimationFunctions &f, const GapWord &w) {
  if (w.scale() == 1) return w[0] == 0 ? base_gaps(f.b()).first : base_gaps(f.b()).second;
  const int l = w[0];
  GapWord rest(std::vector<int>(w.letters().begin() + 1, w.letters().end()));
  const Gap inner = gap_for_word_impl(f, l == 1 ? tilde_word(rest) : rest);
  double a = f.inverse_branch(static_cast<Branch>(l), inner.left);
  double c = f.inverse_branch(static_cast<Branch>(l), inner.right);
  if (a > c) std::swap(a, c);
  return Gap{w, a, c};
}

void all_words(int k, std::vector<int> &prefix, std::vector<GapWord> &out) {
  if (static_cast<int>(prefix.size()) == k - 1) {
    for (int last = 0; last <= 1; ++last) {
      prefix.push_back(last);
      out.emplace_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (int l = 0; l <= 2; ++l) {
    prefix.push_back(l);
    all_words(k, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

Gap gap_for_word(BranchingParameter b, const GapWord &w) {
  return gap_for_word_impl(DecimationFunctions::canonical(b), w);
}

std::vector<Gap> enumerate_gaps(BranchingParameter b, int k) {
  if (k < 1) throw DomainError("gap scale must be >= 1");
  const auto f = DecimationFunctions::canonical(b);
  std::vector<GapWord> words;
  std::vector<int> prefix;
  all_words(k, prefix, words);
  std::vector<Gap> gaps;
  gaps.reserve(words.size());
  for (const auto &w : words) gaps.push_back(gap_for_word_impl(f, w));
  return gaps;
}

std::vector<Gap> enumerate_gaps_up_to(BranchingParameter b, int k) {
  std::vector<Gap> out;
  for (int s = 1; s <= k; ++s) {
    auto g = enumerate_gaps(b, s);
    out.insert(out.end(), g.begin(), g.end());
  }
  std::sort(out.begin(), out.end(), [](const Gap &x, const Gap &y) { return x.left < y.left; });
  return out;
}

Rational gap_label(BranchingParameter b, const GapWord &w) {
  const int bb = b.value();
  const int k = w.scale();
  Rational label(Integer(bb + 1 + 2 * w[static_cast<std::size_t>(k - 1)]), 2 * ipow(bb + 2, k));
  Rational sum = 0;
  for (int j = 1; j < k; ++j)
    sum += Rational(Integer(w[static_cast<std::size_t>(j - 1)]), ipow(bb + 2, j));
  return label + make_rational(bb + 1, 2) * sum;
}

Rational ifs_map(BranchingParameter b, int l, const Rational &y) {
  const Rational s = b.value() + 2;
  switch (l) {
  case 0:
    return y / s;
  case 1:
    return make_rational(1, 2) + (1 - 2 * y) / (2 * s);
  case 2:
    return 1 + (y - 1) / s;
  default:
    throw DomainError("IFS map index must be 0, 1 or 2");
  }
}

std::set<Rational> ifs_orbit(BranchingParameter b, int depth) {
  if (depth < 1) throw DomainError("ifs_orbit needs depth >= 1");
  const int bb = b.value();
  std::set<Rational> orbit{make_rational(bb + 1, 2 * (bb + 2)), make_rational(bb + 3, 2 * (bb + 2))};
  std::vector<Rational> frontier(orbit.begin(), orbit.end());
  for (int d = 1; d < depth; ++d) {
    std::vector<Rational> next;
    for (const auto &y : frontier)
      for (int l = 0; l < 3; ++l) {
        Rational q = ifs_map(b, l, y);
        if (orbit.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return orbit;
}

std::set<Rational> labels_up_to(BranchingParameter b, int depth) {
  std::set<Rational> out;
  for (int k = 1; k <= depth; ++k) {
    std::vector<GapWord> words;
    std::vector<int> prefix;
    all_words(k, prefix, words);
    for (const auto &w : words) out.insert(gap_label(b, w));
  }
  return out;
}

LabelCrosscheck crosscheck_labels(const AtomicMeasure &limit, int k) {
  if (limit.max_generation() < k + 4) throw DomainError("crosscheck_labels needs M >= k + 4");
  LabelCrosscheck r{Rational(0), limit.declared_tail_bound};
  for (const auto &g : enumerate_gaps(limit.b, k)) {
    Rational d = counting_function(limit, g.midpoint()).value - gap_label(limit.b, g.word);
    if (d < 0) d = -d;
    if (d > r.worst_discrepancy) r.worst_discrepancy = d;
  }
  return r;
}

LabelCrosscheck crosscheck_labels(BranchingParameter b, int k, int depth) {
  if (depth < k + 4) throw DomainError("crosscheck_labels needs M >= k + 4");
  return crosscheck_labels(limit_dos(b, depth), k);
}

InfiniteVolumeIds::InfiniteVolumeIds(BranchingParameter b, int k) : b_(b), k_(k) {
  if (k < 1) throw DomainError("InfiniteVolumeIds needs k >= 1");
  const auto f = DecimationFunctions::canonical(b);
  const auto e = exceptional_set(b);
  atoms_.resize(static_cast<std::size_t>(k));
  std::vector<double> current{to_double(e[0]), to_double(e[1])};
  for (int m = 0; m < k; ++m) {
    atoms_[static_cast<std::size_t>(m)] = current;
    std::sort(atoms_[static_cast<std::size_t>(m)].begin(), atoms_[static_cast<std::size_t>(m)].end());
    if (m + 1 < k) current = preimage_set(f, current, 1);
  }
  // the cylinder S_u([0,2]) has endpoints S_u(0) and S_u(2)
  const auto ends0 = preimage_tree(f, {0.0}, k);
  const auto ends2 = preimage_tree(f, {2.0}, k);
  for (std::size_t i = 0; i < ends0.size(); ++i)
    cylinder_right_ends.push_back(std::max(ends0[i].location, ends2[i].location));
  std::sort(cylinder_right_ends.begin(), cylinder_right_ends.end());
}

Rational InfiniteVolumeIds::operator()(double x) const {
  Rational total = 0;
  for (int m = 0; m < k_; ++m) {
    const auto &a = atoms_[static_cast<std::size_t>(m)];
    const auto count = std::upper_bound(a.begin(), a.end(), x) - a.begin();
    total += count * limit_weight(b_, m);
  }
  const auto cylinders =
      std::upper_bound(cylinder_right_ends.begin(), cylinder_right_ends.end(), x) -
      cylinder_right_ends.begin();
  return total + Rational(Integer(cylinders), ipow(b_ + 2, k_));
}

std::vector<Plateau> exact_plateaus(BranchingParameter b, int k) {
  const InfiniteVolumeIds ids(b, k);
  std::vector<Plateau> out;
  for (auto &g : enumerate_gaps_up_to(b, k)) {
    Rational h = ids(g.midpoint());
    out.push_back({std::move(g), std::move(h)});
  }
  return out;
}

} // namespace bubble
