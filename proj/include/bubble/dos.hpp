#ifndef BUBBLE_DOS_HPP
#define BUBBLE_DOS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bubble/decimation.hpp"
#include "bubble/rational.hpp"

namespace bubble {

/// An atom S_w(e) with e in E_b (seed 0 -> 1/(b+1), seed 1 -> (2b+1)/(b+1)).
/// Its generation is |w|; (generation, seed, word) identifies it exactly.
struct Atom {
  double location;
  int generation;
  int seed;
  std::uint64_t word;
};

/// Atomic measure on preimages of E_b. All atoms of one generation share a
/// weight, so weights are stored per generation and stay exact.
struct AtomicMeasure {
  int b = 2;
  std::vector<Atom> atoms;                    // ascending by location
  std::vector<Rational> generation_weights;   // indexed by generation
  Rational declared_tail_bound{0};

  const Rational &weight(const Atom &a) const { return generation_weights[a.generation]; }
  std::size_t size() const { return atoms.size(); }
  int max_generation() const { return static_cast<int>(generation_weights.size()) - 1; }

  /// Number of atoms per generation.
  std::vector<std::int64_t> generation_counts() const;
  Rational mass() const;
  /// nu((-inf, x]).
  Rational cumulative(double x) const;
  double integrate(const std::function<double(double)> &f) const;
};

/// nu_{l,b}: generations 0..l-1, weight ((b-1)(b+2)^{l-m-1}+2) / (2((b+2)^l - 1)).
AtomicMeasure finite_dos(BranchingParameter b, int level);

/// Truncation of nu_b to generations 0..M, weight (b-1)/(2(b+2)^{m+1}),
/// tail bound (3/(b+2))^{M+1}.
AtomicMeasure limit_dos(BranchingParameter b, int depth);

/// Uniform probability measure on R^{-m}(E_b).
AtomicMeasure brolin_measure(BranchingParameter b, int m);

/// Exact weight of one generation-m atom in each measure.
Rational finite_weight(int b, int level, int generation);
Rational limit_weight(int b, int generation);
Rational limit_tail_bound(int b, int depth);

struct CountingValue {
  Rational value;
  Rational error_bound;
};

CountingValue counting_function(BranchingParameter b, int depth, double x);
CountingValue counting_function(const AtomicMeasure &limit, double x);

/// Worst exact discrepancy in the functional equations of nu_b over the atoms
/// of limit_dos(b, depth): the branch relation (b+2) w(S_j a) = w(a) for every
/// atom a of generation < depth and every branch, the parent relation for
/// atoms off E_b, and the extra mass (b-1)/(2(b+2)) on E_b.
Rational self_similarity_residual(BranchingParameter b, int depth);

/// Continuous piecewise-linear function, constant outside the knot range.
struct PiecewiseLinear {
  std::vector<double> knots;
  std::vector<double> values;

  double operator()(double x) const;
};

struct ConvergenceReport {
  int level;
  int depth;
  double lhs;  // ((b+2)/3)^l * integral of f against (nu_b^{(M)} - nu_{l,b})
  double rhs;  // 2 * integral of f against mu_M
  double gap;  // |lhs - rhs|
  double head; // ((b+2)/3)^l * integral over generations < l of (nu_{l,b} - nu_b)
  double tail; // ((b+2)/3)^l * integral over generations l..M of nu_b
};

ConvergenceReport convergence_diagnostic(BranchingParameter b, int level,
                                         const std::function<double(double)> &f, int depth = 12);
/// Reuses a prebuilt limit_dos(b, M) (M = its max generation).
ConvergenceReport convergence_diagnostic(const AtomicMeasure &limit, int level,
                                         const std::function<double(double)> &f);

struct Staircase {
  std::vector<double> breakpoints;
  std::vector<Rational> values; // value on [breakpoints[i], breakpoints[i+1])

  Rational operator()(double x) const;
};

/// Cumulative sums of the measure at its atoms.
Staircase staircase(const AtomicMeasure &measure);

} // namespace bubble

#endif // BUBBLE_DOS_HPP
