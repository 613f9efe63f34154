#ifndef BUBBLE_DECIMATION_HPP
#define BUBBLE_DECIMATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "bubble/errors.hpp"
#include "bubble/graph.hpp"
#include "bubble/laplacian.hpp"
#include "bubble/rational.hpp"

namespace bubble {

/// The spectral decimation polynomial
///   R_b(z) = (z/b) ((b+1)z - 2b - 1) ((b+1)z - b - 2),
/// exact for rational z.
template <typename Scalar>
Scalar decimation_polynomial(int b, const Scalar &z) {
  const Scalar bb(b);
  return z / bb * ((bb + 1) * z - 2 * bb - 1) * ((bb + 1) * z - bb - 2);
}

/// R_b'(z) = (3/b)(b+1)^2 (z-1)^2 - (b^2+b+1)/b.
template <typename Scalar>
Scalar decimation_derivative(int b, const Scalar &z) {
  const Scalar bb(b);
  const Scalar shift = z - 1;
  return 3 * (bb + 1) * (bb + 1) * shift * shift / bb - (bb * bb + bb + 1) / bb;
}

/// phi_b(z) = b / ((b+1)^2 (z-1)^2 - b^2). Throws at its poles.
template <typename Scalar>
Scalar phi(int b, const Scalar &z) {
  const Scalar bb(b);
  const Scalar den = (bb + 1) * (bb + 1) * (z - 1) * (z - 1) - bb * bb;
  if (den == Scalar(0)) throw DomainError("phi_b evaluated at a pole");
  return bb / den;
}

/// psi_b(z) = z ((b+1)z - b - 2) / ((b+1)z - 1). Throws at z = 1/(b+1).
template <typename Scalar>
Scalar psi(int b, const Scalar &z) {
  const Scalar bb(b);
  const Scalar den = (bb + 1) * z - 1;
  if (den == Scalar(0)) throw DomainError("psi_b evaluated at a pole");
  return z * ((bb + 1) * z - bb - 2) / den;
}

/// Inverse branch index. Branch j is the one whose range contains j:
/// 0 -> [0, 1/(b+1)], 1 -> [b/(b+1), (b+2)/(b+1)] (orientation reversing),
/// 2 -> [(2b+1)/(b+1), 2]. Index j here is j+1 in the 1-based convention.
enum class Branch : std::uint8_t { Zero = 0, One = 1, Two = 2 };

inline constexpr std::array<Branch, 3> kBranches{Branch::Zero, Branch::One, Branch::Two};

/// Coefficients of R_b as a cubic c3 z^3 + c2 z^2 + c1 z + c0, plus the pieces
/// derived from it. The canonical instance matches decimation_polynomial();
/// perturbed instances exist for mutation checks.
class DecimationFunctions {
public:
  static DecimationFunctions canonical(BranchingParameter b);

  /// Copy with coefficient `index` (0..3) shifted by `delta`.
  DecimationFunctions perturbed(int index, const Rational &delta) const;

  int b() const noexcept { return b_; }
  const std::array<Rational, 4> &coefficients() const noexcept { return coefficients_; }

  template <typename Scalar>
  Scalar R(const Scalar &z) const {
    if constexpr (std::is_same_v<Scalar, double>) {
      return ((approx_[3] * z + approx_[2]) * z + approx_[1]) * z + approx_[0];
    } else {
      return ((coefficients_[3] * z + coefficients_[2]) * z + coefficients_[1]) * z +
             coefficients_[0];
    }
  }

  template <typename Scalar>
  Scalar derivative(const Scalar &z) const {
    if constexpr (std::is_same_v<Scalar, double>) {
      return (3 * approx_[3] * z + 2 * approx_[2]) * z + approx_[1];
    } else {
      return (3 * coefficients_[3] * z + 2 * coefficients_[2]) * z + coefficients_[1];
    }
  }

  /// R'(0) = c1; equals (2b+1)(b+2)/b for the canonical coefficients.
  const Rational &multiplier_at_zero() const noexcept { return coefficients_[1]; }

  /// Closed-interval range of an inverse branch, exact.
  std::pair<Rational, Rational> branch_range(Branch j) const;

  /// The unique z in branch j's range with R(z) = w. Bracketed bisection
  /// (40 steps) followed by 5 Newton steps clamped to the bracket.
  double inverse_branch(Branch j, double w) const;

private:
  DecimationFunctions(int b, std::array<Rational, 4> c);

  int b_;
  std::array<Rational, 4> coefficients_;
  std::array<double, 4> approx_{};
};

/// E_b = {1/(b+1), (2b+1)/(b+1)}, ascending.
std::array<Rational, 2> exceptional_set(BranchingParameter b);

/// (2b+1)(b+2)/b.
Rational multiplier_at_zero(BranchingParameter b);

double inverse_branch(BranchingParameter b, Branch j, double w);

/// A point S_w(seed) of a preimage tree. The word is stored base 3 with the
/// outermost map as the most significant digit, so sorting by `word` is the
/// lexicographic order on words.
struct PreimagePoint {
  double location;
  int seed;
  int depth;
  std::uint64_t word;
};

/// All S_w(seeds[i]) with |w| = n, in (seed, word) order.
std::vector<PreimagePoint> preimage_tree(const DecimationFunctions &f,
                                         const std::vector<double> &seeds, int n);

/// R_b^{-n}(S), sorted ascending; 3^n |S| points.
std::vector<double> preimage_set(BranchingParameter b, const std::vector<double> &seeds, int n);
std::vector<double> preimage_set(const DecimationFunctions &f, const std::vector<double> &seeds,
                                 int n);

struct PredictedEigenvalue {
  double value;
  std::optional<int> multiplicity;
  int generation;
};

struct SpectrumPrediction {
  Flavor flavor;
  int b;
  int level;
  std::vector<PredictedEigenvalue> entries; // ascending

  std::vector<double> values() const;
};

/// Neumann eigenvalue set (no multiplicities):
///   l = 0: {0, 2};  l = 1: {0, b/(b+1), (b+2)/(b+1), 2};
///   l >= 2: R_b^{-(l-1)}(sigma(Delta_1)).
/// `generation` is the least m with R^m(z) in {0, 2}.
SpectrumPrediction predicted_neumann_spectrum(const DecimationFunctions &f, int level);
SpectrumPrediction predicted_neumann_spectrum(BranchingParameter b, int level);

/// Dirichlet eigenvalues with multiplicities: generation m < l contributes the
/// points of R^{-m}(E_b), each with multiplicity ((b-1)(b+2)^{l-1-m} + 2)/(b+1).
SpectrumPrediction predicted_dirichlet_spectrum(const DecimationFunctions &f, int level);
SpectrumPrediction predicted_dirichlet_spectrum(BranchingParameter b, int level);

/// Dirichlet multiplicity of a generation-m eigenvalue at level l.
std::int64_t dirichlet_multiplicity(int b, int level, int generation);

/// R_b^{-depth}({seed}) for a repelling fixed point seed in {0, 2}.
std::vector<double> julia_approximation(BranchingParameter b, int depth, double seed);

/// Roots of R_b', ascending: 1 -+ sqrt((b^2+b+1)/3)/(b+1).
std::pair<double, double> critical_points(BranchingParameter b);

/// max-entry norm of (T - z) - B (X - z)^{-1} C - (phi(z) Delta_0 - psi(z) I),
/// with the blocks taken from the explicit G_1 Laplacian and psi = phi * R
/// built from `f`'s coefficients. Throws when z is in sigma(X) = E_b.
double schur_residual(const DecimationFunctions &f, double z);
Rational schur_residual(const DecimationFunctions &f, const Rational &z);

} // namespace bubble

#endif // BUBBLE_DECIMATION_HPP
