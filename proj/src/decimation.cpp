#include "bubble/decimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bubble {

DecimationFunctions::DecimationFunctions(int b, std::array<Rational, 4> c)
    : b_(b), coefficients_(std::move(c)) {
  for (std::size_t k = 0; k < 4; ++k) approx_[k] = to_double(coefficients_[k]);
}

DecimationFunctions DecimationFunctions::canonical(BranchingParameter b) {
  const Rational bb = b.value();
  const Rational lead = (bb + 1) * (bb + 1) / bb;
  return DecimationFunctions(b, {Rational(0), (2 * bb + 1) * (bb + 2) / bb, -3 * lead, lead});
}

DecimationFunctions DecimationFunctions::perturbed(int index, const Rational &delta) const {
  if (index < 0 || index > 3) throw DomainError("coefficient index must lie in 0..3");
  auto c = coefficients_;
  c[static_cast<std::size_t>(index)] += delta;
  return DecimationFunctions(b_, c);
}

std::pair<Rational, Rational> DecimationFunctions::branch_range(Branch j) const {
  const Rational bb = b_;
  switch (j) {
  case Branch::Zero:
    return {Rational(0), 1 / (bb + 1)};
  case Branch::One:
    return {bb / (bb + 1), (bb + 2) / (bb + 1)};
  case Branch::Two:
    break;
  }
  return {(2 * bb + 1) / (bb + 1), Rational(2)};
}

double DecimationFunctions::inverse_branch(Branch j, double w) const {
  if (!(w >= 0.0 && w <= 2.0))
    throw DomainError("inverse branch argument must lie in [0, 2], got " + std::to_string(w));
  auto [lo_q, hi_q] = branch_range(j);
  const double lo0 = to_double(lo_q);
  const double hi0 = to_double(hi_q);
  const double orientation = (j == Branch::One) ? -1.0 : 1.0;

  double lo = lo0;
  double hi = hi0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (orientation * (R(mid) - w) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    const double slope = derivative(z);
    if (slope == 0.0) break;
    z = std::clamp(z - (R(z) - w) / slope, lo0, hi0);
  }
  return z;
}

std::array<Rational, 2> exceptional_set(BranchingParameter b) {
  const Rational bb = b.value();
  return {1 / (bb + 1), (2 * bb + 1) / (bb + 1)};
}

Rational multiplier_at_zero(BranchingParameter b) {
  const Rational bb = b.value();
  return (2 * bb + 1) * (bb + 2) / bb;
}

double inverse_branch(BranchingParameter b, Branch j, double w) {
  return DecimationFunctions::canonical(b).inverse_branch(j, w);
}

std::vector<PreimagePoint> preimage_tree(const DecimationFunctions &f,
                                         const std::vector<double> &seeds, int n) {
  if (n < 0) throw DomainError("preimage depth must be >= 0");
  std::vector<PreimagePoint> current;
  current.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!(seeds[i] >= 0.0 && seeds[i] <= 2.0)) throw DomainError("preimage seeds must lie in [0, 2]");
    current.push_back({seeds[i], static_cast<int>(i), 0, 0});
  }
  std::uint64_t place = 1; // 3^depth
  for (int depth = 0; depth < n; ++depth) {
    std::vector<PreimagePoint> next;
    next.reserve(current.size() * 3);
    for (const auto &p : current)
      for (Branch j : kBranches)
        next.push_back({f.inverse_branch(j, p.location), p.seed, depth + 1,
                        static_cast<std::uint64_t>(j) * place + p.word});
    current = std::move(next);
    place *= 3;
  }
  return current;
}

std::vector<double> preimage_set(const DecimationFunctions &f, const std::vector<double> &seeds,
                                 int n) {
  auto tree = preimage_tree(f, seeds, n);
  std::vector<double> out;
  out.reserve(tree.size());
  for (const auto &p : tree) out.push_back(p.location);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> preimage_set(BranchingParameter b, const std::vector<double> &seeds, int n) {
  return preimage_set(DecimationFunctions::canonical(b), seeds, n);
}

std::vector<double> SpectrumPrediction::values() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto &e : entries) out.push_back(e.value);
  return out;
}

namespace {

// Number of innermost letters equal to `digit` among the `depth` letters of a word.
int trailing_letters(std::uint64_t word, int depth, std::uint64_t digit) {
  int count = 0;
  for (int k = 0; k < depth && word % 3 == digit; ++k, word /= 3) ++count;
  return count;
}

void sort_entries(SpectrumPrediction &p) {
  std::sort(p.entries.begin(), p.entries.end(),
            [](const PredictedEigenvalue &a, const PredictedEigenvalue &c) { return a.value < c.value; });
}

} // namespace

SpectrumPrediction predicted_neumann_spectrum(const DecimationFunctions &f, int level) {
  if (level < 0) throw DomainError("level must be >= 0");
  const int b = f.b();
  SpectrumPrediction out{Flavor::Neumann, b, level, {}};
  if (level == 0) {
    out.entries = {{0.0, std::nullopt, 0}, {2.0, std::nullopt, 0}};
    return out;
  }
  const std::vector<double> level_one{0.0, to_double(make_rational(b, b + 1)),
                                      to_double(make_rational(b + 2, b + 1)), 2.0};
  for (const auto &p : preimage_tree(f, level_one, level - 1)) {
    int generation = p.depth + 1;
    if (p.seed == 0) generation = p.depth - trailing_letters(p.word, p.depth, 0);
    if (p.seed == 3) generation = p.depth - trailing_letters(p.word, p.depth, 2);
    out.entries.push_back({p.location, std::nullopt, generation});
  }
  sort_entries(out);
  return out;
}

SpectrumPrediction predicted_neumann_spectrum(BranchingParameter b, int level) {
  return predicted_neumann_spectrum(DecimationFunctions::canonical(b), level);
}

std::int64_t dirichlet_multiplicity(int b, int level, int generation) {
  if (generation < 0 || generation >= level)
    throw DomainError("Dirichlet generation must lie in 0..level-1");
  Integer numerator = (b - 1) * ipow(b + 2, level - 1 - generation) + 2;
  if (numerator % (b + 1) != 0) throw DomainError("non-integral Dirichlet multiplicity");
  return (numerator / (b + 1)).convert_to<std::int64_t>();
}

SpectrumPrediction predicted_dirichlet_spectrum(const DecimationFunctions &f, int level) {
  if (level < 1) throw DomainError("Dirichlet spectrum needs level >= 1");
  const int b = f.b();
  SpectrumPrediction out{Flavor::Dirichlet, b, level, {}};
  auto e = exceptional_set(b);
  const std::vector<double> seeds{to_double(e[0]), to_double(e[1])};
  for (int m = 0; m < level; ++m) {
    const auto mult = static_cast<int>(dirichlet_multiplicity(b, level, m));
    for (const auto &p : preimage_tree(f, seeds, m)) out.entries.push_back({p.location, mult, m});
  }
  sort_entries(out);
  return out;
}

SpectrumPrediction predicted_dirichlet_spectrum(BranchingParameter b, int level) {
  return predicted_dirichlet_spectrum(DecimationFunctions::canonical(b), level);
}

std::vector<double> julia_approximation(BranchingParameter b, int depth, double seed) {
  if (seed != 0.0 && seed != 2.0) throw DomainError("Julia seed must be a repelling fixed point 0 or 2");
  return preimage_set(b, {seed}, depth);
}

std::pair<double, double> critical_points(BranchingParameter b) {
  const double bb = b.value();
  const double offset = std::sqrt((bb * bb + bb + 1) / 3.0) / (bb + 1);
  return {1.0 - offset, 1.0 + offset};
}

namespace {

template <typename Scalar>
Scalar schur_residual_impl(const DecimationFunctions &f, const Scalar &z) {
  using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
  const LaplacianMatrix g1 = neumann_laplacian(build_graph(f.b(), 1));
  auto block = [&](Eigen::Index r, Eigen::Index c) {
    Mat2 out;
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index k = 0; k < 2; ++k) {
        if constexpr (std::is_same_v<Scalar, double>)
          out(i, k) = to_double(g1.entries(r + i, c + k));
        else
          out(i, k) = g1.entries(r + i, c + k);
      }
    return out;
  };
  const Mat2 top = block(0, 0);
  const Mat2 upper = block(0, 2);
  const Mat2 lower = block(2, 0);
  const Mat2 interior = block(2, 2);
  Mat2 z_identity;
  z_identity << z, Scalar(0), Scalar(0), z;

  const Mat2 shifted = interior - z_identity;
  const Scalar det = shifted(0, 0) * shifted(1, 1) - shifted(0, 1) * shifted(1, 0);
  bool singular = false;
  if constexpr (std::is_same_v<Scalar, double>)
    singular = std::abs(det) < 1e-12;
  else
    singular = (det == 0);
  if (singular) throw DomainError("z lies in the spectrum of the interior block");
  Mat2 inverse;
  inverse << shifted(1, 1), -shifted(0, 1), -shifted(1, 0), shifted(0, 0);
  inverse /= det;

  const Mat2 schur = top - z_identity - upper * inverse * lower;
  const Scalar p = phi(f.b(), z);
  const Scalar q = p * f.R(z);
  Mat2 target;
  target << p - q, -p, -p, p - q;
  Scalar worst(0);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index k = 0; k < 2; ++k) {
      Scalar d = schur(i, k) - target(i, k);
      if (d < 0) d = -d;
      if (d > worst) worst = d;
    }
  return worst;
}

} // namespace

double schur_residual(const DecimationFunctions &f, double z) { return schur_residual_impl(f, z); }

Rational schur_residual(const DecimationFunctions &f, const Rational &z) {
  return schur_residual_impl(f, z);
}

} // namespace bubble
