#include "bubble/eigensolve.hpp"

#include <limits>

namespace bubble {

int SpectrumMultiset::total_multiplicity() const {
  int total = 0;
  for (const auto &c : entries) total += c.multiplicity;
  return total;
}

std::vector<double> SpectrumMultiset::values() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto &c : entries) out.push_back(c.value);
  return out;
}

SpectrumMultiset cluster_eigenvalues(std::vector<double> sorted_values, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("clustering tolerance must be positive");
  std::sort(sorted_values.begin(), sorted_values.end());
  SpectrumMultiset out;
  out.tolerance = tolerance;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= sorted_values.size(); ++i) {
    if (i == sorted_values.size() || sorted_values[i] - sorted_values[i - 1] > tolerance) {
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += sorted_values[k];
      auto count = static_cast<int>(i - start);
      out.entries.push_back({sum / count, count});
      start = i;
    }
  }
  return out;
}

Eigendecomposition eigendecompose(const LaplacianMatrix &m) {
  JacobiEigenSolver<double> solver(m.symmetrized());
  Eigen::VectorXd inv_sqrt_deg(m.dimension());
  for (Eigen::Index r = 0; r < m.dimension(); ++r)
    inv_sqrt_deg(r) = 1.0 / std::sqrt(static_cast<double>(m.degrees[static_cast<std::size_t>(r)]));
  Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0).cwiseMin(2.0);
  return {values, inv_sqrt_deg.asDiagonal() * solver.eigenvectors(), solver.sweeps()};
}

SpectrumMultiset eigensolve(const LaplacianMatrix &m, double tolerance) {
  JacobiEigenSolver<double> solver(m.symmetrized(), false);
  Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0).cwiseMin(2.0);
  return cluster_eigenvalues({values.data(), values.data() + values.size()}, tolerance);
}

double hausdorff_distance(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<double> &from, std::vector<double> to) {
    std::sort(to.begin(), to.end());
    double worst = 0.0;
    for (double x : from) {
      auto it = std::lower_bound(to.begin(), to.end(), x);
      double best = std::numeric_limits<double>::infinity();
      if (it != to.end()) best = *it - x;
      if (it != to.begin()) best = std::min(best, x - *std::prev(it));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

} // namespace bubble
