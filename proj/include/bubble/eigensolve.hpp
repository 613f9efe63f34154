#ifndef BUBBLE_EIGENSOLVE_HPP
#define BUBBLE_EIGENSOLVE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Jacobi>

#include "bubble/errors.hpp"
#include "bubble/laplacian.hpp"

namespace bubble {

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Sweeps visit the
/// pairs (p, q), p < q, in row order, so results are reproducible bit for bit.
/// Stops once the off-diagonal Frobenius norm drops below 1e-14 * n.
template <typename Scalar>
class JacobiEigenSolver {
public:
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr int kMaxSweeps = 100;

  JacobiEigenSolver() = default;
  explicit JacobiEigenSolver(const MatrixType &a, bool compute_vectors = true) {
    compute(a, compute_vectors);
  }

  JacobiEigenSolver &compute(const MatrixType &a, bool compute_vectors = true) {
    const Eigen::Index n = a.rows();
    MatrixType work = a;
    MatrixType vectors = compute_vectors ? MatrixType::Identity(n, n) : MatrixType();
    const Scalar threshold = Scalar(1e-14) * Scalar(std::max<Eigen::Index>(n, 1));

    sweeps_ = 0;
    off_norm_ = off_diagonal_norm(work);
    while (off_norm_ >= threshold) {
      if (sweeps_ == kMaxSweeps)
        throw NonConvergence("Jacobi eigensolver exceeded sweep cap",
                             static_cast<double>(off_norm_));
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          if (work(p, q) == Scalar(0)) continue;
          Eigen::JacobiRotation<Scalar> rot;
          rot.makeJacobi(work, p, q);
          work.applyOnTheLeft(p, q, rot.adjoint());
          work.applyOnTheRight(p, q, rot);
          work(p, q) = work(q, p) = Scalar(0);
          if (compute_vectors) vectors.applyOnTheRight(p, q, rot);
        }
      }
      ++sweeps_;
      off_norm_ = off_diagonal_norm(work);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
      return work(i, i) < work(j, j);
    });
    eigenvalues_.resize(n);
    eigenvectors_.resize(compute_vectors ? n : 0, compute_vectors ? n : 0);
    for (Eigen::Index k = 0; k < n; ++k) {
      eigenvalues_(k) = work(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
      if (compute_vectors) eigenvectors_.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    return *this;
  }

  /// Ascending.
  const VectorType &eigenvalues() const { return eigenvalues_; }
  /// Orthonormal columns matching eigenvalues(); empty when not requested.
  const MatrixType &eigenvectors() const { return eigenvectors_; }
  int sweeps() const { return sweeps_; }
  Scalar off_norm() const { return off_norm_; }

private:
  static Scalar off_diagonal_norm(const MatrixType &m) {
    Scalar sum(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (i != j) sum += m(i, j) * m(i, j);
    return std::sqrt(sum);
  }

  VectorType eigenvalues_;
  MatrixType eigenvectors_;
  int sweeps_ = 0;
  Scalar off_norm_ = 0;
};

struct SpectralCluster {
  double value;
  int multiplicity;
};

/// Sorted eigenvalue clusters; consecutive eigenvalues closer than `tolerance`
/// share a cluster, so clusters are separated by more than `tolerance`.
struct SpectrumMultiset {
  std::vector<SpectralCluster> entries;
  double tolerance = 1e-8;

  int total_multiplicity() const;
  std::vector<double> values() const;
};

SpectrumMultiset cluster_eigenvalues(std::vector<double> sorted_values, double tolerance);

/// Eigenpairs of a Laplacian: values ascending, columns of `vectors` are
/// right eigenvectors of the (non-symmetric) Laplacian itself.
struct Eigendecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int sweeps;
};

Eigendecomposition eigendecompose(const LaplacianMatrix &m);

SpectrumMultiset eigensolve(const LaplacianMatrix &m, double tolerance = 1e-8);

/// Hausdorff distance between two finite point sets on the line.
double hausdorff_distance(const std::vector<double> &a, const std::vector<double> &b);

} // namespace bubble

#endif // BUBBLE_EIGENSOLVE_HPP
