#ifndef BUBBLE_LAPLACIAN_HPP
#define BUBBLE_LAPLACIAN_HPP

#include <vector>

#include <Eigen/Core>

#include "bubble/graph.hpp"
#include "bubble/rational.hpp"

namespace bubble {

enum class Flavor { Neumann, Dirichlet };

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Probabilistic graph Laplacian (I - D^{-1}A) with exact entries. Row r
/// corresponds to graph vertex `vertices[r]`; the Dirichlet flavor keeps only
/// interior rows and columns.
struct LaplacianMatrix {
  Flavor flavor;
  int b;
  int level;
  RationalMatrix entries;
  std::vector<VertexId> vertices;
  std::vector<int> degrees;

  Eigen::Index dimension() const { return entries.rows(); }
  Eigen::MatrixXd to_double() const;
  /// D^{1/2} L D^{-1/2}: symmetric, same spectrum.
  Eigen::MatrixXd symmetrized() const;
};

LaplacianMatrix neumann_laplacian(const BubbleGraph &g);
LaplacianMatrix dirichlet_laplacian(const BubbleGraph &g);

/// Real function on the vertices of G_level (indexed by vertex id).
struct VertexFunction {
  int b;
  int level;
  Eigen::VectorXd values;
};

/// Values of `f` on the rows of `m` (drops boundary entries for Dirichlet).
Eigen::VectorXd restrict_to(const LaplacianMatrix &m, const VertexFunction &f);

/// Extends a vector on the rows of `m` to a full vertex function, zero on the
/// dropped boundary vertices.
VertexFunction extend_from(const LaplacianMatrix &m, const Eigen::VectorXd &row_values);

struct EigenpairCheck {
  double residual;
  bool passed;
};

/// ||m v - lambda v|| / ||v||, passed iff below `tol`.
EigenpairCheck verify_eigenpair(const LaplacianMatrix &m, const Eigen::VectorXd &v,
                                double lambda, double tol);
EigenpairCheck verify_eigenpair(const LaplacianMatrix &m, const VertexFunction &f,
                                double lambda, double tol);

/// f on copy i of G_level inside G_{level+1}, -f on copy j, zero elsewhere.
/// f must vanish on the boundary; i != j, both in 1..b.
VertexFunction dn_extension(const VertexFunction &f, int i, int j);

/// Boundary-to-boundary effective resistance with unit conductances, by exact
/// series-parallel reduction.
Rational effective_resistance(const BubbleGraph &g);

/// Same quantity from the grounded Kirchhoff system (floating point).
double effective_resistance_numeric(const BubbleGraph &g);

} // namespace bubble

#endif // BUBBLE_LAPLACIAN_HPP
