#include "bubble/laplacian.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <string>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace bubble {

Eigen::MatrixXd LaplacianMatrix::to_double() const {
  return entries.unaryExpr([](const Rational &q) { return bubble::to_double(q); });
}

Eigen::MatrixXd LaplacianMatrix::symmetrized() const {
  const Eigen::Index n = dimension();
  Eigen::VectorXd sqrt_deg(n);
  for (Eigen::Index r = 0; r < n; ++r)
    sqrt_deg(r) = std::sqrt(static_cast<double>(degrees[static_cast<std::size_t>(r)]));
  Eigen::MatrixXd s = to_double();
  // entry (u,v) = -mult / sqrt(deg u deg v)
  return sqrt_deg.asDiagonal() * s * sqrt_deg.cwiseInverse().asDiagonal();
}

LaplacianMatrix neumann_laplacian(const BubbleGraph &g) {
  const Eigen::Index n = g.vertex_count();
  LaplacianMatrix m{Flavor::Neumann, g.b(), g.level(), RationalMatrix::Zero(n, n), {}, g.degrees()};
  m.vertices.resize(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    m.vertices[static_cast<std::size_t>(v)] = v;
    m.entries(v, v) = 1;
  }
  for (const Edge &e : g.edges()) {
    m.entries(e.u, e.v) = -make_rational(e.multiplicity, g.degree(e.u));
    m.entries(e.v, e.u) = -make_rational(e.multiplicity, g.degree(e.v));
  }
  return m;
}

LaplacianMatrix dirichlet_laplacian(const BubbleGraph &g) {
  if (g.level() < 1) throw DomainError("Dirichlet Laplacian needs level >= 1");
  LaplacianMatrix full = neumann_laplacian(g);
  auto [s, t] = boundary(g);
  std::vector<Eigen::Index> keep;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (v != s && v != t) keep.push_back(v);

  const auto n = static_cast<Eigen::Index>(keep.size());
  LaplacianMatrix m{Flavor::Dirichlet, g.b(), g.level(), RationalMatrix(n, n), {}, {}};
  for (Eigen::Index r = 0; r < n; ++r) {
    m.vertices.push_back(static_cast<VertexId>(keep[static_cast<std::size_t>(r)]));
    m.degrees.push_back(g.degree(static_cast<VertexId>(keep[static_cast<std::size_t>(r)])));
    for (Eigen::Index c = 0; c < n; ++c)
      m.entries(r, c) = full.entries(keep[static_cast<std::size_t>(r)],
                                     keep[static_cast<std::size_t>(c)]);
  }
  return m;
}

Eigen::VectorXd restrict_to(const LaplacianMatrix &m, const VertexFunction &f) {
  Eigen::VectorXd out(m.dimension());
  for (Eigen::Index r = 0; r < m.dimension(); ++r) {
    auto v = static_cast<Eigen::Index>(m.vertices[static_cast<std::size_t>(r)]);
    if (v >= f.values.size()) throw DomainError("vertex function too short for matrix");
    out(r) = f.values(v);
  }
  return out;
}

VertexFunction extend_from(const LaplacianMatrix &m, const Eigen::VectorXd &row_values) {
  if (row_values.size() != m.dimension()) throw DomainError("dimension mismatch");
  auto n = expected_vertex_count(m.b, m.level);
  VertexFunction f{m.b, m.level, Eigen::VectorXd::Zero(n)};
  for (Eigen::Index r = 0; r < m.dimension(); ++r)
    f.values(m.vertices[static_cast<std::size_t>(r)]) = row_values(r);
  return f;
}

EigenpairCheck verify_eigenpair(const LaplacianMatrix &m, const Eigen::VectorXd &v,
                                double lambda, double tol) {
  if (v.size() != m.dimension()) throw DomainError("dimension mismatch");
  const double norm = v.norm();
  if (norm == 0.0) throw DomainError("zero vector is not an eigenvector");
  const double residual = (m.to_double() * v - lambda * v).norm() / norm;
  return {residual, residual < tol};
}

EigenpairCheck verify_eigenpair(const LaplacianMatrix &m, const VertexFunction &f,
                                double lambda, double tol) {
  return verify_eigenpair(m, restrict_to(m, f), lambda, tol);
}

VertexFunction dn_extension(const VertexFunction &f, int i, int j) {
  const int b = f.b;
  if (i == j) throw DomainError("dn_extension needs distinct copies");
  if (i < 1 || i > b || j < 1 || j > b)
    throw DomainError("dn_extension copies must lie in 1..b");
  const auto n = expected_vertex_count(b, f.level);
  if (f.values.size() != n) throw DomainError("vertex function does not match G_level");
  const double scale = 1.0 + f.values.cwiseAbs().maxCoeff();
  if (std::abs(f.values(0)) > 1e-12 * scale || std::abs(f.values(1)) > 1e-12 * scale)
    throw DomainError("dn_extension needs a function vanishing on the boundary");

  VertexFunction out{b, f.level + 1, Eigen::VectorXd::Zero(expected_vertex_count(b, f.level + 1))};
  const CopyEmbedding plus = copy_embedding(b, f.level, i);
  const CopyEmbedding minus = copy_embedding(b, f.level, j);
  for (VertexId v = 2; v < n; ++v) {
    out.values(plus(v)) = f.values(v);
    out.values(minus(v)) = -f.values(v);
  }
  return out;
}

Rational effective_resistance(const BubbleGraph &g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  auto [s, t] = boundary(g);
  std::vector<std::map<VertexId, Rational>> resistance(n);
  for (const Edge &e : g.edges()) {
    Rational r = make_rational(1, e.multiplicity);
    resistance[static_cast<std::size_t>(e.u)][e.v] = r;
    resistance[static_cast<std::size_t>(e.v)][e.u] = r;
  }

  auto connect = [&](VertexId a, VertexId c, const Rational &r) {
    auto &slot = resistance[static_cast<std::size_t>(a)];
    auto it = slot.find(c);
    Rational combined = (it == slot.end()) ? r : it->second * r / (it->second + r);
    slot[c] = combined;
    resistance[static_cast<std::size_t>(c)][a] = combined;
  };

  std::deque<VertexId> work;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (v != s && v != t) work.push_back(v);
  std::vector<char> removed(n, 0);

  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    auto &nbrs = resistance[static_cast<std::size_t>(v)];
    if (removed[static_cast<std::size_t>(v)] || nbrs.size() > 2) continue;
    removed[static_cast<std::size_t>(v)] = 1;
    std::vector<std::pair<VertexId, Rational>> list(nbrs.begin(), nbrs.end());
    for (auto &[u, r] : list) resistance[static_cast<std::size_t>(u)].erase(v);
    nbrs.clear();
    if (list.size() == 2) connect(list[0].first, list[1].first, list[0].second + list[1].second);
    for (auto &[u, r] : list)
      if (u != s && u != t) work.push_back(u);
  }

  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (v != s && v != t && !removed[static_cast<std::size_t>(v)])
      throw DomainError("graph is not series-parallel between its boundary vertices");
  const auto &last = resistance[static_cast<std::size_t>(s)];
  auto it = last.find(t);
  if (it == last.end()) throw DomainError("boundary vertices are disconnected");
  return it->second;
}

double effective_resistance_numeric(const BubbleGraph &g) {
  auto [s, t] = boundary(g);
  // Ground t, inject unit current at s; reindex so t is dropped.
  const VertexId n = g.vertex_count();
  auto index = [t](VertexId v) { return v < t ? v : v - 1; };
  std::vector<Eigen::Triplet<double>> triplets;
  for (const Edge &e : g.edges()) {
    const double c = e.multiplicity;
    for (auto [p, q] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (p == t) continue;
      triplets.emplace_back(index(p), index(p), c);
      if (q != t) triplets.emplace_back(index(p), index(q), -c);
    }
  }
  Eigen::SparseMatrix<double> k(n - 1, n - 1);
  k.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::VectorXd current = Eigen::VectorXd::Zero(n - 1);
  current(index(s)) = 1.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(k);
  if (solver.info() != Eigen::Success) throw DomainError("Kirchhoff system is singular");
  Eigen::VectorXd potential = solver.solve(current);
  return potential(index(s));
}

} // namespace bubble
