#ifndef BUBBLE_GRAPH_HPP
#define BUBBLE_GRAPH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bubble/errors.hpp"

namespace bubble {

using VertexId = std::int32_t;

/// Number of parallel edges in each bubble. Always at least 2; converting
/// from a plain int validates.
class BranchingParameter {
public:
  BranchingParameter(int b) : b_(b) { // NOLINT(google-explicit-constructor)
    if (b < 2) throw DomainError("branching parameter must be >= 2");
  }
  int value() const noexcept { return b_; }
  operator int() const noexcept { return b_; } // NOLINT

private:
  int b_;
};

struct Edge {
  VertexId u;
  VertexId v;
  int multiplicity;

  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Finite level-l bubble-diamond multigraph. Vertices are numbered with the two
/// boundary vertices first (0 and 1), followed by interior vertices in
/// construction order. Edges are stored with u < v, sorted, parallel edges
/// merged into one record.
class BubbleGraph {
public:
  BubbleGraph(BranchingParameter b, int level, VertexId vertex_count,
              std::vector<Edge> edges);

  int b() const noexcept { return b_; }
  int level() const noexcept { return level_; }
  VertexId vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const std::vector<int> &degrees() const noexcept { return degrees_; }
  int degree(VertexId v) const { return degrees_.at(static_cast<std::size_t>(v)); }

  /// Multiplicity of the edge {u, v}; 0 when absent.
  int multiplicity(VertexId u, VertexId v) const;

  std::int64_t total_multiplicity() const;
  bool is_connected() const;

  /// Adjacency list with multiplicities, indexed by vertex.
  std::vector<std::vector<std::pair<VertexId, int>>> adjacency() const;

private:
  int b_;
  int level_;
  VertexId vertex_count_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
};

/// Injective vertex map of G_l into G_{l+1} for one of the b+2 copies.
/// Copies 1..b are the central bubble copies, b+1 the left stem, b+2 the right.
struct CopyEmbedding {
  int b;
  int level;
  int copy_index;
  std::vector<VertexId> vertex_map;

  VertexId operator()(VertexId v) const {
    return vertex_map.at(static_cast<std::size_t>(v));
  }
};

BubbleGraph build_graph(BranchingParameter b, int level);

CopyEmbedding copy_embedding(BranchingParameter b, int level, int k);

/// The two degree-1 vertices, in vertex order.
std::pair<VertexId, VertexId> boundary(const BubbleGraph &g);

/// Closed forms for the vertex count 2((b+2)^l + b)/(b+1) and the total edge
/// multiplicity (b+2)^l.
std::int64_t expected_vertex_count(int b, int level);
std::int64_t expected_edge_multiplicity(int b, int level);

/// Degree census: degree -> number of vertices.
std::map<int, std::int64_t> degree_census(const BubbleGraph &g);

} // namespace bubble

#endif // BUBBLE_GRAPH_HPP
