#include "bubble/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace bubble {

namespace {

std::array<VertexId, 2> boundary_image(int b, int k) {
  if (k <= b) return {2, 3};
  if (k == b + 1) return {0, 2};
  return {3, 1};
}

std::vector<VertexId> make_vertex_map(int b, VertexId n, int k) {
  std::vector<VertexId> map(static_cast<std::size_t>(n));
  auto ends = boundary_image(b, k);
  map[0] = ends[0];
  map[1] = ends[1];
  for (VertexId i = 2; i < n; ++i)
    map[static_cast<std::size_t>(i)] = 4 + (k - 1) * (n - 2) + (i - 2);
  return map;
}

BubbleGraph substitute_into_g1(const BubbleGraph &g) {
  const int b = g.b();
  const VertexId n = g.vertex_count();
  std::map<std::pair<VertexId, VertexId>, int> merged;
  for (int k = 1; k <= b + 2; ++k) {
    auto map = make_vertex_map(b, n, k);
    for (const Edge &e : g.edges()) {
      VertexId u = map[static_cast<std::size_t>(e.u)];
      VertexId v = map[static_cast<std::size_t>(e.v)];
      merged[{std::min(u, v), std::max(u, v)}] += e.multiplicity;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto &[key, m] : merged) edges.push_back({key.first, key.second, m});
  return BubbleGraph(b, g.level() + 1, 4 + (b + 2) * (n - 2), std::move(edges));
}

} // namespace

BubbleGraph::BubbleGraph(BranchingParameter b, int level, VertexId vertex_count,
                         std::vector<Edge> edges)
    : b_(b), level_(level), vertex_count_(vertex_count), edges_(std::move(edges)),
      degrees_(static_cast<std::size_t>(vertex_count), 0) {
  std::sort(edges_.begin(), edges_.end());
  for (const Edge &e : edges_) {
    degrees_[static_cast<std::size_t>(e.u)] += e.multiplicity;
    degrees_[static_cast<std::size_t>(e.v)] += e.multiplicity;
  }
}

int BubbleGraph::multiplicity(VertexId u, VertexId v) const {
  Edge probe{std::min(u, v), std::max(u, v), 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge &a, const Edge &p) {
                               return std::pair(a.u, a.v) < std::pair(p.u, p.v);
                             });
  if (it != edges_.end() && it->u == probe.u && it->v == probe.v)
    return it->multiplicity;
  return 0;
}

std::int64_t BubbleGraph::total_multiplicity() const {
  std::int64_t total = 0;
  for (const Edge &e : edges_) total += e.multiplicity;
  return total;
}

std::vector<std::vector<std::pair<VertexId, int>>> BubbleGraph::adjacency() const {
  std::vector<std::vector<std::pair<VertexId, int>>> adj(
      static_cast<std::size_t>(vertex_count_));
  for (const Edge &e : edges_) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.multiplicity);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.multiplicity);
  }
  return adj;
}

bool BubbleGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  auto adj = adjacency();
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = 1;
  VertexId reached = 1;
  while (!frontier.empty()) {
    VertexId u = frontier.front();
    frontier.pop();
    for (auto [v, m] : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == vertex_count_;
}

BubbleGraph build_graph(BranchingParameter b, int level) {
  if (level < 0) throw DomainError("level must be >= 0");
  BubbleGraph g(b, 0, 2, {{0, 1, 1}});
  for (int l = 0; l < level; ++l) g = substitute_into_g1(g);
  return g;
}

CopyEmbedding copy_embedding(BranchingParameter b, int level, int k) {
  if (level < 0) throw DomainError("level must be >= 0");
  if (k < 1 || k > b + 2)
    throw DomainError("copy index must lie in 1..b+2, got " + std::to_string(k));
  auto n = static_cast<VertexId>(expected_vertex_count(b, level));
  return {b, level, k, make_vertex_map(b, n, k)};
}

std::pair<VertexId, VertexId> boundary(const BubbleGraph &g) {
  std::vector<VertexId> found;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) found.push_back(v);
  if (found.size() != 2) throw DomainError("graph does not have exactly two boundary vertices");
  return {found[0], found[1]};
}

std::int64_t expected_edge_multiplicity(int b, int level) {
  std::int64_t p = 1;
  for (int i = 0; i < level; ++i) p *= (b + 2);
  return p;
}

std::int64_t expected_vertex_count(int b, int level) {
  return 2 * (expected_edge_multiplicity(b, level) + b) / (b + 1);
}

std::map<int, std::int64_t> degree_census(const BubbleGraph &g) {
  std::map<int, std::int64_t> census;
  for (int d : g.degrees()) ++census[d];
  return census;
}

} // namespace bubble
