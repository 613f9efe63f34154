#include "doctest.h"

#include <set>

#include "bubble/graph.hpp"
#include "bubble/laplacian.hpp"

using namespace bubble;

TEST_CASE("branching parameter below 2 is rejected") {
  CHECK_THROWS_AS(build_graph(1, 1), DomainError);
  CHECK_THROWS_AS(build_graph(0, 0), DomainError);
  CHECK_THROWS_AS(build_graph(2, -1), DomainError);
}

TEST_CASE("level 0 is a single edge") {
  const auto g = build_graph(3, 0);
  CHECK(g.vertex_count() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, 1});
}

TEST_CASE("level 1 is two stems around a bubble") {
  const auto g = build_graph(2, 1);
  CHECK(g.vertex_count() == 4);
  CHECK(g.multiplicity(0, 2) == 1);
  CHECK(g.multiplicity(2, 3) == 2);
  CHECK(g.multiplicity(3, 1) == 1);
  CHECK(g.multiplicity(0, 1) == 0);
  CHECK(g.total_multiplicity() == 4);
}

TEST_CASE("b=2 level 2 counts") {
  const auto g = build_graph(2, 2);
  CHECK(g.vertex_count() == 12);
  CHECK(g.total_multiplicity() == 16);
}

TEST_CASE("vertex, edge and degree invariants for b <= 6, l <= 4") {
  for (int b = 2; b <= 6; ++b) {
    for (int l = 0; l <= 4; ++l) {
      CAPTURE(b);
      CAPTURE(l);
      const auto g = build_graph(b, l);
      CHECK(g.vertex_count() == expected_vertex_count(b, l));
      CHECK(g.total_multiplicity() == expected_edge_multiplicity(b, l));
      CHECK(g.is_connected());
      const auto [s, t] = boundary(g);
      CHECK(s == 0);
      CHECK(t == 1);
      if (l == 0) continue;
      const auto census = degree_census(g);
      CHECK(census.size() == 2);
      CHECK(census.at(1) == 2);
      CHECK(census.at(b + 1) == g.vertex_count() - 2);
      std::int64_t degree_sum = 0;
      for (int d : g.degrees()) degree_sum += d;
      CHECK(degree_sum == 2 * g.total_multiplicity());
    }
  }
}

TEST_CASE("vertex count recursion n_{l+1} = 4 + (b+2)(n_l - 2)") {
  for (int b = 2; b <= 8; ++b)
    for (int l = 0; l < 8; ++l)
      CHECK(expected_vertex_count(b, l + 1) == 4 + (b + 2) * (expected_vertex_count(b, l) - 2));
}

TEST_CASE("copy embeddings reproduce the substitution") {
  for (int b = 2; b <= 4; ++b) {
    for (int l = 0; l <= 2; ++l) {
      const auto small = build_graph(b, l);
      const auto big = build_graph(b, l + 1);
      std::multiset<std::pair<VertexId, VertexId>> covered;
      std::set<VertexId> interior_images;
      for (int k = 1; k <= b + 2; ++k) {
        const auto emb = copy_embedding(b, l, k);
        CHECK(emb.vertex_map.size() == static_cast<std::size_t>(small.vertex_count()));
        for (const auto &e : small.edges()) {
          const VertexId u = emb(e.u);
          const VertexId v = emb(e.v);
          CHECK(big.multiplicity(u, v) >= e.multiplicity);
          for (int r = 0; r < e.multiplicity; ++r) covered.insert({std::min(u, v), std::max(u, v)});
        }
        for (VertexId v = 2; v < small.vertex_count(); ++v) CHECK(interior_images.insert(emb(v)).second);
        const VertexId expected_first = k <= b ? 2 : (k == b + 1 ? 0 : 3);
        const VertexId expected_second = k <= b ? 3 : (k == b + 1 ? 2 : 1);
        CHECK(emb(0) == expected_first);
        CHECK(emb(1) == expected_second);
      }
      CHECK(static_cast<std::int64_t>(covered.size()) == big.total_multiplicity());
      CHECK(static_cast<VertexId>(interior_images.size()) + 4 == big.vertex_count());
    }
  }
  CHECK_THROWS_AS(copy_embedding(2, 1, 0), DomainError);
  CHECK_THROWS_AS(copy_embedding(2, 1, 5), DomainError);
}

TEST_CASE("effective resistance is ((2b+1)/b)^l and matches the Kirchhoff solve") {
  for (int b = 2; b <= 5; ++b) {
    for (int l = 0; l <= 3; ++l) {
      const auto g = build_graph(b, l);
      const Rational r = effective_resistance(g);
      CHECK(r == pow(make_rational(2 * b + 1, b), l));
      CHECK(effective_resistance_numeric(g) == doctest::Approx(to_double(r)).epsilon(1e-10));
    }
  }
  CHECK(effective_resistance(build_graph(2, 2)) == make_rational(25, 4));
}
