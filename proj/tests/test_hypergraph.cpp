#include <doctest.h>

#include "hypermatch/geometry.hpp"
#include "hypermatch/instance.hpp"
#include "hypermatch/linalg.hpp"
#include "test_support.hpp"

using namespace hypermatch;

TEST_CASE("hypergraph construction validates structure") {
  auto h = Hypergraph::make(4, {{2, 0}, {1, 2, 3}});
  CHECK(h.k() == 3);
  CHECK(h.edge(0) == std::vector<int>{0, 2});  // canonical sort
  CHECK(h.incident(2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(Hypergraph::make(2, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph::make(2, {{}}), ValidationError);
  CHECK_THROWS_AS(Hypergraph::make(2, {{1, 1}}), ValidationError);
}

TEST_CASE("validate normalizes vacuous capacities") {
  BMatchInstance inst;
  inst.h = Hypergraph::make(2, {{0, 1}});
  inst.b = {1, 1};
  inst.c = {5};
  inst.w = RatVector::Constant(1, Rational(1));
  auto validated = validate(inst);
  CHECK(validated.c == std::vector<std::int64_t>{1});

  inst.c = {kUnboundedCapacity};
  CHECK(validate(inst).c == std::vector<std::int64_t>{1});
}

TEST_CASE("validate rejects bad shapes and values") {
  BMatchInstance inst;
  inst.h = Hypergraph::make(2, {{0, 1}});
  inst.b = {1};
  inst.c = {1};
  inst.w = RatVector::Constant(1, Rational(1));
  CHECK_THROWS_AS(validate(inst), ValidationError);  // b too short
  inst.b = {1, 1};
  inst.w = RatVector::Constant(1, Rational(-1));
  CHECK_THROWS_AS(validate(inst), ValidationError);  // negative weight
  inst.w = RatVector::Constant(1, Rational(1));
  inst.c = {-2};
  CHECK_THROWS_AS(validate(inst), ValidationError);  // negative capacity
}

TEST_CASE("demand validation enforces no-clipping") {
  DemandInstance inst;
  inst.h = Hypergraph::make(1, {{0}});
  inst.b = {1};
  inst.d = {2};
  inst.w = RatVector::Constant(1, Rational(1));
  CHECK_THROWS_WITH_AS(validate(inst), doctest::Contains("no-clipping"), ValidationError);
  inst.b = {2};
  CHECK(validate(inst).validated);
  inst.d = {0};
  CHECK_THROWS_AS(validate(inst), ValidationError);
}

TEST_CASE("validate is idempotent") {
  std::mt19937 rng(7);
  for (int i = 0; i < 25; ++i) {
    BMatchInstance once = testsupport::random_bmatch(rng, 3);
    BMatchInstance twice = validate(once);
    CHECK(once.h == twice.h);
    CHECK(once.b == twice.b);
    CHECK(once.c == twice.c);
    CHECK(once.w == twice.w);
  }
}

TEST_CASE("fano instance from the generator validates") {
  BMatchInstance fano = gen_projective_plane(2);
  CHECK(fano.validated);
  CHECK(fano.h.num_vertices() == 7);
  CHECK(fano.h.num_edges() == 7);
  CHECK(fano.h.k() == 3);
}

TEST_CASE("bipartite witness checking") {
  BMatchInstance fano = gen_projective_plane(2);
  CHECK_FALSE(check_bipartite_witness(fano.h, {}));   // empty set misses every line
  CHECK_FALSE(check_bipartite_witness(fano.h, {0}));  // some line misses any fixed point
  // A hand-built bipartite instance: vertex 0 is the distinguished side.
  auto h = Hypergraph::make(4, {{0, 1}, {0, 2, 3}});
  CHECK(check_bipartite_witness(h, {0}));
  CHECK_FALSE(check_bipartite_witness(h, {0, 1}));
}

TEST_CASE("witness breaks when any second-intersection vertex joins U") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    BMatchInstance inst = testsupport::random_bipartite_bmatch(rng, 3);
    const auto& u = inst.bipartite_witness->distinguished_set;
    REQUIRE(check_bipartite_witness(inst.h, u));
    for (int v : inst.h.edge(0)) {
      if (std::binary_search(u.begin(), u.end(), v)) continue;
      std::vector<int> extended = u;
      extended.push_back(v);
      std::sort(extended.begin(), extended.end());
      CHECK_FALSE(check_bipartite_witness(inst.h, extended));
    }
  }
}

TEST_CASE("rho and mu values") {
  CHECK(rho(3, false) == Rational(7, 3));
  CHECK(rho(3, true) == Rational(2));
  CHECK(rho(1, false) == Rational(1));
  CHECK(rho(2, true) == Rational(1));
  CHECK(mu(3, false) == 3);
  CHECK(mu(3, true) == 2);
  CHECK_THROWS_AS(rho(0, false), ValidationError);
  CHECK_THROWS_AS(rho(1, true), ValidationError);
  CHECK_THROWS_AS(mu(1, true), ValidationError);
}

TEST_CASE("minimum nonzero degree vertex") {
  auto h = Hypergraph::make(6, {{2, 5}, {2, 3}, {3, 4}});
  CHECK(min_nonzero_degree_vertex(h, {}) == std::nullopt);
  CHECK(*min_nonzero_degree_vertex(h, {0}) == 2);  // both endpoints degree 1, lowest id
  CHECK(*min_nonzero_degree_vertex(h, {0, 1, 2}) == 4);

  BMatchInstance fano = gen_projective_plane(2);
  std::vector<int> all(7);
  std::iota(all.begin(), all.end(), 0);
  int v = *min_nonzero_degree_vertex(fano.h, all);
  CHECK(v == 0);  // every point lies on exactly 3 lines; ties go to vertex 0
  CHECK(support_degree(fano.h, all, v) == 3);
}

TEST_CASE("independent columns bound the minimum degree by mu") {
  std::mt19937 rng(23);
  int checked_general = 0, checked_bipartite = 0;
  for (int i = 0; i < 60; ++i) {
    BMatchInstance inst = (i % 2 == 0) ? testsupport::random_bmatch(rng, 3)
                                       : testsupport::random_bipartite_bmatch(rng, 3);
    std::vector<int> all(inst.h.num_edges());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<int> size_dist(1, inst.h.num_edges());
    all.resize(size_dist(rng));
    std::sort(all.begin(), all.end());
    if (exact_rank(incidence_matrix(inst.h, all)) != static_cast<int>(all.size())) continue;
    int v = *min_nonzero_degree_vertex(inst.h, all);
    int degree = support_degree(inst.h, all, v);
    CHECK(degree <= inst.h.k());
    ++checked_general;
    if (inst.bipartite_witness) {
      CHECK(degree <= inst.h.k() - 1);
      ++checked_bipartite;
    }
  }
  CHECK(checked_general > 10);
  CHECK(checked_bipartite > 5);
}
