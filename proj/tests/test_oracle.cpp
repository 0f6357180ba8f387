#include <doctest.h>

#include "hypermatch/geometry.hpp"
#include "hypermatch/oracle.hpp"
#include "test_support.hpp"

using namespace hypermatch;

namespace {
constexpr int kSupportedOrders[] = {2, 3, 4, 5, 7, 8, 9};
}

TEST_CASE("finite field tables satisfy the field axioms") {
  for (int q : kSupportedOrders) {
    GaloisField gf(q);
    for (int a = 0; a < q; ++a) {
      CHECK(gf.add(a, 0) == a);
      CHECK(gf.mul(a, 1) == a);
      CHECK(gf.mul(a, 0) == 0);
      bool has_add_inverse = false, has_mul_inverse = (a == 0);
      for (int b = 0; b < q; ++b) {
        if (gf.add(a, b) == 0) has_add_inverse = true;
        if (a != 0 && gf.mul(a, b) == 1) has_mul_inverse = true;
        CHECK(gf.add(a, b) == gf.add(b, a));
        CHECK(gf.mul(a, b) == gf.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c)));
          CHECK(gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c)));
          CHECK(gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c)));
        }
      }
      CHECK(has_add_inverse);
      CHECK(has_mul_inverse);
    }
  }
  CHECK_THROWS_AS(GaloisField(6), ValidationError);
  CHECK_THROWS_AS(GaloisField(11), ValidationError);
}

TEST_CASE("projective planes have the right incidence structure") {
  for (int q : kSupportedOrders) {
    BMatchInstance inst = gen_projective_plane(q);
    const int count = q * q + q + 1;
    CHECK(inst.h.num_vertices() == count);
    CHECK(inst.h.num_edges() == count);
    CHECK(inst.h.k() == q + 1);
    for (int v = 0; v < count; ++v)
      CHECK(static_cast<int>(inst.h.incident(v).size()) == q + 1);
    // Pairwise point intersections (line pairs are asserted inside the
    // generator): two points lie on exactly one common line.
    for (int a = 0; a < count && q <= 4; ++a)
      for (int b = a + 1; b < count; ++b) {
        int shared = 0;
        for (int e : inst.h.incident(a))
          if (inst.h.edge_contains(e, b)) ++shared;
        CHECK(shared == 1);
      }
  }
}

TEST_CASE("truncated planes are intersecting bipartite families") {
  for (int q : kSupportedOrders) {
    BMatchInstance inst = gen_truncated_plane(q);
    CHECK(inst.h.num_vertices() == q * q + q);
    CHECK(inst.h.num_edges() == q * q);
    CHECK(inst.h.k() == q + 1);
    REQUIRE(inst.bipartite_witness.has_value());
    CHECK(check_bipartite_witness(inst.h, inst.bipartite_witness->distinguished_set));
    if (q <= 4) {
      for (int a = 0; a < inst.h.num_edges(); ++a)
        for (int b = a + 1; b < inst.h.num_edges(); ++b) {
          int shared = 0;
          for (int v : inst.h.edge(a))
            if (inst.h.edge_contains(b, v)) ++shared;
          CHECK(shared == 1);  // two points share exactly one line
        }
    }
  }
}

TEST_CASE("brute force on small instances") {
  BMatchInstance fano = gen_projective_plane(2);
  BruteForceResult fano_best = brute_force_bmatch(fano);
  CHECK(fano_best.value == 1);  // any two lines intersect
  CHECK(fano_best.solution.multiplicities.sum() == 1);

  BMatchInstance triangle;
  triangle.h = Hypergraph::make(3, {{0, 1}, {1, 2}, {0, 2}});
  triangle.b = {1, 1, 1};
  triangle.c = {1, 1, 1};
  triangle.w = RatVector::Constant(3, Rational(1));
  triangle = validate(std::move(triangle));
  CHECK(brute_force_bmatch(triangle).value == 1);

  BMatchInstance empty;
  empty.h = Hypergraph::make(3, {});
  empty.b = {1, 1, 1};
  empty.w = RatVector(0);
  empty = validate(std::move(empty));
  BruteForceResult none = brute_force_bmatch(empty);
  CHECK(none.value == 0);
  CHECK(none.solution.multiplicities.size() == 0);
}

TEST_CASE("brute force reports the lexicographically smallest optimum") {
  BMatchInstance parallel;
  parallel.h = Hypergraph::make(2, {{0, 1}, {0, 1}});
  parallel.b = {1, 1};
  parallel.c = {1, 1};
  parallel.w = RatVector::Constant(2, Rational(1));
  parallel = validate(std::move(parallel));
  BruteForceResult best = brute_force_bmatch(parallel);
  CHECK(best.value == 1);
  CHECK(best.solution.multiplicities(0) == 0);  // (0,1) precedes (1,0)
  CHECK(best.solution.multiplicities(1) == 1);
}

TEST_CASE("enumeration budgets are enforced") {
  BMatchInstance big;
  std::vector<std::vector<int>> edges;
  for (int e = 0; e < 30; ++e) edges.push_back({0, 1});
  big.h = Hypergraph::make(2, std::move(edges));
  big.b = {30, 30};
  big.c.assign(30, 30);
  big.w = RatVector::Constant(30, Rational(1));
  big = validate(std::move(big));
  CHECK_THROWS_AS(brute_force_bmatch(big, Int(1000)), BudgetError);

  DemandInstance wide;
  std::vector<std::vector<int>> dedges;
  for (int e = 0; e < 12; ++e) dedges.push_back({0});
  wide.h = Hypergraph::make(1, std::move(dedges));
  wide.b = {1};
  wide.d.assign(12, 1);
  wide.w = RatVector::Constant(12, Rational(1));
  wide = validate(std::move(wide));
  CHECK_THROWS_AS(brute_force_demand(wide, Int(1000)), BudgetError);
  CHECK(brute_force_demand(wide).value == 1);
}

TEST_CASE("integrality gap reports for the tight families") {
  GapReport fano = integrality_gap(gen_projective_plane(2));
  CHECK(fano.lp_value == Rational(7, 3));
  CHECK(fano.ilp_value == 1);
  CHECK(*fano.gap == Rational(7, 3));
  CHECK(*fano.decomposition_ratio == Rational(7, 3));
  CHECK(fano.rho_bound == Rational(7, 3));

  GapReport pg3 = integrality_gap(gen_projective_plane(3));
  CHECK(pg3.lp_value == Rational(13, 4));
  CHECK(pg3.ilp_value == 1);
  CHECK(*pg3.gap == Rational(13, 4));

  GapReport truncated = integrality_gap(gen_truncated_plane(2));
  CHECK(truncated.lp_value == 2);
  CHECK(truncated.ilp_value == 1);
  CHECK(*truncated.gap == 2);
  CHECK(*truncated.decomposition_ratio == 2);

  GapReport trunc3 = integrality_gap(gen_truncated_plane(3));
  CHECK(trunc3.lp_value == 3);
  CHECK(trunc3.ilp_value == 1);
  CHECK(*trunc3.gap == 3);

  GapReport pg4 = integrality_gap(gen_projective_plane(4));
  CHECK(pg4.lp_value == Rational(21, 5));
  CHECK(pg4.ilp_value == 1);
  CHECK(*pg4.decomposition_ratio == Rational(21, 5));

  GapReport trunc4 = integrality_gap(gen_truncated_plane(4));
  CHECK(trunc4.lp_value == 4);
  CHECK(*trunc4.gap == 4);
  CHECK(*trunc4.decomposition_ratio == 4);

  BMatchInstance integral;
  integral.h = Hypergraph::make(2, {{0, 1}});
  integral.b = {1, 1};
  integral.c = {1};
  integral.w = RatVector::Constant(1, Rational(1));
  integral = validate(std::move(integral));
  GapReport unit = integrality_gap(integral);
  CHECK(*unit.gap == 1);
  CHECK(*unit.decomposition_ratio == 1);
}

TEST_CASE("sandwich: best term <= brute force <= LP") {
  std::mt19937 rng(113);
  for (int trial = 0; trial < 30; ++trial) {
    BMatchInstance inst = testsupport::random_bmatch(rng, 3);
    Decomposition dec = decompose(inst);
    BruteForceResult ilp = brute_force_bmatch(inst);
    Rational best = best_term(dec.combination, inst.w).second;
    CHECK(ilp.value >= best);
    CHECK(dec.lp.value >= ilp.value);
  }
}
