#include <doctest.h>

#include "hypermatch/oracle.hpp"
#include "hypermatch/reductions.hpp"
#include "hypermatch/simplex.hpp"
#include "test_support.hpp"

using namespace hypermatch;

TEST_CASE("bounded-color reduction structure") {
  // A graph with two colors becomes a 3-hypergraph with edges {c_i, u, v}.
  ColoredInstance ci;
  ci.base.h = Hypergraph::make(3, {{0, 1}, {1, 2}});
  ci.base.b = {1, 1, 1};
  ci.base.c = {1, 1};
  ci.base.w = RatVector::Constant(2, Rational(1));
  ci.color = {0, 1};
  ci.budgets = {1, 1};
  ci = validate(std::move(ci));
  ReducedInstance red = bounded_color_to_bipartite(ci);
  CHECK(red.target.h.num_vertices() == 5);
  CHECK(red.target.h.k() == 3);
  CHECK(red.target.h.edge(0) == std::vector<int>{0, 1, 3});
  CHECK(red.target.h.edge(1) == std::vector<int>{1, 2, 4});
  CHECK(red.target.b == std::vector<std::int64_t>{1, 1, 1, 1, 1});
  CHECK(check_bipartite_witness(red.target.h,
                                red.target.bipartite_witness->distinguished_set));
  CHECK(red.map.source_to_target == std::vector<int>{0, 1});
}

TEST_CASE("non-binding budgets reduce to the plain instance") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 10; ++trial) {
    ColoredInstance ci = testsupport::random_colored_graph(rng, 6);
    for (auto& budget : ci.budgets) budget = ci.base.h.num_edges() * 2 + 1;
    ci = validate(std::move(ci));
    ReducedInstance red = bounded_color_to_bipartite(ci);
    Rational base_lp = solve_to_vertex(build_bmatch_lp(ci.base)).value;
    Rational reduced_lp = solve_to_vertex(build_bmatch_lp(red.target)).value;
    CHECK(base_lp == reduced_lp);
    CHECK(brute_force_bmatch(ci.base).value == brute_force_bmatch(red.target).value);
  }
}

TEST_CASE("source and target integral optima coincide") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 25; ++trial) {
    ColoredInstance ci = testsupport::random_colored_graph(rng);
    ReducedInstance red = bounded_color_to_bipartite(ci);
    Rational source = testsupport::brute_force_colored(ci);
    Rational target = brute_force_bmatch(red.target).value;
    CHECK(source == target);
  }
}

TEST_CASE("solve_bounded_color certifies the k-approximation") {
  // Triangle with three singleton color classes.
  ColoredInstance ci;
  ci.base.h = Hypergraph::make(3, {{0, 1}, {1, 2}, {0, 2}});
  ci.base.b = {1, 1, 1};
  ci.base.c = {1, 1, 1};
  ci.base.w = RatVector::Constant(3, Rational(1));
  ci.color = {0, 1, 2};
  ci.budgets = {1, 1, 1};
  ci = validate(std::move(ci));
  BoundedColorResult result = solve_bounded_color(ci);
  CHECK(result.rho_bound == 2);
  CHECK(result.best_value * result.rho_bound >= result.lp_value);
  CHECK(is_feasible(ci, result.best));
  CHECK(testsupport::brute_force_colored(ci) >= result.best_value);

  std::mt19937 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    ColoredInstance random_ci = testsupport::random_colored_graph(rng);
    BoundedColorResult r = solve_bounded_color(random_ci);
    CHECK(r.best_value * r.rho_bound >= r.lp_value);
    CHECK(is_feasible(random_ci, r.best));
  }
}

TEST_CASE("colored validation rejects bad inputs") {
  ColoredInstance ci;
  ci.base.h = Hypergraph::make(2, {{0, 1}});
  ci.base.b = {1, 1};
  ci.base.c = {1};
  ci.base.w = RatVector::Constant(1, Rational(1));
  ci.color = {2};
  ci.budgets = {1, 1};
  CHECK_THROWS_AS(validate(ci), ValidationError);  // unknown color
  ci.color = {0};
  ci.budgets = {0};
  CHECK_THROWS_AS(validate(ci), ValidationError);  // non-positive budget
}

TEST_CASE("auction reduction structure") {
  AuctionInput a;
  a.bidders = 1;
  a.items = 1;
  a.bids.push_back({0, {0}, Rational(5)});
  a = validate(std::move(a));
  ReducedInstance red = auction_to_bipartite(a);
  CHECK(red.target.h.num_vertices() == 2);
  CHECK(red.target.h.edge(0) == std::vector<int>{0, 1});
  CHECK(solve_to_vertex(build_bmatch_lp(red.target)).value == 5);

  AuctionInput contest;
  contest.bidders = 2;
  contest.items = 1;
  contest.bids.push_back({0, {0}, Rational(3)});
  contest.bids.push_back({1, {0}, Rational(7)});
  contest = validate(std::move(contest));
  ReducedInstance contested = auction_to_bipartite(contest);
  CHECK(solve_to_vertex(build_bmatch_lp(contested.target)).value == 7);
  CHECK(brute_force_bmatch(contested.target).value == 7);
}

TEST_CASE("allocation LP equals the matching LP of the reduction") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    AuctionInput a = testsupport::random_auction(rng);
    LinearProgram direct = testsupport::build_allocation_lp(a);
    ReducedInstance red = auction_to_bipartite(a);
    LinearProgram via_matching = build_bmatch_lp(red.target);
    CHECK(solve_to_vertex(direct).value == solve_to_vertex(via_matching).value);
  }
}

TEST_CASE("sampled allocations are item-feasible with exact expected welfare") {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 12; ++trial) {
    AuctionInput a = testsupport::random_auction(rng);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      AllocationSample sample = sample_allocation(a, seed);
      CHECK(sample.expected_welfare * sample.rho_bound == sample.lp_value);
      CHECK(sample.best_welfare * sample.rho_bound >= sample.lp_value);
      CHECK(sample.best_welfare >= sample.expected_welfare);
      std::vector<int> item_taken(a.items, 0);
      for (std::size_t bidder = 0; bidder < sample.bundle_of_bidder.size(); ++bidder) {
        if (!sample.bundle_of_bidder[bidder]) continue;
        const auto& bid = a.bids[static_cast<std::size_t>(*sample.bundle_of_bidder[bidder])];
        CHECK(bid.bidder == static_cast<int>(bidder));
        for (int item : bid.items) {
          CHECK(item_taken[item] == 0);
          item_taken[item] = 1;
        }
      }
    }
  }
}

TEST_CASE("single-bid auction sampling") {
  AuctionInput a;
  a.bidders = 1;
  a.items = 2;
  a.bids.push_back({0, {0, 1}, Rational(4)});
  a = validate(std::move(a));
  AllocationSample sample = sample_allocation(a, 0);
  CHECK(sample.lp_value == 4);
  CHECK(sample.rho_bound == 2);  // the reduction is a 3-hypergraph... with one bidder
  CHECK(sample.expected_welfare == 2);
}

TEST_CASE("empty auction yields the empty allocation") {
  AuctionInput a;
  a.bidders = 2;
  a.items = 2;
  a = validate(std::move(a));
  AllocationSample sample = sample_allocation(a, 0);
  CHECK(sample.lp_value == 0);
  CHECK(sample.expected_welfare == 0);
  CHECK(!sample.bundle_of_bidder[0]);
  CHECK(!sample.bundle_of_bidder[1]);
}

TEST_CASE("auction validation rejects malformed bids") {
  AuctionInput a;
  a.bidders = 1;
  a.items = 2;
  a.bids.push_back({0, {}, Rational(1)});
  CHECK_THROWS_AS(validate(a), ValidationError);  // empty bundle
  a.bids[0].items = {5};
  CHECK_THROWS_AS(validate(a), ValidationError);  // unknown item
  a.bids[0].items = {0};
  a.bids[0].value = Rational(-1);
  CHECK_THROWS_AS(validate(a), ValidationError);  // negative value
  a.bids[0].bidder = 3;
  a.bids[0].value = Rational(1);
  CHECK_THROWS_AS(validate(a), ValidationError);  // unknown bidder
}
