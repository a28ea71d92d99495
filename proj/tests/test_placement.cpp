#include <catch_amalgamated.hpp>

#include <cmath>

#include "mcmr/placement.hpp"
#include "mcmr/scenarios.hpp"

using namespace mcmr;

namespace {

Network square_link(std::size_t nodes = 2) {
  NetworkDescription d = scenarios::unit_rate_channels(1);
  for (std::size_t v = 0; v < nodes; ++v) d.nodes.push_back({std::string(1, static_cast<char>('A' + v)), {1}, {}});
  d.region = Region::square(1);
  d.interference = InterferenceSpec::protocol(make_rational(1, 2));
  return Network::build(std::move(d));
}

}  // namespace

TEST_CASE("candidate families") {
  const Region sq = Region::square(1);
  CHECK(candidate_points(sq, GridStrategy{3}).size() == 9);
  CHECK(candidate_points(sq, CornersAndMidpoints{}).size() == 9);
  CHECK(candidate_points(Region::disk(1), DiameterEndpoints{}).size() == 3);
  CHECK(CandidateSet(sq, 2, GridStrategy{3}).size() == 81);
  CHECK(CandidateSet(Region::disk(1), 5, DiameterEndpoints{}).size() == 243);
  for (const auto& p : candidate_points(Region::disk(2), GridStrategy{5})) CHECK(Region::disk(2).contains(p));
  CHECK(candidate_points(Region::disk(2), GridStrategy{5}).size() == 13);

  auto all = generate_candidates(sq, 2, GridStrategy{2});
  REQUIRE(all.size() == 16);
  CHECK(all.front().coords == std::vector<Point>{{0, 0}, {0, 0}});
  CHECK(all.back().coords == std::vector<Point>{{1, 1}, {1, 1}});
  CHECK(all[1].coords[0] == Point{0, 0});

  CHECK_THROWS_AS(candidate_points(Region::abstract(), GridStrategy{3}), InputError);
  CHECK_THROWS_AS(candidate_points(Region::disk(1), CornersAndMidpoints{}), InputError);
  CHECK_THROWS_AS(candidate_points(sq, DiameterEndpoints{}), InputError);
  CHECK_THROWS_AS(candidate_points(sq, GridStrategy{1}), InputError);
}

TEST_CASE("a single link is longest across the diagonal") {
  Network net = square_link();
  auto best = optimize_over_placements<double>(net, CornersAndMidpoints{}, Routing::multi_channel,
                                               Objective::transport());
  CHECK(best.value == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(best.evaluations == 81);
  CHECK(squared_distance(best.placement.coords[0], best.placement.coords[1]) == 2);
}

TEST_CASE("optimum re-evaluates to the same value") {
  Network net = scenarios::thm1_network();
  ExplicitPlacements fam;
  Point o{0, 0}, h{make_rational(1, 2), 0}, c{1, 0}, t{1, 1};
  fam.placements = {{{o, c, o, h}}, {{o, t, c, o}}};
  auto best = optimize_over_placements<double>(net, fam, Routing::multi_channel, Objective::transport());
  auto again = conditional_capacity<double>(net, &best.placement, best.flows, Routing::multi_channel,
                                            Objective::transport());
  CHECK(again.value == Catch::Approx(best.value).epsilon(1e-12));
  CHECK(audit_result(net, &best.placement, best.result).empty());
}

TEST_CASE("finer grids never lose") {
  Network net = square_link(3);
  auto coarse = optimize_over_placements<double>(net, GridStrategy{2}, Routing::multi_channel, Objective::transport());
  auto fine = optimize_over_placements<double>(net, GridStrategy{3}, Routing::multi_channel, Objective::transport());
  CHECK(fine.value >= coarse.value - 1e-12);
}

TEST_CASE("exact backend over rational-distance candidates") {
  Network net = square_link();
  ExplicitPlacements fam;
  fam.placements.push_back(Placement{{Point{0, 0}, Point{1, 0}}});
  fam.placements.push_back(Placement{{Point{0, 0}, Point{make_rational(3, 5), make_rational(4, 5)}}});
  auto best = optimize_over_placements<Rational>(net, fam, Routing::multi_channel, Objective::transport());
  CHECK(best.value == 1);
  CHECK(best.placement == fam.placements[0]);
}

TEST_CASE("fixed flows and the budget") {
  Network net = square_link(3);
  auto f = make_flows(net, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
  auto best = optimize_over_placements<double>(net, GridStrategy{2}, Routing::multi_channel, Objective::transport(),
                                               FlowHandling::fixed_flows(f));
  CHECK(best.evaluations == 64);
  CHECK(best.flows == f);
  CHECK_THROWS_AS(optimize_over_placements<double>(net, GridStrategy{3}, Routing::multi_channel,
                                                   Objective::transport(), FlowHandling::enumerate(), 1000),
                  LimitExceeded);
  CHECK_THROWS_AS(optimize_over_placements<double>(scenarios::thm4_network(), GridStrategy{3}, Routing::multi_channel,
                                                   Objective::transport()),
                  InputError);
}

TEST_CASE("maximum over flows at a fixed placement") {
  Network net = scenarios::thm3_network();
  Placement p = scenarios::thm3_placement();
  auto mr = optimize_over_flows<Rational>(net, &p, Routing::multi_channel, Objective::transport());
  CHECK(mr.evaluations == 1024);
  auto again = conditional_capacity<Rational>(net, &p, mr.flows, Routing::multi_channel, Objective::transport());
  CHECK(again.value == mr.value);
}

TEST_CASE("projected search places each channel independently") {
  Network net = scenarios::thm1_network();
  auto proj = projected_capacity_sum_over_candidates<double>(net, GridStrategy{2}, Objective::transport());
  REQUIRE(proj.per_channel.size() == 3);
  CHECK(proj.per_channel[1].second == Catch::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(proj.per_channel[2].second == Catch::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(proj.sum == Catch::Approx(proj.per_channel[0].second + 2 * std::sqrt(2.0)).epsilon(1e-9));
}
