#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mcmr/ratlp.hpp"
#include "oracles.hpp"

using mcmr::make_rational;
using mcmr::Rational;
namespace lp = mcmr::lp;

namespace {

lp::Model<double> to_double_model(const lp::Model<Rational>& m) {
  lp::Model<double> d;
  for (const auto& n : m.names()) d.add_variable(n);
  for (const auto& c : m.constraints()) {
    std::vector<lp::Term<double>> t;
    for (const auto& x : c.terms) t.push_back({x.var, x.coef.get_d()});
    d.add_constraint(t, c.rel, c.rhs.get_d());
  }
  std::vector<lp::Term<double>> o;
  for (const auto& x : m.objective()) o.push_back({x.var, x.coef.get_d()});
  d.set_objective(o);
  return d;
}

}  // namespace

TEST_CASE("textbook LP") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
  lp::Model<Rational> m;
  auto x = m.add_variable("x"), y = m.add_variable("y");
  m.add_constraint({{x, 1}}, lp::Relation::le, 4);
  m.add_constraint({{y, 2}}, lp::Relation::le, 12);
  m.add_constraint({{x, 3}, {y, 2}}, lp::Relation::le, 18);
  m.set_objective({{x, 3}, {y, 5}});
  auto s = lp::solve(m);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == 36);
  CHECK(s.assignment[x] == 2);
  CHECK(s.assignment[y] == 6);
  CHECK(lp::verify_solution(m, s));
  CHECK(oracle::check_optimal(oracle::densify(m), s));
  CHECK(lp::to_text(m).find("maximize 3 x + 5 y") != std::string::npos);
}

TEST_CASE("equalities, negative right-hand sides, infeasible and unbounded") {
  lp::Model<Rational> m;
  auto x = m.add_variable("x"), y = m.add_variable("y");
  m.add_constraint({{x, 1}, {y, 1}}, lp::Relation::eq, 1);
  m.add_constraint({{x, -1}}, lp::Relation::le, make_rational(-1, 3));
  m.set_objective({{y, 1}});
  auto s = lp::solve(m);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == make_rational(2, 3));
  CHECK(lp::verify_solution(m, s));

  lp::Model<Rational> inf;
  auto a = inf.add_variable("a");
  inf.add_constraint({{a, 1}}, lp::Relation::le, 1);
  inf.add_constraint({{a, -1}}, lp::Relation::le, -2);
  inf.set_objective({{a, 1}});
  auto si = lp::solve(inf);
  CHECK(si.status == lp::Status::infeasible);
  CHECK(lp::verify_solution(inf, si));

  lp::Model<Rational> unb;
  auto u = unb.add_variable("u"), v = unb.add_variable("v");
  unb.add_constraint({{u, 1}, {v, -1}}, lp::Relation::le, 1);
  unb.set_objective({{u, 1}});
  auto su = lp::solve(unb);
  CHECK(su.status == lp::Status::unbounded);
  CHECK(lp::verify_solution(unb, su));
  CHECK(oracle::check_unbounded(oracle::densify(unb), su));
}

TEST_CASE("degenerate LP that cycles under the largest-coefficient rule") {
  // Beale's example.
  lp::Model<Rational> m;
  std::vector<std::size_t> x;
  for (int i = 0; i < 4; ++i) x.push_back(m.add_variable("x" + std::to_string(i)));
  m.add_constraint({{x[0], make_rational(1, 4)}, {x[1], -60}, {x[2], make_rational(-1, 25)}, {x[3], 9}}, lp::Relation::le, 0);
  m.add_constraint({{x[0], make_rational(1, 2)}, {x[1], -90}, {x[2], make_rational(-1, 50)}, {x[3], 3}}, lp::Relation::le, 0);
  m.add_constraint({{x[2], 1}}, lp::Relation::le, 1);
  m.set_objective({{x[0], make_rational(3, 4)}, {x[1], -150}, {x[2], make_rational(1, 50)}, {x[3], -6}});
  auto s = lp::solve(m);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.value == make_rational(1, 20));
  CHECK(lp::verify_solution(m, s));
}

TEST_CASE("empty and trivial models") {
  lp::Model<Rational> m;
  auto s = lp::solve(m);
  CHECK(s.status == lp::Status::optimal);
  CHECK(s.value == 0);
  auto x = m.add_variable("x");
  m.set_objective({{x, -1}});
  s = lp::solve(m);
  CHECK(s.status == lp::Status::optimal);
  CHECK(s.value == 0);
  CHECK_THROWS_AS(m.add_constraint({{7, 1}}, lp::Relation::le, 1), std::out_of_range);
}

TEST_CASE("simplex agrees with vertex enumeration on random LPs") {
  std::mt19937_64 rng(20240601);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int k = 0; k < 250; ++k) {
    auto m = oracle::random_lp(rng);
    auto d = oracle::densify(m);
    auto s = lp::solve(m);
    auto v = oracle::vertex_enumeration(d);
    INFO("instance " << k << "\n" << lp::to_text(m));
    CHECK(lp::verify_solution(m, s));
    switch (s.status) {
      case lp::Status::optimal:
        ++optimal;
        REQUIRE(v.feasible);
        CHECK(s.value == v.best);
        CHECK(oracle::check_optimal(d, s));
        break;
      case lp::Status::infeasible:
        ++infeasible;
        CHECK_FALSE(v.feasible);
        break;
      case lp::Status::unbounded:
        ++unbounded;
        CHECK(v.feasible);
        CHECK(oracle::check_unbounded(d, s));
        break;
    }
    // The floating backend reaches the same status and value.
    auto sd = lp::solve(to_double_model(m));
    CHECK(sd.status == s.status);
    if (s.status == lp::Status::optimal && sd.status == s.status)
      CHECK(std::fabs(sd.value - s.value.get_d()) <= 1e-7 * (1 + std::fabs(s.value.get_d())));
  }
  CHECK(optimal >= 80);
  CHECK(infeasible > 0);
  CHECK(unbounded > 0);
}

TEST_CASE("pivot limit") {
  lp::Model<Rational> m;
  auto x = m.add_variable("x"), y = m.add_variable("y");
  m.add_constraint({{x, 1}, {y, 1}}, lp::Relation::le, 1);
  m.set_objective({{x, 1}, {y, 2}});
  lp::Options o;
  o.max_pivots = 0;
  CHECK_THROWS(lp::solve(m, o));
}
