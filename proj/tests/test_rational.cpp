#include <catch_amalgamated.hpp>

#include "mcmr/rational.hpp"

using mcmr::Rational;

TEST_CASE("make_rational canonicalizes") {
  Rational r = mcmr::make_rational(4, -6);
  CHECK(r.get_num() == -2);
  CHECK(r.get_den() == 3);
  CHECK(mcmr::to_string(mcmr::make_rational(2, 2)) == "1");
  CHECK_THROWS_AS(mcmr::make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(mcmr::parse_rational("7") == 7);
  CHECK(mcmr::parse_rational("-3/9") == mcmr::make_rational(-1, 3));
  CHECK(mcmr::parse_rational("+5/10") == mcmr::make_rational(1, 2));
  CHECK(mcmr::parse_rational("0.25") == mcmr::make_rational(1, 4));
  CHECK(mcmr::parse_rational("-1.5e2") == -150);
  CHECK(mcmr::parse_rational("1e-3") == mcmr::make_rational(1, 1000));
  CHECK(mcmr::to_string(mcmr::parse_rational("1/3")) == "1/3");
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "/", "1/", "1/0", "a", "1/-2", "1.2.3", "e5", "1e", "--1", "1/2/3"})
    CHECK_THROWS_AS(mcmr::parse_rational(bad), std::invalid_argument);
}

TEST_CASE("ceil, floor and exact_sqrt") {
  CHECK(mcmr::ceil(mcmr::make_rational(2, 3)) == 1);
  CHECK(mcmr::ceil(mcmr::make_rational(-2, 3)) == 0);
  CHECK(mcmr::ceil(Rational(6)) == 6);
  CHECK(mcmr::floor(mcmr::make_rational(-2, 3)) == -1);
  CHECK(mcmr::exact_sqrt(mcmr::make_rational(9, 4)) == mcmr::make_rational(3, 2));
  CHECK_FALSE(mcmr::exact_sqrt(Rational(2)).has_value());
  CHECK_FALSE(mcmr::exact_sqrt(Rational(-4)).has_value());
  CHECK(mcmr::exact_sqrt(Rational(0)) == 0);
}
