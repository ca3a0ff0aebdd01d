#include <doctest.h>

#include "dodgson/error.hpp"
#include "dodgson/verify.hpp"

using namespace dodgson;

TEST_SUITE("verify") {

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(7, 0) == trial_seed(7, 0));
  CHECK(trial_seed(7, 0) != trial_seed(7, 1));
  CHECK(trial_seed(7, 0) != trial_seed(8, 0));
}

TEST_CASE("draw stays in range") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(draw(rng, 7) < 7);
  CHECK(draw(rng, 1) == 0);
  CHECK(draw(rng, 0) == 0);
}

TEST_CASE("random elections are valid and reproducible") {
  std::mt19937_64 a(5), b(5);
  const auto e = random_election(a, 4, 6, "p");
  CHECK(e == random_election(b, 4, 6, "p"));
  CHECK(e.voter_count() == 6);
  CHECK(e.name(0) == "p1");
}

TEST_CASE("reports do not depend on thread count") {
  RunConfig one{.seed = 11, .trials = 20, .threads = 1};
  RunConfig many = one;
  many.threads = 4;
  for (const auto* suite : {"oracle", "4", "6"}) {
    const auto r1 = run_suite(suite, one), r2 = run_suite(suite, many);
    REQUIRE(r1.properties.size() == r2.properties.size());
    for (std::size_t i = 0; i < r1.properties.size(); ++i) {
      CHECK(r1.properties[i].checked == r2.properties[i].checked);
      CHECK(r1.properties[i].failed == r2.properties[i].failed);
      CHECK(r1.properties[i].first_failure == r2.properties[i].first_failure);
    }
  }
}

TEST_CASE("small suites pass") {
  RunConfig config{.seed = 7, .trials = 10};
  for (const auto* suite : {"oracle", "3", "4", "wagner", "theorems"}) {
    CAPTURE(suite);
    const auto report = run_suite(suite, config);
    for (const auto& p : report.properties) {
      CAPTURE(p.name);
      CHECK(p.checked > 0);
      CHECK(p.passed());
    }
  }
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_suite("5", RunConfig{}), ValidationError); }

TEST_CASE("fixture text parses back") {
  std::mt19937_64 rng(2);
  const DodgsonTriple t(random_election(rng, 3, 3), CandidateIndex{1});
  const auto text = fixture_text(t);
  CHECK(text.rfind("# designated: c2\n", 0) == 0);
  CHECK(parse_election(text) == t.election);
}

}  // TEST_SUITE
