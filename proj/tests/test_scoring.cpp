#include <doctest.h>

#include <random>

#include "dodgson/error.hpp"
#include "dodgson/scoring.hpp"
#include "dodgson/verify.hpp"
#include "support.hpp"

using namespace dodgson;
using testing::chain;
using testing::cycle;
using testing::unanimous;

namespace {

bool witness_realizes(const DodgsonTriple& t, const ScoreResult& r) {
  return r.witness.cost() == r.score && is_condorcet_winner(t.election.with_profile(apply_raises(t, r.witness)), t.designated);
}

}  // namespace

TEST_SUITE("scoring") {

TEST_CASE("condorcet winner scores zero") {
  const DodgsonTriple t(unanimous(), "c");
  const auto r = score_exact(t);
  CHECK(r.score == 0);
  CHECK(r.method == ScoreMethod::trivial);
  CHECK(score_decision(t, 0));
  CHECK(score_oracle(t, 5) == std::size_t{0});
  CHECK(is_winner(t));
}

TEST_CASE("unit chains score their length") {
  for (std::size_t m : {1, 2, 5}) {
    CAPTURE(m);
    CHECK(score_exact(chain(m)).score == m);
  }
  CHECK_FALSE(score_decision(chain(5), 4));
  CHECK(score_decision(chain(5), 5));
  CHECK(score_oracle(chain(2), 10) == std::size_t{2});
}

TEST_CASE("cycle") {
  for (const char* c : {"a", "b", "c"}) {
    const DodgsonTriple t(cycle(), c);
    CHECK(score_exact(t).score == testing::brute_score(t.election, t.designated, 6));
    CHECK(score_exact(t).score == 1);
    CHECK(is_winner(t));
  }
  CHECK_FALSE(score_decision(DodgsonTriple(cycle(), "a"), 0));
  CHECK(score_oracle(DodgsonTriple(cycle(), "c"), 5) == std::size_t{1});
  CHECK(all_scores(cycle()) == std::vector<std::size_t>{1, 1, 1});
  CHECK(dodgson_winners(all_scores(cycle())) == std::vector<CandidateIndex>{0, 1, 2});
}

TEST_CASE("unanimous") {
  const auto scores = all_scores(unanimous());
  CHECK(scores == std::vector<std::size_t>{testing::brute_score(unanimous(), 0, 8).value(),
                                           testing::brute_score(unanimous(), 1, 8).value(), 0});
  CHECK(scores == std::vector<std::size_t>{4, 2, 0});
  CHECK_FALSE(is_winner(DodgsonTriple(unanimous(), "a")));
  CHECK(ranks_at_least(unanimous(), 2, 0));
  CHECK_FALSE(ranks_at_least(unanimous(), 0, 2));
  CHECK(ranks_at_least(cycle(), 0, 1));
  CHECK(ranks_at_least(cycle(), 1, 1));
  CHECK_THROWS_AS(ranks_at_least(cycle(), 0, 7), ValidationError);
}

TEST_CASE("single candidate") {
  const auto e = testing::make_election({"x"}, {{{0}, 2}});
  CHECK(all_scores(e) == std::vector<std::size_t>{0});
}

TEST_CASE("two-election ranking") {
  CHECK(two_election_ranking(chain(2), chain(3, "b")));
  CHECK_FALSE(two_election_ranking(chain(3), chain(2, "b")));
  CHECK(two_election_ranking(chain(2), chain(2, "r")));
  CHECK(two_election_ranking(DodgsonTriple(cycle(), "c"), chain(1)));
  CHECK_THROWS_WITH_AS(two_election_ranking(chain(2), chain(3)), doctest::Contains("designated candidates equal"),
                       ValidationError);
  const DodgsonTriple even(testing::make_election({"u", "v"}, {{{0, 1}, 2}}), "u");
  CHECK_THROWS_WITH_AS(two_election_ranking(even, chain(1)), doctest::Contains("even voter count"), ValidationError);
}

TEST_CASE("exact agrees with brute force on random elections") {
  for (std::size_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const auto e = random_election(rng, 3 + seed % 2, 1 + seed % 4);
    for (CandidateIndex c = 0; c < e.candidate_count(); ++c) {
      CAPTURE(seed);
      CAPTURE(c);
      const DodgsonTriple t(e, c);
      const auto r = score_exact(t);
      CHECK(testing::brute_score(e, c, 12) == r.score);
      CHECK(witness_realizes(t, r));
      CHECK(r.score <= e.voter_count() * (e.candidate_count() - 1));
      CHECK(score_decision(t, r.score));
      if (r.score > 0) CHECK_FALSE(score_decision(t, r.score - 1));
    }
  }
}

TEST_CASE("branch and bound matches dynamic programming") {
  const ScoringOptions tiny{1};
  for (std::size_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const auto e = random_election(rng, 5, 5);
    for (CandidateIndex c = 0; c < e.candidate_count(); ++c) {
      const DodgsonTriple t(e, c);
      const auto dp = score_exact(t);
      const auto bb = score_exact(t, tiny);
      CAPTURE(seed);
      CHECK(bb.score == dp.score);
      if (dp.score > 0) CHECK(bb.method == ScoreMethod::branch_and_bound);
      CHECK(witness_realizes(t, bb));
    }
  }
}

TEST_CASE("adding a voter who ranks c top never raises its score") {
  for (std::size_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(500 + seed);
    const auto e = random_election(rng, 4, 3);
    VoterProfile more = e.profile();
    more.add(PreferenceOrder({1, 2, 3, 0}));
    const auto bigger = e.with_profile(more);
    CHECK(score_exact(DodgsonTriple(bigger, CandidateIndex{0})).score <=
          score_exact(DodgsonTriple(e, CandidateIndex{0})).score + 1);
  }
}

TEST_CASE("raising c in the profile never increases its score") {
  for (std::size_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(900 + seed);
    const auto e = random_election(rng, 4, 3);
    const DodgsonTriple t(e, CandidateIndex{0});
    const auto pos = e.profile().voter(0).position_of(0);
    if (pos + 1 == e.candidate_count()) continue;
    const DodgsonTriple raised(e.with_profile(apply_switch(e.profile(), 0, pos)), CandidateIndex{0});
    CHECK(score_exact(raised).score <= score_exact(t).score);
    CHECK(score_exact(raised).score + 1 >= score_exact(t).score);
  }
}

TEST_CASE("deterministic witness") {
  std::mt19937_64 rng(3);
  const auto e = random_election(rng, 5, 7);
  const DodgsonTriple t(e, CandidateIndex{1});
  CHECK(score_exact(t).witness == score_exact(t).witness);
}

TEST_CASE("oracle depth cap") {
  CHECK_FALSE(score_oracle(chain(5), 4));
  CHECK(score_oracle(chain(5), 5) == std::size_t{5});
}

TEST_CASE("apply_raises rejects bad allocations") {
  RaiseAllocation too_far{{6}};
  CHECK_THROWS_AS(apply_raises(chain(5), too_far), ValidationError);
  RaiseAllocation wrong_size{{1, 1}};
  CHECK_THROWS_AS(apply_raises(chain(5), wrong_size), ValidationError);
}

}  // TEST_SUITE
