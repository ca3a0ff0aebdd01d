#include "dodgson/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>

#include "dodgson/error.hpp"
#include "dodgson/gadgets.hpp"
#include "dodgson/matching.hpp"
#include "dodgson/scoring.hpp"

namespace dodgson {

namespace {

struct Check {
  std::size_t property;
  bool ok;
  std::string detail;
  std::vector<Fixture> fixtures;
};

using Trial = std::function<std::vector<Check>(std::size_t index)>;

// Runs `count` independent trials, in parallel when allowed, and folds their
// checks into `report` in trial order so the report is schedule-independent.
void run_trials(std::size_t count, std::size_t threads, const Trial& trial, SuiteReport& report) {
  std::vector<std::vector<Check>> results(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = trial(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < count; i += threads) results[i] = trial(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& checks : results) {
    for (auto& check : checks) {
      auto& prop = report.properties.at(check.property);
      ++prop.checked;
      if (check.ok) continue;
      if (prop.failed++ == 0) {
        prop.first_failure = std::move(check.detail);
        prop.fixtures = std::move(check.fixtures);
      }
    }
  }
}

SuiteReport make_report(std::string suite, std::initializer_list<const char*> properties) {
  SuiteReport report{std::move(suite), {}};
  for (const auto* p : properties) {
    PropertyOutcome outcome;
    outcome.name = p;
    report.properties.push_back(std::move(outcome));
  }
  return report;
}

std::vector<Fixture> triple_fixture(const std::string& stem, const DodgsonTriple& t) {
  return {{stem + ".dodg", fixture_text(t)}};
}

std::string describe(const std::string& what, std::size_t got, std::size_t want) {
  std::ostringstream out;
  out << what << ": got " << got << ", expected " << want;
  return out.str();
}

DodgsonTriple random_triple(std::mt19937_64& rng, std::size_t max_candidates, const std::string& prefix) {
  const auto m = 1 + draw(rng, max_candidates);
  const std::size_t n = draw(rng, 2) == 0 ? 1 : 3;
  auto e = random_election(rng, m, n, prefix);
  const auto designated = static_cast<CandidateIndex>(draw(rng, m));
  return DodgsonTriple(std::move(e), designated);
}

// Shared by suites 6 and theorems so both see the same corpus.
std::pair<DodgsonTriple, DodgsonTriple> random_merge_pair(const RunConfig& config, std::size_t index) {
  std::mt19937_64 rng(trial_seed(config.seed, index));
  auto first = random_triple(rng, 3, "a");
  auto second = random_triple(rng, 3, "b");
  return {std::move(first), std::move(second)};
}

// --- oracle -----------------------------------------------------------------

std::vector<Check> oracle_checks(const Election& e, const RunConfig& config, const std::string& stem) {
  std::vector<Check> checks;
  ScoringOptions opts{config.state_cap};
  const auto winner = condorcet_winner(e);
  for (CandidateIndex c = 0; c < e.candidate_count(); ++c) {
    DodgsonTriple t(e, c);
    const auto exact = score_exact(t, opts);
    const auto oracle = score_oracle(t, config.oracle_cap);
    const auto fx = triple_fixture(stem + "-" + e.name(c), t);
    checks.push_back({0, oracle && *oracle == exact.score,
                      oracle ? describe("score_exact vs score_oracle", exact.score, *oracle)
                             : "score_oracle exceeded its depth cap",
                      fx});
    const bool witness_ok = exact.witness.cost() == exact.score &&
                            is_condorcet_winner(e.with_profile(apply_raises(t, exact.witness)), c);
    checks.push_back({1, witness_ok, "witness does not realize the score", fx});
    checks.push_back({2, (exact.score == 0) == (winner == c), "zero score iff Condorcet winner", fx});
    checks.push_back({3, exact.score <= e.voter_count() * (e.candidate_count() - 1),
                      describe("score above n(m-1)", exact.score, e.voter_count() * (e.candidate_count() - 1)), fx});
    const bool below = exact.score > 0 && score_decision(t, exact.score - 1);
    const bool at = score_decision(t, exact.score);
    const bool above = score_decision(t, exact.score + 1);
    checks.push_back({4, !below && at && above, "score_decision disagrees with score_exact", fx});
    checks.push_back({5, score_exact(t, opts).witness == exact.witness, "non-deterministic witness", fx});
  }
  return checks;
}

SuiteReport oracle_suite(const RunConfig& config) {
  auto report = make_report("oracle", {"exact-equals-oracle", "witness-valid", "zero-law", "upper-bound",
                                       "decision-consistent", "deterministic"});
  // Every multiset of 1..3 voters over the six orders of three candidates.
  std::vector<Election> corpus;
  std::vector<std::vector<CandidateIndex>> orders;
  std::vector<CandidateIndex> p{0, 1, 2};
  do orders.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::function<void(std::vector<std::size_t>&, std::size_t, std::size_t)> build =
      [&](std::vector<std::size_t>& pick, std::size_t from, std::size_t left) {
        if (left == 0) {
          VoterProfile profile;
          for (auto i : pick) profile.append(PreferenceOrder(orders[i]));
          corpus.emplace_back(std::vector<std::string>{"a", "b", "c"}, std::move(profile));
          return;
        }
        for (std::size_t i = from; i < orders.size(); ++i) {
          pick.push_back(i);
          build(pick, i, left - 1);
          pick.pop_back();
        }
      };
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::size_t> pick;
    build(pick, 0, n);
  }
  const auto exhaustive = corpus.size();
  run_trials(exhaustive + config.trials, config.threads, [&](std::size_t i) {
    if (i < exhaustive) return oracle_checks(corpus[i], config, "exhaustive-" + std::to_string(i));
    std::mt19937_64 rng(trial_seed(config.seed, i - exhaustive));
    return oracle_checks(random_election(rng, 4, 5), config, "random-" + std::to_string(i - exhaustive));
  }, report);
  return report;
}

// --- 3dm gap --------------------------------------------------------------

std::vector<Check> reduction_checks(const TdmInstance& x, const RunConfig& config, std::size_t gap_property,
                                    const std::string& stem) {
  const auto reduced = reduce_3dm(x);
  const auto score = score_exact(reduced.triple, {config.state_cap}).score;
  const std::size_t want = reduced.threshold + (has_matching(x) ? 0 : 1);
  std::vector<Fixture> fx{{stem + ".3dm", serialize_3dm(x)}};
  const auto n = reduced.triple.voter_count();
  return {
      {gap_property, score == want, describe("score of reduced instance", score, want), fx},
      {2, n % 2 == 1 && n == 2 * x.triples.size() - 1 && reduced.threshold == 3 * x.q(),
       "reduced instance shape (odd 2|M|-1 voters, threshold 3q)", fx},
  };
}

TdmInstance random_q3_instance(std::mt19937_64& rng) {
  TdmInstance x;
  for (int i = 1; i <= 3; ++i) {
    x.w_set.push_back("w" + std::to_string(i));
    x.x_set.push_back("x" + std::to_string(i));
    x.y_set.push_back("y" + std::to_string(i));
  }
  std::vector<TdmTriple> universe;
  for (const auto& w : x.w_set)
    for (const auto& xx : x.x_set)
      for (const auto& y : x.y_set) universe.push_back({w, xx, y});
  const auto size = 3 + draw(rng, 7);  // 3..9 triples
  for (std::size_t i = 0; i < size; ++i) std::swap(universe[i], universe[i + draw(rng, universe.size() - i)]);
  x.triples.assign(universe.begin(), universe.begin() + static_cast<std::ptrdiff_t>(size));
  return x;
}

SuiteReport gap_suite(const RunConfig& config) {
  auto report = make_report("3", {"score-gap-q2-exhaustive", "score-gap-q3-random", "reduced-shape"});
  std::vector<TdmInstance> corpus;
  InstanceEnumerator it(2, 2, 4);
  while (auto x = it.next()) corpus.push_back(std::move(*x));
  const auto exhaustive = corpus.size();
  run_trials(exhaustive + config.trials, config.threads, [&](std::size_t i) {
    if (i < exhaustive) return reduction_checks(corpus[i], config, 0, "q2-" + std::to_string(i));
    std::mt19937_64 rng(trial_seed(config.seed, i - exhaustive));
    return reduction_checks(random_q3_instance(rng), config, 1, "q3-" + std::to_string(i - exhaustive));
  }, report);
  return report;
}

// --- sum --------------------------------------------------------------------

SuiteReport sum_suite(const RunConfig& config) {
  auto report = make_report("4", {"additivity", "voter-count", "odd-voters"});
  run_trials(config.trials, config.threads, [&](std::size_t i) {
    std::mt19937_64 rng(trial_seed(config.seed, i));
    std::vector<DodgsonTriple> parts;
    const auto k = 1 + draw(rng, 3);
    for (std::size_t j = 0; j < k; ++j) parts.push_back(random_triple(rng, 4, "c"));
    std::size_t expected = 0, voters = 0;
    std::vector<Fixture> fx;
    for (std::size_t j = 0; j < k; ++j) {
      expected += score_exact(parts[j], {config.state_cap}).score;
      voters += parts[j].voter_count();
      fx.push_back({"sum-" + std::to_string(i) + "-part" + std::to_string(j + 1) + ".dodg", fixture_text(parts[j])});
    }
    const auto sum = dodgson_sum(parts);
    const auto got = score_exact(sum.triple, {config.state_cap}).score;
    const auto n = sum.triple.voter_count();
    return std::vector<Check>{
        {0, got == expected, describe("score of sum", got, expected), fx},
        {1, n == 2 * voters - 1, describe("voters of sum", n, 2 * voters - 1), fx},
        {2, n % 2 == 1, "even voter count", fx},
    };
  }, report);
  return report;
}

// --- merge ------------------------------------------------------------------

SuiteReport merge_suite(const RunConfig& config) {
  auto report = make_report("6", {"plus-one-first", "plus-one-second", "dominance", "voter-count"});
  run_trials(config.trials, config.threads, [&](std::size_t i) {
    auto [first, second] = random_merge_pair(config, i);
    const std::string stem = "merge-" + std::to_string(i);
    std::vector<Fixture> fx{{stem + "-first.dodg", fixture_text(first)}, {stem + "-second.dodg", fixture_text(second)}};
    const ScoringOptions opts{config.state_cap};
    const auto merged = merge(first, second);
    const auto& e = merged.ranking.election;
    const auto c_score = score_exact(DodgsonTriple(e, merged.ranking.c), opts).score;
    const auto d_score = score_exact(DodgsonTriple(e, merged.ranking.d), opts).score;
    const auto want_c = score_exact(first, opts).score + 1, want_d = score_exact(second, opts).score + 1;
    std::vector<Check> checks{
        {0, c_score == want_c, describe("merged score of c", c_score, want_c), fx},
        {1, d_score == want_d, describe("merged score of d", d_score, want_d), fx},
    };
    bool dominated = true;
    std::string detail;
    for (CandidateIndex x = 0; x < e.candidate_count() && dominated; ++x) {
      if (x == merged.ranking.c || x == merged.ranking.d) continue;
      if (score_decision(DodgsonTriple(e, x), c_score)) {
        dominated = false;
        detail = "candidate " + e.name(x) + " scores at most Score(c) = " + std::to_string(c_score);
      }
    }
    checks.push_back({2, dominated, detail, fx});
    const auto v = std::max(first.voter_count(), second.voter_count());
    const auto w = std::min(first.voter_count(), second.voter_count());
    checks.push_back({3, e.voter_count() == 2 * v + w + 1, describe("merged voters", e.voter_count(), 2 * v + w + 1), fx});
    return checks;
  }, report);
  return report;
}

// --- wagner -----------------------------------------------------------------

std::vector<Check> parity_check(std::size_t property, const std::vector<TdmInput>& inputs, std::size_t yes_count,
                                const RunConfig& config, const std::string& stem) {
  const auto g = wagner_g(inputs);
  const bool in_2er = two_election_ranking(g.instance.left, g.instance.right, {config.state_cap});
  std::vector<Fixture> fx;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const auto& in = inputs[j];
    fx.push_back({stem + "-x" + std::to_string(j + 1) + ".3dm",
                  std::holds_alternative<TdmInstance>(in) ? serialize_3dm(std::get<TdmInstance>(in))
                                                          : std::get<std::string>(in)});
  }
  std::ostringstream detail;
  detail << inputs.size() << " inputs with " << yes_count << " members: in 2ER = " << in_2er;
  return {{property, in_2er == (yes_count % 2 == 1), detail.str(), fx}};
}

SuiteReport wagner_suite(const RunConfig& config) {
  auto report = make_report("wagner", {"parity-canonical", "parity-random-q2"});
  // Canonical members-first lists for k = 1, 2.
  std::vector<std::pair<std::vector<TdmInput>, std::size_t>> canonical;
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t yes = 0; yes <= 2 * k; ++yes) {
      std::vector<TdmInput> xs;
      for (std::size_t j = 0; j < 2 * k; ++j) xs.push_back(j < yes ? canonical_yes_instance() : canonical_no_instance());
      canonical.emplace_back(std::move(xs), yes);
    }
  std::vector<TdmInstance> pool;
  InstanceEnumerator it(2, 2, 3);
  while (auto x = it.next()) pool.push_back(std::move(*x));

  run_trials(canonical.size() + config.trials, config.threads, [&](std::size_t i) {
    if (i < canonical.size())
      return parity_check(0, canonical[i].first, canonical[i].second, config, "wagner-canonical-" + std::to_string(i));
    std::mt19937_64 rng(trial_seed(config.seed, i - canonical.size()));
    const auto k = 1 + draw(rng, 2);
    std::vector<TdmInstance> picked;
    for (std::size_t j = 0; j < 2 * k; ++j) picked.push_back(pool[draw(rng, pool.size())]);
    std::stable_partition(picked.begin(), picked.end(), [](const TdmInstance& x) { return has_matching(x); });
    const auto yes = static_cast<std::size_t>(
        std::count_if(picked.begin(), picked.end(), [](const TdmInstance& x) { return has_matching(x); }));
    return parity_check(1, std::vector<TdmInput>(picked.begin(), picked.end()), yes, config,
                        "wagner-random-" + std::to_string(i - canonical.size()));
  }, report);
  return report;
}

// --- theorems ---------------------------------------------------------------

SuiteReport theorems_suite(const RunConfig& config) {
  auto report = make_report("theorems", {"ranking-reduction", "winner-reduction", "sentinel"});
  {
    std::mt19937_64 rng(config.seed);
    auto even = random_election(rng, 2, 2, "e");
    const DodgsonTriple odd = unit_chain(1);
    std::vector<TwoERInput> malformed{
        std::nullopt,
        std::make_pair(DodgsonTriple(even, CandidateIndex{0}), odd),
        std::make_pair(odd, unit_chain(2)),  // both designated "1"
    };
    for (const auto& x : malformed) {
      const auto r = reduce_2er_to_ranking(x);
      const auto w = reduce_2er_to_winner(x);
      const bool ok = std::holds_alternative<Sentinel>(r) && std::holds_alternative<Sentinel>(w) &&
                      !in_dodgson_ranking(r) && !in_dodgson_winner(w);
      ++report.properties[2].checked;
      if (!ok && report.properties[2].failed++ == 0)
        report.properties[2].first_failure = "malformed 2ER input did not map to the sentinel";
    }
  }
  run_trials(config.trials, config.threads, [&](std::size_t i) {
    auto pair = random_merge_pair(config, i);
    const std::string stem = "theorem-" + std::to_string(i);
    std::vector<Fixture> fx{{stem + "-first.dodg", fixture_text(pair.first)},
                            {stem + "-second.dodg", fixture_text(pair.second)}};
    const ScoringOptions opts{config.state_cap};
    const bool in_2er = two_election_ranking(pair.first, pair.second, opts);
    const TwoERInput input = pair;
    const bool ranking = in_dodgson_ranking(reduce_2er_to_ranking(input), opts);
    const bool winner = in_dodgson_winner(reduce_2er_to_winner(input), opts);
    return std::vector<Check>{
        {0, ranking == in_2er, "2ER membership differs from DodgsonRanking membership", fx},
        {1, winner == in_2er, "2ER membership differs from DodgsonWinner membership", fx},
    };
  }, report);
  return report;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle", "3", "4", "6", "wagner", "theorems"};
  return names;
}

SuiteReport run_suite(std::string_view suite, const RunConfig& config) {
  if (suite == "oracle") return oracle_suite(config);
  if (suite == "3") return gap_suite(config);
  if (suite == "4") return sum_suite(config);
  if (suite == "6") return merge_suite(config);
  if (suite == "wagner") return wagner_suite(config);
  if (suite == "theorems") return theorems_suite(config);
  throw ValidationError("unknown suite '" + std::string(suite) + "'");
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
  if (bound <= 1) return 0;
  // Rejection keeps the draw unbiased.
  const auto limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

Election random_election(std::mt19937_64& rng, std::size_t candidates, std::size_t voters, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= candidates; ++i) names.push_back(prefix + std::to_string(i));
  VoterProfile profile;
  for (std::size_t v = 0; v < voters; ++v) {
    std::vector<CandidateIndex> order(candidates);
    for (std::size_t i = 0; i < candidates; ++i) order[i] = static_cast<CandidateIndex>(i);
    for (std::size_t i = candidates; i > 1; --i) std::swap(order[i - 1], order[draw(rng, i)]);
    profile.add(PreferenceOrder(std::move(order)));
  }
  return Election(std::move(names), std::move(profile));
}

std::string fixture_text(const DodgsonTriple& triple) {
  return "# designated: " + triple.designated_name() + "\n" + serialize_election(triple.election);
}

}  // namespace dodgson
