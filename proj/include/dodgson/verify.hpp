#pragma once

// Seeded property suites that check the constructions against the solvers:
// what `dodgson verify <suite>` runs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dodgson/election.hpp"

namespace dodgson {

struct RunConfig {
  std::uint64_t seed = 7;
  std::size_t trials = 25;
  std::size_t state_cap = 10'000'000;
  std::size_t oracle_cap = 20;
  std::size_t threads = 0;  ///< 0: hardware concurrency
};

/// Replayable input behind a failed check.
struct Fixture {
  std::string filename;
  std::string content;
};

struct PropertyOutcome {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;  ///< human-readable description, empty when passing
  std::vector<Fixture> fixtures;

  bool passed() const { return failed == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyOutcome> properties;

  bool passed() const;
};

/// Suites: "oracle", "3", "4", "6", "wagner", "theorems". Throws
/// ValidationError for anything else.
SuiteReport run_suite(std::string_view suite, const RunConfig& config);
const std::vector<std::string>& suite_names();

/// Independent stream seed for trial `index` (splitmix64 of seed and index).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);

/// Uniform in [0, bound) from a 64-bit engine, identical on every platform.
std::size_t draw(std::mt19937_64& rng, std::size_t bound);

/// `voters` uniformly random strict orders over candidates
/// `<prefix>1 .. <prefix><candidates>`.
Election random_election(std::mt19937_64& rng, std::size_t candidates, std::size_t voters,
                         const std::string& prefix = "c");

/// .dodg text with the designated candidate noted in a leading comment.
std::string fixture_text(const DodgsonTriple& triple);

}  // namespace dodgson
