#pragma once

// Dodgson scores: the fewest adjacent switches that make a candidate a
// Condorcet winner, and the decision problems built on them.

#include <cstddef>
#include <optional>
#include <vector>

#include "dodgson/election.hpp"

namespace dodgson {

/// Per-voter (flat index) number of positions the designated candidate is
/// moved up. Each entry is at most the number of candidates initially above
/// the designated candidate in that voter.
struct RaiseAllocation {
  std::vector<std::size_t> raises;

  std::size_t cost() const;
  friend bool operator==(const RaiseAllocation&, const RaiseAllocation&) = default;
};

enum class ScoreMethod { trivial, dynamic_programming, branch_and_bound };

struct ScoreResult {
  std::size_t score = 0;
  /// Lexicographically smallest optimal allocation in flat voter order.
  RaiseAllocation witness;
  ScoreMethod method = ScoreMethod::trivial;
};

struct ScoringOptions {
  /// Stored dynamic-programming states beyond which score_exact switches
  /// to branch-and-bound.
  std::size_t state_cap = 10'000'000;
};

/// Profile obtained by moving the designated candidate up by
/// `allocation.raises[v]` adjacent exchanges in each voter v. Throws
/// ValidationError if the allocation does not fit the triple.
VoterProfile apply_raises(const DodgsonTriple& triple, const RaiseAllocation& allocation);

/// Exact score with witness. The search space is raises of the designated
/// candidate only: voter v raised by j positions gains one vote over each of
/// the j candidates directly above it. Minimum-cost covering of the deficit
/// vector is found by dynamic programming over residual deficits, falling
/// back to branch-and-bound once `options.state_cap` states are stored.
ScoreResult score_exact(const DodgsonTriple& triple, const ScoringOptions& options = {});

/// Score(triple) <= budget. Never explores allocations costing more than
/// `budget`, so it stays cheap on large elections when the budget is small.
bool score_decision(const DodgsonTriple& triple, std::size_t budget);

/// Literal switch-distance: breadth-first search over whole profiles where
/// one edge is any adjacent exchange in any voter. Returns std::nullopt if
/// no profile within `depth_cap` switches makes the designated candidate a
/// Condorcet winner. Meant for tiny elections (at most 8 candidates).
std::optional<std::size_t> score_oracle(const DodgsonTriple& triple, std::size_t depth_cap);

/// score_exact for every candidate, indexed by CandidateIndex.
std::vector<std::size_t> all_scores(const Election& election, const ScoringOptions& options = {});
/// Candidates of minimum score, ascending by index.
std::vector<CandidateIndex> dodgson_winners(const std::vector<std::size_t>& scores);

/// Designated candidate ties-or-defeats every other candidate.
bool is_winner(const DodgsonTriple& triple, const ScoringOptions& options = {});
/// Score(c) <= Score(d). Reflexive.
bool ranks_at_least(const Election& election, CandidateIndex c, CandidateIndex d,
                    const ScoringOptions& options = {});

/// Score(first) <= Score(second). Throws ValidationError unless both voter
/// counts are odd and the designated names differ.
bool two_election_ranking(const DodgsonTriple& first, const DodgsonTriple& second,
                          const ScoringOptions& options = {});

}  // namespace dodgson
