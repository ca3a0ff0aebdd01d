#pragma once

// Core election data model: candidates, strict preference orders, voter
// multisets, pairwise tallies and the switch operation that Dodgson scores
// are counted in.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dodgson {

/// Position of a candidate in `Election::candidates()`.
using CandidateIndex = std::uint32_t;

/// Non-empty, no whitespace, none of '<', '#', ':'.
bool is_valid_candidate_name(std::string_view name);

/// A strict total order in ascending preference: index 0 is the least
/// preferred candidate, the last entry the most preferred. `<a<b<c>` is
/// stored as {a, b, c}.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  explicit PreferenceOrder(std::vector<CandidateIndex> ranking) : ranking_(std::move(ranking)) {}

  std::span<const CandidateIndex> ranking() const noexcept { return ranking_; }
  std::size_t size() const noexcept { return ranking_.size(); }
  CandidateIndex operator[](std::size_t position) const { return ranking_[position]; }

  std::size_t position_of(CandidateIndex candidate) const;
  /// True when `a` is strictly preferred to `b`.
  bool prefers(CandidateIndex a, CandidateIndex b) const;
  /// Copy with the entries at `position` and `position + 1` exchanged.
  PreferenceOrder switched(std::size_t position) const;
  /// True when the order ranks exactly {0, ..., candidate_count - 1}.
  bool is_permutation_of(std::size_t candidate_count) const;

  friend auto operator<=>(const PreferenceOrder&, const PreferenceOrder&) = default;

 private:
  std::vector<CandidateIndex> ranking_;
};

struct VoterGroup {
  PreferenceOrder order;
  std::size_t multiplicity = 1;
};

/// Multiset of preference orders stored as (order, multiplicity) groups.
/// Voters are addressed by a flat index running through the groups in
/// order, so group `g` covers flat indices [sum of earlier multiplicities,
/// ... + multiplicity). Equality compares the flat voter sequences, not the
/// grouping.
class VoterProfile {
 public:
  VoterProfile() = default;
  explicit VoterProfile(std::vector<VoterGroup> groups);

  /// Appends a new group.
  void add(PreferenceOrder order, std::size_t multiplicity = 1);
  /// Appends, folding into the last group when its order is identical.
  void append(PreferenceOrder order, std::size_t multiplicity = 1);

  const std::vector<VoterGroup>& groups() const noexcept { return groups_; }
  std::size_t voter_count() const noexcept { return voters_; }
  const PreferenceOrder& voter(std::size_t flat_index) const;
  std::vector<PreferenceOrder> expanded() const;

  friend bool operator==(const VoterProfile& a, const VoterProfile& b);

 private:
  std::vector<VoterGroup> groups_;
  std::size_t voters_ = 0;
};

/// Candidate set plus voter profile. Every order ranks exactly the candidate
/// set and there is at least one candidate and at least one voter; the
/// constructor throws ValidationError otherwise.
class Election {
 public:
  Election(std::vector<std::string> candidates, VoterProfile profile);

  const std::vector<std::string>& candidates() const noexcept { return candidates_; }
  std::size_t candidate_count() const noexcept { return candidates_.size(); }
  const VoterProfile& profile() const noexcept { return profile_; }
  std::size_t voter_count() const noexcept { return profile_.voter_count(); }

  const std::string& name(CandidateIndex candidate) const { return candidates_.at(candidate); }
  std::optional<CandidateIndex> find(std::string_view name) const;
  /// Throws ValidationError("unknown candidate ...").
  CandidateIndex index_of(std::string_view name) const;

  Election with_profile(VoterProfile profile) const;

  friend bool operator==(const Election&, const Election&) = default;

 private:
  std::vector<std::string> candidates_;
  VoterProfile profile_;
};

/// Election together with a designated candidate.
struct DodgsonTriple {
  DodgsonTriple(Election e, CandidateIndex designated_candidate);
  DodgsonTriple(Election e, std::string_view designated_name);

  const std::string& designated_name() const { return election.name(designated); }
  std::size_t voter_count() const noexcept { return election.voter_count(); }

  Election election;
  CandidateIndex designated;
};

/// votes(a, b) = number of voters strictly preferring a to b.
class PairwiseTally {
 public:
  PairwiseTally(std::size_t candidate_count, std::size_t voter_count);

  std::size_t operator()(CandidateIndex a, CandidateIndex b) const { return votes_[a * size_ + b]; }
  std::size_t& at(CandidateIndex a, CandidateIndex b) { return votes_[a * size_ + b]; }
  std::size_t candidate_count() const noexcept { return size_; }
  std::size_t voter_count() const noexcept { return voters_; }

 private:
  std::size_t size_;
  std::size_t voters_;
  std::vector<std::size_t> votes_;
};

/// Smallest vote count that is strictly more than half of `voter_count`.
constexpr std::size_t majority_threshold(std::size_t voter_count) { return voter_count / 2 + 1; }

PairwiseTally pairwise_tally(const Election& election);

/// The candidate beating every other one by strict majority, if any.
std::optional<CandidateIndex> condorcet_winner(const Election& election);
bool is_condorcet_winner(const Election& election, CandidateIndex candidate);

/// Exchanges positions `position` and `position + 1` of the voter at
/// `voter_index` (flat). Throws ValidationError on out-of-range indices.
VoterProfile apply_switch(const VoterProfile& profile, std::size_t voter_index, std::size_t position);

/// Per-candidate votes the designated candidate still lacks for a strict
/// majority over that candidate; the designated candidate's own entry is 0.
std::vector<std::size_t> deficit_vector(const DodgsonTriple& triple);

/// Reads the .dodg text format. Throws ParseError carrying the line number.
Election parse_election(std::string_view text);
std::string serialize_election(const Election& election);
/// "a<b<c" with candidate names.
std::string format_order(const Election& election, const PreferenceOrder& order);

}  // namespace dodgson
