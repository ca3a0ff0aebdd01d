#include "dodgson/election.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "dodgson/error.hpp"

namespace dodgson {

bool is_valid_candidate_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == '<' || ch == '#' || ch == ':';
  });
}

std::size_t PreferenceOrder::position_of(CandidateIndex candidate) const {
  auto it = std::find(ranking_.begin(), ranking_.end(), candidate);
  if (it == ranking_.end()) throw ValidationError("candidate not ranked by this order");
  return static_cast<std::size_t>(it - ranking_.begin());
}

bool PreferenceOrder::prefers(CandidateIndex a, CandidateIndex b) const {
  return position_of(a) > position_of(b);
}

PreferenceOrder PreferenceOrder::switched(std::size_t position) const {
  if (position + 1 >= ranking_.size()) throw ValidationError("switch position out of range");
  auto copy = ranking_;
  std::swap(copy[position], copy[position + 1]);
  return PreferenceOrder(std::move(copy));
}

bool PreferenceOrder::is_permutation_of(std::size_t candidate_count) const {
  if (ranking_.size() != candidate_count) return false;
  std::vector<bool> seen(candidate_count, false);
  for (auto c : ranking_) {
    if (c >= candidate_count || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

VoterProfile::VoterProfile(std::vector<VoterGroup> groups) {
  for (auto& g : groups) add(std::move(g.order), g.multiplicity);
}

void VoterProfile::add(PreferenceOrder order, std::size_t multiplicity) {
  if (multiplicity == 0) throw ValidationError("multiplicity must be positive");
  voters_ += multiplicity;
  groups_.push_back({std::move(order), multiplicity});
}

void VoterProfile::append(PreferenceOrder order, std::size_t multiplicity) {
  if (!groups_.empty() && groups_.back().order == order && multiplicity > 0) {
    groups_.back().multiplicity += multiplicity;
    voters_ += multiplicity;
    return;
  }
  add(std::move(order), multiplicity);
}

const PreferenceOrder& VoterProfile::voter(std::size_t flat_index) const {
  for (const auto& g : groups_) {
    if (flat_index < g.multiplicity) return g.order;
    flat_index -= g.multiplicity;
  }
  throw ValidationError("voter index out of range");
}

std::vector<PreferenceOrder> VoterProfile::expanded() const {
  std::vector<PreferenceOrder> out;
  out.reserve(voters_);
  for (const auto& g : groups_) out.insert(out.end(), g.multiplicity, g.order);
  return out;
}

bool operator==(const VoterProfile& a, const VoterProfile& b) {
  if (a.voters_ != b.voters_) return false;
  // Walk both group lists in lockstep over the flat sequence.
  std::size_t ia = 0, ib = 0, left_a = 0, left_b = 0;
  while (ia < a.groups_.size() || ib < b.groups_.size()) {
    if (left_a == 0) {
      if (ia >= a.groups_.size()) return false;
      left_a = a.groups_[ia].multiplicity;
    }
    if (left_b == 0) {
      if (ib >= b.groups_.size()) return false;
      left_b = b.groups_[ib].multiplicity;
    }
    if (!(a.groups_[ia].order == b.groups_[ib].order)) return false;
    auto step = std::min(left_a, left_b);
    left_a -= step;
    left_b -= step;
    if (left_a == 0) ++ia;
    if (left_b == 0) ++ib;
  }
  return true;
}

Election::Election(std::vector<std::string> candidates, VoterProfile profile)
    : candidates_(std::move(candidates)), profile_(std::move(profile)) {
  if (candidates_.empty()) throw ValidationError("election needs at least one candidate");
  std::unordered_set<std::string_view> seen;
  for (const auto& name : candidates_) {
    if (!is_valid_candidate_name(name)) throw ValidationError("invalid candidate name '" + name + "'");
    if (!seen.insert(name).second) throw ValidationError("duplicate candidate '" + name + "'");
  }
  if (profile_.voter_count() == 0) throw ValidationError("election needs at least one voter");
  for (const auto& g : profile_.groups()) {
    if (!g.order.is_permutation_of(candidates_.size())) throw ValidationError("order not a permutation");
  }
}

std::optional<CandidateIndex> Election::find(std::string_view name) const {
  auto it = std::find(candidates_.begin(), candidates_.end(), name);
  if (it == candidates_.end()) return std::nullopt;
  return static_cast<CandidateIndex>(it - candidates_.begin());
}

CandidateIndex Election::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw ValidationError("unknown candidate '" + std::string(name) + "'");
}

Election Election::with_profile(VoterProfile profile) const { return Election(candidates_, std::move(profile)); }

DodgsonTriple::DodgsonTriple(Election e, CandidateIndex designated_candidate)
    : election(std::move(e)), designated(designated_candidate) {
  if (designated >= election.candidate_count()) throw ValidationError("designated candidate out of range");
}

DodgsonTriple::DodgsonTriple(Election e, std::string_view designated_name)
    : election(std::move(e)), designated(election.index_of(designated_name)) {}

PairwiseTally::PairwiseTally(std::size_t candidate_count, std::size_t voter_count)
    : size_(candidate_count), voters_(voter_count), votes_(candidate_count * candidate_count, 0) {}

PairwiseTally pairwise_tally(const Election& election) {
  const auto m = election.candidate_count();
  PairwiseTally tally(m, election.voter_count());
  for (const auto& g : election.profile().groups()) {
    auto ranking = g.order.ranking();
    // ranking[hi] is preferred to every ranking[lo] with lo < hi.
    for (std::size_t hi = 1; hi < m; ++hi)
      for (std::size_t lo = 0; lo < hi; ++lo) tally.at(ranking[hi], ranking[lo]) += g.multiplicity;
  }
  return tally;
}

bool is_condorcet_winner(const Election& election, CandidateIndex candidate) {
  auto tally = pairwise_tally(election);
  const auto need = majority_threshold(election.voter_count());
  for (CandidateIndex d = 0; d < election.candidate_count(); ++d)
    if (d != candidate && tally(candidate, d) < need) return false;
  return true;
}

std::optional<CandidateIndex> condorcet_winner(const Election& election) {
  auto tally = pairwise_tally(election);
  const auto need = majority_threshold(election.voter_count());
  for (CandidateIndex w = 0; w < election.candidate_count(); ++w) {
    bool beats_all = true;
    for (CandidateIndex d = 0; d < election.candidate_count() && beats_all; ++d)
      beats_all = d == w || tally(w, d) >= need;
    if (beats_all) return w;
  }
  return std::nullopt;
}

VoterProfile apply_switch(const VoterProfile& profile, std::size_t voter_index, std::size_t position) {
  if (voter_index >= profile.voter_count()) throw ValidationError("voter index out of range");
  VoterProfile out;
  std::size_t offset = voter_index;
  bool done = false;
  for (const auto& g : profile.groups()) {
    if (done || offset >= g.multiplicity) {
      if (!done) offset -= g.multiplicity;
      out.add(g.order, g.multiplicity);
      continue;
    }
    if (offset > 0) out.add(g.order, offset);
    out.add(g.order.switched(position), 1);
    if (g.multiplicity - offset - 1 > 0) out.add(g.order, g.multiplicity - offset - 1);
    done = true;
  }
  return out;
}

std::vector<std::size_t> deficit_vector(const DodgsonTriple& triple) {
  const auto& e = triple.election;
  auto tally = pairwise_tally(e);
  const auto need = majority_threshold(e.voter_count());
  std::vector<std::size_t> deficit(e.candidate_count(), 0);
  for (CandidateIndex d = 0; d < e.candidate_count(); ++d) {
    if (d == triple.designated) continue;
    auto have = tally(triple.designated, d);
    deficit[d] = have >= need ? 0 : need - have;
  }
  return deficit;
}

std::string format_order(const Election& election, const PreferenceOrder& order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += '<';
    out += election.name(order[i]);
  }
  return out;
}

}  // namespace dodgson
