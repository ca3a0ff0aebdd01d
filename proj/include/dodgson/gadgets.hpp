#pragma once

// Election constructions used to transfer hardness between Dodgson
// problems: the three-dimensional-matching reduction, score summation, unit
// chains, the parity combiner over 2k inputs, and the two-election merges.
// Each is a deterministic, polynomial-time map on the data model.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dodgson/election.hpp"
#include "dodgson/matching.hpp"
#include "dodgson/scoring.hpp"

namespace dodgson {

/// Where a candidate of a constructed election came from.
struct CandidateOrigin {
  std::string name;      ///< name in the constructed election
  std::string role;      ///< "designated", "block", "element", "separator-s", "separator-t", "fresh"
  std::optional<std::size_t> source;  ///< input position, when copied from an input
  std::string original;  ///< name in that input
};

/// Contiguous flat-index range of voters with one role.
struct VoterSegment {
  std::string role;
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Audit trail of a construction, serialized as the JSON sidecar.
struct ConstructionInfo {
  std::string construction;
  std::size_t separators_s = 0;
  std::size_t separators_t = 0;
  bool swapped = false;  ///< merge only: inputs exchanged so the first has more voters
  std::vector<VoterSegment> voter_segments;
  std::vector<CandidateOrigin> candidates;
};

/// Dodgson triple plus the score it is compared against.
struct ReducedInstance {
  DodgsonTriple triple;
  std::size_t threshold = 0;
  ConstructionInfo info;
};

/// <{(d,e,p),(d,e,p')}, {d,d'}, {e,e'}, {p,p'}>: two triples, no matching.
TdmInstance canonical_no_instance();
/// <{(d,e,p),(d',e',p')}, {d,d'}, {e,e'}, {p,p'}>: two triples, matching.
TdmInstance canonical_yes_instance();

/// Total. Malformed input (unparseable text or an invalid instance) and
/// instances with at most one triple map to a canonical instance with the
/// same matching answer; anything else is returned unchanged.
TdmInstance tdm_normalize(const TdmInput& input);

/// Score-gap reduction on an instance with at least two triples. Candidates
/// W, X, Y plus fresh c, s, t; one voter per triple (s<c<w<x<y<t<rest for
/// odd positions, s and t exchanged for even ones) and |M|-1 voters ranking
/// c top. Threshold 3q; the score is 3q with a matching, 3q+1 without.
/// Throws ValidationError when the precondition fails.
ReducedInstance tdm_to_dodgson(const TdmInstance& instance);

/// tdm_to_dodgson(tdm_normalize(input)). Total.
ReducedInstance reduce_3dm(const TdmInput& input);

struct SumResult {
  DodgsonTriple triple;
  ConstructionInfo info;
};

/// Single triple whose score is the sum of the inputs' scores. All
/// designated candidates become one candidate (named after the first
/// input's); other candidates are renamed apart. Separators s1..sN with
/// N = sum |C_j|*|V_j|; output has 2*sum|V_j| - 1 voters. Every input must
/// have an odd voter count.
SumResult dodgson_sum(std::span<const DodgsonTriple> triples);

/// Candidates 1..m+1, designated 1, one voter 1<2<...<m+1. Score m.
DodgsonTriple unit_chain(std::size_t m);

/// Pair of odd-voter triples with distinct designated names.
struct TwoERInstance {
  DodgsonTriple left;
  DodgsonTriple right;

  /// Reason the pair is not a valid instance, if any.
  static std::optional<std::string> violation(const DodgsonTriple& left, const DodgsonTriple& right);
  /// Throws ValidationError on violation.
  static TwoERInstance make(DodgsonTriple left, DodgsonTriple right);
};

struct WagnerResult {
  TwoERInstance instance;
  std::vector<std::size_t> thresholds;  ///< K_i of each reduced input, in input order
  ConstructionInfo left_info;
  ConstructionInfo right_info;
};

/// Parity combiner over an even number (>= 2) of inputs. With
/// S_i, K_i = reduce_3dm(x_i): left = sum(S_1, S_3, ..., T_{1 + K_2 + K_4 + ...}),
/// right = sum(S_2, S_4, ..., T_{K_1 + K_3 + ...}). When the inputs are
/// ordered members-first, left ranks at least right exactly when an odd
/// number of inputs have matchings.
WagnerResult wagner_g(std::span<const TdmInput> inputs);

/// DodgsonRanking instance: does c tie-or-defeat d?
struct RankingInstance {
  Election election;
  CandidateIndex c;
  CandidateIndex d;
};

struct MergeResult {
  RankingInstance ranking;
  ConstructionInfo info;
};

/// Joins two odd-voter triples with distinct designated candidates into
/// one even-voter election in which c scores Score(first) + 1, d scores
/// Score(second) + 1, and every other candidate scores more than c.
/// Separators S and T each of size 2(|C||V| + |D||W|). The first input's
/// names are kept; the second's are renamed on collision. If the first has
/// fewer voters the roles are exchanged internally (info.swapped).
MergeResult merge(const DodgsonTriple& first, const DodgsonTriple& second);

struct MergePrimeResult {
  DodgsonTriple triple;
  ConstructionInfo info;
};

/// merge(), designating c only.
MergePrimeResult merge_prime(const DodgsonTriple& first, const DodgsonTriple& second);

/// The fixed non-instance that totalizing reductions emit.
struct Sentinel {
  friend bool operator==(Sentinel, Sentinel) { return true; }
};

/// Any input to the 2ER reductions: a pair of triples that may violate the
/// 2ER constraints, or std::nullopt for input that did not even parse.
using TwoERInput = std::optional<std::pair<DodgsonTriple, DodgsonTriple>>;

using RankingOutcome = std::variant<Sentinel, RankingInstance>;
using WinnerOutcome = std::variant<Sentinel, DodgsonTriple>;

RankingOutcome reduce_2er_to_ranking(const TwoERInput& input);
WinnerOutcome reduce_2er_to_winner(const TwoERInput& input);

/// Membership in DodgsonRanking / DodgsonWinner. The sentinel is in neither.
bool in_dodgson_ranking(const RankingOutcome& outcome, const ScoringOptions& options = {});
bool in_dodgson_winner(const WinnerOutcome& outcome, const ScoringOptions& options = {});

}  // namespace dodgson
