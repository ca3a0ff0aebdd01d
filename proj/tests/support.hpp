#pragma once

// Fixtures and brute-force references shared by the test binaries. Nothing
// here calls the solvers under test.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dodgson/election.hpp"
#include "dodgson/matching.hpp"

namespace testing {

using dodgson::CandidateIndex;
using dodgson::DodgsonTriple;
using dodgson::Election;
using dodgson::PreferenceOrder;
using dodgson::VoterProfile;

inline Election make_election(std::vector<std::string> names,
                              std::vector<std::pair<std::vector<CandidateIndex>, std::size_t>> groups) {
  VoterProfile profile;
  for (auto& [order, mult] : groups) profile.add(PreferenceOrder(std::move(order)), mult);
  return Election(std::move(names), std::move(profile));
}

// One voter each of a<b<c, b<c<a, c<a<b.
inline Election cycle() { return make_election({"a", "b", "c"}, {{{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}}); }

// Three voters a<b<c.
inline Election unanimous() { return make_election({"a", "b", "c"}, {{{0, 1, 2}, 3}}); }

// Chain of m+1 candidates <prefix>1 .. <prefix>(m+1), one voter ranking them
// ascending, designated <prefix>1.
inline DodgsonTriple chain(std::size_t m, const std::string& prefix = "") {
  std::vector<std::string> names;
  std::vector<CandidateIndex> order;
  for (std::size_t i = 0; i <= m; ++i) {
    names.push_back(prefix + std::to_string(i + 1));
    order.push_back(static_cast<CandidateIndex>(i));
  }
  return DodgsonTriple(make_election(std::move(names), {{std::move(order), 1}}), CandidateIndex{0});
}

// Literal score: breadth-first search over voter lists, no pruning and no
// symmetry reduction. Only for tiny elections.
inline std::optional<std::size_t> brute_score(const Election& e, CandidateIndex c, std::size_t cap) {
  using Profile = std::vector<std::vector<CandidateIndex>>;
  const auto m = e.candidate_count();
  auto wins = [&](const Profile& p) {
    for (CandidateIndex d = 0; d < m; ++d) {
      if (d == c) continue;
      std::size_t votes = 0;
      for (const auto& v : p)
        if (std::find(v.begin(), v.end(), c) > std::find(v.begin(), v.end(), d)) ++votes;
      if (2 * votes <= p.size()) return false;
    }
    return true;
  };
  Profile start;
  for (const auto& order : e.profile().expanded())
    start.emplace_back(order.ranking().begin(), order.ranking().end());
  if (wins(start)) return 0;
  std::set<Profile> seen{start};
  std::vector<Profile> frontier{start};
  for (std::size_t depth = 1; depth <= cap; ++depth) {
    std::vector<Profile> next;
    for (const auto& p : frontier)
      for (std::size_t v = 0; v < p.size(); ++v)
        for (std::size_t i = 0; i + 1 < m; ++i) {
          auto q = p;
          std::swap(q[v][i], q[v][i + 1]);
          if (!seen.insert(q).second) continue;
          if (wins(q)) return depth;
          next.push_back(std::move(q));
        }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// Matching by trying every q-subset of the triples.
inline bool brute_matching(const dodgson::TdmInstance& x) {
  const auto q = x.q(), n = x.triples.size();
  if (n < q) return false;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(q), true);
  do {
    std::set<std::string> w, xs, y;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) {
        w.insert(x.triples[i].w);
        xs.insert(x.triples[i].x);
        y.insert(x.triples[i].y);
      }
    if (w.size() == q && xs.size() == q && y.size() == q) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

}  // namespace testing
