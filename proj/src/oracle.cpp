// Switch distance over whole profiles, independent of the raise-based
// solver: an edge is any adjacent exchange in any voter.

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "dodgson/error.hpp"
#include "dodgson/scoring.hpp"

namespace dodgson {

namespace {

// A profile as the sorted concatenation of its voters' rankings, one byte
// per candidate. Sorting makes voter-permuted profiles coincide.
class ProfileState {
 public:
  ProfileState(std::size_t m, std::vector<std::string> voters) : m_(m), voters_(std::move(voters)) {
    std::sort(voters_.begin(), voters_.end());
  }

  std::string key() const { return std::accumulate(voters_.begin(), voters_.end(), std::string{}); }
  const std::vector<std::string>& voters() const { return voters_; }

  ProfileState switched(std::size_t voter, std::size_t position) const {
    auto copy = voters_;
    std::swap(copy[voter][position], copy[voter][position + 1]);
    return ProfileState(m_, std::move(copy));
  }

  // Sum over d != c of the votes c still lacks against d.
  std::size_t deficit_sum(char c, std::size_t need) const {
    std::vector<std::size_t> wins(m_, 0);
    for (const auto& v : voters_)
      for (std::size_t i = 0; v[i] != c; ++i) ++wins[static_cast<unsigned char>(v[i])];
    std::size_t sum = 0;
    for (std::size_t d = 0; d < m_; ++d)
      if (static_cast<char>(d) != c && wins[d] < need) sum += need - wins[d];
    return sum;
  }

 private:
  std::size_t m_;
  std::vector<std::string> voters_;
};

}  // namespace

std::optional<std::size_t> score_oracle(const DodgsonTriple& triple, std::size_t depth_cap) {
  const auto& e = triple.election;
  const auto m = e.candidate_count();
  if (m > 64) throw ValidationError("score_oracle supports at most 64 candidates");
  const auto need = majority_threshold(e.voter_count());
  const auto c = static_cast<char>(triple.designated);

  std::vector<std::string> voters;
  for (const auto& order : e.profile().expanded()) {
    std::string v;
    for (auto x : order.ranking()) v.push_back(static_cast<char>(x));
    voters.push_back(std::move(v));
  }
  const ProfileState start(m, std::move(voters));
  const auto start_gap = start.deficit_sum(c, need);
  if (start_gap == 0) return 0;

  // One switch changes one pairwise tally by one, so depth + deficit_sum
  // never drops along a path. Breadth-first search restricted to
  // depth + deficit_sum <= limit, for increasing limit.
  for (std::size_t limit = start_gap; limit <= depth_cap; ++limit) {
    std::unordered_set<std::string> seen{start.key()};
    std::vector<ProfileState> frontier{start};
    for (std::size_t depth = 1; depth <= limit && !frontier.empty(); ++depth) {
      std::vector<ProfileState> next;
      for (const auto& state : frontier) {
        const auto& vs = state.voters();
        for (std::size_t v = 0; v < vs.size(); ++v) {
          if (v > 0 && vs[v] == vs[v - 1]) continue;  // identical voters, identical successors
          for (std::size_t pos = 0; pos + 1 < m; ++pos) {
            auto succ = state.switched(v, pos);
            const auto gap = succ.deficit_sum(c, need);
            if (depth + gap > limit) continue;
            if (!seen.insert(succ.key()).second) continue;
            if (gap == 0) return depth;
            next.push_back(std::move(succ));
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return std::nullopt;
}

}  // namespace dodgson
