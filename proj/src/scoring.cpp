#include "dodgson/scoring.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "dodgson/error.hpp"

namespace dodgson {

namespace {

using Residual = std::uint32_t;

// Raising the designated candidate to `raise` in one voter passes a
// positive-deficit candidate, tracked as coordinate `coord`.
struct Hit {
  std::size_t raise;
  std::size_t coord;
};

// Integer covering problem derived from a triple: choose one raise per
// voter so that each coordinate is passed in at least `initial[coord]`
// voters, minimizing the total raise.
struct CoverProblem {
  std::size_t voters = 0;
  std::size_t width = 0;
  std::vector<Residual> initial;
  std::vector<std::vector<Hit>> hits;
  // prefix[v * width + x]: voters u < v with a hit on x.
  std::vector<std::size_t> prefix;

  std::size_t helpers_before(std::size_t v, std::size_t x) const { return prefix[v * width + x]; }
  std::size_t helpers_from(std::size_t v, std::size_t x) const {
    return prefix[voters * width + x] - prefix[v * width + x];
  }
};

// Only hits at raise <= limit are kept; no optimal allocation of cost
// <= limit raises further than that.
CoverProblem make_problem(const DodgsonTriple& triple, const std::vector<std::size_t>& deficits,
                          std::size_t limit) {
  const auto& e = triple.election;
  CoverProblem p;
  p.voters = e.voter_count();
  std::vector<std::size_t> coord_of(e.candidate_count(), SIZE_MAX);
  for (CandidateIndex d = 0; d < e.candidate_count(); ++d) {
    if (deficits[d] > 0) {
      coord_of[d] = p.width++;
      p.initial.push_back(static_cast<Residual>(deficits[d]));
    }
  }
  p.hits.reserve(p.voters);
  for (const auto& g : e.profile().groups()) {
    std::vector<Hit> hits;
    const auto pos = g.order.position_of(triple.designated);
    const auto above = g.order.size() - 1 - pos;
    for (std::size_t t = 1; t <= std::min(above, limit); ++t) {
      auto coord = coord_of[g.order[pos + t]];
      if (coord != SIZE_MAX) hits.push_back({t, coord});
    }
    p.hits.insert(p.hits.end(), g.multiplicity, hits);
  }
  p.prefix.assign((p.voters + 1) * p.width, 0);
  for (std::size_t v = 0; v < p.voters; ++v) {
    std::copy_n(p.prefix.begin() + v * p.width, p.width, p.prefix.begin() + (v + 1) * p.width);
    for (const auto& h : p.hits[v]) ++p.prefix[(v + 1) * p.width + h.coord];
  }
  return p;
}

std::size_t sum_of(std::span<const Residual> r) { return std::accumulate(r.begin(), r.end(), std::size_t{0}); }

// Best gain-per-switch first. Always succeeds on an unlimited problem
// because raising to the top of every voter covers every deficit.
std::vector<std::size_t> greedy_cover(const CoverProblem& p) {
  std::vector<Residual> r = p.initial;
  std::size_t remaining = sum_of(r);
  std::vector<std::size_t> raise(p.voters, 0), consumed(p.voters, 0);
  while (remaining > 0) {
    std::size_t best_gain = 0, best_cost = 1, best_v = 0, best_i = 0;
    for (std::size_t v = 0; v < p.voters; ++v) {
      std::size_t gain = 0;
      for (std::size_t i = consumed[v]; i < p.hits[v].size(); ++i) {
        if (r[p.hits[v][i].coord] > 0) ++gain;
        std::size_t cost = p.hits[v][i].raise - raise[v];
        if (gain > 0 && gain * best_cost > best_gain * cost) {
          best_gain = gain;
          best_cost = cost;
          best_v = v;
          best_i = i;
        }
      }
    }
    if (best_gain == 0) throw std::logic_error("greedy_cover: infeasible covering problem");
    for (std::size_t i = consumed[best_v]; i <= best_i; ++i) {
      auto& slot = r[p.hits[best_v][i].coord];
      if (slot > 0) {
        --slot;
        --remaining;
      }
    }
    raise[best_v] = p.hits[best_v][best_i].raise;
    consumed[best_v] = best_i + 1;
  }
  return raise;
}

// Residual-deficit states of fixed width with their minimum cost. States
// live contiguously; the hash set indexes into that storage. Not movable
// because the hasher refers back to the table.
class StateTable {
 public:
  explicit StateTable(std::size_t width) : width_(width), index_(16, Hash{this}, Equal{this}) {}
  StateTable(const StateTable&) = delete;
  StateTable& operator=(const StateTable&) = delete;

  void relax(std::span<const Residual> state, std::size_t cost) {
    const auto slot = static_cast<std::uint32_t>(costs_.size());
    data_.insert(data_.end(), state.begin(), state.end());
    auto [it, inserted] = index_.insert(slot);
    if (inserted) {
      costs_.push_back(cost);
      return;
    }
    data_.resize(data_.size() - width_);
    costs_[*it] = std::min(costs_[*it], cost);
  }

  std::size_t size() const { return costs_.size(); }
  std::span<const Residual> state(std::size_t i) const { return {data_.data() + i * width_, width_}; }
  std::size_t cost(std::size_t i) const { return costs_[i]; }
  void release_index() { index_ = decltype(index_)(0, Hash{this}, Equal{this}); }

 private:
  struct Hash {
    const StateTable* table;
    std::size_t operator()(std::uint32_t i) const {
      std::size_t h = 1469598103934665603ull;
      for (auto x : table->slot(i)) h = (h ^ x) * 1099511628211ull;
      return h;
    }
  };
  struct Equal {
    const StateTable* table;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      auto sa = table->slot(a), sb = table->slot(b);
      return std::equal(sa.begin(), sa.end(), sb.begin());
    }
  };
  std::span<const Residual> slot(std::uint32_t i) const { return {data_.data() + std::size_t{i} * width_, width_}; }

  std::size_t width_;
  std::vector<Residual> data_;
  std::vector<std::size_t> costs_;
  std::unordered_set<std::uint32_t, Hash, Equal> index_;
};

// Voters are folded in reverse flat order: layers[v] maps the residual left
// after voters v..n-1 to the cheapest way those voters reach it. A forward
// pass then fixes raises voter by voter, taking the smallest raise that
// still admits an optimal completion, which yields the lexicographically
// smallest optimal allocation.
std::optional<std::vector<std::size_t>> solve_dp(const CoverProblem& p, std::size_t upper_bound,
                                                 std::size_t state_cap) {
  const auto n = p.voters, k = p.width;
  std::vector<std::unique_ptr<StateTable>> layers(n + 1);
  layers[n] = std::make_unique<StateTable>(k);
  layers[n]->relax(p.initial, 0);
  std::size_t stored = 1;
  std::vector<Residual> next(k);

  for (std::size_t v = n; v-- > 0;) {
    auto table = std::make_unique<StateTable>(k);
    const auto& from = *layers[v + 1];
    for (std::size_t s = 0; s < from.size(); ++s) {
      auto st = from.state(s);
      const auto base = from.cost(s);
      std::copy(st.begin(), st.end(), next.begin());
      auto sum = sum_of(next);
      auto try_insert = [&](std::size_t raise) {
        const auto cost = base + raise;
        if (cost + sum > upper_bound) return;
        for (std::size_t x = 0; x < k; ++x)
          if (next[x] > p.helpers_before(v, x)) return;
        table->relax(next, cost);
      };
      try_insert(0);
      for (const auto& h : p.hits[v]) {
        if (base + h.raise > upper_bound) break;
        if (next[h.coord] > 0) {
          --next[h.coord];
          --sum;
        }
        try_insert(h.raise);
      }
    }
    layers[v + 1]->release_index();
    stored += table->size();
    if (stored > state_cap) return std::nullopt;
    layers[v] = std::move(table);
  }

  const auto& first = *layers[0];
  std::size_t optimum = SIZE_MAX;
  for (std::size_t s = 0; s < first.size(); ++s)
    if (sum_of(first.state(s)) == 0) optimum = std::min(optimum, first.cost(s));
  if (optimum == SIZE_MAX) throw std::logic_error("solve_dp: no covering allocation within the upper bound");

  std::vector<std::size_t> raises(n, 0);
  std::vector<std::size_t> covered(k, 0), trial(k);
  std::size_t spent = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& later = *layers[v + 1];
    auto completes = [&](std::size_t raise) {
      for (std::size_t s = 0; s < later.size(); ++s) {
        if (spent + raise + later.cost(s) != optimum) continue;
        auto st = later.state(s);
        bool ok = true;
        for (std::size_t x = 0; x < k && ok; ++x) ok = st[x] <= trial[x];
        if (ok) return true;
      }
      return false;
    };
    std::copy(covered.begin(), covered.end(), trial.begin());
    std::size_t chosen = SIZE_MAX;
    if (completes(0)) chosen = 0;
    for (std::size_t i = 0; chosen == SIZE_MAX && i < p.hits[v].size(); ++i) {
      ++trial[p.hits[v][i].coord];
      if (completes(p.hits[v][i].raise)) chosen = p.hits[v][i].raise;
    }
    if (chosen == SIZE_MAX) throw std::logic_error("solve_dp: reconstruction failed");
    raises[v] = chosen;
    spent += chosen;
    covered = trial;
  }
  return raises;
}

// Depth-first over voters in flat order, raises ascending, so the first
// allocation found at a given cost is the lexicographically smallest one.
// Finds allocations strictly cheaper than `bound`.
class BranchAndBound {
 public:
  BranchAndBound(const CoverProblem& p, std::size_t bound, bool stop_at_first)
      : p_(p), best_(bound), stop_(stop_at_first), residual_(p.initial), current_(p.voters, 0) {}

  std::optional<std::vector<std::size_t>> run() {
    dfs(0, 0, sum_of(residual_));
    if (!found_) return std::nullopt;
    return best_alloc_;
  }

 private:
  void dfs(std::size_t v, std::size_t cost, std::size_t sum) {
    if (sum == 0) {
      if (cost < best_) {
        best_ = cost;
        best_alloc_ = current_;
        found_ = true;
      }
      return;
    }
    if (v == p_.voters || cost + sum >= best_) return;
    for (std::size_t x = 0; x < p_.width; ++x)
      if (residual_[x] > p_.helpers_from(v, x)) return;

    dfs(v + 1, cost, sum);
    std::vector<std::size_t> touched;
    for (const auto& h : p_.hits[v]) {
      if (stop_ && found_) break;
      if (residual_[h.coord] > 0) {
        --residual_[h.coord];
        --sum;
        touched.push_back(h.coord);
      }
      // cost + raise + sum never decreases along the hit list.
      if (cost + h.raise + sum >= best_) break;
      current_[v] = h.raise;
      dfs(v + 1, cost + h.raise, sum);
    }
    current_[v] = 0;
    for (auto x : touched) ++residual_[x];
  }

  const CoverProblem& p_;
  std::size_t best_;
  bool stop_;
  bool found_ = false;
  std::vector<Residual> residual_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_alloc_;
};

std::size_t total_of(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

}  // namespace

std::size_t RaiseAllocation::cost() const { return total_of(raises); }

VoterProfile apply_raises(const DodgsonTriple& triple, const RaiseAllocation& allocation) {
  const auto& profile = triple.election.profile();
  if (allocation.raises.size() != profile.voter_count()) throw ValidationError("allocation size mismatch");
  VoterProfile out;
  std::size_t v = 0;
  for (const auto& g : profile.groups()) {
    for (std::size_t copy = 0; copy < g.multiplicity; ++copy, ++v) {
      auto order = g.order;
      auto pos = order.position_of(triple.designated);
      if (pos + allocation.raises[v] >= order.size()) throw ValidationError("raise exceeds voter's ranking");
      for (std::size_t step = 0; step < allocation.raises[v]; ++step) order = order.switched(pos + step);
      out.append(std::move(order));
    }
  }
  return out;
}

ScoreResult score_exact(const DodgsonTriple& triple, const ScoringOptions& options) {
  const auto deficits = deficit_vector(triple);
  const auto n = triple.voter_count();
  if (total_of(deficits) == 0) return {0, {std::vector<std::size_t>(n, 0)}, ScoreMethod::trivial};

  auto greedy = greedy_cover(make_problem(triple, deficits, SIZE_MAX));
  const auto upper = total_of(greedy);
  const auto problem = make_problem(triple, deficits, upper);

  if (auto raises = solve_dp(problem, upper, options.state_cap))
    return {total_of(*raises), {std::move(*raises)}, ScoreMethod::dynamic_programming};

  auto raises = BranchAndBound(problem, upper + 1, false).run();
  if (!raises) throw std::logic_error("score_exact: branch-and-bound lost the greedy bound");
  return {total_of(*raises), {std::move(*raises)}, ScoreMethod::branch_and_bound};
}

bool score_decision(const DodgsonTriple& triple, std::size_t budget) {
  const auto deficits = deficit_vector(triple);
  const auto need = total_of(deficits);
  if (need == 0) return true;
  // Each switch gains at most one vote against one candidate.
  if (need > budget) return false;
  const auto problem = make_problem(triple, deficits, budget);
  return BranchAndBound(problem, budget + 1, true).run().has_value();
}

std::vector<std::size_t> all_scores(const Election& election, const ScoringOptions& options) {
  std::vector<std::size_t> scores(election.candidate_count());
  for (CandidateIndex c = 0; c < election.candidate_count(); ++c)
    scores[c] = score_exact(DodgsonTriple(election, c), options).score;
  return scores;
}

std::vector<CandidateIndex> dodgson_winners(const std::vector<std::size_t>& scores) {
  std::vector<CandidateIndex> winners;
  if (scores.empty()) return winners;
  const auto best = *std::min_element(scores.begin(), scores.end());
  for (CandidateIndex c = 0; c < scores.size(); ++c)
    if (scores[c] == best) winners.push_back(c);
  return winners;
}

bool is_winner(const DodgsonTriple& triple, const ScoringOptions& options) {
  const auto own = score_exact(triple, options).score;
  if (own == 0) return true;
  for (CandidateIndex d = 0; d < triple.election.candidate_count(); ++d) {
    if (d == triple.designated) continue;
    if (score_decision(DodgsonTriple(triple.election, d), own - 1)) return false;
  }
  return true;
}

bool ranks_at_least(const Election& election, CandidateIndex c, CandidateIndex d, const ScoringOptions& options) {
  if (c >= election.candidate_count() || d >= election.candidate_count())
    throw ValidationError("unknown candidate");
  if (c == d) return true;
  const auto score_c = score_exact(DodgsonTriple(election, c), options).score;
  if (score_c == 0) return true;
  return !score_decision(DodgsonTriple(election, d), score_c - 1);
}

bool two_election_ranking(const DodgsonTriple& first, const DodgsonTriple& second, const ScoringOptions& options) {
  if (first.voter_count() % 2 == 0 || second.voter_count() % 2 == 0) throw ValidationError("even voter count");
  if (first.designated_name() == second.designated_name()) throw ValidationError("designated candidates equal");
  const auto left = score_exact(first, options).score;
  if (left == 0) return true;
  return !score_decision(second, left - 1);
}

}  // namespace dodgson
