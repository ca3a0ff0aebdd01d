#include "dodgson/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "dodgson/error.hpp"

namespace dodgson {

namespace {

using Order = std::vector<CandidateIndex>;

// Accumulates candidates under fresh names and voters under role labels,
// recording both in a ConstructionInfo.
class Builder {
 public:
  explicit Builder(ConstructionInfo& info) : info_(info) {}

  // `base` if unused, else base_2, base_3, ...
  CandidateIndex add(const std::string& base, std::string role, std::optional<std::size_t> source = std::nullopt,
                     std::string original = {}) {
    std::string name = base;
    for (std::size_t k = 2; used_.count(name); ++k) name = base + "_" + std::to_string(k);
    used_.insert(name);
    names_.push_back(name);
    info_.candidates.push_back({name, std::move(role), source, std::move(original)});
    return static_cast<CandidateIndex>(names_.size() - 1);
  }

  void voters(const std::string& role, Order order, std::size_t multiplicity) {
    if (multiplicity == 0) return;
    auto& segs = info_.voter_segments;
    if (segs.empty() || segs.back().role != role) segs.push_back({role, profile_.voter_count(), 0});
    segs.back().count += multiplicity;
    profile_.append(PreferenceOrder(std::move(order)), multiplicity);
  }

  const std::string& name(CandidateIndex c) const { return names_[c]; }
  std::size_t size() const { return names_.size(); }

  Election build() { return Election(names_, std::move(profile_)); }

 private:
  ConstructionInfo& info_;
  std::vector<std::string> names_;
  std::unordered_set<std::string> used_;
  VoterProfile profile_;
};

void extend(Order& out, const Order& block) { out.insert(out.end(), block.begin(), block.end()); }

Order reversed(Order block) {
  std::reverse(block.begin(), block.end());
  return block;
}

// Input order with every candidate passed through `map`.
Order mapped(const PreferenceOrder& order, const std::vector<CandidateIndex>& map) {
  Order out;
  out.reserve(order.size());
  for (auto c : order.ranking()) out.push_back(map[c]);
  return out;
}

TdmInstance canonical(bool with_matching) {
  TdmInstance out;
  out.w_set = {"d", "d'"};
  out.x_set = {"e", "e'"};
  out.y_set = {"p", "p'"};
  out.triples.push_back({"d", "e", "p"});
  if (with_matching)
    out.triples.push_back({"d'", "e'", "p'"});
  else
    out.triples.push_back({"d", "e", "p'"});
  return out;
}

void require_odd(const DodgsonTriple& t) {
  if (t.voter_count() % 2 == 0) throw ValidationError("even voter count");
}

Election renamed(const Election& e, CandidateIndex who, std::string name) {
  auto names = e.candidates();
  names[who] = std::move(name);
  return Election(std::move(names), e.profile());
}

}  // namespace

TdmInstance canonical_no_instance() { return canonical(false); }
TdmInstance canonical_yes_instance() { return canonical(true); }

TdmInstance tdm_normalize(const TdmInput& input) {
  std::optional<TdmInstance> instance;
  if (const auto* raw = std::get_if<std::string>(&input)) {
    try {
      instance = parse_3dm(*raw);
    } catch (const Error&) {
    }
  } else {
    instance = std::get<TdmInstance>(input);
  }
  if (!instance || !instance->valid()) return canonical_no_instance();
  if (instance->triples.size() <= 1) return canonical(has_matching(*instance));
  return *instance;
}

ReducedInstance tdm_to_dodgson(const TdmInstance& instance) {
  if (auto why = instance.violation()) throw ValidationError("not a 3DM instance: " + *why);
  if (instance.triples.size() < 2) throw ValidationError("tdm_to_dodgson needs at least two triples");

  ConstructionInfo info;
  info.construction = "3dm";
  Builder b(info);
  std::unordered_map<std::string, CandidateIndex> element;
  for (const auto* set : {&instance.w_set, &instance.x_set, &instance.y_set})
    for (const auto& token : *set) element[token] = b.add(token, "element", 0, token);
  const auto c = b.add("c", "designated");
  const auto s = b.add("s", "fresh");
  const auto t = b.add("t", "fresh");

  Order sorted(b.size());
  std::iota(sorted.begin(), sorted.end(), CandidateIndex{0});
  std::sort(sorted.begin(), sorted.end(), [&](auto x, auto y) { return b.name(x) < b.name(y); });

  const auto m = instance.triples.size();
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& tr = instance.triples[i - 1];
    const auto w = element.at(tr.w), x = element.at(tr.x), y = element.at(tr.y);
    const auto low = i % 2 == 1 ? s : t, high = i % 2 == 1 ? t : s;
    Order order{low, c, w, x, y, high};
    for (auto z : sorted)
      if (std::find(order.begin(), order.end(), z) == order.end()) order.push_back(z);
    b.voters("triple", std::move(order), 1);
  }
  Order top;
  for (auto z : sorted)
    if (z != c) top.push_back(z);
  top.push_back(c);
  b.voters("designated-top", std::move(top), m - 1);

  return {DodgsonTriple(b.build(), c), 3 * instance.q(), std::move(info)};
}

ReducedInstance reduce_3dm(const TdmInput& input) { return tdm_to_dodgson(tdm_normalize(input)); }

SumResult dodgson_sum(std::span<const DodgsonTriple> triples) {
  if (triples.empty()) throw ValidationError("dodgson_sum needs at least one triple");
  for (const auto& t : triples) require_odd(t);

  ConstructionInfo info;
  info.construction = "sum";
  Builder b(info);
  const auto k = triples.size();
  const auto c = b.add(triples[0].designated_name(), "designated");

  // blocks[i]: C_i without the designated candidate, in input order.
  std::vector<Order> blocks(k);
  std::vector<std::vector<CandidateIndex>> maps(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& e = triples[i].election;
    maps[i].resize(e.candidate_count());
    for (CandidateIndex x = 0; x < e.candidate_count(); ++x) {
      if (x == triples[i].designated) {
        maps[i][x] = c;
        continue;
      }
      maps[i][x] = b.add(e.name(x), "block", i, e.name(x));
      blocks[i].push_back(maps[i][x]);
    }
  }

  std::size_t separator_count = 0, total_voters = 0;
  for (const auto& t : triples) {
    separator_count += t.election.candidate_count() * t.voter_count();
    total_voters += t.voter_count();
  }
  Order separators;
  for (std::size_t i = 1; i <= separator_count; ++i)
    separators.push_back(b.add("s" + std::to_string(i), "separator-s"));
  info.separators_s = separator_count;

  for (std::size_t i = 0; i < k; ++i) {
    Order prefix = separators;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) extend(prefix, blocks[j]);
    for (const auto& g : triples[i].election.profile().groups()) {
      Order order = prefix;
      extend(order, mapped(g.order, maps[i]));
      b.voters("simulating-" + std::to_string(i + 1), std::move(order), g.multiplicity);
    }
  }

  // Normalizer q puts block i right of the separators iff
  // q <= floor(|V_i|/2) + sum_{j != i} |V_j|.
  for (std::size_t q = 1; q < total_voters; ++q) {
    Order left, right;
    for (std::size_t i = 0; i < k; ++i) {
      const auto v_i = triples[i].voter_count();
      extend(q <= v_i / 2 + (total_voters - v_i) ? right : left, blocks[i]);
    }
    Order order = left;
    order.push_back(c);
    extend(order, separators);
    extend(order, right);
    b.voters("normalizing", std::move(order), 1);
  }

  return {DodgsonTriple(b.build(), c), std::move(info)};
}

DodgsonTriple unit_chain(std::size_t m) {
  if (m < 1) throw ValidationError("unit chain needs m >= 1");
  std::vector<std::string> names;
  Order order;
  for (std::size_t i = 1; i <= m + 1; ++i) {
    names.push_back(std::to_string(i));
    order.push_back(static_cast<CandidateIndex>(i - 1));
  }
  VoterProfile profile;
  profile.add(PreferenceOrder(std::move(order)));
  return DodgsonTriple(Election(std::move(names), std::move(profile)), CandidateIndex{0});
}

std::optional<std::string> TwoERInstance::violation(const DodgsonTriple& left, const DodgsonTriple& right) {
  if (left.voter_count() % 2 == 0 || right.voter_count() % 2 == 0) return "even voter count";
  if (left.designated_name() == right.designated_name()) return "designated candidates equal";
  return std::nullopt;
}

TwoERInstance TwoERInstance::make(DodgsonTriple left, DodgsonTriple right) {
  if (auto why = violation(left, right)) throw ValidationError(*why);
  return {std::move(left), std::move(right)};
}

WagnerResult wagner_g(std::span<const TdmInput> inputs) {
  if (inputs.size() < 2 || inputs.size() % 2 != 0)
    throw ValidationError("wagner_g needs an even number (>= 2) of inputs");

  std::vector<DodgsonTriple> odd, even;  // 1-based positions
  std::vector<std::size_t> thresholds;
  std::size_t odd_sum = 0, even_sum = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto reduced = reduce_3dm(inputs[i]);
    thresholds.push_back(reduced.threshold);
    if (i % 2 == 0) {
      odd_sum += reduced.threshold;
      odd.push_back(std::move(reduced.triple));
    } else {
      even_sum += reduced.threshold;
      even.push_back(std::move(reduced.triple));
    }
  }
  odd.push_back(unit_chain(1 + even_sum));
  even.push_back(unit_chain(odd_sum));

  auto left = dodgson_sum(odd);
  auto right = dodgson_sum(even);
  DodgsonTriple right_triple = std::move(right.triple);
  if (right_triple.designated_name() == left.triple.designated_name()) {
    const auto& names = right_triple.election.candidates();
    std::string fresh = "d";
    for (std::size_t k = 2; std::find(names.begin(), names.end(), fresh) != names.end(); ++k)
      fresh = "d_" + std::to_string(k);
    for (auto& origin : right.info.candidates)
      if (origin.name == right_triple.designated_name()) origin.name = fresh;
    right_triple = DodgsonTriple(renamed(right_triple.election, right_triple.designated, fresh), right_triple.designated);
  }
  return {TwoERInstance::make(std::move(left.triple), std::move(right_triple)), std::move(thresholds),
          std::move(left.info), std::move(right.info)};
}

MergeResult merge(const DodgsonTriple& first, const DodgsonTriple& second) {
  if (auto why = TwoERInstance::violation(first, second)) throw ValidationError(*why);

  ConstructionInfo info;
  info.construction = "merge";
  Builder b(info);
  std::vector<CandidateIndex> map1(first.election.candidate_count()), map2(second.election.candidate_count());
  Order others1, others2;
  for (CandidateIndex x = 0; x < first.election.candidate_count(); ++x) {
    const bool designated = x == first.designated;
    map1[x] = b.add(first.election.name(x), designated ? "designated" : "block", 0, first.election.name(x));
    if (!designated) others1.push_back(map1[x]);
  }
  for (CandidateIndex x = 0; x < second.election.candidate_count(); ++x) {
    const bool designated = x == second.designated;
    map2[x] = b.add(second.election.name(x), designated ? "designated" : "block", 1, second.election.name(x));
    if (!designated) others2.push_back(map2[x]);
  }

  // The construction needs the first triple to have at least as many voters.
  info.swapped = first.voter_count() < second.voter_count();
  const auto& big = info.swapped ? second : first;
  const auto& small = info.swapped ? first : second;
  const auto& big_map = info.swapped ? map2 : map1;
  const auto& small_map = info.swapped ? map1 : map2;
  const Order& c_block = info.swapped ? others2 : others1;
  const Order& d_block = info.swapped ? others1 : others2;
  const auto c = big_map[big.designated], d = small_map[small.designated];
  const auto v = big.voter_count(), w = small.voter_count();

  const auto sep = 2 * (big.election.candidate_count() * v + small.election.candidate_count() * w);
  Order s_block, t_block;
  for (std::size_t i = 1; i <= sep; ++i) s_block.push_back(b.add("s" + std::to_string(i), "separator-s"));
  for (std::size_t i = 1; i <= sep; ++i) t_block.push_back(b.add("t" + std::to_string(i), "separator-t"));
  info.separators_s = info.separators_t = sep;
  const std::string big_role = info.swapped ? "simulating-second" : "simulating-first";
  const std::string small_role = info.swapped ? "simulating-first" : "simulating-second";

  // (a) d < S < D' < T < simulated voter of the larger triple
  for (const auto& g : big.election.profile().groups()) {
    Order order{d};
    extend(order, s_block);
    extend(order, d_block);
    extend(order, t_block);
    extend(order, mapped(g.order, big_map));
    b.voters(big_role, std::move(order), g.multiplicity);
  }
  // (b) T < c < S < C' < simulated voter of the smaller triple
  for (const auto& g : small.election.profile().groups()) {
    Order order = t_block;
    order.push_back(c);
    extend(order, s_block);
    extend(order, c_block);
    extend(order, mapped(g.order, small_map));
    b.voters(small_role, std::move(order), g.multiplicity);
  }
  const auto half_v = (v + 1) / 2, half_w = (w + 1) / 2;
  {  // (c) T < c < S < C' < D' < d
    Order order = t_block;
    order.push_back(c);
    extend(order, s_block);
    extend(order, c_block);
    extend(order, d_block);
    order.push_back(d);
    b.voters("normalizing-c", std::move(order), half_v - half_w);
  }
  {  // (d) T < C' < D' < reversed S < c < d
    Order order = t_block;
    extend(order, c_block);
    extend(order, d_block);
    extend(order, reversed(s_block));
    order.push_back(c);
    order.push_back(d);
    b.voters("normalizing-d", std::move(order), half_v);
  }
  {  // (e) T < C' < D' < S < d < c
    Order order = t_block;
    extend(order, c_block);
    extend(order, d_block);
    extend(order, s_block);
    order.push_back(d);
    order.push_back(c);
    b.voters("normalizing-e", std::move(order), half_w);
  }

  return {{b.build(), map1[first.designated], map2[second.designated]}, std::move(info)};
}

MergePrimeResult merge_prime(const DodgsonTriple& first, const DodgsonTriple& second) {
  auto merged = merge(first, second);
  merged.info.construction = "merge-prime";
  return {DodgsonTriple(std::move(merged.ranking.election), merged.ranking.c), std::move(merged.info)};
}

RankingOutcome reduce_2er_to_ranking(const TwoERInput& input) {
  if (!input || TwoERInstance::violation(input->first, input->second)) return Sentinel{};
  return merge(input->first, input->second).ranking;
}

WinnerOutcome reduce_2er_to_winner(const TwoERInput& input) {
  if (!input || TwoERInstance::violation(input->first, input->second)) return Sentinel{};
  return merge_prime(input->first, input->second).triple;
}

bool in_dodgson_ranking(const RankingOutcome& outcome, const ScoringOptions& options) {
  const auto* instance = std::get_if<RankingInstance>(&outcome);
  return instance && ranks_at_least(instance->election, instance->c, instance->d, options);
}

bool in_dodgson_winner(const WinnerOutcome& outcome, const ScoringOptions& options) {
  const auto* triple = std::get_if<DodgsonTriple>(&outcome);
  return triple && is_winner(*triple, options);
}

}  // namespace dodgson
