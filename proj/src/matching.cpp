#include "dodgson/matching.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dodgson/election.hpp"
#include "dodgson/error.hpp"
#include "text.hpp"

namespace dodgson {

std::optional<std::string> TdmInstance::violation() const {
  if (w_set.empty() || x_set.empty() || y_set.empty()) return "W, X and Y must be nonempty";
  if (w_set.size() != x_set.size() || w_set.size() != y_set.size()) return "W, X and Y must have equal size";
  std::set<std::string_view> all;
  for (const auto* set : {&w_set, &x_set, &y_set})
    for (const auto& token : *set) {
      if (!is_valid_candidate_name(token)) return "invalid token '" + token + "'";
      if (!all.insert(token).second) return "W, X and Y must be disjoint and duplicate-free";
    }
  auto contains = [](const std::vector<std::string>& set, const std::string& token) {
    return std::find(set.begin(), set.end(), token) != set.end();
  };
  std::set<TdmTriple> seen;
  for (const auto& t : triples) {
    if (!contains(w_set, t.w) || !contains(x_set, t.x) || !contains(y_set, t.y))
      return "triple (" + t.w + "," + t.x + "," + t.y + ") not in W x X x Y";
    if (!seen.insert(t).second) return "repeated triple";
  }
  return std::nullopt;
}

namespace {

struct Matcher {
  const TdmInstance& instance;
  std::vector<std::vector<const TdmTriple*>> by_w;
  std::set<std::string_view> used_x, used_y;

  bool search(std::size_t i) {
    if (i == by_w.size()) return true;
    for (const auto* t : by_w[i]) {
      if (used_x.count(t->x) || used_y.count(t->y)) continue;
      used_x.insert(t->x);
      used_y.insert(t->y);
      if (search(i + 1)) return true;
      used_x.erase(t->x);
      used_y.erase(t->y);
    }
    return false;
  }
};

}  // namespace

bool has_matching(const TdmInstance& instance) {
  Matcher m{instance, std::vector<std::vector<const TdmTriple*>>(instance.w_set.size()), {}, {}};
  std::unordered_map<std::string_view, std::size_t> w_index;
  for (std::size_t i = 0; i < instance.w_set.size(); ++i) w_index[instance.w_set[i]] = i;
  for (const auto& t : instance.triples) {
    auto it = w_index.find(t.w);
    if (it != w_index.end()) m.by_w[it->second].push_back(&t);
  }
  // Every w must be covered, so an uncovered one settles it early.
  for (const auto& options : m.by_w)
    if (options.empty()) return false;
  return m.search(0);
}

TdmInstance parse_3dm(std::string_view doc) {
  TdmInstance out;
  bool have[3] = {false, false, false};
  text::for_each_content_line(doc, [&](std::size_t line_no, std::string_view line) {
    if (line.size() >= 2 && line[1] == ':' && (line[0] == 'W' || line[0] == 'X' || line[0] == 'Y')) {
      const auto slot = static_cast<std::size_t>(line[0] == 'W' ? 0 : line[0] == 'X' ? 1 : 2);
      if (have[slot]) throw ParseError(line_no, std::string("duplicate ") + line[0] + " line");
      if (!out.triples.empty()) throw ParseError(line_no, "set lines must precede triples");
      auto& set = slot == 0 ? out.w_set : slot == 1 ? out.x_set : out.y_set;
      for (auto tok : text::split_whitespace(line.substr(2))) set.emplace_back(tok);
      have[slot] = true;
      return;
    }
    if (!(have[0] && have[1] && have[2])) throw ParseError(line_no, "expected W:, X: and Y: lines first");
    auto tokens = text::split_whitespace(line);
    if (tokens.size() != 3) throw ParseError(line_no, "triple must have exactly three tokens");
    out.triples.push_back({std::string(tokens[0]), std::string(tokens[1]), std::string(tokens[2])});
  });
  if (!(have[0] && have[1] && have[2])) throw ParseError(0, "missing W:, X: or Y: line");
  return out;
}

std::string serialize_3dm(const TdmInstance& instance) {
  std::ostringstream out;
  auto line = [&](char tag, const std::vector<std::string>& set) {
    out << tag << ':';
    for (const auto& token : set) out << ' ' << token;
    out << '\n';
  };
  line('W', instance.w_set);
  line('X', instance.x_set);
  line('Y', instance.y_set);
  for (const auto& t : instance.triples) out << t.w << ' ' << t.x << ' ' << t.y << '\n';
  return out.str();
}

InstanceEnumerator::InstanceEnumerator(std::size_t q, std::size_t min_triples, std::size_t max_triples)
    : q_(q), min_(min_triples), max_(max_triples) {
  if (q == 0) throw ValidationError("q must be positive");
  for (std::size_t a = 1; a <= q; ++a)
    for (std::size_t b = 1; b <= q; ++b)
      for (std::size_t c = 1; c <= q; ++c)
        universe_.push_back({"w" + std::to_string(a), "x" + std::to_string(b), "y" + std::to_string(c)});
  max_ = std::min(max_, universe_.size());
  reset();
}

void InstanceEnumerator::reset() {
  size_ = min_;
  combo_.clear();
  started_ = false;
  exhausted_ = size_ > max_;
}

// Next k-combination in lexicographic order, moving to k+1 when exhausted.
bool InstanceEnumerator::advance() {
  const auto n = universe_.size();
  if (!started_) {
    started_ = true;
    combo_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) combo_[i] = i;
    return true;
  }
  for (std::size_t i = size_; i-- > 0;) {
    if (combo_[i] < n - size_ + i) {
      ++combo_[i];
      for (std::size_t j = i + 1; j < size_; ++j) combo_[j] = combo_[j - 1] + 1;
      return true;
    }
  }
  if (++size_ > max_) return false;
  started_ = false;
  return advance();
}

std::optional<TdmInstance> InstanceEnumerator::next() {
  if (exhausted_ || !advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  TdmInstance inst;
  for (std::size_t i = 1; i <= q_; ++i) {
    inst.w_set.push_back("w" + std::to_string(i));
    inst.x_set.push_back("x" + std::to_string(i));
    inst.y_set.push_back("y" + std::to_string(i));
  }
  for (auto idx : combo_) inst.triples.push_back(universe_[idx]);
  return inst;
}

}  // namespace dodgson
