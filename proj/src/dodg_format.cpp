// .dodg reader/writer.
//
//   candidates: a b c
//   2: a<b<c        # two voters preferring c most
//   1: c<b<a

#include <charconv>
#include <sstream>
#include <unordered_map>

#include "dodgson/election.hpp"
#include "dodgson/error.hpp"
#include "text.hpp"

namespace dodgson {

Election parse_election(std::string_view doc) {
  std::vector<std::string> candidates;
  std::unordered_map<std::string, CandidateIndex> index;
  VoterProfile profile;
  bool have_header = false;
  std::size_t last_line = 0;

  text::for_each_content_line(doc, [&](std::size_t line_no, std::string_view line) {
    last_line = line_no;
    if (!have_header) {
      constexpr std::string_view kHeader = "candidates:";
      if (line.substr(0, kHeader.size()) != kHeader) throw ParseError(line_no, "malformed header");
      for (auto tok : text::split_whitespace(line.substr(kHeader.size()))) {
        std::string name(tok);
        if (!is_valid_candidate_name(name)) throw ParseError(line_no, "invalid candidate name '" + name + "'");
        if (!index.emplace(name, static_cast<CandidateIndex>(candidates.size())).second)
          throw ParseError(line_no, "duplicate candidate '" + name + "'");
        candidates.push_back(std::move(name));
      }
      if (candidates.empty()) throw ParseError(line_no, "malformed header: no candidates");
      have_header = true;
      return;
    }

    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected '<multiplicity>: <order>'");
    auto count_text = text::trim(line.substr(0, colon));
    if (!count_text.empty() && count_text.front() == '-')
      throw ParseError(line_no, "multiplicity must be positive");
    std::size_t multiplicity = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), multiplicity);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count_text.empty())
      throw ParseError(line_no, "malformed multiplicity '" + std::string(count_text) + "'");
    if (multiplicity == 0) throw ParseError(line_no, "multiplicity must be positive");

    std::vector<CandidateIndex> ranking;
    auto rest = line.substr(colon + 1);
    while (true) {
      auto lt = rest.find('<');
      auto name = text::trim(rest.substr(0, lt));
      auto it = index.find(std::string(name));
      if (it == index.end()) throw ParseError(line_no, "unknown candidate '" + std::string(name) + "'");
      ranking.push_back(it->second);
      if (lt == std::string_view::npos) break;
      rest = rest.substr(lt + 1);
    }
    PreferenceOrder order(std::move(ranking));
    if (!order.is_permutation_of(candidates.size())) throw ParseError(line_no, "order not a permutation");
    profile.add(std::move(order), multiplicity);
  });

  if (!have_header) throw ParseError(1, "malformed header: empty input");
  if (profile.voter_count() == 0) throw ParseError(last_line, "election has no voters");
  return Election(std::move(candidates), std::move(profile));
}

std::string serialize_election(const Election& election) {
  std::ostringstream out;
  out << "candidates:";
  for (const auto& name : election.candidates()) out << ' ' << name;
  out << '\n';
  for (const auto& g : election.profile().groups())
    out << g.multiplicity << ": " << format_order(election, g.order) << '\n';
  return out.str();
}

}  // namespace dodgson
