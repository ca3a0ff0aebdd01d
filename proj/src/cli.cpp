#include "dodgson/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dodgson/error.hpp"
#include "dodgson/gadgets.hpp"
#include "dodgson/matching.hpp"
#include "dodgson/scoring.hpp"
#include "dodgson/verify.hpp"

namespace dodgson {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kFalse = 1, kBadInput = 2, kVerifyFailed = 3 };

struct Globals {
  bool json = false;
  RunConfig run;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

Election load_election(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_election(text);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

// "path:candidate", split at the last colon.
DodgsonTriple load_triple(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos || colon + 1 == spec.size())
    throw ValidationError("expected FILE:CANDIDATE, got '" + spec + "'");
  return DodgsonTriple(load_election(spec.substr(0, colon)), spec.substr(colon + 1));
}

const char* method_name(ScoreMethod m) {
  switch (m) {
    case ScoreMethod::trivial: return "trivial";
    case ScoreMethod::dynamic_programming: return "dynamic-programming";
    case ScoreMethod::branch_and_bound: return "branch-and-bound";
  }
  return "unknown";
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json info_json(const ConstructionInfo& info) {
  Json j;
  j["construction"] = info.construction;
  j["separators"] = {{"s", info.separators_s}, {"t", info.separators_t}};
  j["swapped"] = info.swapped;
  Json segments = Json::array();
  for (const auto& s : info.voter_segments)
    segments.push_back({{"role", s.role}, {"first", s.first}, {"count", s.count}});
  j["voter_segments"] = std::move(segments);
  Json candidates = Json::array();
  for (const auto& c : info.candidates) {
    Json entry{{"name", c.name}, {"role", c.role}};
    entry["source"] = c.source ? Json(*c.source) : Json(nullptr);
    entry["original"] = c.original;
    candidates.push_back(std::move(entry));
  }
  j["candidates"] = std::move(candidates);
  return j;
}

std::string summary(const Election& e) {
  return std::to_string(e.candidate_count()) + " candidates, " + std::to_string(e.voter_count()) + " voters";
}

// Output stem: "-o out" or "-o out.dodg" both yield out.dodg + out.json.
fs::path stem_of(const std::string& out) {
  fs::path p(out);
  if (p.extension() == ".dodg" || p.extension() == ".json") p.replace_extension();
  return p;
}

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  auto p = stem;
  p += suffix;
  return p;
}

Json election_entry(const fs::path& file, const Election& e) {
  return {{"file", file.filename().string()}, {"candidate_count", e.candidate_count()}, {"voter_count", e.voter_count()}};
}

// --- commands ---------------------------------------------------------------

int cmd_score(const Globals& g, const std::string& file, const std::string& candidate, bool witness,
              std::optional<std::size_t> at_most, std::ostream& out) {
  const DodgsonTriple t(load_election(file), candidate);
  if (at_most) {
    const bool result = score_decision(t, *at_most);
    if (g.json)
      emit(out, Json{{"candidate", candidate}, {"budget", *at_most}, {"result", result}});
    else
      out << (result ? "true" : "false") << '\n';
    return result ? kOk : kFalse;
  }
  const auto r = score_exact(t, {g.run.state_cap});
  if (g.json) {
    Json j{{"candidate", candidate}, {"score", r.score}, {"method", method_name(r.method)}};
    if (witness) {
      Json w = Json::array();
      for (std::size_t v = 0; v < r.witness.raises.size(); ++v)
        if (r.witness.raises[v] > 0) w.push_back({{"voter", v + 1}, {"raise", r.witness.raises[v]}});
      j["witness"] = std::move(w);
    }
    emit(out, j);
    return kOk;
  }
  out << "score: " << r.score << '\n';
  if (witness) {
    out << "witness:\n";
    for (std::size_t v = 0; v < r.witness.raises.size(); ++v)
      if (r.witness.raises[v] > 0) out << "  voter " << v + 1 << ": raise " << candidate << " by " << r.witness.raises[v] << '\n';
  }
  return kOk;
}

int cmd_winner(const Globals& g, const std::string& file, const std::optional<std::string>& candidate,
               std::ostream& out) {
  const auto e = load_election(file);
  const ScoringOptions opts{g.run.state_cap};
  if (candidate) {
    const bool result = is_winner(DodgsonTriple(e, *candidate), opts);
    if (g.json)
      emit(out, Json{{"candidate", *candidate}, {"winner", result}});
    else
      out << (result ? "true" : "false") << '\n';
    return result ? kOk : kFalse;
  }
  const auto scores = all_scores(e, opts);
  const auto winners = dodgson_winners(scores);
  if (g.json) {
    Json s = Json::object();
    for (CandidateIndex c = 0; c < e.candidate_count(); ++c) s[e.name(c)] = scores[c];
    Json w = Json::array();
    for (auto c : winners) w.push_back(e.name(c));
    emit(out, Json{{"scores", std::move(s)}, {"winners", std::move(w)}});
    return kOk;
  }
  for (CandidateIndex c = 0; c < e.candidate_count(); ++c) out << e.name(c) << ": " << scores[c] << '\n';
  out << "winners:";
  for (auto c : winners) out << ' ' << e.name(c);
  out << '\n';
  return kOk;
}

int print_decision(const Globals& g, const char* key, bool result, std::ostream& out) {
  if (g.json)
    emit(out, Json{{key, result}});
  else
    out << (result ? "true" : "false") << '\n';
  return result ? kOk : kFalse;
}

int cmd_oracle(const Globals& g, const std::string& file, const std::string& candidate, std::ostream& out) {
  const DodgsonTriple t(load_election(file), candidate);
  const auto s = score_oracle(t, g.run.oracle_cap);
  if (g.json) {
    emit(out, Json{{"candidate", candidate}, {"depth_cap", g.run.oracle_cap}, {"score", s ? Json(*s) : Json(nullptr)}});
  } else if (s) {
    out << "score: " << *s << '\n';
  } else {
    out << "unknown: exceeds depth cap " << g.run.oracle_cap << '\n';
  }
  return s ? kOk : kFalse;
}

struct Written {
  Json sidecar;
  std::string summary;
};

void finish_reduce(const Globals& g, const fs::path& stem, Written w, std::ostream& out) {
  write_file(with_suffix(stem, ".json"), w.sidecar.dump(2) + "\n");
  if (g.json)
    emit(out, w.sidecar);
  else
    out << w.summary << '\n';
}

Written write_triple(const fs::path& stem, const DodgsonTriple& t, const ConstructionInfo& info,
                     std::optional<std::size_t> threshold) {
  const auto file = with_suffix(stem, ".dodg");
  write_file(file, serialize_election(t.election));
  Json j = election_entry(file, t.election);
  j["designated"] = t.designated_name();
  if (threshold) j["threshold"] = *threshold;
  j.update(info_json(info));
  auto text = summary(t.election);
  if (threshold) text += ", threshold " + std::to_string(*threshold);
  return {std::move(j), text + "\ndesignated: " + t.designated_name() + "\nwrote " + file.string()};
}

Written write_ranking(const fs::path& stem, const RankingInstance& r, const ConstructionInfo& info) {
  const auto file = with_suffix(stem, ".dodg");
  write_file(file, serialize_election(r.election));
  Json j = election_entry(file, r.election);
  j["c"] = r.election.name(r.c);
  j["d"] = r.election.name(r.d);
  j.update(info_json(info));
  return {std::move(j), summary(r.election) + "\nc: " + r.election.name(r.c) + ", d: " + r.election.name(r.d) +
                            "\nwrote " + file.string()};
}

Written write_sentinel(const std::string& construction) {
  return {Json{{"construction", construction}, {"sentinel", true}}, "sentinel: input is not a 2ER instance"};
}

// Unreadable or unparseable inputs become nullopt so the reduction stays total.
TwoERInput load_2er_input(const std::vector<std::string>& specs) {
  if (specs.size() != 2) return std::nullopt;
  try {
    return std::make_pair(load_triple(specs[0]), load_triple(specs[1]));
  } catch (const Error&) {
    return std::nullopt;
  }
}

void require_count(const std::vector<std::string>& inputs, std::size_t n, const std::string& kind) {
  if (inputs.size() != n)
    throw ValidationError("reduce " + kind + " takes " + std::to_string(n) + " input(s), got " +
                          std::to_string(inputs.size()));
}

int cmd_reduce(const Globals& g, const std::string& kind, const std::vector<std::string>& inputs,
               const std::string& output, std::ostream& out, std::ostream& err) {
  const auto stem = stem_of(output);
  if (kind == "3dm") {
    require_count(inputs, 1, kind);
    const auto text = read_file(inputs[0]);
    try {
      if (!parse_3dm(text).valid()) err << "note: invalid instance, emitting the canonical no-instance\n";
    } catch (const ParseError&) {
      err << "note: malformed instance, emitting the canonical no-instance\n";
    }
    const auto r = reduce_3dm(TdmInput{text});
    finish_reduce(g, stem, write_triple(stem, r.triple, r.info, r.threshold), out);
    return kOk;
  }
  if (kind == "sum") {
    if (inputs.empty()) throw ValidationError("reduce sum needs at least one input");
    std::vector<DodgsonTriple> triples;
    for (const auto& s : inputs) triples.push_back(load_triple(s));
    const auto r = dodgson_sum(triples);
    finish_reduce(g, stem, write_triple(stem, r.triple, r.info, std::nullopt), out);
    return kOk;
  }
  if (kind == "merge" || kind == "merge-prime") {
    require_count(inputs, 2, kind);
    const auto a = load_triple(inputs[0]), b = load_triple(inputs[1]);
    if (kind == "merge") {
      const auto r = merge(a, b);
      finish_reduce(g, stem, write_ranking(stem, r.ranking, r.info), out);
    } else {
      const auto r = merge_prime(a, b);
      finish_reduce(g, stem, write_triple(stem, r.triple, r.info, std::nullopt), out);
    }
    return kOk;
  }
  if (kind == "2er-to-ranking" || kind == "2er-to-winner") {
    const auto input = load_2er_input(inputs);
    const bool ranking = kind == "2er-to-ranking";
    const bool sentinel = ranking ? std::holds_alternative<Sentinel>(reduce_2er_to_ranking(input))
                                  : std::holds_alternative<Sentinel>(reduce_2er_to_winner(input));
    if (sentinel) {
      finish_reduce(g, stem, write_sentinel(kind), out);
    } else if (ranking) {
      const auto r = merge(input->first, input->second);
      finish_reduce(g, stem, write_ranking(stem, r.ranking, r.info), out);
    } else {
      const auto r = merge_prime(input->first, input->second);
      finish_reduce(g, stem, write_triple(stem, r.triple, r.info, std::nullopt), out);
    }
    return kOk;
  }
  if (kind == "wagner-g") {
    std::vector<TdmInput> xs;
    for (const auto& path : inputs) xs.emplace_back(read_file(path));
    const auto r = wagner_g(xs);
    const auto left = with_suffix(stem, "-left.dodg"), right = with_suffix(stem, "-right.dodg");
    write_file(left, serialize_election(r.instance.left.election));
    write_file(right, serialize_election(r.instance.right.election));
    Json l = election_entry(left, r.instance.left.election);
    l["designated"] = r.instance.left.designated_name();
    l.update(info_json(r.left_info));
    Json rt = election_entry(right, r.instance.right.election);
    rt["designated"] = r.instance.right.designated_name();
    rt.update(info_json(r.right_info));
    Json j{{"construction", "wagner-g"}, {"inputs", inputs.size()}, {"thresholds", r.thresholds},
           {"left", std::move(l)}, {"right", std::move(rt)}};
    std::ostringstream s;
    s << "left: " << summary(r.instance.left.election) << ", designated " << r.instance.left.designated_name()
      << "\nright: " << summary(r.instance.right.election) << ", designated " << r.instance.right.designated_name()
      << "\nthresholds:";
    for (auto k : r.thresholds) s << ' ' << k;
    s << "\nwrote " << left.string() << ", " << right.string();
    finish_reduce(g, stem, {std::move(j), s.str()}, out);
    return kOk;
  }
  throw ValidationError("unknown reduction '" + kind + "'");
}

int cmd_verify(const Globals& g, const std::string& suite, const std::string& dump_dir, std::ostream& out) {
  const auto report = run_suite(suite, g.run);
  std::vector<fs::path> dumped;
  for (const auto& p : report.properties)
    for (const auto& fx : p.fixtures) {
      const auto path = fs::path(dump_dir) / fx.filename;
      write_file(path, fx.content);
      dumped.push_back(path);
    }
  if (g.json) {
    Json props = Json::array();
    for (const auto& p : report.properties) {
      Json entry{{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}, {"passed", p.passed()}};
      if (!p.passed()) {
        entry["first_failure"] = p.first_failure;
        Json files = Json::array();
        for (const auto& fx : p.fixtures) files.push_back((fs::path(dump_dir) / fx.filename).string());
        entry["fixtures"] = std::move(files);
      }
      props.push_back(std::move(entry));
    }
    emit(out, Json{{"suite", report.suite}, {"seed", g.run.seed}, {"trials", g.run.trials},
                   {"passed", report.passed()}, {"properties", std::move(props)}});
  } else {
    for (const auto& p : report.properties) {
      if (p.passed()) {
        out << "PASS " << p.name << " (" << p.checked << " checks)\n";
      } else {
        out << "FAIL " << p.name << " (" << p.failed << " of " << p.checked << " checks): " << p.first_failure
            << '\n';
        for (const auto& fx : p.fixtures) out << "  counterexample: " << (fs::path(dump_dir) / fx.filename).string() << '\n';
      }
    }
    out << (report.passed() ? "all properties hold\n" : "verification failed\n");
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Dodgson scores, winners and rankings, and the election gadgets built on them", "dodgson"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.run.seed, "Seed for verification trials")->capture_default_str();
  app.add_option("--trials", g.run.trials, "Random trials per verification suite")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--state-cap", g.run.state_cap, "Stored DP states before branch-and-bound takes over")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--oracle-cap", g.run.oracle_cap, "Depth cap of the switch-distance oracle")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.run.threads, "Verification worker threads (0: one per core)");

  std::string file, candidate, other, kind, suite, output = "reduced", dump_dir = "counterexamples";
  std::optional<std::string> maybe_candidate;
  std::optional<std::size_t> at_most;
  std::vector<std::string> inputs;
  bool witness = false;

  auto* score = app.add_subcommand("score", "Dodgson score of a candidate");
  score->add_option("file", file, ".dodg election")->required();
  score->add_option("-c,--candidate", candidate, "Designated candidate")->required();
  score->add_flag("--witness", witness, "Also print an optimal set of switches");
  score->add_option("--at-most", at_most, "Only decide whether the score is at most K");

  auto* winner = app.add_subcommand("winner", "Dodgson winners, or whether one candidate wins");
  winner->add_option("file", file, ".dodg election")->required();
  winner->add_option("-c,--candidate", maybe_candidate, "Candidate to test");

  auto* ranking = app.add_subcommand("ranking", "Whether c ties or beats d");
  ranking->add_option("file", file, ".dodg election")->required();
  ranking->add_option("-c", candidate, "First candidate")->required();
  ranking->add_option("-d", other, "Second candidate")->required();

  auto* two_er = app.add_subcommand("2er", "Whether the first triple's score is at most the second's");
  two_er->add_option("inputs", inputs, "FILE:CANDIDATE FILE:CANDIDATE")->required()->expected(2);

  auto* reduce = app.add_subcommand("reduce", "Build a gadget election");
  reduce->add_option("kind", kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"3dm", "sum", "merge", "merge-prime", "wagner-g", "2er-to-ranking", "2er-to-winner"}));
  reduce->add_option("inputs", inputs, ".3dm files or FILE:CANDIDATE triples")->required();
  reduce->add_option("-o,--output", output, "Output stem (writes STEM.dodg and STEM.json)")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--counterexamples", dump_dir, "Directory for failing fixtures")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Score by breadth-first search over switch sequences");
  oracle->add_option("file", file, ".dodg election")->required();
  oracle->add_option("-c,--candidate", candidate, "Designated candidate")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (*score) return cmd_score(g, file, candidate, witness, at_most, out);
    if (*winner) return cmd_winner(g, file, maybe_candidate, out);
    if (*ranking) {
      const auto e = load_election(file);
      return print_decision(g, "ranks_at_least", ranks_at_least(e, e.index_of(candidate), e.index_of(other), {g.run.state_cap}), out);
    }
    if (*two_er) {
      const auto a = load_triple(inputs[0]), b = load_triple(inputs[1]);
      return print_decision(g, "two_election_ranking", two_election_ranking(a, b, {g.run.state_cap}), out);
    }
    if (*reduce) return cmd_reduce(g, kind, inputs, output, out, err);
    if (*verify) return cmd_verify(g, suite, dump_dir, out);
    if (*oracle) return cmd_oracle(g, file, candidate, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace dodgson
