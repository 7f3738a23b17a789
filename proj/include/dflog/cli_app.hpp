#pragma once
// Command line front end. All commands run through run_cli so tests can drive
// them in process with captured streams.
//
// Exit codes: 0 success, 1 parse or validation error, 2 logic fails the
// discipline checks, 3 goal not proved or not a consequence, 4 property
// failures found while fuzzing.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "builtins.hpp"
#include "discipline.hpp"
#include "engine.hpp"
#include "harness.hpp"
#include "logic_io.hpp"
#include "theory_io.hpp"

namespace dflog::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct LogicChoice {
  std::string name = "classic";
  std::string file;

  cond::LogicDef resolve() const {
    if (!file.empty()) return cond::parse_logic(read_file(file));
    return logics::get_logic(name);
  }
};

inline void add_logic_options(CLI::App* cmd, LogicChoice& choice) {
  CLI::Option* by_name =
      cmd->add_option("--logic", choice.name, "built-in logic name")->capture_default_str();
  cmd->add_option("--logic-file", choice.file, "logic definition file")->excludes(by_name);
}

// Tags in rule declaration order; conclusions under each tag sorted by literal.
inline std::vector<std::pair<cond::Tag, std::vector<core::Literal>>> group_by_tag(
    const cond::LogicDef& l, const engine::ConclusionSet& s) {
  std::vector<std::pair<cond::Tag, std::vector<core::Literal>>> out;
  for (const cond::InferenceRule& r : l.rules) out.emplace_back(r.tag, std::vector<core::Literal>{});
  for (auto& [tag, lits] : out)
    for (const engine::Conclusion& c : s)
      if (c.tag == tag) lits.push_back(c.literal);
  return out;
}

inline int cmd_conclusions(const LogicChoice& choice, const std::string& theory_path,
                           const std::string& format, std::ostream& out) {
  cond::LogicDef l = choice.resolve();
  core::DefeasibleTheory d = core::parse_theory(read_file(theory_path));
  engine::ConclusionSet s = engine::compute_closure(l, d).first;
  for (const auto& [tag, lits] : group_by_tag(l, s))
    for (const core::Literal& lit : lits) {
      if (format == "json")
        out << nlohmann::json{{"tag", cond::to_string(tag)}, {"literal", core::to_string(lit)}}
                   .dump()
            << "\n";
      else
        out << cond::to_string(tag) << " " << core::to_string(lit) << "\n";
    }
  return 0;
}

inline int cmd_query(const LogicChoice& choice, const std::string& theory_path,
                     const std::string& goal_text, std::ostream& out) {
  cond::LogicDef l = choice.resolve();
  core::DefeasibleTheory d = core::parse_theory(read_file(theory_path));
  engine::Conclusion goal = engine::parse_conclusion(goal_text);
  if (engine::query(l, d, goal) == engine::QueryResult::Proved) {
    out << "proved: " << engine::to_string(goal) << "\n";
    return 0;
  }
  out << "not proved: " << engine::to_string(goal) << "\n";
  return 3;
}

inline std::string render_step(const engine::ProvenanceRecord& rec,
                               const std::map<engine::Conclusion, std::size_t>& step_of) {
  std::ostringstream os;
  os << "  " << rec.step << ". " << engine::to_string(rec.conclusion);
  std::vector<std::string> notes;
  for (const core::Literal& f : rec.fact_cites) notes.push_back("fact " + core::to_string(f));
  for (const std::string& r : rec.rule_cites) notes.push_back("rule " + r);
  if (!rec.proof_cites.empty()) {
    std::vector<std::size_t> steps;
    for (const engine::Conclusion& c : rec.proof_cites) steps.push_back(step_of.at(c));
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    std::string joined;
    for (std::size_t s : steps) joined += (joined.empty() ? "" : ", ") + std::to_string(s);
    notes.push_back("steps " + joined);
  }
  for (const auto& [name, c] : rec.closure_cites)
    notes.push_back(name + " has " + engine::to_string(c));
  for (const auto& [sup, inf] : rec.superiority_cites) notes.push_back(sup + " > " + inf);
  if (!notes.empty()) {
    os << " [";
    for (std::size_t i = 0; i < notes.size(); ++i) os << (i ? "; " : "") << notes[i];
    os << "]";
  }
  return os.str();
}

inline nlohmann::json step_json(const engine::ProvenanceRecord& rec,
                                const std::map<engine::Conclusion, std::size_t>& step_of) {
  nlohmann::json j;
  j["step"] = rec.step;
  j["conclusion"] = engine::to_string(rec.conclusion);
  j["rules"] = rec.rule_cites;
  std::vector<std::size_t> steps;
  for (const engine::Conclusion& c : rec.proof_cites) steps.push_back(step_of.at(c));
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  j["cites"] = steps;
  j["facts"] = nlohmann::json::array();
  for (const core::Literal& f : rec.fact_cites) j["facts"].push_back(core::to_string(f));
  j["closures"] = nlohmann::json::array();
  for (const auto& [name, c] : rec.closure_cites)
    j["closures"].push_back({{"closure", name}, {"conclusion", engine::to_string(c)}});
  j["superiority"] = nlohmann::json::array();
  for (const auto& [sup, inf] : rec.superiority_cites)
    j["superiority"].push_back({{"superior", sup}, {"inferior", inf}});
  return j;
}

inline int cmd_explain(const LogicChoice& choice, const std::string& theory_path,
                       const std::string& goal_text, const std::string& format,
                       std::ostream& out) {
  cond::LogicDef l = choice.resolve();
  core::DefeasibleTheory d = core::parse_theory(read_file(theory_path));
  engine::Conclusion goal = engine::parse_conclusion(goal_text);
  engine::DerivedProof proof = engine::derive_proof(l, d, goal);

  std::map<engine::Conclusion, std::size_t> step_of;
  for (std::size_t i = 0; i < proof.steps.size(); ++i)
    if (!step_of.count(proof.steps[i])) step_of[proof.steps[i]] = i + 1;

  if (format == "json") {
    nlohmann::json j;
    j["goal"] = engine::to_string(goal);
    j["steps"] = nlohmann::json::array();
    for (const engine::ProvenanceRecord& rec : proof.provenance)
      j["steps"].push_back(step_json(rec, step_of));
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "proof of " << engine::to_string(goal) << " (" << proof.steps.size()
      << (proof.steps.size() == 1 ? " step)\n" : " steps)\n");
  for (const engine::ProvenanceRecord& rec : proof.provenance)
    out << render_step(rec, step_of) << "\n";
  return 0;
}

inline int cmd_check_logic(const LogicChoice& choice, std::ostream& out) {
  cond::DisciplineReport rep = cond::check_logic(choice.resolve());
  out << cond::to_string(rep);
  return rep.well_disciplined() ? 0 : 2;
}

inline int cmd_fuzz(const LogicChoice& choice, int trials, std::uint64_t seed,
                    const std::string& format, std::ostream& out) {
  cond::LogicDef l = choice.resolve();
  harness::FuzzReport report = harness::run_fuzz(l, trials, seed);
  if (format == "json") {
    out << harness::to_json(report).dump(2) << "\n";
  } else {
    for (const harness::PropertyVerdict& v : report.verdicts) {
      out << harness::render_verdict(v) << "\n";
      for (const std::string& f : v.failures) out << "  counterexample: " << f << "\n";
    }
    out << (report.pass() ? "all properties hold" : "property failures found") << "\n";
  }
  return report.pass() ? 0 : 4;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"defeasible logic engine and meta-theory analyzer"};
  app.require_subcommand(1);

  detail::LogicChoice choice[5];
  std::string theory_path[3];
  std::string goal_text[2];
  std::string format_conclusions = "text", format_explain = "text", format_fuzz = "text";
  int trials = 100;
  std::uint64_t seed = 0;

  CLI::App* conclusions = app.add_subcommand("conclusions", "print the closure of a theory");
  conclusions->add_option("theory", theory_path[0], "theory file")->required();
  detail::add_logic_options(conclusions, choice[0]);
  conclusions->add_option("--format", format_conclusions, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* query = app.add_subcommand("query", "decide one tagged conclusion");
  query->add_option("theory", theory_path[1], "theory file")->required();
  query->add_option("goal", goal_text[0], "tagged conclusion, e.g. \"+delta p\"")->required();
  detail::add_logic_options(query, choice[1]);

  CLI::App* explain = app.add_subcommand("explain", "derive and print a checked proof");
  explain->add_option("theory", theory_path[2], "theory file")->required();
  explain->add_option("goal", goal_text[1], "tagged conclusion to prove")->required();
  detail::add_logic_options(explain, choice[2]);
  explain->add_option("--format", format_explain, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* check = app.add_subcommand("check-logic", "run the discipline analysis");
  detail::add_logic_options(check, choice[3]);

  CLI::App* fuzz = app.add_subcommand("fuzz", "property-check a logic on random theories");
  detail::add_logic_options(fuzz, choice[4]);
  fuzz->add_option("--trials", trials, "theories per property")->capture_default_str();
  fuzz->add_option("--seed", seed, "random seed")->capture_default_str();
  fuzz->add_option("--format", format_fuzz, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (conclusions->parsed())
      return detail::cmd_conclusions(choice[0], theory_path[0], format_conclusions, out);
    if (query->parsed()) return detail::cmd_query(choice[1], theory_path[1], goal_text[0], out);
    if (explain->parsed())
      return detail::cmd_explain(choice[2], theory_path[2], goal_text[1], format_explain, out);
    if (check->parsed()) return detail::cmd_check_logic(choice[3], out);
    return detail::cmd_fuzz(choice[4], trials, seed, format_fuzz, out);
  } catch (const cond::NotWellDisciplined& e) {
    err << cond::to_string(e.report());
    return 2;
  } catch (const cond::CyclicClosureDependency& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const engine::NotAConsequence& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dflog::cli
