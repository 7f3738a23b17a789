#pragma once
// Analysis harness: an independent oracle for closures, coherence and
// consistency checks, randomized property suites over generated theories,
// and demonstrations of what goes wrong without the discipline checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "builtins.hpp"
#include "condition.hpp"
#include "core.hpp"
#include "discipline.hpp"
#include "engine.hpp"
#include "generator.hpp"
#include "logic.hpp"
#include "logic_io.hpp"
#include "theory_io.hpp"

namespace dflog::harness {

// ---------------------------------------------------------------------------
// Oracle: a deliberately naive second implementation of closures. Sequences
// instead of sets, linear scans instead of indexes, and one independent
// recursive evaluator. Used to cross-check the engine, never to replace it.

namespace oracle {

struct Env {
  std::map<std::string, std::vector<engine::Conclusion>> closures;
};

inline core::Literal lit_value(const cond::LiteralExpr& e, const core::Literal& q,
                               const std::map<std::string, core::Literal>& lv) {
  core::Literal l = e.is_query ? q : lv.at(e.var);
  return e.complemented ? core::complement(l) : l;
}

inline bool holds(const cond::CondPtr& c, const core::DefeasibleTheory& d,
                  const core::Literal& q, const std::vector<engine::Conclusion>& proof,
                  const Env& env, std::map<std::string, const core::Rule*> rv,
                  std::map<std::string, core::Literal> lv) {
  const auto& n = c->node;
  if (std::holds_alternative<cond::TrueC>(n)) return true;
  if (std::holds_alternative<cond::FalseC>(n)) return false;
  if (const auto* a = std::get_if<cond::And>(&n)) {
    for (const cond::CondPtr& ch : a->children)
      if (!holds(ch, d, q, proof, env, rv, lv)) return false;
    return true;
  }
  if (const auto* o = std::get_if<cond::Or>(&n)) {
    for (const cond::CondPtr& ch : o->children)
      if (holds(ch, d, q, proof, env, rv, lv)) return true;
    return false;
  }
  if (const auto* e = std::get_if<cond::Exists>(&n)) {
    if (const auto* rd = std::get_if<cond::RuleDomain>(&e->domain)) {
      core::Literal head = lit_value(rd->head, q, lv);
      for (const core::Rule& r : d.rules) {
        if (r.consequent != head || !core::in_subset(r.kind, rd->subset)) continue;
        auto rv2 = rv;
        rv2[e->var] = &r;
        if (holds(e->body, d, q, proof, env, rv2, lv)) return true;
      }
      return false;
    }
    const core::Rule* r = rv.at(std::get<cond::AntecedentDomain>(e->domain).rule_var);
    for (const core::Literal& a : r->antecedent) {
      auto lv2 = lv;
      lv2[e->var] = a;
      if (holds(e->body, d, q, proof, env, rv, lv2)) return true;
    }
    return false;
  }
  if (const auto* f = std::get_if<cond::ForAll>(&n)) {
    if (const auto* rd = std::get_if<cond::RuleDomain>(&f->domain)) {
      core::Literal head = lit_value(rd->head, q, lv);
      for (const core::Rule& r : d.rules) {
        if (r.consequent != head || !core::in_subset(r.kind, rd->subset)) continue;
        auto rv2 = rv;
        rv2[f->var] = &r;
        if (!holds(f->body, d, q, proof, env, rv2, lv)) return false;
      }
      return true;
    }
    const core::Rule* r = rv.at(std::get<cond::AntecedentDomain>(f->domain).rule_var);
    for (const core::Literal& a : r->antecedent) {
      auto lv2 = lv;
      lv2[f->var] = a;
      if (!holds(f->body, d, q, proof, env, rv, lv2)) return false;
    }
    return true;
  }
  if (const auto* i = std::get_if<cond::In>(&n)) {
    engine::Conclusion m{i->tag, lit_value(i->lit, q, lv)};
    const std::vector<engine::Conclusion>& s =
        i->target.current ? proof : env.closures.at(i->target.closure);
    return std::find(s.begin(), s.end(), m) != s.end();
  }
  if (const auto* i = std::get_if<cond::NotIn>(&n)) {
    engine::Conclusion m{i->tag, lit_value(i->lit, q, lv)};
    const std::vector<engine::Conclusion>& s =
        i->target.current ? proof : env.closures.at(i->target.closure);
    return std::find(s.begin(), s.end(), m) == s.end();
  }
  if (const auto* p = std::get_if<cond::Pure>(&n)) {
    if (const auto* fa = std::get_if<cond::IsFact>(&p->atom))
      return d.facts.count(lit_value(fa->lit, q, lv)) != 0;
    const auto& s = std::get<cond::Superior>(p->atom);
    return d.superior(rv.at(s.left)->label, rv.at(s.right)->label);
  }
  const auto& p = std::get<cond::NotPure>(n);
  if (const auto* fa = std::get_if<cond::IsFact>(&p.atom))
    return d.facts.count(lit_value(fa->lit, q, lv)) == 0;
  const auto& s = std::get<cond::Superior>(p.atom);
  return !d.superior(rv.at(s.left)->label, rv.at(s.right)->label);
}

}  // namespace oracle

// Duplicate-free conclusion sequence grown to quiescence. The environment for
// each declared closure is built recursively from just the tags it can reach.
inline std::vector<engine::Conclusion> oracle_closure_sequence(
    const cond::LogicDef& l, const core::DefeasibleTheory& d,
    const std::vector<core::Literal>& extra = {}) {
  core::validate(d);
  cond::DisciplineReport rep = cond::check_logic(l);
  if (!rep.well_disciplined()) throw cond::NotWellDisciplined(std::move(rep));

  std::set<core::Literal> uni = core::literal_universe(d);
  for (const core::Literal& e : extra) {
    uni.insert(core::pos(e.atom));
    uni.insert(core::neg(e.atom));
  }
  std::vector<core::Literal> lits(uni.begin(), uni.end());

  oracle::Env env;
  auto grow = [&](const std::set<cond::Tag>& tags) {
    std::vector<engine::Conclusion> seq;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const cond::InferenceRule& r : l.rules) {
        if (!tags.count(r.tag)) continue;
        for (const core::Literal& q : lits) {
          engine::Conclusion c{r.tag, q};
          if (std::find(seq.begin(), seq.end(), c) != seq.end()) continue;
          if (!oracle::holds(r.condition, d, q, seq, env, {}, {})) continue;
          seq.push_back(c);
          changed = true;
        }
      }
    }
    return seq;
  };

  std::set<std::string> in_progress;
  std::function<void(const std::string&)> ensure = [&](const std::string& name) {
    if (env.closures.count(name)) return;
    if (!in_progress.insert(name).second) throw Error("closure cycle at " + name);
    const cond::ClosureDecl* decl = l.find_closure(name);
    std::set<cond::Tag> involved =
        cond::reference_closure(l, {decl->tags.begin(), decl->tags.end()});
    for (const cond::Tag& t : involved)
      if (const cond::InferenceRule* r = l.find_rule(t))
        for (const std::string& nested : cond::closure_names(r->condition)) ensure(nested);
    std::vector<engine::Conclusion> seq = grow(involved);
    std::set<cond::Tag> declared(decl->tags.begin(), decl->tags.end());
    std::vector<engine::Conclusion> kept;
    for (const engine::Conclusion& c : seq)
      if (declared.count(c.tag)) kept.push_back(c);
    env.closures[name] = std::move(kept);
    in_progress.erase(name);
  };
  for (const cond::ClosureDecl& c : l.closures) ensure(c.name);

  std::set<cond::Tag> all_tags;
  for (const cond::InferenceRule& r : l.rules) all_tags.insert(r.tag);
  return grow(all_tags);
}

inline engine::ConclusionSet oracle_closure(const cond::LogicDef& l,
                                            const core::DefeasibleTheory& d,
                                            const std::vector<core::Literal>& extra = {}) {
  std::vector<engine::Conclusion> seq = oracle_closure_sequence(l, d, extra);
  return {seq.begin(), seq.end()};
}

// ---------------------------------------------------------------------------
// Coherence and consistency of conclusion sets.

// A pair +d q / -d q over the same base and literal.
inline std::optional<std::pair<engine::Conclusion, engine::Conclusion>> find_incoherence(
    const engine::ConclusionSet& s) {
  for (const engine::Conclusion& c : s) {
    if (!c.tag.positive) continue;
    engine::Conclusion m{cond::opposite(c.tag), c.literal};
    if (s.count(m)) return std::make_pair(c, m);
  }
  return std::nullopt;
}

struct Inconsistency {
  cond::Tag tag;        // positive main tag endorsing both sides
  core::Literal lit;    // positive literal of the clashing pair
};

// Both q and its complement endorsed under a main tag, and not excused by the
// monotonic part already proving both strictly.
inline std::optional<Inconsistency> find_inconsistency(const cond::LogicDef& l,
                                                       const engine::ConclusionSet& s) {
  bool has_delta = false;
  for (const cond::InferenceRule& r : l.rules)
    if (r.tag.name == "delta") has_delta = true;
  for (const std::string& m : l.main_tags) {
    cond::Tag t = cond::plus(m);
    for (const engine::Conclusion& c : s) {
      if (c.tag != t || !c.literal.positive) continue;
      core::Literal opp = core::complement(c.literal);
      if (!s.count({t, opp})) continue;
      if (has_delta && s.count({cond::plus("delta"), c.literal}) &&
          s.count({cond::plus("delta"), opp}))
        continue;
      return Inconsistency{t, c.literal};
    }
  }
  return std::nullopt;
}

// True when the monotonic part proves some literal together with its
// complement; the case the consistency exception exists for.
inline bool has_strict_conflict(const engine::ConclusionSet& s) {
  for (const engine::Conclusion& c : s)
    if (c.tag == cond::plus("delta") && c.literal.positive &&
        s.count({cond::plus("delta"), core::complement(c.literal)}))
      return true;
  return false;
}

// ---------------------------------------------------------------------------
// Property suites over generated theories.

struct PropertyVerdict {
  std::string property;
  int trials = 0;
  int witnesses = 0;  // trials that exercised the property non-vacuously
  int failed = 0;
  std::vector<std::string> failures;  // first few rendered counterexamples

  bool pass() const { return failed == 0; }
};

inline constexpr int kMaxRenderedFailures = 5;

inline void record_failure(PropertyVerdict& v, const std::string& render) {
  ++v.failed;
  if (static_cast<int>(v.failures.size()) < kMaxRenderedFailures) v.failures.push_back(render);
}

inline std::string render_verdict(const PropertyVerdict& v) {
  std::ostringstream os;
  os << (v.pass() ? "PASS" : "FAIL") << " " << v.property << ": trials=" << v.trials
     << " witnesses=" << v.witnesses << " failed=" << v.failed;
  return os.str();
}

inline nlohmann::json to_json(const PropertyVerdict& v) {
  return {{"property", v.property}, {"trials", v.trials},     {"witnesses", v.witnesses},
          {"failed", v.failed},     {"failures", v.failures}, {"pass", v.pass()}};
}

struct SuiteConfig {
  int trials = 100;
  std::uint64_t seed = 0;
  gen::TheoryGenConfig theory;  // per-trial seed is overwritten
};

namespace detail {

inline core::DefeasibleTheory trial_theory(const SuiteConfig& cfg, std::mt19937_64& seeds) {
  gen::TheoryGenConfig tc = cfg.theory;
  tc.seed = seeds();
  return gen::gen_theory(tc);
}

inline bool has_positive_main(const cond::LogicDef& l, const engine::ConclusionSet& s) {
  std::set<std::string> mains(l.main_tags.begin(), l.main_tags.end());
  for (const engine::Conclusion& c : s)
    if (c.tag.positive && mains.count(c.tag.name)) return true;
  return false;
}

}  // namespace detail

// No closure may contain both +d q and -d q.
inline PropertyVerdict coherence_suite(const cond::LogicDef& l, const SuiteConfig& cfg) {
  PropertyVerdict v{"coherence/" + l.name};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    core::DefeasibleTheory d = detail::trial_theory(cfg, seeds);
    engine::ConclusionSet s = engine::compute_closure(l, d).first;
    if (detail::has_positive_main(l, s)) ++v.witnesses;
    if (auto clash = find_incoherence(s))
      record_failure(v, engine::to_string(clash->first) + " and " +
                            engine::to_string(clash->second) + " in\n" + core::print_theory(d));
  }
  return v;
}

// Main tags never endorse a literal and its complement unless the monotonic
// part already proves both. Witnesses count the excused clashes actually seen.
inline PropertyVerdict consistency_suite(const cond::LogicDef& l, const SuiteConfig& cfg) {
  PropertyVerdict v{"consistency/" + l.name};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    core::DefeasibleTheory d = detail::trial_theory(cfg, seeds);
    engine::ConclusionSet s = engine::compute_closure(l, d).first;
    if (has_strict_conflict(s)) ++v.witnesses;
    if (auto bad = find_inconsistency(l, s))
      record_failure(v, cond::to_string(bad->tag) + " endorses both " +
                            core::to_string(bad->lit) + " and its complement in\n" +
                            core::print_theory(d));
  }
  return v;
}

// Engine closure equals the oracle closure.
inline PropertyVerdict oracle_suite(const cond::LogicDef& l, const SuiteConfig& cfg) {
  PropertyVerdict v{"oracle/" + l.name};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    core::DefeasibleTheory d = detail::trial_theory(cfg, seeds);
    engine::ConclusionSet fast = engine::compute_closure(l, d).first;
    engine::ConclusionSet slow = oracle_closure(l, d);
    if (!fast.empty()) ++v.witnesses;
    if (fast != slow) {
      std::ostringstream os;
      os << "closures differ on\n" << core::print_theory(d);
      for (const engine::Conclusion& c : fast)
        if (!slow.count(c)) os << "\n  engine only: " << engine::to_string(c);
      for (const engine::Conclusion& c : slow)
        if (!fast.count(c)) os << "\n  oracle only: " << engine::to_string(c);
      record_failure(v, os.str());
    }
  }
  return v;
}

// The closure environment a proof's steps rely on, as used when checking.
inline engine::ClosureEnv proof_env(const cond::LogicDef& l, const core::DefeasibleTheory& d,
                                    const engine::Proof& proof) {
  std::set<cond::Tag> tags;
  for (const engine::Conclusion& c : proof) tags.insert(c.tag);
  auto [closures, support] = engine::detail::closure_support(l, tags);
  if (closures.empty()) return {};
  cond::LogicDef sub = cond::restrict_to_tags(l, support);
  engine::SaturateOptions opt;
  for (const engine::Conclusion& c : proof) opt.extra_literals.push_back(c.literal);
  return engine::saturate_closure(sub, d, opt).env;
}

namespace detail {

inline engine::Proof interleave(const engine::Proof& a, const engine::Proof& b,
                                std::mt19937_64& rng) {
  engine::Proof out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    bool take_a = j >= b.size() || (i < a.size() && rng() % 2 == 0);
    out.push_back(take_a ? a[i++] : b[j++]);
  }
  return out;
}

}  // namespace detail

// Stability of proofs under growth: interleaving two valid proofs stays valid,
// and inserting extra derivable lines never invalidates the original steps.
inline PropertyVerdict stability_suite(const cond::LogicDef& l, const SuiteConfig& cfg) {
  PropertyVerdict v{"stability/" + l.name};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    std::uint64_t trial_seed = seeds();
    std::mt19937_64 rng(trial_seed);
    gen::TheoryGenConfig tc = cfg.theory;
    tc.seed = trial_seed;
    core::DefeasibleTheory d = gen::gen_theory(tc);
    engine::ConclusionSet s = engine::compute_closure(l, d).first;
    if (s.empty()) continue;
    std::vector<engine::Conclusion> pool(s.begin(), s.end());
    auto pick = [&]() { return pool[rng() % pool.size()]; };

    engine::DerivedProof p1 = engine::derive_proof(l, d, pick());
    engine::DerivedProof p2 = engine::derive_proof(l, d, pick());
    ++v.witnesses;

    engine::Proof merged = detail::interleave(p1.steps, p2.steps, rng);
    engine::ProofCheck check = engine::check_proof(l, d, merged);
    if (!check.valid) {
      record_failure(v, "interleaving invalid at step " + std::to_string(check.invalid_at) +
                            ": " + check.reason + "\n" + core::print_theory(d));
      continue;
    }

    // Supersequence: splice in derivable lines, then re-check only the
    // original steps at their shifted positions.
    engine::Proof padded = p1.steps;
    std::vector<bool> original(padded.size(), true);
    for (int k = 0; k < 3; ++k) {
      std::size_t at = rng() % (padded.size() + 1);
      padded.insert(padded.begin() + at, pick());
      original.insert(original.begin() + at, false);
    }
    engine::ClosureEnv env = proof_env(l, d, padded);
    engine::ConclusionSet prefix;
    bool ok = true;
    for (std::size_t i = 0; i < padded.size() && ok; ++i) {
      const engine::Conclusion& c = padded[i];
      if (original[i] &&
          !engine::evaluate_condition(l.find_rule(c.tag)->condition, d, c.literal, prefix, env))
        ok = false;
      prefix.insert(c);
    }
    if (!ok)
      record_failure(v, "original step invalidated by insertions in\n" + core::print_theory(d));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Demonstrations: what the discipline checks are protecting against.

struct InstabilityWitness {
  cond::Tag rule_tag;         // rule whose condition flips
  core::Literal query;        // query literal it was true for
  engine::Conclusion added;   // one added conclusion that turns it false
};

inline std::string render(const InstabilityWitness& w) {
  return "condition of " + cond::to_string(w.rule_tag) + " holds for " +
         core::to_string(w.query) + " on the empty proof but fails once " +
         engine::to_string(w.added) + " is added";
}

// Search for a non-monotone rule: true on the empty proof, false after one
// addition. Rules that consult closures are skipped.
inline std::optional<InstabilityWitness> find_instability(const cond::LogicDef& l,
                                                          const core::DefeasibleTheory& d) {
  std::set<core::Literal> uni = core::literal_universe(d);
  std::vector<cond::Tag> tags;
  for (const cond::InferenceRule& r : l.rules) tags.push_back(r.tag);
  for (const cond::InferenceRule& r : l.rules) {
    if (!cond::closure_names(r.condition).empty()) continue;
    for (const core::Literal& q : uni) {
      if (!engine::evaluate_condition(r.condition, d, q, {})) continue;
      for (const cond::Tag& t : tags)
        for (const core::Literal& m : uni)
          if (!engine::evaluate_condition(r.condition, d, q, {{t, m}}))
            return InstabilityWitness{r.tag, q, {t, m}};
    }
  }
  return std::nullopt;
}

struct ClosedWorldDemo {
  engine::ConclusionSet naive, revised;
  std::optional<std::pair<engine::Conclusion, engine::Conclusion>> naive_clash;
  bool revised_coherent = false;
};

// Side-by-side run of the two closed-world variants. The hand-written negative
// rule can contradict its positive partner; the strong negation cannot.
inline ClosedWorldDemo demo_closed_world(const core::DefeasibleTheory& d) {
  ClosedWorldDemo out;
  out.naive = engine::saturate_closure(logics::get_logic("cwa_naive"), d).conclusions;
  out.revised = engine::saturate_closure(logics::get_logic("cwa_revised"), d).conclusions;
  out.naive_clash = find_incoherence(out.naive);
  out.revised_coherent = !find_incoherence(out.revised).has_value();
  return out;
}

// ---------------------------------------------------------------------------
// Strong-negation algebra over generated conditions.

struct SnegSuiteConfig {
  int trials = 200;
  std::uint64_t seed = 0;
};

inline PropertyVerdict sneg_structural_suite(const SnegSuiteConfig& cfg) {
  PropertyVerdict v{"sneg/structural"};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    ++v.witnesses;
    std::uint64_t s = seeds();
    gen::ConditionGenConfig any_cfg;
    any_cfg.seed = s;
    any_cfg.closures = {"P_delta"};
    gen::ConditionGenConfig pos_cfg = any_cfg;
    pos_cfg.pos_only = true;
    gen::ConditionGenConfig neg_cfg = any_cfg;
    neg_cfg.neg_only = true;
    cond::CondPtr any = gen::gen_condition(any_cfg);
    cond::CondPtr pos = gen::gen_condition(pos_cfg);
    cond::CondPtr neg = gen::gen_condition(neg_cfg);
    cond::validate_condition(any);
    cond::validate_condition(pos);
    cond::validate_condition(neg);

    auto expect = [&](bool okay, const char* law, const cond::CondPtr& c) {
      if (!okay) record_failure(v, std::string(law) + " violated by " + cond::print_condition(c));
    };
    expect(cond::is_pos_only(pos) && cond::is_neg_only(neg), "generator shape", any);
    expect(cond::is_pos_only(cond::sneg(any)), "sneg yields positive conditions", any);
    expect(cond::equal(cond::sneg(cond::sneg(cond::sneg(any))), cond::sneg(any)),
           "sneg^3 = sneg", any);
    expect(cond::equal(cond::sneg(cond::sneg(pos)), pos), "sneg^2 = id on positive", pos);
    expect(cond::equal(cond::sneg(neg), cond::nnf_negate(neg)),
           "sneg = classical negation on negative", neg);
    expect(cond::equal(cond::sneg(cond::nnf_negate(pos)), pos),
           "sneg undoes classical negation on positive", pos);
    expect(cond::equal(cond::nnf_negate(cond::nnf_negate(any)), any),
           "double classical negation", any);
  }
  return v;
}

// On coherent proof sets a condition and its strong negation never both hold,
// and the double strong negation entails the original.
inline PropertyVerdict sneg_semantic_suite(const SnegSuiteConfig& cfg) {
  PropertyVerdict v{"sneg/semantic"};
  std::mt19937_64 seeds(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    std::uint64_t trial_seed = seeds();
    std::mt19937_64 rng(trial_seed);
    gen::TheoryGenConfig tc;
    tc.seed = trial_seed;
    core::DefeasibleTheory d = gen::gen_theory(tc);
    std::set<core::Literal> uni_set = core::literal_universe(d);
    if (uni_set.empty()) continue;
    std::vector<core::Literal> uni(uni_set.begin(), uni_set.end());

    gen::ConditionGenConfig cc;
    cc.seed = trial_seed ^ 0x9e3779b97f4a7c15ull;
    cond::CondPtr c = gen::gen_condition(cc);

    engine::ConclusionSet coherent;
    for (const cond::Tag& tag : cc.tags)
      for (const core::Literal& lit : uni) {
        if (rng() % 10 >= 3) continue;
        if (coherent.count({cond::opposite(tag), lit})) continue;
        coherent.insert({tag, lit});
      }

    const core::Literal& q = uni[rng() % uni.size()];
    bool c_holds = engine::evaluate_condition(c, d, q, coherent);
    bool sneg_holds = engine::evaluate_condition(cond::sneg(c), d, q, coherent);
    bool sneg2_holds = engine::evaluate_condition(cond::sneg(cond::sneg(c)), d, q, coherent);
    if (c_holds || sneg_holds) ++v.witnesses;
    if (c_holds && sneg_holds)
      record_failure(v, "condition and its strong negation both hold for " +
                            core::to_string(q) + ": " + cond::print_condition(c));
    if (sneg2_holds && !c_holds)
      record_failure(v, "double strong negation holds without the original for " +
                            core::to_string(q) + ": " + cond::print_condition(c));
  }
  return v;
}

// ---------------------------------------------------------------------------
// The two formulations of the parallel logic agree on positive conclusions.

inline PropertyVerdict parallel_forms_suite(const SuiteConfig& cfg) {
  PropertyVerdict v{"parallel/positive-agreement"};
  cond::LogicDef revised = logics::get_logic("parallel");
  cond::LogicDef original = logics::original_parallel();
  std::mt19937_64 seeds(cfg.seed);
  auto positives = [](const engine::ConclusionSet& s) {
    engine::ConclusionSet out;
    for (const engine::Conclusion& c : s)
      if (c.tag.positive) out.insert(c);
    return out;
  };
  for (int t = 0; t < cfg.trials; ++t) {
    ++v.trials;
    core::DefeasibleTheory d = detail::trial_theory(cfg, seeds);
    engine::ConclusionSet a = positives(engine::saturate_closure(revised, d).conclusions);
    engine::ConclusionSet b = positives(engine::saturate_closure(original, d).conclusions);
    if (!a.empty()) ++v.witnesses;
    if (a != b) record_failure(v, "positive conclusions differ on\n" + core::print_theory(d));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Bundled run used by the command line fuzzer.

struct FuzzReport {
  std::vector<PropertyVerdict> verdicts;

  bool pass() const {
    for (const PropertyVerdict& v : verdicts)
      if (!v.pass()) return false;
    return true;
  }
};

inline FuzzReport run_fuzz(const cond::LogicDef& l, int trials, std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  FuzzReport report;
  report.verdicts.push_back(coherence_suite(l, cfg));
  report.verdicts.push_back(consistency_suite(l, cfg));
  report.verdicts.push_back(oracle_suite(l, cfg));
  report.verdicts.push_back(stability_suite(l, cfg));
  return report;
}

inline nlohmann::json to_json(const FuzzReport& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const PropertyVerdict& v : r.verdicts) out.push_back(to_json(v));
  return out;
}

}  // namespace dflog::harness
