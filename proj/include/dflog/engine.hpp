#pragma once
// Proof engine: evaluates applicability conditions, saturates theories to
// closures stratum by stratum, answers queries, checks proofs step by step,
// and extracts provenance-annotated proofs from a traced saturation.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "condition.hpp"
#include "core.hpp"
#include "discipline.hpp"
#include "errors.hpp"
#include "logic.hpp"
#include "theory_io.hpp"

namespace dflog::engine {

struct Conclusion {
  cond::Tag tag;
  core::Literal literal;

  bool operator==(const Conclusion&) const = default;
  std::strong_ordering operator<=>(const Conclusion& o) const {
    if (auto c = tag <=> o.tag; c != 0) return c;
    return literal <=> o.literal;
  }
};

using Proof = std::vector<Conclusion>;
using ConclusionSet = std::set<Conclusion>;

inline std::string to_string(const Conclusion& c) {
  return cond::to_string(c.tag) + " " + core::to_string(c.literal);
}

// Text form: "+partial ~fly(tweety)".
inline Conclusion parse_conclusion(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
    throw ParseError("expected signed tag", 1, i + 1);
  bool positive = text[i] == '+';
  ++i;
  std::string name;
  while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) name += text[i++];
  if (name.empty()) throw ParseError("expected tag name", 1, i + 1);
  return {{name, positive}, core::parse_literal(text.substr(i))};
}

// Frozen closure sets, keyed by declared closure name.
struct ClosureEnv {
  std::map<std::string, ConclusionSet> sets;
};

class NotAConsequence : public Error {
 public:
  using Error::Error;
};

// Witnesses for one derivation step: which memberships, quantifier picks,
// facts and superiority pairs made the condition true.
struct ProvenanceRecord {
  Conclusion conclusion;
  std::size_t step = 0;  // 1-based position once part of an extracted proof
  std::vector<Conclusion> proof_cites;
  std::vector<std::pair<std::string, Conclusion>> closure_cites;
  std::vector<std::string> rule_cites;
  std::vector<core::Literal> literal_cites;
  std::vector<core::Literal> fact_cites;
  std::vector<std::pair<std::string, std::string>> superiority_cites;
};

namespace detail {

struct RuleIndex {
  const core::DefeasibleTheory* theory;
  std::map<core::Literal, std::vector<const core::Rule*>> by_head;

  explicit RuleIndex(const core::DefeasibleTheory& d) : theory(&d) {
    for (const core::Rule& r : d.rules) by_head[r.consequent].push_back(&r);
  }

  std::vector<const core::Rule*> lookup(core::RuleSubset s, const core::Literal& q) const {
    std::vector<const core::Rule*> out;
    auto it = by_head.find(q);
    if (it == by_head.end()) return out;
    for (const core::Rule* r : it->second)
      if (core::in_subset(r->kind, s)) out.push_back(r);
    return out;
  }
};

struct Bindings {
  std::map<std::string, const core::Rule*> rules;
  std::map<std::string, core::Literal> lits;
};

struct EvalCtx {
  const core::DefeasibleTheory* theory;
  const RuleIndex* index;
  const core::Literal* query;
  const ConclusionSet* proof;
  const ClosureEnv* env;
};

inline void merge_witness(ProvenanceRecord& into, ProvenanceRecord&& from) {
  auto move_append = [](auto& dst, auto&& src) {
    dst.insert(dst.end(), std::make_move_iterator(src.begin()),
               std::make_move_iterator(src.end()));
  };
  move_append(into.proof_cites, std::move(from.proof_cites));
  move_append(into.closure_cites, std::move(from.closure_cites));
  move_append(into.rule_cites, std::move(from.rule_cites));
  move_append(into.literal_cites, std::move(from.literal_cites));
  move_append(into.fact_cites, std::move(from.fact_cites));
  move_append(into.superiority_cites, std::move(from.superiority_cites));
}

// Stable first-occurrence dedupe: one object can witness several branches.
inline void dedupe_cites(ProvenanceRecord& rec) {
  auto stable_unique = [](auto& v) {
    auto out = v.begin();
    for (auto it = v.begin(); it != v.end(); ++it)
      if (std::find(v.begin(), out, *it) == out) {
        if (out != it) *out = std::move(*it);
        ++out;
      }
    v.erase(out, v.end());
  };
  stable_unique(rec.proof_cites);
  stable_unique(rec.closure_cites);
  stable_unique(rec.rule_cites);
  stable_unique(rec.literal_cites);
  stable_unique(rec.fact_cites);
  stable_unique(rec.superiority_cites);
}

inline core::Literal resolve(const cond::LiteralExpr& e, const EvalCtx& ctx, const Bindings& b) {
  core::Literal base = e.is_query ? *ctx.query : b.lits.at(e.var);
  return e.complemented ? core::complement(base) : base;
}

inline const ConclusionSet& target_set(const cond::ProofTarget& t, const EvalCtx& ctx) {
  if (t.current) return *ctx.proof;
  auto it = ctx.env->sets.find(t.closure);
  if (it == ctx.env->sets.end()) throw Error("closure not computed: " + t.closure);
  return it->second;
}

inline bool eval(const cond::CondPtr& c, const EvalCtx& ctx, const Bindings& b,
                 ProvenanceRecord* wit);

template <typename Fn>
inline bool eval_domain(const cond::Domain& dom, const EvalCtx& ctx, const Bindings& b, Fn&& fn) {
  // fn(element) -> bool "continue iteration"; returns false when fn stopped it.
  if (const auto* rd = std::get_if<cond::RuleDomain>(&dom)) {
    for (const core::Rule* r : ctx.index->lookup(rd->subset, resolve(rd->head, ctx, b)))
      if (!fn(r)) return false;
    return true;
  }
  const core::Rule* r = b.rules.at(std::get<cond::AntecedentDomain>(dom).rule_var);
  for (const core::Literal& a : r->antecedent)
    if (!fn(a)) return false;
  return true;
}

inline bool eval(const cond::CondPtr& c, const EvalCtx& ctx, const Bindings& b,
                 ProvenanceRecord* wit) {
  using namespace cond;
  return std::visit(
      cond::detail::overloaded{
          [](const TrueC&) { return true; },
          [](const FalseC&) { return false; },
          [&](const And& n) {
            for (const CondPtr& ch : n.children)
              if (!eval(ch, ctx, b, wit)) return false;
            return true;
          },
          [&](const Or& n) {
            for (const CondPtr& ch : n.children) {
              if (!wit) {
                if (eval(ch, ctx, b, nullptr)) return true;
              } else {
                ProvenanceRecord tmp;
                if (eval(ch, ctx, b, &tmp)) {
                  merge_witness(*wit, std::move(tmp));
                  return true;
                }
              }
            }
            return false;
          },
          [&](const Exists& n) {
            bool found = false;
            eval_domain(n.domain, ctx, b, [&](const auto& elem) {
              Bindings b2 = b;
              if constexpr (std::is_same_v<std::decay_t<decltype(elem)>, const core::Rule*>)
                b2.rules[n.var] = elem;
              else
                b2.lits[n.var] = elem;
              if (!wit) {
                if (eval(n.body, ctx, b2, nullptr)) {
                  found = true;
                  return false;
                }
              } else {
                ProvenanceRecord tmp;
                if (eval(n.body, ctx, b2, &tmp)) {
                  if constexpr (std::is_same_v<std::decay_t<decltype(elem)>, const core::Rule*>)
                    wit->rule_cites.push_back(elem->label);
                  else
                    wit->literal_cites.push_back(elem);
                  merge_witness(*wit, std::move(tmp));
                  found = true;
                  return false;
                }
              }
              return true;
            });
            return found;
          },
          [&](const ForAll& n) {
            bool all = true;
            eval_domain(n.domain, ctx, b, [&](const auto& elem) {
              Bindings b2 = b;
              if constexpr (std::is_same_v<std::decay_t<decltype(elem)>, const core::Rule*>)
                b2.rules[n.var] = elem;
              else
                b2.lits[n.var] = elem;
              if (!eval(n.body, ctx, b2, wit)) {
                all = false;
                return false;
              }
              return true;
            });
            return all;
          },
          [&](const In& n) {
            Conclusion m{n.tag, resolve(n.lit, ctx, b)};
            const ConclusionSet& s = target_set(n.target, ctx);
            if (!s.count(m)) return false;
            if (wit) {
              if (n.target.current)
                wit->proof_cites.push_back(m);
              else
                wit->closure_cites.emplace_back(n.target.closure, m);
            }
            return true;
          },
          [&](const NotIn& n) {
            Conclusion m{n.tag, resolve(n.lit, ctx, b)};
            return target_set(n.target, ctx).count(m) == 0;
          },
          [&](const Pure& n) {
            if (const auto* f = std::get_if<IsFact>(&n.atom)) {
              core::Literal lit = resolve(f->lit, ctx, b);
              if (!ctx.theory->facts.count(lit)) return false;
              if (wit) wit->fact_cites.push_back(lit);
              return true;
            }
            const auto& s = std::get<Superior>(n.atom);
            const std::string& left = b.rules.at(s.left)->label;
            const std::string& right = b.rules.at(s.right)->label;
            if (!ctx.theory->superior(left, right)) return false;
            if (wit) wit->superiority_cites.emplace_back(left, right);
            return true;
          },
          [&](const NotPure& n) {
            if (const auto* f = std::get_if<IsFact>(&n.atom))
              return ctx.theory->facts.count(resolve(f->lit, ctx, b)) == 0;
            const auto& s = std::get<Superior>(n.atom);
            return !ctx.theory->superior(b.rules.at(s.left)->label, b.rules.at(s.right)->label);
          },
      },
      c->node);
}

}  // namespace detail

// Truth of a condition for query literal q against proof set P and closures.
inline bool evaluate_condition(const cond::CondPtr& c, const core::DefeasibleTheory& d,
                               const core::Literal& q, const ConclusionSet& proof,
                               const ClosureEnv& env = {}) {
  cond::validate_condition(c);
  detail::RuleIndex index(d);
  return detail::eval(c, {&d, &index, &q, &proof, &env}, {}, nullptr);
}

struct SaturateOptions {
  std::vector<core::Literal> extra_literals;  // both signs of each atom join the universe
  std::optional<std::uint64_t> shuffle_seed;  // randomize scan order every pass
  bool trace = false;                         // record per-addition provenance
};

struct SaturationResult {
  ConclusionSet conclusions;
  ClosureEnv env;
  std::vector<ProvenanceRecord> trace;  // in derivation order when tracing
};

// Least fixpoint over every inference rule, computed stratum by stratum, with
// each declared closure frozen once the strata of its involved tags finish.
// Requires every rule to be P-disciplined (monotone conditions) and the logic
// to stratify; the remaining discipline checks are not enforced here.
inline SaturationResult saturate_closure(const cond::LogicDef& l,
                                         const core::DefeasibleTheory& d,
                                         const SaturateOptions& opt = {}) {
  core::validate(d);
  cond::DisciplineReport rep = cond::check_logic(l);
  for (const auto& [tag, flags] : rep.rule_flags)
    if (!flags.p_disciplined) throw cond::NotWellDisciplined(rep);
  if (!rep.strata.ok) throw cond::CyclicClosureDependency(rep.strata.cycle);
  const std::map<std::string, int>& level = rep.strata.level;

  std::set<core::Literal> universe = core::literal_universe(d);
  for (const core::Literal& extra : opt.extra_literals) {
    universe.insert(core::pos(extra.atom));
    universe.insert(core::neg(extra.atom));
  }
  std::vector<core::Literal> lits(universe.begin(), universe.end());

  std::map<int, std::vector<const cond::InferenceRule*>> strata;
  for (const cond::InferenceRule& r : l.rules) strata[level.at(r.tag.name)].push_back(&r);

  // A closure freezes after the highest stratum among its involved tags.
  std::map<int, std::vector<const cond::ClosureDecl*>> freeze;
  int last = 0;
  for (const auto& [lvl, _] : strata) last = std::max(last, lvl);
  for (const cond::ClosureDecl& c : l.closures) {
    int at = 0;
    for (const std::string& b : cond::involved_bases(l, c)) at = std::max(at, level.at(b));
    freeze[at].push_back(&c);
    last = std::max(last, at);
  }

  detail::RuleIndex index(d);
  SaturationResult result;
  std::mt19937_64 rng(opt.shuffle_seed.value_or(0));

  for (int lvl = 0; lvl <= last; ++lvl) {
    auto rules_it = strata.find(lvl);
    if (rules_it != strata.end()) {
      std::vector<std::pair<const cond::InferenceRule*, const core::Literal*>> scan;
      for (const cond::InferenceRule* r : rules_it->second)
        for (const core::Literal& q : lits) scan.emplace_back(r, &q);
      bool changed = true;
      while (changed) {
        changed = false;
        if (opt.shuffle_seed) std::shuffle(scan.begin(), scan.end(), rng);
        for (const auto& [rule, q] : scan) {
          Conclusion c{rule->tag, *q};
          if (result.conclusions.count(c)) continue;
          detail::EvalCtx ctx{&d, &index, q, &result.conclusions, &result.env};
          if (opt.trace) {
            ProvenanceRecord rec;
            if (!detail::eval(rule->condition, ctx, {}, &rec)) continue;
            rec.conclusion = c;
            detail::dedupe_cites(rec);
            result.trace.push_back(std::move(rec));
          } else {
            if (!detail::eval(rule->condition, ctx, {}, nullptr)) continue;
          }
          result.conclusions.insert(c);
          changed = true;
        }
      }
    }
    if (auto fz = freeze.find(lvl); fz != freeze.end()) {
      for (const cond::ClosureDecl* c : fz->second) {
        ConclusionSet subset;
        std::set<cond::Tag> declared(c->tags.begin(), c->tags.end());
        for (const Conclusion& conc : result.conclusions)
          if (declared.count(conc.tag)) subset.insert(conc);
        result.env.sets[c->name] = std::move(subset);
      }
    }
  }
  return result;
}

// Strict entry point: requires a fully well-disciplined logic.
inline std::pair<ConclusionSet, ClosureEnv> compute_closure(
    const cond::LogicDef& l, const core::DefeasibleTheory& d,
    const std::vector<core::Literal>& extra = {}) {
  cond::DisciplineReport rep = cond::check_logic(l);
  if (!rep.well_disciplined()) throw cond::NotWellDisciplined(std::move(rep));
  SaturateOptions opt;
  opt.extra_literals = extra;
  SaturationResult s = saturate_closure(l, d, opt);
  return {std::move(s.conclusions), std::move(s.env)};
}

enum class QueryResult { Proved, NotProved };

inline QueryResult query(const cond::LogicDef& l, const core::DefeasibleTheory& d,
                         const Conclusion& goal) {
  if (!l.find_rule(goal.tag))
    throw ValidationError("unknown tag: " + cond::to_string(goal.tag));
  auto [conclusions, env] = compute_closure(l, d, {goal.literal});
  return conclusions.count(goal) ? QueryResult::Proved : QueryResult::NotProved;
}

struct ProofCheck {
  bool valid = true;
  std::size_t invalid_at = 0;  // 1-based step when invalid
  std::string reason;
};

namespace detail {

// Closures reachable from the given tags, together with every tag those
// closures depend on. The proof's own tags join only via closure involvement.
inline std::pair<std::set<std::string>, std::set<cond::Tag>> closure_support(
    const cond::LogicDef& l, const std::set<cond::Tag>& start) {
  std::set<std::string> closures;
  std::set<cond::Tag> tags;
  std::vector<std::string> pending;
  auto visit_tag = [&](const cond::Tag& t) {
    if (const cond::InferenceRule* r = l.find_rule(t))
      for (const std::string& cn : cond::closure_names(r->condition))
        if (closures.insert(cn).second) pending.push_back(cn);
  };
  for (const cond::Tag& t : start) visit_tag(t);
  while (!pending.empty()) {
    std::string name = pending.back();
    pending.pop_back();
    const cond::ClosureDecl* c = l.find_closure(name);
    if (!c) throw ValidationError("condition references unknown closure: " + name);
    for (const cond::Tag& t :
         cond::reference_closure(l, {c->tags.begin(), c->tags.end()}))
      if (tags.insert(t).second) visit_tag(t);
  }
  return {std::move(closures), std::move(tags)};
}

}  // namespace detail

// Replays a proof step by step against its own prefix. Closure sets referenced
// by the steps are computed first from the sub-logic they depend on, which
// must itself be well-disciplined. The steps' tags need not be.
inline ProofCheck check_proof(const cond::LogicDef& l, const core::DefeasibleTheory& d,
                              const Proof& proof) {
  cond::validate_logic(l);
  core::validate(d);
  std::set<cond::Tag> step_tags;
  for (const Conclusion& c : proof) {
    if (!l.find_rule(c.tag)) throw ValidationError("unknown tag: " + cond::to_string(c.tag));
    step_tags.insert(c.tag);
  }

  auto [needed_closures, support_tags] = detail::closure_support(l, step_tags);
  ClosureEnv env;
  if (!needed_closures.empty()) {
    cond::LogicDef sub = cond::restrict_to_tags(l, support_tags);
    cond::DisciplineReport rep = cond::check_logic(sub);
    if (!rep.well_disciplined()) throw cond::NotWellDisciplined(std::move(rep));
    SaturateOptions opt;
    for (const Conclusion& c : proof) opt.extra_literals.push_back(c.literal);
    env = saturate_closure(sub, d, opt).env;
  }

  detail::RuleIndex index(d);
  ConclusionSet prefix;
  for (std::size_t i = 0; i < proof.size(); ++i) {
    const Conclusion& c = proof[i];
    const cond::InferenceRule* rule = l.find_rule(c.tag);
    detail::EvalCtx ctx{&d, &index, &c.literal, &prefix, &env};
    if (!detail::eval(rule->condition, ctx, {}, nullptr))
      return {false, i + 1, "applicability condition fails for " + to_string(c)};
    prefix.insert(c);
  }
  return {true, 0, ""};
}

struct DerivedProof {
  Proof steps;
  std::vector<ProvenanceRecord> provenance;  // parallel to steps
};

// Extracts a proof of `goal` from a traced saturation: the transitive closure
// of proof citations, replayed in derivation order. Conditions are monotone
// (P-disciplined), so every step stays applicable on its thinner prefix.
inline DerivedProof derive_proof(const cond::LogicDef& l, const core::DefeasibleTheory& d,
                                 const Conclusion& goal) {
  if (!l.find_rule(goal.tag))
    throw ValidationError("unknown tag: " + cond::to_string(goal.tag));
  cond::DisciplineReport rep = cond::check_logic(l);
  if (!rep.well_disciplined()) throw cond::NotWellDisciplined(std::move(rep));

  SaturateOptions opt;
  opt.extra_literals = {goal.literal};
  opt.trace = true;
  SaturationResult s = saturate_closure(l, d, opt);
  if (!s.conclusions.count(goal))
    throw NotAConsequence("not a consequence: " + to_string(goal));

  std::map<Conclusion, std::size_t> added_at;
  for (std::size_t i = 0; i < s.trace.size(); ++i) added_at[s.trace[i].conclusion] = i;

  std::set<std::size_t> needed;
  std::vector<std::size_t> work{added_at.at(goal)};
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    if (!needed.insert(i).second) continue;
    for (const Conclusion& cite : s.trace[i].proof_cites) work.push_back(added_at.at(cite));
  }

  DerivedProof out;
  for (std::size_t i : needed) {  // std::set iterates ascending = derivation order
    ProvenanceRecord rec = s.trace[i];
    rec.step = out.steps.size() + 1;
    out.steps.push_back(rec.conclusion);
    out.provenance.push_back(std::move(rec));
  }
  return out;
}

}  // namespace dflog::engine
