#pragma once
// Logic definitions: one applicability condition per signed tag, named closure
// declarations, and the distinguished main tags.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "condition.hpp"
#include "errors.hpp"

namespace dflog::cond {

struct InferenceRule {
  Tag tag;
  CondPtr condition;
};

// A named set holding every conclusion derivable with the declared tags.
struct ClosureDecl {
  std::string name;
  std::vector<Tag> tags;
};

struct LogicDef {
  std::string name;
  std::vector<InferenceRule> rules;
  std::vector<ClosureDecl> closures;
  std::vector<std::string> main_tags;

  const InferenceRule* find_rule(const Tag& t) const {
    for (const InferenceRule& r : rules)
      if (r.tag == t) return &r;
    return nullptr;
  }

  const ClosureDecl* find_closure(const std::string& n) const {
    for (const ClosureDecl& c : closures)
      if (c.name == n) return &c;
    return nullptr;
  }

  // Base tag names in order of first appearance among the rules.
  std::vector<std::string> base_names() const {
    std::vector<std::string> out;
    for (const InferenceRule& r : rules)
      if (std::find(out.begin(), out.end(), r.tag.name) == out.end()) out.push_back(r.tag.name);
    return out;
  }
};

// Structural invariants: at most one rule per signed tag, bound variables only,
// closure declarations are duplicate-free and name tags that have rules, every
// closure referenced from a condition is declared, main tags have rules.
inline void validate_logic(const LogicDef& l) {
  if (l.name.empty()) throw ValidationError("logic has no name");
  std::set<Tag> tags;
  for (const InferenceRule& r : l.rules) {
    if (r.tag.name.empty()) throw ValidationError("empty tag name");
    if (!tags.insert(r.tag).second)
      throw ValidationError("duplicate inference rule for tag " + to_string(r.tag));
    validate_condition(r.condition);
  }

  std::set<std::string> closure_decls;
  for (const ClosureDecl& c : l.closures) {
    if (c.name.empty() || c.name == "proof")
      throw ValidationError("invalid closure name: " + c.name);
    if (!closure_decls.insert(c.name).second)
      throw ValidationError("duplicate closure declaration: " + c.name);
    if (c.tags.empty()) throw ValidationError("closure " + c.name + " declares no tags");
    std::set<Tag> seen;
    for (const Tag& t : c.tags) {
      if (!seen.insert(t).second)
        throw ValidationError("closure " + c.name + " repeats tag " + to_string(t));
      if (!tags.count(t))
        throw ValidationError("closure " + c.name + " names tag " + to_string(t) +
                              " which has no inference rule");
    }
  }

  for (const InferenceRule& r : l.rules)
    for (const std::string& ref : closure_names(r.condition))
      if (!closure_decls.count(ref))
        throw ValidationError("condition for " + to_string(r.tag) +
                              " references unknown closure: " + ref);

  std::set<std::string> bases;
  for (const Tag& t : tags) bases.insert(t.name);
  std::set<std::string> mains;
  for (const std::string& m : l.main_tags) {
    if (!bases.count(m)) throw ValidationError("main tag has no inference rule: " + m);
    if (!mains.insert(m).second) throw ValidationError("duplicate main tag: " + m);
  }
}

// Smallest superset of seed closed under following membership atoms that test
// the proof being built. Closure-targeted atoms are not followed.
inline std::set<Tag> reference_closure(const LogicDef& l, std::set<Tag> seed) {
  std::vector<Tag> work(seed.begin(), seed.end());
  while (!work.empty()) {
    Tag t = work.back();
    work.pop_back();
    if (const InferenceRule* r = l.find_rule(t))
      for (const Tag& next : current_proof_tags(r->condition))
        if (seed.insert(next).second) work.push_back(next);
  }
  return seed;
}

// Base names of every inference rule a closure depends on.
inline std::set<std::string> involved_bases(const LogicDef& l, const ClosureDecl& c) {
  std::set<std::string> out;
  for (const Tag& t : reference_closure(l, {c.tags.begin(), c.tags.end()})) out.insert(t.name);
  return out;
}

// Sub-logic over a tag subset: rules with those tags, closures declared wholly
// inside the subset, main tags that survive.
inline LogicDef restrict_to_tags(const LogicDef& l, const std::set<Tag>& keep) {
  LogicDef out;
  out.name = l.name;
  std::set<std::string> kept_bases;
  for (const InferenceRule& r : l.rules)
    if (keep.count(r.tag)) {
      out.rules.push_back(r);
      kept_bases.insert(r.tag.name);
    }
  for (const ClosureDecl& c : l.closures) {
    bool all = true;
    for (const Tag& t : c.tags)
      if (!keep.count(t)) all = false;
    if (all) out.closures.push_back(c);
  }
  for (const std::string& m : l.main_tags)
    if (kept_bases.count(m)) out.main_tags.push_back(m);
  return out;
}

}  // namespace dflog::cond
