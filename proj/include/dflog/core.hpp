#pragma once
// Object language: literals, rules, superiority relation, defeasible theories.

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dflog::core {

// A propositional literal: atom name plus sign. complement is an involution.
struct Literal {
  std::string atom;
  bool positive = true;

  bool operator==(const Literal&) const = default;
  std::strong_ordering operator<=>(const Literal& o) const {
    if (auto c = atom <=> o.atom; c != 0) return c;
    return static_cast<int>(o.positive) <=> static_cast<int>(positive);
  }
};

inline Literal pos(std::string atom) { return {std::move(atom), true}; }
inline Literal neg(std::string atom) { return {std::move(atom), false}; }
inline Literal complement(const Literal& q) { return {q.atom, !q.positive}; }
inline std::string to_string(const Literal& q) { return q.positive ? q.atom : "~" + q.atom; }

enum class RuleKind { Strict, Defeasible, Defeater };

// Rule families selectable by head: R[q], R_s[q], R_sd[q].
enum class RuleSubset { All, Strict, StrictOrDefeasible };

inline bool in_subset(RuleKind k, RuleSubset s) {
  switch (s) {
    case RuleSubset::All: return true;
    case RuleSubset::Strict: return k == RuleKind::Strict;
    case RuleSubset::StrictOrDefeasible: return k != RuleKind::Defeater;
  }
  return false;
}

struct Rule {
  std::string label;
  RuleKind kind = RuleKind::Strict;
  std::set<Literal> antecedent;
  Literal consequent;

  bool operator==(const Rule&) const = default;
};

// D = (F, R, >). Superiority pairs are (superior, inferior) rule labels.
struct DefeasibleTheory {
  std::set<Literal> facts;
  std::vector<Rule> rules;
  std::set<std::pair<std::string, std::string>> superiority;

  bool operator==(const DefeasibleTheory&) const = default;

  const Rule* find_rule(const std::string& label) const {
    for (const Rule& r : rules)
      if (r.label == label) return &r;
    return nullptr;
  }

  bool superior(const std::string& a, const std::string& b) const {
    return superiority.count({a, b}) > 0;
  }
};

inline std::vector<const Rule*> rules_with_head(const DefeasibleTheory& d, const Literal& q,
                                                RuleSubset subset) {
  std::vector<const Rule*> out;
  for (const Rule& r : d.rules)
    if (r.consequent == q && in_subset(r.kind, subset)) out.push_back(&r);
  return out;
}

// Both signs of every atom mentioned anywhere in the theory.
inline std::set<Literal> literal_universe(const DefeasibleTheory& d) {
  std::set<std::string> atoms;
  for (const Literal& f : d.facts) atoms.insert(f.atom);
  for (const Rule& r : d.rules) {
    for (const Literal& a : r.antecedent) atoms.insert(a.atom);
    atoms.insert(r.consequent.atom);
  }
  std::set<Literal> out;
  for (const std::string& a : atoms) {
    out.insert(pos(a));
    out.insert(neg(a));
  }
  return out;
}

namespace detail {

inline bool find_superiority_cycle(const std::string& node,
                                   const std::map<std::string, std::vector<std::string>>& adj,
                                   std::map<std::string, int>& color,
                                   std::vector<std::string>& stack,
                                   std::vector<std::string>& cycle) {
  color[node] = 1;
  stack.push_back(node);
  if (auto it = adj.find(node); it != adj.end()) {
    for (const std::string& next : it->second) {
      if (color[next] == 1) {
        auto start = std::find(stack.begin(), stack.end(), next);
        cycle.assign(start, stack.end());
        cycle.push_back(next);
        return true;
      }
      if (color[next] == 0 && find_superiority_cycle(next, adj, color, stack, cycle)) return true;
    }
  }
  stack.pop_back();
  color[node] = 2;
  return false;
}

}  // namespace detail

// Throws ValidationError on duplicate labels, dangling superiority references,
// or a superiority cycle (self-pairs are cycles of length one).
inline void validate(const DefeasibleTheory& d) {
  std::set<std::string> labels;
  for (const Rule& r : d.rules)
    if (!labels.insert(r.label).second)
      throw ValidationError("duplicate rule label: " + r.label);

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [sup, inf] : d.superiority) {
    if (!labels.count(sup)) throw ValidationError("superiority references unknown rule: " + sup);
    if (!labels.count(inf)) throw ValidationError("superiority references unknown rule: " + inf);
    if (sup == inf) throw ValidationError("superiority cycle: " + sup + " > " + inf);
    adj[sup].push_back(inf);
  }

  std::map<std::string, int> color;
  std::vector<std::string> stack, cycle;
  for (const auto& [node, _] : adj) {
    if (color[node] == 0 && detail::find_superiority_cycle(node, adj, color, stack, cycle)) {
      std::string msg = "superiority cycle:";
      for (const std::string& n : cycle) msg += " " + n;
      throw ValidationError(msg);
    }
  }
}

}  // namespace dflog::core
