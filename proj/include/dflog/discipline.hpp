#pragma once
// Discipline analysis over a logic definition: per-rule syntactic flags,
// strong-negation pairing of signed tags, closure stratification, closure
// even-handedness, and the combined verdict.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "logic.hpp"
#include "logic_io.hpp"

namespace dflog::cond {

class CyclicClosureDependency : public Error {
 public:
  explicit CyclicClosureDependency(std::vector<std::string> cycle)
      : Error("cyclic closure dependency: " + render(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const { return cycle_; }

  static std::string render(const std::vector<std::string>& cycle) {
    std::string out;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += " -> ";
      out += cycle[i];
    }
    return out;
  }

 private:
  std::vector<std::string> cycle_;
};

struct RuleFlags {
  bool nnf = true;  // trees are NNF by construction
  bool p_disciplined = false;
  bool pos_only = false;
  bool neg_only = false;
};

struct Stratification {
  bool ok = false;
  std::map<std::string, int> level;  // base tag name -> stratum
  std::vector<std::string> cycle;    // witness when !ok
};

struct DisciplineReport {
  std::string logic_name;
  std::map<std::string, RuleFlags> rule_flags;  // keyed by signed tag text
  std::map<std::string, bool> posn_pairs;       // bases having both signed rules
  Stratification strata;
  std::map<std::string, bool> even_handed;  // per declared closure
  std::vector<std::string> violations;

  bool well_disciplined() const { return violations.empty(); }
};

namespace detail {

struct DepGraph {
  std::vector<std::string> nodes;                 // base names in rule order
  std::map<std::string, int> id;
  std::set<std::tuple<int, int, int>> edges;      // (from, to, weight)

  void add_edge(const std::string& from, const std::string& to, int w) {
    edges.insert({id.at(from), id.at(to), w});
  }
};

// Tarjan strongly connected components; assigns component ids in reverse
// topological order.
struct Scc {
  const DepGraph& g;
  std::vector<std::vector<int>> adj;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  explicit Scc(const DepGraph& g_) : g(g_) {
    int n = static_cast<int>(g.nodes.size());
    adj.resize(n);
    for (const auto& [f, t, w] : g.edges) adj[f].push_back(t);
    index.assign(n, -1);
    low.assign(n, 0);
    comp.assign(n, -1);
    on_stack.assign(n, false);
    for (int v = 0; v < n; ++v)
      if (index[v] < 0) dfs(v);
  }

  void dfs(int v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = next_comp;
        if (w == v) break;
      }
      ++next_comp;
    }
  }
};

// Shortest node path from `src` to `dst` following edges, both inside one SCC.
inline std::vector<int> path_within(const DepGraph& g, const Scc& scc, int src, int dst) {
  std::vector<std::vector<int>> adj(g.nodes.size());
  for (const auto& [f, t, w] : g.edges)
    if (scc.comp[f] == scc.comp[src] && scc.comp[t] == scc.comp[src]) adj[f].push_back(t);
  std::map<int, int> parent;
  std::vector<int> queue{src};
  parent[src] = src;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    if (v == dst && qi > 0) break;
    for (int w : adj[v])
      if (!parent.count(w)) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  std::vector<int> path;
  if (!parent.count(dst)) return path;
  for (int v = dst; v != src; v = parent.at(v)) path.push_back(v);
  path.push_back(src);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

// Assign each base tag a stratum such that proof references never look upward
// and closure references only look strictly downward. Fails exactly when a
// closure participates in a dependency cycle.
inline Stratification stratify_check(const LogicDef& l) {
  detail::DepGraph g;
  for (const std::string& b : l.base_names()) {
    g.id[b] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(b);
  }
  for (const InferenceRule& r : l.rules) {
    for (const Tag& t : referenced_tags(r.condition))
      if (g.id.count(t.name)) g.add_edge(t.name, r.tag.name, 0);
    for (const std::string& cn : closure_names(r.condition)) {
      const ClosureDecl* c = l.find_closure(cn);
      if (!c) continue;
      for (const std::string& b : involved_bases(l, *c)) g.add_edge(b, r.tag.name, 1);
    }
  }

  detail::Scc scc(g);
  Stratification out;
  for (const auto& [f, t, w] : g.edges) {
    if (w == 1 && scc.comp[f] == scc.comp[t]) {
      std::vector<int> back = detail::path_within(g, scc, t, f);
      for (int v : back) out.cycle.push_back(g.nodes[v]);
      out.cycle.push_back(g.nodes[t]);
      out.ok = false;
      return out;
    }
  }

  // Longest-path levels over the component DAG. Tarjan numbers components in
  // reverse topological order, so walk them from high to low.
  std::vector<int> comp_level(scc.next_comp, 0);
  for (int c = scc.next_comp - 1; c >= 0; --c)
    for (const auto& [f, t, w] : g.edges)
      if (scc.comp[f] == c && scc.comp[t] != c)
        comp_level[scc.comp[t]] =
            std::max(comp_level[scc.comp[t]], comp_level[c] + w);
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    out.level[g.nodes[v]] = comp_level[scc.comp[v]];
  out.ok = true;
  return out;
}

inline std::map<std::string, int> stratify(const LogicDef& l) {
  Stratification s = stratify_check(l);
  if (!s.ok) throw CyclicClosureDependency(s.cycle);
  return s.level;
}

inline DisciplineReport check_logic(const LogicDef& l) {
  validate_logic(l);
  DisciplineReport rep;
  rep.logic_name = l.name;

  for (const InferenceRule& r : l.rules) {
    RuleFlags f;
    f.nnf = true;
    f.p_disciplined = is_p_disciplined(r.condition);
    f.pos_only = is_pos_only(r.condition);
    f.neg_only = is_neg_only(r.condition);
    rep.rule_flags[to_string(r.tag)] = f;
    if (!f.p_disciplined)
      rep.violations.push_back("rule " + to_string(r.tag) +
                               " is not P-disciplined: it tests absence in the proof being built");
  }

  for (const std::string& base : l.base_names()) {
    const InferenceRule* plus_rule = l.find_rule(plus(base));
    const InferenceRule* minus_rule = l.find_rule(minus(base));
    if (!plus_rule || !minus_rule) continue;
    bool paired = canonical_equal(minus_rule->condition, sneg(plus_rule->condition));
    rep.posn_pairs[base] = paired;
    if (!paired)
      rep.violations.push_back("rule -" + base + " is not the strong negation of rule +" + base);
  }

  rep.strata = stratify_check(l);
  if (!rep.strata.ok)
    rep.violations.push_back("cyclic closure dependency: " +
                             CyclicClosureDependency::render(rep.strata.cycle));

  for (const ClosureDecl& c : l.closures) {
    std::set<Tag> declared(c.tags.begin(), c.tags.end());
    bool even = true;
    for (const Tag& t : c.tags)
      if (!declared.count(opposite(t))) even = false;
    rep.even_handed[c.name] = even;
    if (!even) rep.violations.push_back("closure " + c.name + " is not even-handed");
  }

  return rep;
}

inline std::string to_string(const DisciplineReport& rep) {
  std::string out = "logic " + rep.logic_name + "\n";
  for (const auto& [tag, f] : rep.rule_flags) {
    out += "rule " + tag + ":";
    out += f.nnf ? " nnf" : "";
    out += f.p_disciplined ? " p-disciplined" : " not-p-disciplined";
    if (f.pos_only) out += " pos-only";
    if (f.neg_only) out += " neg-only";
    out += "\n";
  }
  for (const auto& [base, ok] : rep.posn_pairs)
    out += "pair " + base + ": " + (ok ? "strong-negation paired" : "not paired") + "\n";
  if (rep.strata.ok) {
    out += "strata:";
    for (const auto& [base, lvl] : rep.strata.level)
      out += " " + base + "=" + std::to_string(lvl);
    out += "\n";
  } else {
    out += "strata: cycle " + CyclicClosureDependency::render(rep.strata.cycle) + "\n";
  }
  for (const auto& [name, even] : rep.even_handed)
    out += "closure " + name + ": " + (even ? "even-handed" : "not even-handed") + "\n";
  if (rep.violations.empty()) {
    out += "verdict: well-disciplined\n";
  } else {
    out += "violations:\n";
    for (const std::string& v : rep.violations) out += "  - " + v + "\n";
    out += "verdict: not well-disciplined\n";
  }
  return out;
}

class NotWellDisciplined : public Error {
 public:
  explicit NotWellDisciplined(DisciplineReport rep)
      : Error(summarize(rep)), report_(std::move(rep)) {}

  const DisciplineReport& report() const { return report_; }

 private:
  static std::string summarize(const DisciplineReport& rep) {
    std::string out = "logic " + rep.logic_name + " is not well-disciplined";
    for (const std::string& v : rep.violations) out += "; " + v;
    return out;
  }

  DisciplineReport report_;
};

}  // namespace dflog::cond
