#pragma once
// Seeded random generators: defeasible theories for property suites, and
// well-formed applicability conditions for the strong-negation algebra checks.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "condition.hpp"
#include "core.hpp"

namespace dflog::gen {

struct TheoryGenConfig {
  std::uint64_t seed = 0;
  int max_atoms = 5;
  int max_rules = 10;
  int max_body = 3;
  double fact_prob = 0.25;         // expected facts as a fraction of atoms
  double strict_weight = 0.3;      // rule kind mix
  double defeasible_weight = 0.5;
  double defeater_weight = 0.2;
  double sup_density = 0.3;        // acceptance rate for conflicting rule pairs
};

namespace detail {

// Path left -> ... -> right in the superiority relation seen as a graph.
inline bool sup_path(const std::map<std::string, std::set<std::string>>& adj,
                     const std::string& left, const std::string& right) {
  std::set<std::string> seen{left};
  std::vector<std::string> work{left};
  while (!work.empty()) {
    std::string at = work.back();
    work.pop_back();
    if (at == right) return true;
    auto it = adj.find(at);
    if (it == adj.end()) continue;
    for (const std::string& next : it->second)
      if (seen.insert(next).second) work.push_back(next);
  }
  return false;
}

}  // namespace detail

// Deterministic per seed. Superiority stays acyclic by construction: a pair is
// dropped when the reverse direction is already reachable.
inline core::DefeasibleTheory gen_theory(const TheoryGenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  int n_atoms = std::uniform_int_distribution<int>(1, cfg.max_atoms)(rng);
  std::vector<std::string> atoms;
  for (int i = 0; i < n_atoms; ++i) atoms.push_back("a" + std::to_string(i));
  auto rand_literal = [&]() {
    const std::string& atom = atoms[std::uniform_int_distribution<std::size_t>(
        0, atoms.size() - 1)(rng)];
    return coin(rng) < 0.5 ? core::pos(atom) : core::neg(atom);
  };

  core::DefeasibleTheory d;
  int n_facts = std::binomial_distribution<int>(2 * n_atoms, cfg.fact_prob / 2)(rng);
  for (int i = 0; i < n_facts; ++i) d.facts.insert(rand_literal());

  std::discrete_distribution<int> kind_dist(
      {cfg.strict_weight, cfg.defeasible_weight, cfg.defeater_weight});
  int n_rules = std::uniform_int_distribution<int>(0, cfg.max_rules)(rng);
  for (int i = 0; i < n_rules; ++i) {
    core::Rule r;
    r.label = "r" + std::to_string(i);
    r.kind = static_cast<core::RuleKind>(kind_dist(rng));
    int body = std::uniform_int_distribution<int>(0, cfg.max_body)(rng);
    for (int j = 0; j < body; ++j) r.antecedent.insert(rand_literal());
    r.consequent = rand_literal();
    d.rules.push_back(std::move(r));
  }

  std::map<std::string, std::set<std::string>> adj;
  for (const core::Rule& a : d.rules)
    for (const core::Rule& b : d.rules) {
      if (a.label == b.label) continue;
      bool conflict = a.consequent == core::complement(b.consequent);
      double accept = conflict ? cfg.sup_density : cfg.sup_density / 4;
      if (coin(rng) >= accept) continue;
      if (detail::sup_path(adj, b.label, a.label)) continue;
      if (adj[a.label].insert(b.label).second) d.superiority.insert({a.label, b.label});
    }

  core::validate(d);
  return d;
}

struct ConditionGenConfig {
  std::uint64_t seed = 0;
  int max_depth = 4;
  bool pos_only = false;         // never emit absence atoms
  bool neg_only = false;         // never emit membership atoms
  bool quantifier_free = false;
  std::vector<cond::Tag> tags = {cond::plus("delta"), cond::minus("delta"),
                                 cond::plus("d"), cond::minus("d")};
  std::vector<std::string> closures;  // usable proof-set targets besides the proof
};

namespace detail {

struct CondGen {
  const ConditionGenConfig& cfg;
  std::mt19937_64 rng;
  std::vector<std::string> rule_vars;  // bound quantifier variables in scope
  std::vector<std::string> lit_vars;
  int fresh = 0;

  explicit CondGen(const ConditionGenConfig& c) : cfg(c), rng(c.seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  cond::Tag tag() { return cfg.tags[pick(static_cast<int>(cfg.tags.size()))]; }

  cond::LiteralExpr lit() {
    cond::LiteralExpr e =
        lit_vars.empty() || pick(2) == 0
            ? cond::query_lit()
            : cond::var_lit(lit_vars[pick(static_cast<int>(lit_vars.size()))]);
    return pick(2) == 0 ? e : cond::complement(e);
  }

  cond::ProofTarget target() {
    if (!cfg.closures.empty() && pick(3) == 0)
      return cond::closure_ref(cfg.closures[pick(static_cast<int>(cfg.closures.size()))]);
    return cond::current_proof();
  }

  cond::CondPtr leaf() {
    for (;;) {
      switch (pick(7)) {
        case 0:
          if (cfg.neg_only) break;
          return cond::c_in(tag(), lit(), target());
        case 1:
          if (cfg.pos_only) break;
          return cond::c_notin(tag(), lit(), target());
        case 2:
          return cond::c_fact(lit());
        case 3:
          return cond::c_not_fact(lit());
        case 4:
          if (rule_vars.empty()) break;
          return cond::c_sup(rule_vars[pick(static_cast<int>(rule_vars.size()))],
                             rule_vars[pick(static_cast<int>(rule_vars.size()))]);
        case 5:
          return cond::c_true();
        default:
          return cond::c_false();
      }
    }
  }

  cond::Domain domain(bool& binds_rule) {
    if (!rule_vars.empty() && pick(2) == 0) {
      binds_rule = false;
      return cond::d_antecedent(rule_vars[pick(static_cast<int>(rule_vars.size()))]);
    }
    binds_rule = true;
    core::RuleSubset subsets[] = {core::RuleSubset::All, core::RuleSubset::Strict,
                                  core::RuleSubset::StrictOrDefeasible};
    return cond::d_rules(subsets[pick(3)], lit());
  }

  cond::CondPtr node(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(cfg.quantifier_free ? 3 : 5)) {
      case 0:
        return leaf();
      case 1:
      case 2: {
        std::vector<cond::CondPtr> kids;
        int n = 2 + pick(2);
        for (int i = 0; i < n; ++i) kids.push_back(node(depth - 1));
        return pick(2) == 0 ? cond::c_and(std::move(kids)) : cond::c_or(std::move(kids));
      }
      default: {
        bool binds_rule = false;
        cond::Domain dom = domain(binds_rule);
        std::string var = (binds_rule ? "R" : "L") + std::to_string(fresh++);
        auto& scope = binds_rule ? rule_vars : lit_vars;
        scope.push_back(var);
        cond::CondPtr body = node(depth - 1);
        scope.pop_back();
        return pick(2) == 0 ? cond::c_exists(var, std::move(dom), std::move(body))
                            : cond::c_forall(var, std::move(dom), std::move(body));
      }
    }
  }
};

}  // namespace detail

// Valid by construction: fresh variable names, superiority only over bound
// rule variables, closure targets only from the configured list.
inline cond::CondPtr gen_condition(const ConditionGenConfig& cfg) {
  detail::CondGen g(cfg);
  return g.node(cfg.max_depth);
}

}  // namespace dflog::gen
