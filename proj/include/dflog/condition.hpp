#pragma once
// Applicability conditions for inference rules: negation-normal-form ASTs over
// the current proof and named closure sets, the strong-negation transform,
// classical NNF negation, alpha-invariant ordering and canonicalization, and
// the syntactic classifiers used by the discipline checks.

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"
#include "errors.hpp"

namespace dflog::cond {

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

// A signed proof tag such as +delta or -partial.
struct Tag {
  std::string name;
  bool positive = true;

  bool operator==(const Tag&) const = default;
  std::strong_ordering operator<=>(const Tag& o) const {
    if (auto c = name <=> o.name; c != 0) return c;
    return static_cast<int>(o.positive) <=> static_cast<int>(positive);
  }
};

inline Tag plus(std::string name) { return {std::move(name), true}; }
inline Tag minus(std::string name) { return {std::move(name), false}; }
inline Tag opposite(const Tag& t) { return {t.name, !t.positive}; }
inline std::string to_string(const Tag& t) { return (t.positive ? "+" : "-") + t.name; }

// The literal slot of an atom: the queried literal q, a bound variable, or the
// complement of either. Taking the complement twice normalizes away.
struct LiteralExpr {
  bool is_query = true;
  std::string var;
  bool complemented = false;

  bool operator==(const LiteralExpr&) const = default;
};

inline LiteralExpr query_lit() { return {true, "", false}; }
inline LiteralExpr var_lit(std::string v) { return {false, std::move(v), false}; }
inline LiteralExpr complement(LiteralExpr e) {
  e.complemented = !e.complemented;
  return e;
}

// Membership atoms test the proof being built or a named frozen closure.
struct ProofTarget {
  bool current = true;
  std::string closure;

  bool operator==(const ProofTarget&) const = default;
};

inline ProofTarget current_proof() { return {true, ""}; }
inline ProofTarget closure_ref(std::string name) { return {false, std::move(name)}; }

// Quantification domains: a rule family selected by head, or the antecedent of
// a rule bound by an enclosing quantifier.
struct RuleDomain {
  core::RuleSubset subset = core::RuleSubset::All;
  LiteralExpr head;

  bool operator==(const RuleDomain&) const = default;
};

struct AntecedentDomain {
  std::string rule_var;

  bool operator==(const AntecedentDomain&) const = default;
};

using Domain = std::variant<RuleDomain, AntecedentDomain>;

// Proof-independent atoms: fact membership and the superiority relation.
struct IsFact {
  LiteralExpr lit;

  bool operator==(const IsFact&) const = default;
};

struct Superior {
  std::string left, right;

  bool operator==(const Superior&) const = default;
};

using PureAtom = std::variant<IsFact, Superior>;

struct Condition;
using CondPtr = std::shared_ptr<const Condition>;

struct TrueC {};
struct FalseC {};
struct And {
  std::vector<CondPtr> children;
};
struct Or {
  std::vector<CondPtr> children;
};
struct Exists {
  std::string var;
  Domain domain;
  CondPtr body;
};
struct ForAll {
  std::string var;
  Domain domain;
  CondPtr body;
};
struct In {
  Tag tag;
  LiteralExpr lit;
  ProofTarget target;
};
struct NotIn {
  Tag tag;
  LiteralExpr lit;
  ProofTarget target;
};
struct Pure {
  PureAtom atom;
};
struct NotPure {
  PureAtom atom;
};

// Negation appears only as NotIn / NotPure leaves, so every tree is in NNF.
struct Condition {
  using Node = std::variant<TrueC, FalseC, And, Or, Exists, ForAll, In, NotIn, Pure, NotPure>;
  Node node;
};

inline CondPtr make(Condition::Node n) {
  return std::make_shared<const Condition>(Condition{std::move(n)});
}

inline CondPtr c_true() { return make(TrueC{}); }
inline CondPtr c_false() { return make(FalseC{}); }
inline CondPtr c_and(std::vector<CondPtr> cs) { return make(And{std::move(cs)}); }
inline CondPtr c_or(std::vector<CondPtr> cs) { return make(Or{std::move(cs)}); }
inline CondPtr c_exists(std::string var, Domain dom, CondPtr body) {
  return make(Exists{std::move(var), std::move(dom), std::move(body)});
}
inline CondPtr c_forall(std::string var, Domain dom, CondPtr body) {
  return make(ForAll{std::move(var), std::move(dom), std::move(body)});
}
inline CondPtr c_in(Tag t, LiteralExpr l, ProofTarget tgt) {
  return make(In{std::move(t), std::move(l), std::move(tgt)});
}
inline CondPtr c_notin(Tag t, LiteralExpr l, ProofTarget tgt) {
  return make(NotIn{std::move(t), std::move(l), std::move(tgt)});
}
inline CondPtr c_fact(LiteralExpr l) { return make(Pure{IsFact{std::move(l)}}); }
inline CondPtr c_not_fact(LiteralExpr l) { return make(NotPure{IsFact{std::move(l)}}); }
inline CondPtr c_sup(std::string a, std::string b) {
  return make(Pure{Superior{std::move(a), std::move(b)}});
}
inline CondPtr c_not_sup(std::string a, std::string b) {
  return make(NotPure{Superior{std::move(a), std::move(b)}});
}
inline Domain d_rules(core::RuleSubset s, LiteralExpr head) {
  return RuleDomain{s, std::move(head)};
}
inline Domain d_antecedent(std::string rule_var) { return AntecedentDomain{std::move(rule_var)}; }

// Strong negation. Membership in the proof being built flips the tag sign and
// keeps the membership positive; everything else dualizes structurally.
inline CondPtr sneg(const CondPtr& c) {
  return std::visit(
      detail::overloaded{
          [](const TrueC&) { return c_false(); },
          [](const FalseC&) { return c_true(); },
          [](const And& n) {
            std::vector<CondPtr> cs;
            cs.reserve(n.children.size());
            for (const CondPtr& ch : n.children) cs.push_back(sneg(ch));
            return c_or(std::move(cs));
          },
          [](const Or& n) {
            std::vector<CondPtr> cs;
            cs.reserve(n.children.size());
            for (const CondPtr& ch : n.children) cs.push_back(sneg(ch));
            return c_and(std::move(cs));
          },
          [](const Exists& n) { return c_forall(n.var, n.domain, sneg(n.body)); },
          [](const ForAll& n) { return c_exists(n.var, n.domain, sneg(n.body)); },
          [](const In& n) { return c_in(opposite(n.tag), n.lit, n.target); },
          [](const NotIn& n) { return c_in(n.tag, n.lit, n.target); },
          [](const Pure& n) { return make(NotPure{n.atom}); },
          [](const NotPure& n) { return make(Pure{n.atom}); },
      },
      c->node);
}

// Classical negation pushed into NNF: dualizes connectives and toggles every
// leaf between its positive and negated form, leaving tags untouched.
inline CondPtr nnf_negate(const CondPtr& c) {
  return std::visit(
      detail::overloaded{
          [](const TrueC&) { return c_false(); },
          [](const FalseC&) { return c_true(); },
          [](const And& n) {
            std::vector<CondPtr> cs;
            cs.reserve(n.children.size());
            for (const CondPtr& ch : n.children) cs.push_back(nnf_negate(ch));
            return c_or(std::move(cs));
          },
          [](const Or& n) {
            std::vector<CondPtr> cs;
            cs.reserve(n.children.size());
            for (const CondPtr& ch : n.children) cs.push_back(nnf_negate(ch));
            return c_and(std::move(cs));
          },
          [](const Exists& n) { return c_forall(n.var, n.domain, nnf_negate(n.body)); },
          [](const ForAll& n) { return c_exists(n.var, n.domain, nnf_negate(n.body)); },
          [](const In& n) { return c_notin(n.tag, n.lit, n.target); },
          [](const NotIn& n) { return c_in(n.tag, n.lit, n.target); },
          [](const Pure& n) { return make(NotPure{n.atom}); },
          [](const NotPure& n) { return make(Pure{n.atom}); },
      },
      c->node);
}

namespace detail {

// Alpha-invariant structural ordering: bound variables compare by binder depth,
// names never matter. Unbound variables (pre-validation trees) fall back to
// name comparison.
using CmpEnv = std::map<std::string, int>;

inline std::pair<int, std::string> resolve_var(const std::string& v, const CmpEnv& env) {
  auto it = env.find(v);
  if (it == env.end()) return {-1, v};
  return {it->second, std::string{}};
}

inline std::strong_ordering cmp_lit(const LiteralExpr& a, const CmpEnv& ea, const LiteralExpr& b,
                                    const CmpEnv& eb) {
  if (a.is_query != b.is_query) return a.is_query ? std::strong_ordering::less
                                                  : std::strong_ordering::greater;
  if (!a.is_query) {
    if (auto c = resolve_var(a.var, ea) <=> resolve_var(b.var, eb); c != 0) return c;
  }
  return static_cast<int>(a.complemented) <=> static_cast<int>(b.complemented);
}

inline std::strong_ordering cmp_target(const ProofTarget& a, const ProofTarget& b) {
  if (a.current != b.current)
    return a.current ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.closure <=> b.closure;
}

inline std::strong_ordering cmp_domain(const Domain& a, const CmpEnv& ea, const Domain& b,
                                       const CmpEnv& eb) {
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  if (const auto* ra = std::get_if<RuleDomain>(&a)) {
    const auto& rb = std::get<RuleDomain>(b);
    if (auto c = static_cast<int>(ra->subset) <=> static_cast<int>(rb.subset); c != 0) return c;
    return cmp_lit(ra->head, ea, rb.head, eb);
  }
  const auto& aa = std::get<AntecedentDomain>(a);
  const auto& ab = std::get<AntecedentDomain>(b);
  return resolve_var(aa.rule_var, ea) <=> resolve_var(ab.rule_var, eb);
}

inline std::strong_ordering cmp_pure(const PureAtom& a, const CmpEnv& ea, const PureAtom& b,
                                     const CmpEnv& eb) {
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  if (const auto* fa = std::get_if<IsFact>(&a))
    return cmp_lit(fa->lit, ea, std::get<IsFact>(b).lit, eb);
  const auto& sa = std::get<Superior>(a);
  const auto& sb = std::get<Superior>(b);
  if (auto c = resolve_var(sa.left, ea) <=> resolve_var(sb.left, eb); c != 0) return c;
  return resolve_var(sa.right, ea) <=> resolve_var(sb.right, eb);
}

inline std::strong_ordering cmp_cond(const CondPtr& a, const CmpEnv& ea, int da, const CondPtr& b,
                                     const CmpEnv& eb, int db) {
  if (auto c = a->node.index() <=> b->node.index(); c != 0) return c;
  return std::visit(
      overloaded{
          [](const TrueC&, const TrueC&) { return std::strong_ordering::equal; },
          [](const FalseC&, const FalseC&) { return std::strong_ordering::equal; },
          [&](const And& x, const And& y) {
            for (std::size_t i = 0; i < std::min(x.children.size(), y.children.size()); ++i)
              if (auto c = cmp_cond(x.children[i], ea, da, y.children[i], eb, db); c != 0)
                return c;
            return x.children.size() <=> y.children.size();
          },
          [&](const Or& x, const Or& y) {
            for (std::size_t i = 0; i < std::min(x.children.size(), y.children.size()); ++i)
              if (auto c = cmp_cond(x.children[i], ea, da, y.children[i], eb, db); c != 0)
                return c;
            return x.children.size() <=> y.children.size();
          },
          [&](const Exists& x, const Exists& y) {
            if (auto c = cmp_domain(x.domain, ea, y.domain, eb); c != 0) return c;
            CmpEnv ea2 = ea, eb2 = eb;
            ea2[x.var] = da;
            eb2[y.var] = db;
            return cmp_cond(x.body, ea2, da + 1, y.body, eb2, db + 1);
          },
          [&](const ForAll& x, const ForAll& y) {
            if (auto c = cmp_domain(x.domain, ea, y.domain, eb); c != 0) return c;
            CmpEnv ea2 = ea, eb2 = eb;
            ea2[x.var] = da;
            eb2[y.var] = db;
            return cmp_cond(x.body, ea2, da + 1, y.body, eb2, db + 1);
          },
          [&](const In& x, const In& y) {
            if (auto c = x.tag <=> y.tag; c != 0) return c;
            if (auto c = cmp_lit(x.lit, ea, y.lit, eb); c != 0) return c;
            return cmp_target(x.target, y.target);
          },
          [&](const NotIn& x, const NotIn& y) {
            if (auto c = x.tag <=> y.tag; c != 0) return c;
            if (auto c = cmp_lit(x.lit, ea, y.lit, eb); c != 0) return c;
            return cmp_target(x.target, y.target);
          },
          [&](const Pure& x, const Pure& y) { return cmp_pure(x.atom, ea, y.atom, eb); },
          [&](const NotPure& x, const NotPure& y) { return cmp_pure(x.atom, ea, y.atom, eb); },
          [](const auto&, const auto&) { return std::strong_ordering::equal; },
      },
      a->node, b->node);
}

}  // namespace detail

// Total order on conditions, invariant under renaming of bound variables.
inline std::strong_ordering compare(const CondPtr& a, const CondPtr& b) {
  return detail::cmp_cond(a, {}, 0, b, {}, 0);
}

inline bool equal(const CondPtr& a, const CondPtr& b) { return compare(a, b) == 0; }

namespace detail {

inline CondPtr canon(const CondPtr& c, const CmpEnv& env, int depth);

template <typename NodeT>
inline CondPtr canon_junction(const NodeT& n, bool conjunction, const CmpEnv& env, int depth) {
  std::vector<CondPtr> flat;
  for (const CondPtr& ch : n.children) {
    CondPtr k = canon(ch, env, depth);
    if (conjunction) {
      if (std::holds_alternative<TrueC>(k->node)) continue;
      if (std::holds_alternative<FalseC>(k->node)) return c_false();
      if (const auto* sub = std::get_if<And>(&k->node)) {
        flat.insert(flat.end(), sub->children.begin(), sub->children.end());
        continue;
      }
    } else {
      if (std::holds_alternative<FalseC>(k->node)) continue;
      if (std::holds_alternative<TrueC>(k->node)) return c_true();
      if (const auto* sub = std::get_if<Or>(&k->node)) {
        flat.insert(flat.end(), sub->children.begin(), sub->children.end());
        continue;
      }
    }
    flat.push_back(std::move(k));
  }
  std::stable_sort(flat.begin(), flat.end(), [&](const CondPtr& x, const CondPtr& y) {
    return cmp_cond(x, env, depth, y, env, depth) < 0;
  });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [&](const CondPtr& x, const CondPtr& y) {
                           return cmp_cond(x, env, depth, y, env, depth) == 0;
                         }),
             flat.end());
  if (flat.empty()) return conjunction ? c_true() : c_false();
  if (flat.size() == 1) return flat.front();
  return conjunction ? c_and(std::move(flat)) : c_or(std::move(flat));
}

inline CondPtr canon(const CondPtr& c, const CmpEnv& env, int depth) {
  return std::visit(
      overloaded{
          [&](const TrueC&) { return c; },
          [&](const FalseC&) { return c; },
          [&](const And& n) { return canon_junction(n, true, env, depth); },
          [&](const Or& n) { return canon_junction(n, false, env, depth); },
          [&](const Exists& n) {
            CmpEnv env2 = env;
            env2[n.var] = depth;
            return c_exists(n.var, n.domain, canon(n.body, env2, depth + 1));
          },
          [&](const ForAll& n) {
            CmpEnv env2 = env;
            env2[n.var] = depth;
            return c_forall(n.var, n.domain, canon(n.body, env2, depth + 1));
          },
          [&](const In&) { return c; },
          [&](const NotIn&) { return c; },
          [&](const Pure&) { return c; },
          [&](const NotPure&) { return c; },
      },
      c->node);
}

}  // namespace detail

// Canonical form: junctions flattened, unit-absorbed, sorted and deduplicated.
// Two conditions are semantically interchangeable for the discipline checks
// exactly when their canonical forms compare equal.
inline CondPtr canonical(const CondPtr& c) { return detail::canon(c, {}, 0); }

inline bool canonical_equal(const CondPtr& a, const CondPtr& b) {
  return equal(canonical(a), canonical(b));
}

namespace detail {

template <typename Fn>
inline void for_each_node(const CondPtr& c, Fn&& fn) {
  fn(*c);
  std::visit(overloaded{
                 [&](const And& n) {
                   for (const CondPtr& ch : n.children) for_each_node(ch, fn);
                 },
                 [&](const Or& n) {
                   for (const CondPtr& ch : n.children) for_each_node(ch, fn);
                 },
                 [&](const Exists& n) { for_each_node(n.body, fn); },
                 [&](const ForAll& n) { for_each_node(n.body, fn); },
                 [](const auto&) {},
             },
             c->node);
}

}  // namespace detail

inline bool contains_notin(const CondPtr& c) {
  bool found = false;
  detail::for_each_node(c, [&](const Condition& n) {
    if (std::holds_alternative<NotIn>(n.node)) found = true;
  });
  return found;
}

inline bool contains_in(const CondPtr& c) {
  bool found = false;
  detail::for_each_node(c, [&](const Condition& n) {
    if (std::holds_alternative<In>(n.node)) found = true;
  });
  return found;
}

// Positive conditions never test for absence; negative ones never for presence.
inline bool is_pos_only(const CondPtr& c) { return !contains_notin(c); }
inline bool is_neg_only(const CondPtr& c) { return !contains_in(c); }

// A condition is proof-disciplined when membership in the proof being built is
// never tested negatively; absence tests against frozen closures are fine.
inline bool is_p_disciplined(const CondPtr& c) {
  bool ok = true;
  detail::for_each_node(c, [&](const Condition& n) {
    if (const auto* ni = std::get_if<NotIn>(&n.node))
      if (ni->target.current) ok = false;
  });
  return ok;
}

inline std::set<std::string> closure_names(const CondPtr& c) {
  std::set<std::string> out;
  detail::for_each_node(c, [&](const Condition& n) {
    if (const auto* i = std::get_if<In>(&n.node)) {
      if (!i->target.current) out.insert(i->target.closure);
    } else if (const auto* ni = std::get_if<NotIn>(&n.node)) {
      if (!ni->target.current) out.insert(ni->target.closure);
    }
  });
  return out;
}

// Every tag mentioned by a membership atom, regardless of target.
inline std::set<Tag> referenced_tags(const CondPtr& c) {
  std::set<Tag> out;
  detail::for_each_node(c, [&](const Condition& n) {
    if (const auto* i = std::get_if<In>(&n.node))
      out.insert(i->tag);
    else if (const auto* ni = std::get_if<NotIn>(&n.node))
      out.insert(ni->tag);
  });
  return out;
}

// Tags whose membership is tested against the proof being built.
inline std::set<Tag> current_proof_tags(const CondPtr& c) {
  std::set<Tag> out;
  detail::for_each_node(c, [&](const Condition& n) {
    if (const auto* i = std::get_if<In>(&n.node)) {
      if (i->target.current) out.insert(i->tag);
    } else if (const auto* ni = std::get_if<NotIn>(&n.node)) {
      if (ni->target.current) out.insert(ni->tag);
    }
  });
  return out;
}

namespace detail {

enum class VarKind { RuleVar, LitVar };

inline void check_lit(const LiteralExpr& e, const std::map<std::string, VarKind>& env) {
  if (e.is_query) return;
  auto it = env.find(e.var);
  if (it == env.end()) throw ValidationError("unbound variable: " + e.var);
  if (it->second != VarKind::LitVar)
    throw ValidationError("rule variable used as literal: " + e.var);
}

inline void check_rule_var(const std::string& v, const std::map<std::string, VarKind>& env) {
  auto it = env.find(v);
  if (it == env.end()) throw ValidationError("unbound variable: " + v);
  if (it->second != VarKind::RuleVar)
    throw ValidationError("literal variable used as rule: " + v);
}

inline void check_bindings(const CondPtr& c, std::map<std::string, VarKind> env) {
  std::visit(overloaded{
                 [](const TrueC&) {},
                 [](const FalseC&) {},
                 [&](const And& n) {
                   for (const CondPtr& ch : n.children) check_bindings(ch, env);
                 },
                 [&](const Or& n) {
                   for (const CondPtr& ch : n.children) check_bindings(ch, env);
                 },
                 [&](const Exists& n) {
                   VarKind k = VarKind::RuleVar;
                   if (const auto* rd = std::get_if<RuleDomain>(&n.domain)) {
                     check_lit(rd->head, env);
                   } else {
                     check_rule_var(std::get<AntecedentDomain>(n.domain).rule_var, env);
                     k = VarKind::LitVar;
                   }
                   env[n.var] = k;
                   check_bindings(n.body, std::move(env));
                 },
                 [&](const ForAll& n) {
                   VarKind k = VarKind::RuleVar;
                   if (const auto* rd = std::get_if<RuleDomain>(&n.domain)) {
                     check_lit(rd->head, env);
                   } else {
                     check_rule_var(std::get<AntecedentDomain>(n.domain).rule_var, env);
                     k = VarKind::LitVar;
                   }
                   env[n.var] = k;
                   check_bindings(n.body, std::move(env));
                 },
                 [&](const In& n) { check_lit(n.lit, env); },
                 [&](const NotIn& n) { check_lit(n.lit, env); },
                 [&](const Pure& n) {
                   if (const auto* f = std::get_if<IsFact>(&n.atom))
                     check_lit(f->lit, env);
                   else {
                     const auto& s = std::get<Superior>(n.atom);
                     check_rule_var(s.left, env);
                     check_rule_var(s.right, env);
                   }
                 },
                 [&](const NotPure& n) {
                   if (const auto* f = std::get_if<IsFact>(&n.atom))
                     check_lit(f->lit, env);
                   else {
                     const auto& s = std::get<Superior>(n.atom);
                     check_rule_var(s.left, env);
                     check_rule_var(s.right, env);
                   }
                 },
             },
             c->node);
}

}  // namespace detail

// Throws ValidationError if a variable is unbound or used with the wrong kind.
inline void validate_condition(const CondPtr& c) { detail::check_bindings(c, {}); }

}  // namespace dflog::cond
