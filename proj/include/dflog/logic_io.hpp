#pragma once
// S-expression format for logic definitions.
//
//   (logic classic
//     (rule +delta (or (fact q) (exists r (rules-strict (head q))
//                                 (forall a (antecedent r) (in +delta a proof)))))
//     (closure P_delta +delta -delta)   ; only in logics that freeze sets
//     (main delta))
//
// Atoms: `q` is the queried literal, `proof` the proof being built, any other
// symbol a variable or closure name; `;` starts a line comment.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "logic.hpp"

namespace dflog::cond {

namespace detail {

struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;
  std::size_t line = 1, col = 1;
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& src) : src_(src) {}

  Sexp read_one() {
    skip();
    if (eof()) throw ParseError("expected s-expression", line_, col_);
    Sexp s = read();
    skip();
    if (!eof()) throw ParseError("trailing input", line_, col_);
    return s;
  }

 private:
  bool eof() const { return i_ >= src_.size(); }

  void step() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (!eof()) {
      char c = src_[i_];
      if (c == ';') {
        while (!eof() && src_[i_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
  }

  Sexp read() {
    Sexp s;
    s.line = line_;
    s.col = col_;
    if (src_[i_] == '(') {
      step();
      while (true) {
        skip();
        if (eof()) throw ParseError("unterminated list", s.line, s.col);
        if (src_[i_] == ')') {
          step();
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (src_[i_] == ')') throw ParseError("unexpected ')'", line_, col_);
    s.is_atom = true;
    while (!eof() && atom_char(src_[i_])) {
      s.atom += src_[i_];
      step();
    }
    return s;
  }

  const std::string& src_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

class LogicParser {
 public:
  static LogicDef parse(const std::string& src) {
    Sexp top = SexpReader(src).read_one();
    expect_list(top, "logic");
    if (top.items.size() < 2) fail(top, "expected (logic NAME ...)");
    LogicDef l;
    l.name = atom(top.items[1], "logic name");
    bool have_main = false;
    for (std::size_t k = 2; k < top.items.size(); ++k) {
      const Sexp& clause = top.items[k];
      if (clause.is_atom || clause.items.empty() || !clause.items[0].is_atom)
        fail(clause, "expected (rule ...), (closure ...) or (main ...)");
      const std::string& kw = clause.items[0].atom;
      if (kw == "rule") {
        if (clause.items.size() != 3) fail(clause, "expected (rule TAG CONDITION)");
        InferenceRule r;
        r.tag = parse_tag(clause.items[1]);
        r.condition = parse_condition(clause.items[2]);
        l.rules.push_back(std::move(r));
      } else if (kw == "closure") {
        if (clause.items.size() < 3) fail(clause, "expected (closure NAME TAG ...)");
        ClosureDecl c;
        c.name = atom(clause.items[1], "closure name");
        for (std::size_t j = 2; j < clause.items.size(); ++j)
          c.tags.push_back(parse_tag(clause.items[j]));
        l.closures.push_back(std::move(c));
      } else if (kw == "main") {
        if (have_main) fail(clause, "duplicate main clause");
        if (clause.items.size() < 2) fail(clause, "expected (main NAME ...)");
        for (std::size_t j = 1; j < clause.items.size(); ++j)
          l.main_tags.push_back(atom(clause.items[j], "main tag"));
        have_main = true;
      } else {
        fail(clause, "unknown clause: " + kw);
      }
    }
    if (!have_main) fail(top, "missing main clause");
    validate_logic(l);
    return l;
  }

  static CondPtr parse_condition_text(const std::string& src) {
    return parse_condition(SexpReader(src).read_one());
  }

 private:
  [[noreturn]] static void fail(const Sexp& s, const std::string& msg) {
    throw ParseError(msg, s.line, s.col);
  }

  static void expect_list(const Sexp& s, const std::string& head) {
    if (s.is_atom || s.items.empty() || !s.items[0].is_atom || s.items[0].atom != head)
      fail(s, "expected (" + head + " ...)");
  }

  static const std::string& atom(const Sexp& s, const std::string& what) {
    if (!s.is_atom) fail(s, "expected " + what);
    return s.atom;
  }

  static Tag parse_tag(const Sexp& s) {
    const std::string& a = atom(s, "signed tag");
    if (a.size() < 2 || (a[0] != '+' && a[0] != '-'))
      fail(s, "expected signed tag such as +delta: " + a);
    return {a.substr(1), a[0] == '+'};
  }

  static LiteralExpr parse_lit(const Sexp& s) {
    if (s.is_atom) {
      if (s.atom == "q") return query_lit();
      if (s.atom == "proof" || s.atom == "true" || s.atom == "false")
        fail(s, "reserved word used as variable: " + s.atom);
      return var_lit(s.atom);
    }
    if (s.items.size() == 2 && s.items[0].is_atom && s.items[0].atom == "neg")
      return complement(parse_lit(s.items[1]));
    fail(s, "expected literal: q, a variable, or (neg LIT)");
  }

  static ProofTarget parse_target(const Sexp& s) {
    const std::string& a = atom(s, "proof or closure name");
    if (a == "proof") return current_proof();
    return closure_ref(a);
  }

  static Domain parse_domain(const Sexp& s) {
    if (s.is_atom || s.items.empty() || !s.items[0].is_atom) fail(s, "expected domain");
    const std::string& kw = s.items[0].atom;
    if (kw == "antecedent") {
      if (s.items.size() != 2) fail(s, "expected (antecedent VAR)");
      return d_antecedent(atom(s.items[1], "rule variable"));
    }
    core::RuleSubset subset;
    if (kw == "rules-all")
      subset = core::RuleSubset::All;
    else if (kw == "rules-strict")
      subset = core::RuleSubset::Strict;
    else if (kw == "rules-sd")
      subset = core::RuleSubset::StrictOrDefeasible;
    else
      fail(s, "unknown domain: " + kw);
    if (s.items.size() != 2 || s.items[1].is_atom || s.items[1].items.size() != 2 ||
        !s.items[1].items[0].is_atom || s.items[1].items[0].atom != "head")
      fail(s, "expected (" + kw + " (head LIT))");
    return d_rules(subset, parse_lit(s.items[1].items[1]));
  }

  static std::string parse_binder(const Sexp& s) {
    const std::string& v = atom(s, "variable");
    if (v == "q" || v == "proof" || v == "true" || v == "false")
      fail(s, "reserved word used as variable: " + v);
    return v;
  }

  static CondPtr parse_condition(const Sexp& s) {
    if (s.is_atom) {
      if (s.atom == "true") return c_true();
      if (s.atom == "false") return c_false();
      fail(s, "expected condition, got atom: " + s.atom);
    }
    if (s.items.empty() || !s.items[0].is_atom) fail(s, "expected condition");
    const std::string& kw = s.items[0].atom;
    if (kw == "and" || kw == "or") {
      std::vector<CondPtr> cs;
      for (std::size_t j = 1; j < s.items.size(); ++j) cs.push_back(parse_condition(s.items[j]));
      return kw == "and" ? c_and(std::move(cs)) : c_or(std::move(cs));
    }
    if (kw == "exists" || kw == "forall") {
      if (s.items.size() != 4) fail(s, "expected (" + kw + " VAR DOMAIN CONDITION)");
      std::string var = parse_binder(s.items[1]);
      Domain dom = parse_domain(s.items[2]);
      CondPtr body = parse_condition(s.items[3]);
      return kw == "exists" ? c_exists(std::move(var), std::move(dom), std::move(body))
                            : c_forall(std::move(var), std::move(dom), std::move(body));
    }
    if (kw == "in" || kw == "notin") {
      if (s.items.size() != 4) fail(s, "expected (" + kw + " TAG LIT WHERE)");
      Tag t = parse_tag(s.items[1]);
      LiteralExpr lit = parse_lit(s.items[2]);
      ProofTarget tgt = parse_target(s.items[3]);
      return kw == "in" ? c_in(std::move(t), std::move(lit), std::move(tgt))
                        : c_notin(std::move(t), std::move(lit), std::move(tgt));
    }
    if (kw == "fact" || kw == "not-fact") {
      if (s.items.size() != 2) fail(s, "expected (" + kw + " LIT)");
      return kw == "fact" ? c_fact(parse_lit(s.items[1])) : c_not_fact(parse_lit(s.items[1]));
    }
    if (kw == "sup" || kw == "not-sup") {
      if (s.items.size() != 3) fail(s, "expected (" + kw + " VAR VAR)");
      std::string a = atom(s.items[1], "rule variable");
      std::string b = atom(s.items[2], "rule variable");
      return kw == "sup" ? c_sup(std::move(a), std::move(b))
                         : c_not_sup(std::move(a), std::move(b));
    }
    fail(s, "unknown condition: " + kw);
  }
};

inline std::string print_lit(const LiteralExpr& e) {
  std::string base = e.is_query ? "q" : e.var;
  return e.complemented ? "(neg " + base + ")" : base;
}

inline std::string print_domain(const Domain& d) {
  if (const auto* rd = std::get_if<RuleDomain>(&d)) {
    const char* kw = rd->subset == core::RuleSubset::All      ? "rules-all"
                     : rd->subset == core::RuleSubset::Strict ? "rules-strict"
                                                              : "rules-sd";
    return std::string("(") + kw + " (head " + print_lit(rd->head) + "))";
  }
  return "(antecedent " + std::get<AntecedentDomain>(d).rule_var + ")";
}

inline std::string print_condition(const CondPtr& c) {
  return std::visit(
      overloaded{
          [](const TrueC&) { return std::string("true"); },
          [](const FalseC&) { return std::string("false"); },
          [](const And& n) {
            std::string out = "(and";
            for (const CondPtr& ch : n.children) out += " " + print_condition(ch);
            return out + ")";
          },
          [](const Or& n) {
            std::string out = "(or";
            for (const CondPtr& ch : n.children) out += " " + print_condition(ch);
            return out + ")";
          },
          [](const Exists& n) {
            return "(exists " + n.var + " " + print_domain(n.domain) + " " +
                   print_condition(n.body) + ")";
          },
          [](const ForAll& n) {
            return "(forall " + n.var + " " + print_domain(n.domain) + " " +
                   print_condition(n.body) + ")";
          },
          [](const In& n) {
            return "(in " + to_string(n.tag) + " " + print_lit(n.lit) + " " +
                   (n.target.current ? "proof" : n.target.closure) + ")";
          },
          [](const NotIn& n) {
            return "(notin " + to_string(n.tag) + " " + print_lit(n.lit) + " " +
                   (n.target.current ? "proof" : n.target.closure) + ")";
          },
          [](const Pure& n) {
            if (const auto* f = std::get_if<IsFact>(&n.atom))
              return "(fact " + print_lit(f->lit) + ")";
            const auto& s = std::get<Superior>(n.atom);
            return "(sup " + s.left + " " + s.right + ")";
          },
          [](const NotPure& n) {
            if (const auto* f = std::get_if<IsFact>(&n.atom))
              return "(not-fact " + print_lit(f->lit) + ")";
            const auto& s = std::get<Superior>(n.atom);
            return "(not-sup " + s.left + " " + s.right + ")";
          },
      },
      c->node);
}

}  // namespace detail

inline LogicDef parse_logic(const std::string& src) { return detail::LogicParser::parse(src); }

inline std::string print_condition(const CondPtr& c) { return detail::print_condition(c); }

// Parses one bare condition s-expression. Bindings are not checked here; embed
// the result in a LogicDef and validate that.
inline CondPtr parse_condition(const std::string& src) {
  return detail::LogicParser::parse_condition_text(src);
}

inline std::string print_logic(const LogicDef& l) {
  std::string out = "(logic " + l.name + "\n";
  for (const InferenceRule& r : l.rules)
    out += "  (rule " + to_string(r.tag) + " " + detail::print_condition(r.condition) + ")\n";
  for (const ClosureDecl& c : l.closures) {
    out += "  (closure " + c.name;
    for (const Tag& t : c.tags) out += " " + to_string(t);
    out += ")\n";
  }
  out += "  (main";
  for (const std::string& m : l.main_tags) out += " " + m;
  out += "))\n";
  return out;
}

}  // namespace dflog::cond
