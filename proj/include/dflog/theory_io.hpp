#pragma once
// Theory text format: parser (with schema grounding), printer, literal syntax.
//
//   % comment
//   penguin(tweety).
//   r1: bird(X) => fly(X).
//   r3: penguin(X) -> bird(X).
//   r4: injured(X) ~> ~fly(X).
//   r2 > r1.
//
// Capitalized arguments are schema variables; they are instantiated with every
// lowercase constant appearing in the theory. Superiority between schemas is
// inherited by instances that agree on the shared variables.

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "errors.hpp"

namespace dflog::core {

namespace detail {

struct Token {
  enum Kind { Ident, Tilde, LParen, RParen, Comma, Dot, Colon, Gt, Arrow, End };
  Kind kind = End;
  std::string text;
  RuleKind arrow = RuleKind::Strict;
  std::size_t line = 1, col = 1;
};

inline std::vector<Token> lex_theory(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto step = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') step(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      step(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Token::Ident;
      t.text = src.substr(i, j - i);
      step(j - i);
    } else if (c == '~' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Arrow;
      t.arrow = RuleKind::Defeater;
      step(2);
    } else if (c == '~') {
      t.kind = Token::Tilde;
      step(1);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Arrow;
      t.arrow = RuleKind::Strict;
      step(2);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Arrow;
      t.arrow = RuleKind::Defeasible;
      step(2);
    } else if (c == '(') {
      t.kind = Token::LParen;
      step(1);
    } else if (c == ')') {
      t.kind = Token::RParen;
      step(1);
    } else if (c == ',') {
      t.kind = Token::Comma;
      step(1);
    } else if (c == '.') {
      t.kind = Token::Dot;
      step(1);
    } else if (c == ':') {
      t.kind = Token::Colon;
      step(1);
    } else if (c == '>') {
      t.kind = Token::Gt;
      step(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct SchemaAtom {
  std::string name;
  std::vector<std::string> args;
};

struct SchemaLit {
  bool positive = true;
  SchemaAtom atom;
};

struct SchemaRule {
  std::string label;
  RuleKind kind = RuleKind::Strict;
  std::vector<SchemaLit> body;
  SchemaLit head;
};

inline bool is_schema_var(const std::string& arg) {
  return !arg.empty() && std::isupper(static_cast<unsigned char>(arg[0]));
}

class TheoryParser {
 public:
  explicit TheoryParser(const std::string& src) : toks_(lex_theory(src)) {}

  DefeasibleTheory parse() {
    while (peek().kind != Token::End) {
      if (peek().kind == Token::Ident && peek(1).kind == Token::Colon) {
        parse_rule();
      } else if (peek().kind == Token::Ident && peek(1).kind == Token::Gt) {
        parse_superiority();
      } else if (peek().kind == Token::Ident || peek().kind == Token::Tilde) {
        facts_.push_back(parse_schema_literal());
        expect(Token::Dot, "expected '.'");
      } else {
        fail("expected fact, rule or superiority statement");
      }
    }
    return ground();
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t j = pos_ + ahead;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  const Token& expect(Token::Kind k, const std::string& msg) {
    if (peek().kind != k) fail(msg);
    return take();
  }

  SchemaLit parse_schema_literal() {
    SchemaLit lit;
    if (peek().kind == Token::Tilde) {
      take();
      lit.positive = false;
    }
    const Token& name = expect(Token::Ident, "expected atom name");
    if (std::isupper(static_cast<unsigned char>(name.text[0])))
      throw ParseError("atom name must start lowercase: " + name.text, name.line, name.col);
    lit.atom.name = name.text;
    if (peek().kind == Token::LParen) {
      take();
      while (true) {
        lit.atom.args.push_back(expect(Token::Ident, "expected argument").text);
        if (peek().kind == Token::Comma) {
          take();
          continue;
        }
        break;
      }
      expect(Token::RParen, "expected ')'");
    }
    return lit;
  }

  void parse_rule() {
    SchemaRule r;
    r.label = take().text;
    take();  // ':'
    if (peek().kind != Token::Arrow) {
      while (true) {
        r.body.push_back(parse_schema_literal());
        if (peek().kind == Token::Comma) {
          take();
          continue;
        }
        break;
      }
    }
    if (peek().kind != Token::Arrow) fail("expected '->', '=>' or '~>'");
    r.kind = take().arrow;
    r.head = parse_schema_literal();
    expect(Token::Dot, "expected '.'");
    rules_.push_back(std::move(r));
  }

  void parse_superiority() {
    std::string sup = take().text;
    take();  // '>'
    std::string inf = expect(Token::Ident, "expected rule label").text;
    expect(Token::Dot, "expected '.'");
    superiority_.emplace_back(std::move(sup), std::move(inf));
  }

  // --- grounding ---

  std::vector<std::string> vars_of(const SchemaRule& r) const {
    std::vector<std::string> vars;
    auto scan = [&](const SchemaLit& l) {
      for (const std::string& a : l.atom.args)
        if (is_schema_var(a) && std::find(vars.begin(), vars.end(), a) == vars.end())
          vars.push_back(a);
    };
    for (const SchemaLit& l : r.body) scan(l);
    scan(r.head);
    return vars;
  }

  static Literal ground_literal(const SchemaLit& l,
                                const std::map<std::string, std::string>& sub) {
    std::string atom = l.atom.name;
    if (!l.atom.args.empty()) {
      atom += "(";
      for (std::size_t k = 0; k < l.atom.args.size(); ++k) {
        const std::string& a = l.atom.args[k];
        atom += is_schema_var(a) ? sub.at(a) : a;
        if (k + 1 < l.atom.args.size()) atom += ",";
      }
      atom += ")";
    }
    return {std::move(atom), l.positive};
  }

  template <typename Fn>
  void each_assignment(const std::vector<std::string>& vars, Fn fn) const {
    if (vars.empty()) {
      fn(std::map<std::string, std::string>{});
      return;
    }
    if (constants_.empty())
      throw ValidationError("cannot ground variable " + vars.front() +
                            ": theory has no constants");
    std::vector<std::string> consts(constants_.begin(), constants_.end());
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      std::map<std::string, std::string> sub;
      for (std::size_t k = 0; k < vars.size(); ++k) sub[vars[k]] = consts[idx[k]];
      fn(sub);
      std::size_t k = vars.size();
      while (k > 0) {
        --k;
        if (++idx[k] < consts.size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
    }
  }

  static std::string ground_label(const std::string& label, const std::vector<std::string>& vars,
                                  const std::map<std::string, std::string>& sub) {
    std::string out = label;
    for (const std::string& v : vars) out += "_" + sub.at(v);
    return out;
  }

  DefeasibleTheory ground() {
    auto collect = [&](const SchemaLit& l) {
      for (const std::string& a : l.atom.args)
        if (!is_schema_var(a)) constants_.insert(a);
    };
    for (const SchemaLit& f : facts_) collect(f);
    for (const SchemaRule& r : rules_) {
      for (const SchemaLit& l : r.body) collect(l);
      collect(r.head);
    }

    DefeasibleTheory d;
    for (const SchemaLit& f : facts_) {
      std::vector<std::string> vars;
      for (const std::string& a : f.atom.args)
        if (is_schema_var(a) && std::find(vars.begin(), vars.end(), a) == vars.end())
          vars.push_back(a);
      each_assignment(vars, [&](const auto& sub) { d.facts.insert(ground_literal(f, sub)); });
    }

    std::map<std::string, const SchemaRule*> schema_by_label;
    for (const SchemaRule& r : rules_) {
      if (schema_by_label.count(r.label))
        throw ValidationError("duplicate rule label: " + r.label);
      schema_by_label[r.label] = &r;
      std::vector<std::string> vars = vars_of(r);
      each_assignment(vars, [&](const auto& sub) {
        Rule g;
        g.label = ground_label(r.label, vars, sub);
        g.kind = r.kind;
        for (const SchemaLit& l : r.body) g.antecedent.insert(ground_literal(l, sub));
        g.consequent = ground_literal(r.head, sub);
        d.rules.push_back(std::move(g));
      });
    }

    for (const auto& [sup, inf] : superiority_) {
      auto find = [&](const std::string& label) -> const SchemaRule* {
        auto it = schema_by_label.find(label);
        if (it == schema_by_label.end())
          throw ValidationError("superiority references unknown rule: " + label);
        return it->second;
      };
      const SchemaRule* a = find(sup);
      const SchemaRule* b = find(inf);
      std::vector<std::string> va = vars_of(*a), vb = vars_of(*b);
      each_assignment(va, [&](const auto& sa) {
        each_assignment(vb, [&](const auto& sb) {
          for (const auto& [v, val] : sa)
            if (auto it = sb.find(v); it != sb.end() && it->second != val) return;
          d.superiority.insert({ground_label(a->label, va, sa), ground_label(b->label, vb, sb)});
        });
      });
    }

    validate(d);
    return d;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<SchemaLit> facts_;
  std::vector<SchemaRule> rules_;
  std::vector<std::pair<std::string, std::string>> superiority_;
  std::set<std::string> constants_;
};

}  // namespace detail

inline DefeasibleTheory parse_theory(const std::string& text) {
  return detail::TheoryParser(text).parse();
}

// Ground literal syntax: "fly(tweety)", "~fly(tweety)", "p".
inline Literal parse_literal(const std::string& text) {
  auto toks = detail::lex_theory(text);
  std::size_t pos = 0;
  bool positive = true;
  if (toks[pos].kind == detail::Token::Tilde) {
    ++pos;
    positive = false;
  }
  if (toks[pos].kind != detail::Token::Ident)
    throw ParseError("expected atom name", toks[pos].line, toks[pos].col);
  if (std::isupper(static_cast<unsigned char>(toks[pos].text[0])))
    throw ParseError("atom name must start lowercase: " + toks[pos].text, toks[pos].line,
                     toks[pos].col);
  std::string atom = toks[pos++].text;
  if (toks[pos].kind == detail::Token::LParen) {
    atom += "(";
    ++pos;
    while (true) {
      if (toks[pos].kind != detail::Token::Ident)
        throw ParseError("expected argument", toks[pos].line, toks[pos].col);
      if (detail::is_schema_var(toks[pos].text))
        throw ParseError("literal must be ground: " + toks[pos].text, toks[pos].line,
                         toks[pos].col);
      atom += toks[pos++].text;
      if (toks[pos].kind == detail::Token::Comma) {
        atom += ",";
        ++pos;
        continue;
      }
      break;
    }
    if (toks[pos].kind != detail::Token::RParen)
      throw ParseError("expected ')'", toks[pos].line, toks[pos].col);
    atom += ")";
    ++pos;
  }
  if (toks[pos].kind != detail::Token::End)
    throw ParseError("trailing input after literal", toks[pos].line, toks[pos].col);
  return {std::move(atom), positive};
}

inline std::string print_theory(const DefeasibleTheory& d) {
  std::string out;
  for (const Literal& f : d.facts) out += to_string(f) + ".\n";
  for (const Rule& r : d.rules) {
    out += r.label + ":";
    bool first = true;
    for (const Literal& a : r.antecedent) {
      out += first ? " " : ", ";
      out += to_string(a);
      first = false;
    }
    switch (r.kind) {
      case RuleKind::Strict: out += " -> "; break;
      case RuleKind::Defeasible: out += " => "; break;
      case RuleKind::Defeater: out += " ~> "; break;
    }
    out += to_string(r.consequent) + ".\n";
  }
  for (const auto& [sup, inf] : d.superiority) out += sup + " > " + inf + ".\n";
  return out;
}

}  // namespace dflog::core
