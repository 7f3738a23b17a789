#include <catch2/catch_amalgamated.hpp>

#include "dflog/condition.hpp"

using namespace dflog;
using namespace dflog::cond;
using core::RuleSubset;

namespace {

CondPtr in_proof(const char* tag, bool sign) {
  return c_in({tag, sign}, query_lit(), current_proof());
}

// forall a in antecedent(r): +d a in proof -- the usual body check.
CondPtr body_check(const char* rule_var, Tag t) {
  return c_forall("a", d_antecedent(rule_var), c_in(t, var_lit("a"), current_proof()));
}

}  // namespace

TEST_CASE("literal expressions normalize complement by construction") {
  LiteralExpr q = query_lit();
  CHECK(complement(complement(q)) == q);
  LiteralExpr v = var_lit("a");
  CHECK(complement(v).complemented);
  CHECK(complement(complement(v)) == v);
}

TEST_CASE("comparison ignores bound variable names") {
  CondPtr a = c_exists("r", d_rules(RuleSubset::Strict, query_lit()),
                       body_check("r", plus("delta")));
  CondPtr b = c_exists("s", d_rules(RuleSubset::Strict, query_lit()),
                       body_check("s", plus("delta")));
  CHECK(equal(a, b));

  CondPtr c = c_exists("r", d_rules(RuleSubset::All, query_lit()),
                       body_check("r", plus("delta")));
  CHECK_FALSE(equal(a, c));

  // Shadowing resolves to the innermost binder.
  CondPtr outer1 = c_exists("r", d_rules(RuleSubset::All, query_lit()),
                            c_exists("r", d_rules(RuleSubset::All, query_lit()),
                                     c_sup("r", "r")));
  CondPtr outer2 = c_exists("x", d_rules(RuleSubset::All, query_lit()),
                            c_exists("y", d_rules(RuleSubset::All, query_lit()),
                                     c_sup("y", "y")));
  CondPtr outer3 = c_exists("x", d_rules(RuleSubset::All, query_lit()),
                            c_exists("y", d_rules(RuleSubset::All, query_lit()),
                                     c_sup("x", "y")));
  CHECK(equal(outer1, outer2));
  CHECK_FALSE(equal(outer1, outer3));
}

TEST_CASE("comparison is a strict weak order on distinct shapes") {
  std::vector<CondPtr> cs = {
      c_true(),
      c_false(),
      c_and({in_proof("delta", true), c_fact(query_lit())}),
      c_or({in_proof("delta", true), c_fact(query_lit())}),
      in_proof("delta", true),
      in_proof("delta", false),
      c_notin(plus("delta"), query_lit(), current_proof()),
      c_notin(plus("delta"), query_lit(), closure_ref("P_delta")),
      c_fact(query_lit()),
      c_not_fact(complement(query_lit())),
  };
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      auto ij = compare(cs[i], cs[j]);
      auto ji = compare(cs[j], cs[i]);
      if (i == j) {
        CHECK(ij == std::strong_ordering::equal);
      } else {
        CHECK(ij != std::strong_ordering::equal);
        CHECK((ij < 0) == (ji > 0));
      }
    }
}

TEST_CASE("strong negation on membership leaves") {
  // Proof membership flips the tag sign.
  CHECK(equal(sneg(in_proof("d", true)), in_proof("d", false)));
  CHECK(equal(sneg(in_proof("d", false)), in_proof("d", true)));
  // Absence turns into presence with the same tag.
  CHECK(equal(sneg(c_notin(plus("d"), query_lit(), current_proof())), in_proof("d", true)));
  CHECK(equal(sneg(c_notin(minus("d"), query_lit(), current_proof())), in_proof("d", false)));
  // Closure targets behave the same and keep the target.
  ProofTarget pd = closure_ref("P_delta");
  CHECK(equal(sneg(c_in(plus("d"), query_lit(), pd)), c_in(minus("d"), query_lit(), pd)));
  CHECK(equal(sneg(c_notin(plus("d"), query_lit(), pd)), c_in(plus("d"), query_lit(), pd)));
}

TEST_CASE("strong negation dualizes structure") {
  CondPtr a = in_proof("d", true);
  CondPtr b = c_fact(query_lit());
  CHECK(equal(sneg(c_and({a, b})), c_or({sneg(a), sneg(b)})));
  CHECK(equal(sneg(c_or({a, b})), c_and({sneg(a), sneg(b)})));
  CHECK(equal(sneg(c_true()), c_false()));
  CHECK(equal(sneg(c_false()), c_true()));
  CHECK(equal(sneg(c_sup("r", "s")), c_not_sup("r", "s")));
  CHECK(equal(sneg(c_not_sup("r", "s")), c_sup("r", "s")));

  Domain dom = d_rules(RuleSubset::StrictOrDefeasible, query_lit());
  CondPtr ex = c_exists("r", dom, body_check("r", plus("d")));
  CondPtr fa = c_forall("r", dom, c_exists("a", d_antecedent("r"),
                                           c_in(minus("d"), var_lit("a"), current_proof())));
  CHECK(equal(sneg(ex), fa));
}

TEST_CASE("strong negation output never tests absence") {
  std::vector<CondPtr> samples = {
      c_notin(plus("d"), query_lit(), current_proof()),
      c_and({c_notin(minus("d"), query_lit(), closure_ref("X")), c_not_fact(query_lit())}),
      c_forall("r", d_rules(RuleSubset::All, complement(query_lit())),
               c_or({c_notin(plus("d"), query_lit(), current_proof()), c_not_sup("r", "r")})),
  };
  for (const CondPtr& c : samples) CHECK(is_pos_only(sneg(c)));
}

TEST_CASE("strong negation is an involution on positive conditions") {
  CondPtr pos = c_or({c_fact(query_lit()),
                      c_exists("r", d_rules(RuleSubset::Strict, query_lit()),
                               body_check("r", plus("delta")))});
  REQUIRE(is_pos_only(pos));
  CHECK(equal(sneg(sneg(pos)), pos));
}

TEST_CASE("three applications of strong negation equal one") {
  std::vector<CondPtr> samples = {
      c_notin(plus("d"), query_lit(), current_proof()),
      c_and({in_proof("d", true), c_notin(minus("e"), query_lit(), closure_ref("X"))}),
      c_or({c_not_fact(query_lit()), c_forall("r", d_rules(RuleSubset::All, query_lit()),
                                              c_not_sup("r", "r"))}),
  };
  for (const CondPtr& c : samples) CHECK(equal(sneg(sneg(sneg(c))), sneg(c)));
}

TEST_CASE("classical negation in NNF") {
  CondPtr c = c_and({in_proof("d", true), c_notin(minus("e"), query_lit(), closure_ref("X"))});
  CondPtr n = nnf_negate(c);
  CHECK(equal(n, c_or({c_notin(plus("d"), query_lit(), current_proof()),
                       c_in(minus("e"), query_lit(), closure_ref("X"))})));
  CHECK(equal(nnf_negate(n), c));

  // On conditions that never test presence, strong and classical negation agree.
  CondPtr negonly = c_or({c_notin(plus("d"), query_lit(), current_proof()),
                          c_and({c_not_fact(query_lit()), c_false()})});
  REQUIRE(is_neg_only(negonly));
  CHECK(equal(sneg(negonly), nnf_negate(negonly)));

  // On positive conditions, strong negation undoes classical negation.
  CondPtr pos = c_or({c_fact(query_lit()),
                      c_exists("r", d_rules(RuleSubset::Strict, query_lit()),
                               body_check("r", plus("delta")))});
  CHECK(equal(sneg(nnf_negate(pos)), pos));
}

TEST_CASE("canonical form flattens, sorts, deduplicates and absorbs units") {
  CondPtr a = in_proof("d", true);
  CondPtr b = c_fact(query_lit());
  CondPtr c = in_proof("e", false);

  CHECK(equal(canonical(c_and({a, c_and({b, c})})), canonical(c_and({c, b, a}))));
  CHECK(equal(canonical(c_and({a, a, b})), canonical(c_and({b, a}))));
  CHECK(equal(canonical(c_and({a, c_true()})), a));
  CHECK(equal(canonical(c_or({a, c_false()})), a));
  CHECK(equal(canonical(c_and({a, c_false()})), c_false()));
  CHECK(equal(canonical(c_or({a, c_true()})), c_true()));
  CHECK(equal(canonical(c_and({})), c_true()));
  CHECK(equal(canonical(c_or({})), c_false()));
  CHECK(equal(canonical(c_and({a})), a));

  CHECK(canonical_equal(c_or({c_and({a, b}), c}), c_or({c, c_and({b, a, b})})));
  CHECK_FALSE(canonical_equal(c_and({a, b}), c_or({a, b})));

  // Sorting under binders stays alpha-invariant.
  CondPtr q1 = c_forall("r", d_rules(RuleSubset::All, query_lit()),
                        c_or({c_sup("r", "r"), c_fact(query_lit())}));
  CondPtr q2 = c_forall("s", d_rules(RuleSubset::All, query_lit()),
                        c_or({c_fact(query_lit()), c_sup("s", "s")}));
  CHECK(canonical_equal(q1, q2));
}

TEST_CASE("syntactic classifiers") {
  CondPtr pos = c_and({in_proof("d", true), c_fact(query_lit())});
  CHECK(is_pos_only(pos));
  CHECK(is_neg_only(c_not_fact(query_lit())));
  CHECK_FALSE(is_neg_only(pos));
  CHECK(is_p_disciplined(pos));

  CondPtr bad = c_notin(plus("d"), query_lit(), current_proof());
  CHECK_FALSE(is_pos_only(bad));
  CHECK_FALSE(is_p_disciplined(bad));

  CondPtr closure_neg = c_notin(plus("delta"), complement(query_lit()), closure_ref("P_delta"));
  CHECK_FALSE(is_pos_only(closure_neg));
  CHECK(is_p_disciplined(closure_neg));
  CHECK(closure_names(closure_neg) == std::set<std::string>{"P_delta"});
  CHECK(current_proof_tags(closure_neg).empty());
  CHECK(referenced_tags(closure_neg) == std::set<Tag>{plus("delta")});

  CondPtr mixed = c_and({in_proof("partial", true),
                         c_in(minus("lambda"), query_lit(), closure_ref("P_lambda"))});
  CHECK(current_proof_tags(mixed) == std::set<Tag>{plus("partial")});
  CHECK(referenced_tags(mixed) == std::set<Tag>{plus("partial"), minus("lambda")});

  // NotPure leaves do not make a condition non-positive.
  CHECK(is_pos_only(c_not_fact(query_lit())));
}

TEST_CASE("binding validation") {
  CHECK_NOTHROW(validate_condition(
      c_exists("r", d_rules(RuleSubset::Strict, query_lit()), body_check("r", plus("d")))));
  // Unbound rule variable in a domain.
  CHECK_THROWS_AS(validate_condition(c_forall("a", d_antecedent("r"), c_true())),
                  ValidationError);
  // Unbound literal variable.
  CHECK_THROWS_AS(validate_condition(c_in(plus("d"), var_lit("a"), current_proof())),
                  ValidationError);
  // Rule variable used as a literal.
  CHECK_THROWS_AS(validate_condition(c_exists("r", d_rules(RuleSubset::All, query_lit()),
                                              c_in(plus("d"), var_lit("r"), current_proof()))),
                  ValidationError);
  // Literal variable used as a rule.
  CHECK_THROWS_AS(
      validate_condition(c_exists("r", d_rules(RuleSubset::All, query_lit()),
                                  c_exists("a", d_antecedent("r"), c_sup("a", "a")))),
      ValidationError);
  // Domain head may mention an enclosing literal variable.
  CHECK_NOTHROW(validate_condition(c_exists(
      "r", d_rules(RuleSubset::All, query_lit()),
      c_exists("a", d_antecedent("r"),
               c_exists("s", d_rules(RuleSubset::All, complement(var_lit("a"))),
                        c_sup("s", "r"))))));
}
