#include <catch2/catch_amalgamated.hpp>

#include "dflog/builtins.hpp"
#include "dflog/engine.hpp"
#include "dflog/theory_io.hpp"
#include "helpers.hpp"

using namespace dflog;
using namespace dflog::engine;
using core::DefeasibleTheory;
using core::Literal;
using core::parse_theory;

namespace {

DefeasibleTheory tweety() { return parse_theory(read_data_file("theories/tweety.dfl")); }

Conclusion C(const std::string& text) { return parse_conclusion(text); }

ConclusionSet tag_set(const std::string& tag, std::initializer_list<const char*> lits) {
  ConclusionSet out;
  for (const char* l : lits) out.insert(C(tag + " " + l));
  return out;
}

ConclusionSet unite(std::initializer_list<ConclusionSet> sets) {
  ConclusionSet out;
  for (const ConclusionSet& s : sets) out.insert(s.begin(), s.end());
  return out;
}

// Frozen expected closures for the tweety theory.
ConclusionSet tweety_plus_delta() {
  return tag_set("+delta",
                 {"penguin(tweety)", "bird(tweety)", "bird(freddie)", "injured(freddie)"});
}

ConclusionSet tweety_minus_delta() {
  return tag_set("-delta",
                 {"~penguin(tweety)", "penguin(freddie)", "~penguin(freddie)", "~bird(tweety)",
                  "~bird(freddie)", "injured(tweety)", "~injured(tweety)", "~injured(freddie)",
                  "fly(tweety)", "~fly(tweety)", "fly(freddie)", "~fly(freddie)"});
}

ConclusionSet tweety_plus_partial() {
  return tag_set("+partial", {"penguin(tweety)", "bird(tweety)", "bird(freddie)",
                              "injured(freddie)", "~fly(tweety)"});
}

ConclusionSet tweety_minus_partial() {
  return tag_set("-partial",
                 {"~penguin(tweety)", "penguin(freddie)", "~penguin(freddie)", "~bird(tweety)",
                  "~bird(freddie)", "injured(tweety)", "~injured(tweety)", "~injured(freddie)",
                  "fly(tweety)", "fly(freddie)", "~fly(freddie)"});
}

ConclusionSet tweety_plus_lambda() {
  return tag_set("+lambda", {"penguin(tweety)", "bird(tweety)", "bird(freddie)",
                             "injured(freddie)", "fly(tweety)", "fly(freddie)", "~fly(tweety)"});
}

ConclusionSet tweety_minus_lambda() {
  return tag_set("-lambda",
                 {"~penguin(tweety)", "penguin(freddie)", "~penguin(freddie)", "~bird(tweety)",
                  "~bird(freddie)", "injured(tweety)", "~injured(tweety)", "~injured(freddie)",
                  "~fly(freddie)"});
}

ConclusionSet tweety_plus_spartial() {
  return tag_set("+spartial", {"penguin(tweety)", "bird(tweety)", "bird(freddie)",
                               "injured(freddie)", "~fly(tweety)"});
}

ConclusionSet tweety_minus_spartial() {
  return tag_set("-spartial",
                 {"~penguin(tweety)", "penguin(freddie)", "~penguin(freddie)", "~bird(tweety)",
                  "~bird(freddie)", "injured(tweety)", "~injured(tweety)", "~injured(freddie)",
                  "fly(tweety)", "fly(freddie)", "~fly(freddie)"});
}

}  // namespace

TEST_CASE("conclusion text round-trips") {
  Conclusion c = C("+partial ~fly(tweety)");
  CHECK(c.tag == cond::plus("partial"));
  CHECK(c.literal == core::neg("fly(tweety)"));
  CHECK(to_string(c) == "+partial ~fly(tweety)");
  CHECK(parse_conclusion(to_string(c)) == c);
  CHECK(parse_conclusion("  -delta  p ") == C("-delta p"));
  CHECK_THROWS_AS(parse_conclusion("delta p"), ParseError);
  CHECK_THROWS_AS(parse_conclusion("+delta"), ParseError);
  CHECK_THROWS_AS(parse_conclusion("+delta p q"), ParseError);
}

TEST_CASE("evaluate_condition on explicit sets") {
  DefeasibleTheory d = tweety();
  Literal q = core::pos("penguin(tweety)");

  CHECK(evaluate_condition(cond::c_fact(cond::query_lit()), d, q, {}));
  CHECK_FALSE(evaluate_condition(cond::c_fact(cond::query_lit()), d, core::pos("fly(tweety)"),
                                 {}));
  CHECK(evaluate_condition(cond::c_not_fact(cond::complement(cond::query_lit())), d, q, {}));

  cond::CondPtr in_proof = cond::c_in(cond::plus("delta"), cond::query_lit(),
                                      cond::current_proof());
  CHECK_FALSE(evaluate_condition(in_proof, d, q, {}));
  CHECK(evaluate_condition(in_proof, d, q, {C("+delta penguin(tweety)")}));

  cond::CondPtr in_closure = cond::c_in(cond::plus("delta"), cond::query_lit(),
                                        cond::closure_ref("P_delta"));
  ClosureEnv env;
  env.sets["P_delta"] = {C("+delta penguin(tweety)")};
  CHECK(evaluate_condition(in_closure, d, q, {}, env));
  CHECK_FALSE(evaluate_condition(cond::c_notin(cond::plus("delta"), cond::query_lit(),
                                               cond::closure_ref("P_delta")),
                                 d, q, {}, env));
  // Unresolved closure names are a hard error, not false.
  CHECK_THROWS_AS(evaluate_condition(in_closure, d, q, {}, {}), Error);
  // Unbound variables are rejected up front.
  CHECK_THROWS_AS(evaluate_condition(cond::c_sup("r", "s"), d, q, {}), ValidationError);
}

TEST_CASE("monotonic closure of tweety") {
  auto [conclusions, env] = compute_closure(logics::get_logic("delta"), tweety());
  CHECK(conclusions == unite({tweety_plus_delta(), tweety_minus_delta()}));
  CHECK(env.sets.empty());
}

TEST_CASE("classic closure of tweety") {
  auto [conclusions, env] = compute_closure(logics::get_logic("classic"), tweety());
  CHECK(conclusions.size() == 32);
  CHECK(conclusions == unite({tweety_plus_delta(), tweety_minus_delta(),
                              tweety_plus_partial(), tweety_minus_partial()}));
  CHECK(env.sets.empty());

  // Spot checks on the headline conclusions.
  CHECK(conclusions.count(C("+partial ~fly(tweety)")) == 1);
  CHECK(conclusions.count(C("-partial fly(tweety)")) == 1);
  CHECK(conclusions.count(C("+partial fly(freddie)")) == 0);
  CHECK(conclusions.count(C("-partial fly(freddie)")) == 1);
  CHECK(conclusions.count(C("-partial ~fly(tweety)")) == 0);
}

TEST_CASE("parallel closure of tweety") {
  auto [conclusions, env] = compute_closure(logics::get_logic("parallel"), tweety());
  CHECK(conclusions.size() == 48);
  CHECK(conclusions ==
        unite({tweety_plus_delta(), tweety_minus_delta(), tweety_plus_lambda(),
               tweety_minus_lambda(), tweety_plus_spartial(), tweety_minus_spartial()}));

  REQUIRE(env.sets.count("P_delta") == 1);
  REQUIRE(env.sets.count("P_lambda") == 1);
  CHECK(env.sets.at("P_delta") == unite({tweety_plus_delta(), tweety_minus_delta()}));
  CHECK(env.sets.at("P_lambda") == unite({tweety_plus_lambda(), tweety_minus_lambda()}));

  // The support layer endorses both flight conclusions; the final layer keeps
  // only the exception.
  CHECK(conclusions.count(C("+lambda fly(tweety)")) == 1);
  CHECK(conclusions.count(C("+lambda ~fly(tweety)")) == 1);
  CHECK(conclusions.count(C("+spartial ~fly(tweety)")) == 1);
  CHECK(conclusions.count(C("+spartial fly(tweety)")) == 0);
  CHECK(conclusions.count(C("+spartial fly(freddie)")) == 0);
}

TEST_CASE("classic and parallel agree on the final layer for tweety") {
  auto classic = compute_closure(logics::get_logic("classic"), tweety()).first;
  auto parallel = compute_closure(logics::get_logic("parallel"), tweety()).first;
  ConclusionSet classic_final, parallel_final;
  for (const Conclusion& c : classic)
    if (c.tag.name == "partial") classic_final.insert({{ "x", c.tag.positive}, c.literal});
  for (const Conclusion& c : parallel)
    if (c.tag.name == "spartial") parallel_final.insert({{"x", c.tag.positive}, c.literal});
  CHECK(classic_final == parallel_final);
}

TEST_CASE("saturation order does not change the closure") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");
  auto baseline = compute_closure(classic, d).first;
  for (std::uint64_t seed : {1ull, 7ull, 1234ull}) {
    SaturateOptions opt;
    opt.shuffle_seed = seed;
    CHECK(saturate_closure(classic, d, opt).conclusions == baseline);
  }
}

TEST_CASE("closure over an empty theory") {
  DefeasibleTheory empty;
  auto [conclusions, env] = compute_closure(logics::get_logic("classic"), empty,
                                            {core::pos("a")});
  CHECK(conclusions == unite({tag_set("-delta", {"a", "~a"}), tag_set("-partial", {"a", "~a"})}));
}

TEST_CASE("strictness of compute_closure") {
  DefeasibleTheory d = tweety();
  CHECK_THROWS_AS(compute_closure(logics::get_logic("cwa_naive"), d), cond::NotWellDisciplined);
  CHECK_THROWS_AS(compute_closure(logics::get_logic("unstable_choice"), d),
                  cond::NotWellDisciplined);
  CHECK_THROWS_AS(
      compute_closure(cond::parse_logic(read_data_file("logics/cyclic_closure.dlx")), d),
      cond::NotWellDisciplined);

  // The relaxed saturation accepts monotone-but-unpaired logics ...
  CHECK_NOTHROW(saturate_closure(logics::get_logic("cwa_naive"), d));
  // ... but still rejects non-monotone rules and unstratifiable closures.
  CHECK_THROWS_AS(saturate_closure(logics::get_logic("unstable_choice"), d),
                  cond::NotWellDisciplined);
  CHECK_THROWS_AS(
      saturate_closure(cond::parse_logic(read_data_file("logics/cyclic_closure.dlx")), d),
      cond::CyclicClosureDependency);
}

TEST_CASE("closed-world variants on the self-supporting rule") {
  DefeasibleTheory d = parse_theory(read_data_file("theories/self_loop.dfl"));

  SaturationResult naive = saturate_closure(logics::get_logic("cwa_naive"), d);
  CHECK(naive.conclusions == unite({tag_set("-delta", {"p"}), tag_set("+d", {"p", "~p"}),
                                    tag_set("-d", {"p"})}));
  CHECK(naive.env.sets.at("P_delta") == tag_set("-delta", {"p"}));

  SaturationResult revised = saturate_closure(logics::get_logic("cwa_revised"), d);
  CHECK(revised.conclusions ==
        unite({tag_set("-delta", {"p"}), tag_set("+d", {"p", "~p"})}));
}

TEST_CASE("query answers membership in the strict closure") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");
  CHECK(query(classic, d, C("+partial ~fly(tweety)")) == QueryResult::Proved);
  CHECK(query(classic, d, C("+partial fly(freddie)")) == QueryResult::NotProved);
  CHECK(query(classic, d, C("-delta swims(tweety)")) == QueryResult::Proved);
  CHECK(query(classic, d, C("+delta swims(tweety)")) == QueryResult::NotProved);
  CHECK_THROWS_AS(query(classic, d, C("+nope p")), ValidationError);
  CHECK_THROWS_AS(query(logics::get_logic("cwa_naive"), d, C("+d p")),
                  cond::NotWellDisciplined);
}

TEST_CASE("check_proof accepts stepwise-valid sequences") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");

  CHECK(check_proof(classic, d, {}).valid);

  Proof good = {C("+delta penguin(tweety)"), C("+delta bird(tweety)"),
                C("-delta fly(tweety)"), C("+partial penguin(tweety)")};
  ProofCheck ok = check_proof(classic, d, good);
  CHECK(ok.valid);
  CHECK(ok.invalid_at == 0);

  // Duplicates are permitted.
  CHECK(check_proof(classic, d, {C("+delta penguin(tweety)"), C("+delta penguin(tweety)")})
            .valid);

  // A conclusion whose support is missing from the prefix fails at its step.
  ProofCheck bad = check_proof(classic, d, {C("+partial ~fly(tweety)")});
  CHECK_FALSE(bad.valid);
  CHECK(bad.invalid_at == 1);
  CHECK(bad.reason.find("+partial ~fly(tweety)") != std::string::npos);

  ProofCheck mid = check_proof(classic, d,
                               {C("+delta penguin(tweety)"), C("+delta fly(tweety)"),
                                C("+delta bird(tweety)")});
  CHECK_FALSE(mid.valid);
  CHECK(mid.invalid_at == 2);

  CHECK_THROWS_AS(check_proof(classic, d, {C("+nope p")}), ValidationError);
}

TEST_CASE("check_proof computes closure environments for layered steps") {
  DefeasibleTheory d = tweety();
  cond::LogicDef parallel = logics::get_logic("parallel");

  CHECK(check_proof(parallel, d, {C("+lambda bird(tweety)")}).valid);
  CHECK(check_proof(parallel, d, {C("+lambda bird(tweety)"), C("+lambda fly(tweety)")}).valid);
  // Without its body support in the prefix, the same step fails.
  CHECK_FALSE(check_proof(parallel, d, {C("+lambda fly(tweety)")}).valid);

  Proof layered = {C("+spartial penguin(tweety)"), C("+spartial ~fly(tweety)")};
  CHECK(check_proof(parallel, d, layered).valid);
}

TEST_CASE("check_proof on a non-monotone rule judges prefixes only") {
  DefeasibleTheory d = parse_theory(read_data_file("theories/fact.dfl"));
  cond::LogicDef unstable = logics::get_logic("unstable_choice");

  CHECK(check_proof(unstable, d, {C("+d p")}).valid);
  ProofCheck later = check_proof(unstable, d, {C("+d p"), C("+d ~p")});
  CHECK_FALSE(later.valid);
  CHECK(later.invalid_at == 2);
  // The same steps in the other order fail at the second position too.
  CHECK_FALSE(check_proof(unstable, d, {C("+d ~p"), C("+d p")}).valid);
}

TEST_CASE("derive_proof extracts a checkable proof with provenance") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");

  DerivedProof dp = derive_proof(classic, d, C("+partial ~fly(tweety)"));
  REQUIRE_FALSE(dp.steps.empty());
  CHECK(dp.steps.back() == C("+partial ~fly(tweety)"));
  CHECK(dp.steps.size() == dp.provenance.size());
  CHECK(check_proof(classic, d, dp.steps).valid);

  // Earlier-step citations only.
  for (std::size_t i = 0; i < dp.steps.size(); ++i) {
    CHECK(dp.provenance[i].conclusion == dp.steps[i]);
    CHECK(dp.provenance[i].step == i + 1);
    for (const Conclusion& cite : dp.provenance[i].proof_cites) {
      bool earlier = false;
      for (std::size_t j = 0; j < i; ++j)
        if (dp.steps[j] == cite) earlier = true;
      CHECK(earlier);
    }
  }

  const ProvenanceRecord& last = dp.provenance.back();
  bool cites_r2 = false;
  for (const std::string& r : last.rule_cites)
    if (r == "r2_tweety") cites_r2 = true;
  CHECK(cites_r2);
  bool cites_sup = false;
  for (const auto& [sup, inf] : last.superiority_cites)
    if (sup == "r2_tweety" && inf == "r1_tweety") cites_sup = true;
  CHECK(cites_sup);

  // Fact-based steps record the fact.
  CHECK(dp.provenance.front().fact_cites ==
        std::vector<Literal>{dp.steps.front().literal});
}

TEST_CASE("derive_proof cites frozen closures in layered logics") {
  DefeasibleTheory d = tweety();
  cond::LogicDef parallel = logics::get_logic("parallel");
  DerivedProof dp = derive_proof(parallel, d, C("+spartial ~fly(tweety)"));
  CHECK(dp.steps.back() == C("+spartial ~fly(tweety)"));
  CHECK(check_proof(parallel, d, dp.steps).valid);
  bool cites_closure = false;
  for (const ProvenanceRecord& rec : dp.provenance)
    if (!rec.closure_cites.empty()) cites_closure = true;
  CHECK(cites_closure);
}

TEST_CASE("derive_proof failure modes") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");
  CHECK_THROWS_AS(derive_proof(classic, d, C("+partial fly(freddie)")), NotAConsequence);
  CHECK_THROWS_AS(derive_proof(classic, d, C("+nope p")), ValidationError);
  CHECK_THROWS_AS(derive_proof(logics::get_logic("cwa_naive"), d, C("+d p")),
                  cond::NotWellDisciplined);
}

TEST_CASE("every extracted proof replays for every classic conclusion") {
  DefeasibleTheory d = tweety();
  cond::LogicDef classic = logics::get_logic("classic");
  auto conclusions = compute_closure(classic, d).first;
  for (const Conclusion& goal : conclusions) {
    DerivedProof dp = derive_proof(classic, d, goal);
    CHECK(dp.steps.back() == goal);
    CHECK(check_proof(classic, d, dp.steps).valid);
  }
}
