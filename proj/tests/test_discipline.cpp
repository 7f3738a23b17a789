#include <catch2/catch_amalgamated.hpp>

#include "dflog/builtins.hpp"
#include "dflog/discipline.hpp"
#include "helpers.hpp"

using namespace dflog;
using namespace dflog::cond;

TEST_CASE("stratification of the builtin logics") {
  auto levels = [](const char* name) { return stratify(logics::get_logic(name)); };

  CHECK(levels("delta") == std::map<std::string, int>{{"delta", 0}});
  CHECK(levels("classic") == std::map<std::string, int>{{"delta", 0}, {"partial", 0}});
  CHECK(levels("parallel") ==
        std::map<std::string, int>{{"delta", 0}, {"lambda", 1}, {"spartial", 2}});
  CHECK(levels("cwa_naive") == std::map<std::string, int>{{"delta", 0}, {"d", 1}});
  CHECK(levels("cwa_revised") == std::map<std::string, int>{{"delta", 0}, {"d", 1}});
  CHECK(levels("unstable_choice") == std::map<std::string, int>{{"delta", 0}, {"d", 0}});
  CHECK(levels("d1_d2") ==
        std::map<std::string, int>{{"delta", 0}, {"d1", 1}, {"d2", 1}});
}

TEST_CASE("self-referential closures have no stratification") {
  LogicDef cyc = parse_logic(read_data_file("logics/cyclic_closure.dlx"));
  CHECK_THROWS_AS(stratify(cyc), CyclicClosureDependency);
  try {
    stratify(cyc);
  } catch (const CyclicClosureDependency& e) {
    REQUIRE(e.cycle().size() >= 2);
    CHECK(e.cycle().front() == "d");
    CHECK(e.cycle().back() == "d");
  }

  DisciplineReport rep = check_logic(cyc);
  CHECK_FALSE(rep.strata.ok);
  CHECK_FALSE(rep.well_disciplined());
  // The only defect is the cycle: the pair is strong-negation related and the
  // closure is even-handed.
  CHECK(rep.posn_pairs.at("d"));
  CHECK(rep.even_handed.at("P_d"));
  for (const auto& [tag, flags] : rep.rule_flags) CHECK(flags.p_disciplined);
  CHECK(rep.violations.size() == 1);
}

TEST_CASE("a longer closure cycle is also caught") {
  const char* src = R"(
(logic two_step
  (rule +a (in +b q P_b))
  (rule -a (in -b q P_b))
  (rule +b (in +a q P_a))
  (rule -b (in -a q P_a))
  (closure P_a +a -a)
  (closure P_b +b -b)
  (main a))
)";
  Stratification s = stratify_check(parse_logic(src));
  REQUIRE_FALSE(s.ok);
  REQUIRE(s.cycle.size() == 3);
  CHECK(s.cycle.front() == s.cycle.back());
  CHECK((s.cycle[0] == "a" || s.cycle[0] == "b"));
}

TEST_CASE("verdicts for the builtin catalog") {
  auto verdict = [](const char* name) {
    return check_logic(logics::get_logic(name)).well_disciplined();
  };
  CHECK(verdict("delta"));
  CHECK(verdict("classic"));
  CHECK(verdict("parallel"));
  CHECK(verdict("cwa_revised"));
  CHECK_FALSE(verdict("cwa_naive"));
  CHECK_FALSE(verdict("unstable_choice"));
  CHECK_FALSE(verdict("d1_d2"));
}

TEST_CASE("cwa_naive fails only the strong-negation pairing") {
  DisciplineReport rep = check_logic(logics::get_logic("cwa_naive"));
  CHECK(rep.posn_pairs.at("delta"));
  CHECK_FALSE(rep.posn_pairs.at("d"));
  for (const auto& [tag, flags] : rep.rule_flags) CHECK(flags.p_disciplined);
  CHECK(rep.strata.ok);
  CHECK(rep.even_handed.at("P_delta"));
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("-d") != std::string::npos);
}

TEST_CASE("unstable_choice fails only P-discipline") {
  DisciplineReport rep = check_logic(logics::get_logic("unstable_choice"));
  CHECK_FALSE(rep.rule_flags.at("+d").p_disciplined);
  CHECK(rep.rule_flags.at("+delta").p_disciplined);
  CHECK(rep.rule_flags.at("-delta").p_disciplined);
  // No -d rule, so the pairing check has nothing to say about d.
  CHECK(rep.posn_pairs.count("d") == 0);
  CHECK(rep.posn_pairs.at("delta"));
  CHECK(rep.strata.ok);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("P-disciplined") != std::string::npos);
}

TEST_CASE("d1_d2 fails only even-handedness") {
  DisciplineReport rep = check_logic(logics::get_logic("d1_d2"));
  CHECK(rep.posn_pairs.at("d1"));
  CHECK(rep.posn_pairs.at("d2"));
  CHECK(rep.strata.ok);
  CHECK_FALSE(rep.even_handed.at("P_plus_delta"));
  CHECK(rep.even_handed.at("P_delta"));
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("P_plus_delta") != std::string::npos);
}

TEST_CASE("the positive-only layered logic is rejected for its closures") {
  DisciplineReport rep = check_logic(logics::original_parallel());
  for (const auto& [tag, flags] : rep.rule_flags) CHECK(flags.p_disciplined);
  CHECK(rep.strata.ok);
  CHECK_FALSE(rep.even_handed.at("P_plus_delta"));
  CHECK_FALSE(rep.even_handed.at("P_plus_lambda"));
  CHECK_FALSE(rep.well_disciplined());
}

TEST_CASE("rule flags classify the classic rules") {
  LogicDef classic = logics::get_logic("classic");
  DisciplineReport rep = check_logic(classic);
  CHECK(rep.rule_flags.at("+delta").pos_only);
  CHECK(rep.rule_flags.at("+delta").nnf);
  // The negative delta rule tests presence of -delta conclusions, so it is
  // positive as well; it is not negative-only.
  CHECK(rep.rule_flags.at("-delta").pos_only);
  CHECK_FALSE(rep.rule_flags.at("-delta").neg_only);
  CHECK(rep.rule_flags.at("+partial").pos_only);

  LogicDef parallel = logics::get_logic("parallel");
  DisciplineReport prep = check_logic(parallel);
  // Closure absence tests make the layered rules non-positive yet still
  // P-disciplined.
  CHECK_FALSE(prep.rule_flags.at("+lambda").pos_only);
  CHECK(prep.rule_flags.at("+lambda").p_disciplined);
  CHECK_FALSE(prep.rule_flags.at("+spartial").pos_only);
  CHECK(prep.rule_flags.at("+spartial").p_disciplined);
}

TEST_CASE("report rendering") {
  std::string good = to_string(check_logic(logics::get_logic("parallel")));
  CHECK(good.find("verdict: well-disciplined") != std::string::npos);
  CHECK(good.find("strata: delta=0 lambda=1 spartial=2") != std::string::npos);
  CHECK(good.find("closure P_delta: even-handed") != std::string::npos);

  std::string bad = to_string(check_logic(logics::get_logic("cwa_naive")));
  CHECK(bad.find("verdict: not well-disciplined") != std::string::npos);
  CHECK(bad.find("violations:") != std::string::npos);

  NotWellDisciplined err(check_logic(logics::get_logic("cwa_naive")));
  CHECK(std::string(err.what()).find("not well-disciplined") != std::string::npos);
  CHECK_FALSE(err.report().well_disciplined());
}

TEST_CASE("strong negation pairing is read from canonical forms") {
  // Reordered conjuncts still count as paired.
  const char* src = R"(
(logic shuffled
  (rule +d (and (fact q) (in +d (neg q) proof)))
  (rule -d (or (in -d (neg q) proof) (not-fact q)))
  (main d))
)";
  DisciplineReport rep = check_logic(parse_logic(src));
  CHECK(rep.posn_pairs.at("d"));
  CHECK(rep.well_disciplined());
}
