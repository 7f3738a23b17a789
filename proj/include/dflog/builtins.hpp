#pragma once
// Built-in logic catalog. Each entry ships as embedded DSL text; the parallel
// logic derives its negative rules mechanically by strong negation from the
// positive ones.

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "logic.hpp"
#include "logic_io.hpp"

namespace dflog::logics {

namespace detail {

inline const char* kDeltaRules = R"(
  (rule +delta
    (or (fact q)
        (exists r (rules-strict (head q))
          (forall a (antecedent r) (in +delta a proof)))))
  (rule -delta
    (and (not-fact q)
         (forall r (rules-strict (head q))
           (exists a (antecedent r) (in -delta a proof)))))
)";

inline std::string delta_src() {
  return std::string("(logic delta\n") + kDeltaRules + "  (main delta))\n";
}

inline std::string classic_src() {
  return std::string("(logic classic\n") + kDeltaRules + R"(
  (rule +partial
    (or (in +delta q proof)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +partial a proof)))
             (in -delta (neg q) proof)
             (forall s (rules-all (head (neg q)))
               (or (exists a (antecedent s) (in -partial a proof))
                   (exists t (rules-sd (head q))
                     (and (forall a (antecedent t) (in +partial a proof))
                          (sup t s))))))))
  (rule -partial
    (and (in -delta q proof)
         (or (forall r (rules-sd (head q))
               (exists a (antecedent r) (in -partial a proof)))
             (in +delta (neg q) proof)
             (exists s (rules-all (head (neg q)))
               (and (forall a (antecedent s) (in +partial a proof))
                    (forall t (rules-sd (head q))
                      (or (exists a (antecedent t) (in -partial a proof))
                          (not-sup t s))))))))
  (main partial))
)";
}

inline const char* kPlusLambda = R"(
    (or (in +delta q P_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +lambda a proof)))
             (notin +delta (neg q) P_delta)))
)";

inline const char* kPlusSpartial = R"(
    (or (in +delta q P_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +spartial a proof)))
             (notin +delta (neg q) P_delta)
             (forall s (rules-all (head (neg q)))
               (or (exists a (antecedent s) (notin +lambda a P_lambda))
                   (exists t (rules-sd (head q))
                     (and (forall a (antecedent t) (in +spartial a proof))
                          (sup t s)))))))
)";

inline std::string parallel_src() {
  return std::string("(logic parallel\n") + kDeltaRules + R"(
  (rule +lambda
    (or (in +delta q P_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +lambda a proof)))
             (notin +delta (neg q) P_delta))))
  (rule -lambda
    (and (in -delta q P_delta)
         (or (forall r (rules-sd (head q))
               (exists a (antecedent r) (in -lambda a proof)))
             (in +delta (neg q) P_delta))))
  (rule +spartial
    (or (in +delta q P_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +spartial a proof)))
             (notin +delta (neg q) P_delta)
             (forall s (rules-all (head (neg q)))
               (or (exists a (antecedent s) (notin +lambda a P_lambda))
                   (exists t (rules-sd (head q))
                     (and (forall a (antecedent t) (in +spartial a proof))
                          (sup t s))))))))
  (rule -spartial
    (and (in -delta q P_delta)
         (or (forall r (rules-sd (head q))
               (exists a (antecedent r) (in -spartial a proof)))
             (in +delta (neg q) P_delta)
             (exists s (rules-all (head (neg q)))
               (and (forall a (antecedent s) (in +lambda a P_lambda))
                    (forall t (rules-sd (head q))
                      (or (exists a (antecedent t) (in -spartial a proof))
                          (not-sup t s))))))))
  (closure P_delta +delta -delta)
  (closure P_lambda +lambda -lambda)
  (main spartial))
)";
}

inline std::string cwa_naive_src() {
  return std::string("(logic cwa_naive\n") + kDeltaRules + R"(
  (rule +d (notin +delta (neg q) P_delta))
  (rule -d (notin -delta (neg q) P_delta))
  (closure P_delta +delta -delta)
  (main d))
)";
}

inline std::string cwa_revised_src() {
  return std::string("(logic cwa_revised\n") + kDeltaRules + R"(
  (rule +d (notin +delta (neg q) P_delta))
  (rule -d (in +delta (neg q) P_delta))
  (closure P_delta +delta -delta)
  (main d))
)";
}

inline std::string unstable_choice_src() {
  return std::string("(logic unstable_choice\n") + kDeltaRules + R"(
  (rule +d (notin +d (neg q) proof))
  (main d))
)";
}

inline std::string d1_d2_src() {
  return std::string("(logic d1_d2\n") + kDeltaRules + R"(
  (rule +d1 (in +delta q P_plus_delta))
  (rule -d1 (in -delta q P_plus_delta))
  (rule +d2 (in +delta q P_delta))
  (rule -d2 (in -delta q P_delta))
  (closure P_plus_delta +delta)
  (closure P_delta +delta -delta)
  (main d1 d2))
)";
}

}  // namespace detail

// Names in catalog order.
inline const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names = {
      "delta",       "classic",         "parallel", "cwa_naive",
      "cwa_revised", "unstable_choice", "d1_d2"};
  return names;
}

inline const std::map<std::string, std::string>& builtin_sources() {
  static const std::map<std::string, std::string> sources = {
      {"delta", detail::delta_src()},
      {"classic", detail::classic_src()},
      {"parallel", detail::parallel_src()},
      {"cwa_naive", detail::cwa_naive_src()},
      {"cwa_revised", detail::cwa_revised_src()},
      {"unstable_choice", detail::unstable_choice_src()},
      {"d1_d2", detail::d1_d2_src()},
  };
  return sources;
}

inline cond::LogicDef get_logic(const std::string& name) {
  using namespace cond;
  if (name == "parallel") {
    // Negative rules by strong negation of the positive ones.
    LogicDef l;
    l.name = "parallel";
    CondPtr pd = parse_condition(
        "(or (fact q) (exists r (rules-strict (head q)) (forall a (antecedent r) (in +delta a "
        "proof))))");
    CondPtr pl = parse_condition(detail::kPlusLambda);
    CondPtr ps = parse_condition(detail::kPlusSpartial);
    l.rules = {{plus("delta"), pd},    {minus("delta"), sneg(pd)},
               {plus("lambda"), pl},   {minus("lambda"), sneg(pl)},
               {plus("spartial"), ps}, {minus("spartial"), sneg(ps)}};
    l.closures = {{"P_delta", {plus("delta"), minus("delta")}},
                  {"P_lambda", {plus("lambda"), minus("lambda")}}};
    l.main_tags = {"spartial"};
    validate_logic(l);
    return l;
  }
  auto it = builtin_sources().find(name);
  if (it == builtin_sources().end()) throw ValidationError("unknown logic: " + name);
  return parse_logic(it->second);
}

// The historical positive-only formulation behind the parallel logic: no
// negative rules, closures over positive tags only. Not well-disciplined, but
// it derives exactly the same positive consequences as the parallel logic.
inline cond::LogicDef original_parallel() {
  using namespace cond;
  LogicDef l;
  l.name = "original_parallel";
  CondPtr pd = parse_condition(
      "(or (fact q) (exists r (rules-strict (head q)) (forall a (antecedent r) (in +delta a "
      "proof))))");
  CondPtr pl = parse_condition(R"(
    (or (in +delta q P_plus_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +lambda a proof)))
             (notin +delta (neg q) P_plus_delta))))");
  CondPtr ps = parse_condition(R"(
    (or (in +delta q P_plus_delta)
        (and (exists r (rules-sd (head q))
               (forall a (antecedent r) (in +spartial a proof)))
             (notin +delta (neg q) P_plus_delta)
             (forall s (rules-all (head (neg q)))
               (or (exists a (antecedent s) (notin +lambda a P_plus_lambda))
                   (exists t (rules-sd (head q))
                     (and (forall a (antecedent t) (in +spartial a proof))
                          (sup t s))))))))");
  l.rules = {{plus("delta"), pd}, {plus("lambda"), pl}, {plus("spartial"), ps}};
  l.closures = {{"P_plus_delta", {plus("delta")}}, {"P_plus_lambda", {plus("lambda")}}};
  l.main_tags = {"spartial"};
  validate_logic(l);
  return l;
}

}  // namespace dflog::logics
