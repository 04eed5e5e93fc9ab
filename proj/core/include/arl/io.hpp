#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/recommend.hpp"
#include "arl/rules.hpp"

namespace arl {

// Human-readable forms:
//   IF a1 = 1 AND temp >= 37.5 THEN 0 [p n P N q pval]
//   IF (a1=1 -> a1=3) AND (-> a2=3) AND a6=2 THEN 0 -> 1 [pS nS pT nT qS qT]
std::string condition_text(const Condition& c, const Dataset& ds);
std::string rule_text(const ClassificationRule& r, const Dataset& ds);
std::string action_rule_text(const ActionRule& r, const Dataset& ds);
std::string recommendation_text(const Recommendation& rec, const MetaTable& mt);

void write_rules_text(const RuleSet& rs, const Dataset& ds, std::ostream& out);
void write_action_rules_text(const ActionRuleSet& rs, const Dataset& ds, std::ostream& out);

// Structured JSON dumps; the action-rule dump carries the attribute schema and
// class pair so downstream commands can validate against their inputs.
std::string rule_sets_json(const std::vector<RuleSet>& sets, const Dataset& ds,
                           const std::string& config_echo_json);
std::string action_rules_json(const ActionRuleSet& rs, const Dataset& ds,
                              const std::string& config_echo_json);

// Parses an action-rule dump produced by action_rules_json and validates its
// schema against `ds` (attribute names, kinds and nominal domains).
ActionRuleSet parse_action_rules_json(const std::string& text, const Dataset& ds);

std::string format_double(double v);

}  // namespace arl
