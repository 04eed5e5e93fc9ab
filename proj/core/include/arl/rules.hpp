#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/quality.hpp"

namespace arl {

enum class Relation { Equals, Less, GreaterEq };

// Nominal conditions use Equals with value = domain index; numeric conditions
// use Less / GreaterEq with value = threshold.
struct Condition {
    std::size_t attribute = 0;
    Relation relation = Relation::Equals;
    double value = 0.0;

    bool operator==(const Condition&) const = default;
};

bool covers(const Condition& c, const Example& e);
bool covers(std::span<const Condition> premise, const Example& e);

struct ClassificationRule {
    std::vector<Condition> premise;
    int conclusion = 0;
    ConfusionMatrix stats;
    double quality = 0.0;
    std::optional<double> p_value;
    std::optional<double> p_value_adjusted;

    bool covers_example(const Example& e) const { return arl::covers(premise, e); }
};

// Candidate conditions for extending a rule: for nominal attributes one
// equality per domain value, for numeric attributes both a<t and a>=t for
// every midpoint t between adjacent distinct values among covered examples.
std::vector<Condition> possible_conditions(const Dataset& ds,
                                           std::span<const std::size_t> covered);
std::vector<Condition> possible_conditions_for_attribute(const Dataset& ds,
                                                         std::span<const std::size_t> covered,
                                                         std::size_t attribute);

ConfusionMatrix rule_stats(const Dataset& ds, std::span<const Condition> premise, int conclusion);

struct GrowthStep {
    Condition condition;
    double quality = 0.0;
    int covered = 0;
    ConfusionMatrix stats;
};
using GrowthTrace = std::vector<GrowthStep>;

using ConditionFilter = std::function<bool(const Condition&)>;

// Greedy growing: each iteration adds the condition with the best quality,
// ties broken by larger coverage; a candidate is admissible when the extended
// rule covers at least mincov yet-uncovered examples. A condition is accepted
// only if it strictly improves on the best (quality, coverage) seen so far,
// so the premise may come back empty.
ClassificationRule grow_rule(ClassificationRule seed,
                             const Dataset& ds,
                             const std::vector<bool>& uncovered,
                             int mincov,
                             Measure measure,
                             GrowthTrace* trace = nullptr,
                             const ConditionFilter& filter = nullptr);

// Hill-climbing removal: repeatedly drops the condition whose removal yields
// the largest quality gain, accepting equal quality; ties remove the most
// recently added condition; stops at one condition or when every removal
// strictly hurts. Same-attribute numeric conditions are merged afterwards.
ClassificationRule prune_rule(ClassificationRule rule, const Dataset& ds, Measure measure);

// Canonicalizes a premise: numeric conditions on one attribute collapse to at
// most one GreaterEq (max threshold) and one Less (min threshold); duplicate
// nominal conditions are dropped. Coverage is unchanged.
std::vector<Condition> merge_conditions(std::vector<Condition> premise);

struct RuleSet {
    std::vector<ClassificationRule> rules;
    int target_class = 0;
    int default_class = 0;
    Measure grow_measure = Measure::Precision;
    Measure prune_measure = Measure::Precision;
    int mincov = 5;
};

struct InductionLog {
    // Count of previously uncovered examples covered by each rule when added.
    std::vector<int> newly_covered;
    std::vector<GrowthTrace> traces;
};

// Sequential covering for one class: grow, prune, remove covered examples,
// repeat until fewer than mincov uncovered target-class examples remain.
// Finalizes Fisher p-values with Benjamini-Hochberg adjustment over the set.
RuleSet induce_rules(const Dataset& ds, int target_class, int mincov,
                     Measure grow_measure, Measure prune_measure,
                     InductionLog* log = nullptr);

// Quality-weighted voting across per-class rule sets; an example covered by
// no rule gets the default class; score ties go to the smaller class index.
int classify(std::span<const RuleSet> sets, const Example& e, Measure voting_measure,
             int default_class, std::size_t class_count);

}  // namespace arl
