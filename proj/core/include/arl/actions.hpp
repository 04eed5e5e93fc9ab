#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arl/dataset.hpp"
#include "arl/quality.hpp"
#include "arl/rules.hpp"

namespace arl {

enum class Direction { Forward, Backward };

Direction parse_direction(const std::string& name);
std::string direction_name(Direction d);

// source-only = constraint, target-only = narrowing action, both = action.
struct ElementaryAction {
    std::size_t attribute = 0;
    std::optional<Condition> source;
    std::optional<Condition> target;

    bool is_constraint() const { return source && !target; }
    bool is_narrowing() const { return !source && target; }
    bool is_action() const { return source && target; }
};

struct ActionRule {
    std::vector<ElementaryAction> premise;
    int source_class = 0;
    int target_class = 0;
    ConfusionMatrix source_stats;  // of the source part, positives = source class
    ConfusionMatrix target_stats;  // of the target part, positives = target class
    double source_quality = 0.0;
    double target_quality = 0.0;
    std::optional<double> source_p_value, source_p_value_adjusted;
    std::optional<double> target_p_value, target_p_value_adjusted;
};

// Projections onto classification rules. Constraints belong to the source
// part only, narrowing actions to the target part only; premises are merged.
ClassificationRule source_part(const ActionRule& r);
ClassificationRule target_part(const ActionRule& r);

// Recomputes both parts' stats and qualities on ds.
void refresh_action_stats(ActionRule& r, const Dataset& ds, Measure m_source, Measure m_target);

struct ActionGrowthStep {
    Condition source;
    double source_quality = 0.0;
    ConfusionMatrix source_stats;
    std::optional<Condition> target;
    double target_quality = 0.0;
    ConfusionMatrix target_stats;
};
using ActionGrowthTrace = std::vector<ActionGrowthStep>;

// Forward growing: pick the best source condition over all attributes (same
// admissibility as grow_rule, mincov against `uncovered`), then the best
// target condition restricted to that attribute with mincov against all
// examples; the pair is appended as an elementary action. A stable attribute
// or an empty target search yields a constraint. Identity actions collapse to
// constraints in a final normalization pass (after the trace is recorded).
ActionRule grow_action_rule_forward(ActionRule seed, const Dataset& ds,
                                    const std::vector<bool>& uncovered, int mincov,
                                    Measure m_source, Measure m_target,
                                    ActionGrowthTrace* trace = nullptr);

// Mirror image: the target part drives (flexible attributes only, mincov
// against `uncovered`), the source condition is searched on the chosen
// attribute with mincov against all examples; an empty source search yields
// a narrowing action.
ActionRule grow_action_rule_backward(ActionRule seed, const Dataset& ds,
                                     const std::vector<bool>& uncovered, int mincov,
                                     Measure m_source, Measure m_target,
                                     ActionGrowthTrace* trace = nullptr);

// Three-case pruning: per elementary action try dropping the source condition
// (action becomes narrowing), the target condition (becomes constraint) or
// the whole action; an edit is admissible when the affected part's quality
// does not decrease, and the edit with the largest combined gain is applied,
// ties preferring the most recently added action. The premise is never
// emptied. Numeric conditions are merged per part afterwards.
ActionRule prune_action_rule(ActionRule rule, const Dataset& ds,
                             Measure m_source, Measure m_target);

struct ActionRuleSet {
    std::vector<ActionRule> rules;
    int source_class = 0;
    int target_class = 0;
    Direction direction = Direction::Forward;
    Measure grow_source_measure = Measure::C2;
    Measure grow_target_measure = Measure::C2;
    Measure prune_measure = Measure::C2;
    int mincov = 5;
};

struct ActionInductionLog {
    std::vector<int> newly_covered;
    std::vector<ActionGrowthTrace> traces;
};

// Sequential covering over source/target class pair; the driving part
// (source for Forward, target for Backward) removes covered examples, and
// induction stops when fewer than mincov driving-class examples remain.
ActionRuleSet induce_action_rules(const Dataset& ds, int source_class, int target_class,
                                  Direction direction, int mincov,
                                  Measure grow_source, Measure grow_target, Measure prune,
                                  ActionInductionLog* log = nullptr);

struct ActionSetCharacteristics {
    double rule_count = 0.0;
    double conditions_per_rule = 0.0;  // conditions across both parts
    double actions_per_rule = 0.0;     // full source->target pairs
    double source_precision = 0.0;
    double target_precision = 0.0;
    double source_coverage = 0.0;
    double target_coverage = 0.0;
    double significant_source_fraction = 0.0;  // adjusted p < 0.05
    double significant_target_fraction = 0.0;
};

ActionSetCharacteristics characterize(const ActionRuleSet& rs);

}  // namespace arl
