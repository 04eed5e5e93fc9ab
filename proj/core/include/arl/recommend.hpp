#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/rules.hpp"

namespace arl {

// Interval meta-attributes replace a numeric attribute with 1-based interval
// ids over the cut thresholds: (min,c1], (c1,c2], ..., (ck,max). Nominal
// attributes are copied verbatim.
struct MetaAttribute {
    std::size_t attribute = 0;
    bool interval = false;
    std::vector<double> cuts;  // ascending, distinct; interval attributes only

    int interval_count() const { return static_cast<int>(cuts.size()) + 1; }
};

class MetaTable {
public:
    MetaTable() = default;
    MetaTable(std::vector<MetaAttribute> attrs, const Dataset& train);

    const std::vector<MetaAttribute>& meta_attributes() const { return attrs_; }
    // Training examples mapped through to_meta, same classes as the base set.
    const Dataset& meta_train() const { return meta_train_; }
    const Dataset& train() const { return *train_; }

    std::vector<double> to_meta(const Example& e) const;
    // Value bounds of interval id k (1-based) for the given meta attribute,
    // open ends substituted by the training min/max.
    std::pair<double, double> interval_bounds(const MetaAttribute& ma, int id) const;

private:
    std::vector<MetaAttribute> attrs_;
    const Dataset* train_ = nullptr;
    Dataset meta_train_;
};

// Collects every attribute used by any elementary condition of the rules;
// numeric thresholds across source and target sides become the cuts.
MetaTable build_meta_table(const ActionRuleSet& rules, const Dataset& train);

struct RecommendedChange {
    std::size_t attribute = 0;
    std::string from_text;
    std::string to_text;
    double realized = 0.0;      // numeric target midpoint or nominal domain index
    bool nominal = false;
};

struct Recommendation {
    std::vector<Condition> conditions;  // over meta attributes, index-aligned with MetaTable
    double quality = 0.0;
    ConfusionMatrix stats;              // on meta-mapped training examples
    std::vector<RecommendedChange> actions;  // one per attribute needing change
};

// Classification induction over the meta table for the target class; stable
// meta-attributes admit only conditions the example already satisfies.
// Returns up to max_recs recommendations ordered by descending quality;
// conditions already satisfied by x produce no action.
std::vector<Recommendation> induce_recommendations(const MetaTable& mt, const Example& x,
                                                   int target_class, int mincov,
                                                   Measure measure, int max_recs);

// Applies the top recommendation: numeric attributes move to the midpoint of
// the target interval range (training min/max close open ends), nominal ones
// take the prescribed value; attributes without actions are unchanged.
Example realize(const Recommendation& rec, const Example& x, const MetaTable& mt);

// Alternative strategy: among rules whose source part covers x, the one with
// the best source-part quality (ties: larger p) prescribes the change.
// Constraints change nothing; narrowing actions apply their target as well.
std::optional<Example> best_action_rule_transform(const ActionRuleSet& rules, const Example& x,
                                                  Measure measure, const Dataset& train);

}  // namespace arl
