#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/rules.hpp"

inline std::string data_path(const std::string& name) {
    return std::string(ARL_DATA_DIR) + "/" + name;
}

inline arl::Dataset load_inline(const std::string& csv, const std::string& schema) {
    std::istringstream d(csv), s(schema);
    return arl::load_dataset(d, s, "<test-data>", "<test-schema>");
}

inline const arl::Dataset& monk1() {
    static arl::Dataset ds = arl::load_dataset(data_path("monk1.csv"), data_path("monk1.schema"));
    return ds;
}

inline const arl::Dataset& iris_reduced() {
    static arl::Dataset ds =
        arl::load_dataset(data_path("iris_reduced.csv"), data_path("iris_reduced.schema"));
    return ds;
}

inline const arl::Dataset& vote() {
    static arl::Dataset ds = arl::load_dataset(data_path("vote.csv"), data_path("vote.schema"));
    return ds;
}

inline std::size_t attr_index(const arl::Dataset& ds, const std::string& name) {
    for (std::size_t a = 0; a < ds.attributes().size(); ++a)
        if (ds.attributes()[a].name == name) return a;
    throw std::runtime_error("no attribute " + name);
}

// Nominal equality condition identified by attribute and domain string.
inline arl::Condition nom(const arl::Dataset& ds, const std::string& attr,
                          const std::string& value) {
    std::size_t a = attr_index(ds, attr);
    auto idx = ds.attributes()[a].domain_index(value);
    if (!idx) throw std::runtime_error("no domain value " + value);
    return arl::Condition{a, arl::Relation::Equals, static_cast<double>(*idx)};
}

inline arl::Condition num(const arl::Dataset& ds, const std::string& attr, arl::Relation rel,
                          double threshold) {
    return arl::Condition{attr_index(ds, attr), rel, threshold};
}

// temperature x pus fixture; one training example per meta cell
inline arl::Dataset tonsils_train() {
    return load_inline(
        "temp,pus,ill\n"
        "36.0,No,no\n36.0,Yes,no\n"
        "36.8,No,no\n36.8,Yes,no\n"
        "37.2,No,yes\n37.2,Yes,yes\n"
        "37.8,No,yes\n37.8,Yes,yes\n"
        "39.0,No,yes\n39.0,Yes,yes\n",
        "temp,numeric,flexible,condition\npus,nominal,flexible,condition\n"
        "ill,nominal,-,decision\n");
}

// two hand-written ill -> healthy rules over temp and pus
inline arl::ActionRuleSet tonsils_rules(const arl::Dataset& ds) {
    using namespace arl;
    ActionRuleSet rs;
    rs.source_class = 1;  // yes
    rs.target_class = 0;  // no

    ActionRule r1;
    r1.source_class = 1;
    r1.target_class = 0;
    ElementaryAction t1;
    t1.attribute = attr_index(ds, "temp");
    t1.source = num(ds, "temp", Relation::GreaterEq, 38.0);
    t1.target = num(ds, "temp", Relation::Less, 36.6);
    ElementaryAction p1;
    p1.attribute = attr_index(ds, "pus");
    p1.source = nom(ds, "pus", "Yes");
    p1.target = nom(ds, "pus", "No");
    r1.premise = {t1, p1};

    ActionRule r2;
    r2.source_class = 1;
    r2.target_class = 0;
    ElementaryAction t2;
    t2.attribute = attr_index(ds, "temp");
    t2.source = num(ds, "temp", Relation::GreaterEq, 37.5);
    t2.target = num(ds, "temp", Relation::Less, 37.0);
    ElementaryAction p2;
    p2.attribute = attr_index(ds, "pus");
    p2.source = nom(ds, "pus", "No");
    r2.premise = {t2, p2};

    rs.rules = {r1, r2};
    for (auto& r : rs.rules)
        refresh_action_stats(r, ds, Measure::Precision, Measure::Precision);
    return rs;
}

inline arl::Dataset diabetes_train() {
    std::string csv = "plas,class\n";
    for (int v : {89, 95, 100, 105, 110, 115, 120, 123}) csv += std::to_string(v) + ",neg\n";
    for (int v : {155, 160, 165, 170, 175, 180, 185, 190}) csv += std::to_string(v) + ",pos\n";
    return load_inline(csv, "plas,numeric,flexible,condition\nclass,nominal,-,decision\n");
}

inline arl::ActionRuleSet diabetes_rules(const arl::Dataset& ds) {
    using namespace arl;
    ActionRuleSet rs;
    rs.source_class = 1;  // pos
    rs.target_class = 0;  // neg
    ActionRule r;
    r.source_class = 1;
    r.target_class = 0;
    ElementaryAction ea;
    ea.attribute = attr_index(ds, "plas");
    ea.source = num(ds, "plas", Relation::GreaterEq, 154.0);
    ea.target = num(ds, "plas", Relation::Less, 123.0);
    r.premise = {ea};
    refresh_action_stats(r, ds, Measure::Precision, Measure::Precision);
    rs.rules = {r};
    return rs;
}

// Small random mixed dataset with binary classes, deterministic per rng state.
inline arl::Dataset random_dataset(std::mt19937_64& rng, int max_examples = 40, int max_attrs = 4,
                                   bool with_stable = false) {
    std::uniform_int_distribution<int> attr_count(2, max_attrs);
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_int_distribution<int> domain_size(2, 3);
    int na = attr_count(rng);

    std::vector<arl::Attribute> attrs;
    for (int a = 0; a < na; ++a) {
        arl::Attribute at;
        at.name = "a" + std::to_string(a);
        at.kind = kind(rng) ? arl::AttributeKind::Numeric : arl::AttributeKind::Nominal;
        at.mutability = (with_stable && kind(rng) == 0) ? arl::Mutability::Stable
                                                        : arl::Mutability::Flexible;
        if (at.kind == arl::AttributeKind::Nominal) {
            int ds = domain_size(rng);
            for (int v = 0; v < ds; ++v) at.domain.push_back("v" + std::to_string(v));
        }
        attrs.push_back(at);
    }

    std::uniform_int_distribution<int> example_count(10, max_examples);
    int ne = example_count(rng);
    std::uniform_int_distribution<int> label(0, 1);
    std::uniform_real_distribution<double> numeric(0.0, 10.0);

    std::vector<arl::Example> examples;
    for (int i = 0; i < ne; ++i) {
        arl::Example e;
        for (const auto& at : attrs) {
            if (at.kind == arl::AttributeKind::Nominal) {
                std::uniform_int_distribution<int> v(0, static_cast<int>(at.domain.size()) - 1);
                e.values.push_back(v(rng));
            } else {
                // half-step grid keeps midpoint thresholds reproducible
                e.values.push_back(std::round(numeric(rng) * 2.0) / 2.0);
            }
        }
        e.label = label(rng);
        examples.push_back(e);
    }
    examples[0].label = 0;  // both classes guaranteed
    examples[1].label = 1;
    return arl::Dataset(attrs, {"0", "1"}, examples);
}
