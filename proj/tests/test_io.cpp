#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "arl/io.hpp"
#include "helpers.hpp"

using namespace arl;
using nlohmann::json;

namespace {

Dataset numeric_pair_ds() {
    return load_inline(
        "g,class\n1,0\n3,0\n6,1\n8,1\n",
        "g,numeric,flexible,condition\nclass,nominal,-,decision\n");
}

// the worked monk1 rule after pruning: (a1=1 -> a1=3) with a narrowing on a2
ActionRule worked_rule(const Dataset& ds) {
    ActionRule r;
    r.source_class = 0;
    r.target_class = 1;
    ElementaryAction ea1, ea2;
    ea1.attribute = attr_index(ds, "a1");
    ea1.source = nom(ds, "a1", "1");
    ea1.target = nom(ds, "a1", "3");
    ea2.attribute = attr_index(ds, "a2");
    ea2.target = nom(ds, "a2", "3");
    r.premise = {ea1, ea2};
    refresh_action_stats(r, ds, Measure::RSS, Measure::RSS);
    return r;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double is the shortest round-trip form") {
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    for (double v : {1.0 / 3.0, 1e-7, 12345.6789, 17.0 / 62.0, 1e300}) {
        std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("condition text") {
    const Dataset& m = monk1();
    CHECK(condition_text(nom(m, "a1", "1"), m) == "a1 = 1");
    Dataset ds = numeric_pair_ds();
    CHECK(condition_text(num(ds, "g", Relation::GreaterEq, 37.5), ds) == "g >= 37.5");
    CHECK(condition_text(num(ds, "g", Relation::Less, 36.6), ds) == "g < 36.6");
}

TEST_CASE("rule text") {
    const Dataset& m = monk1();
    ClassificationRule r;
    r.premise = {nom(m, "a1", "1")};
    r.conclusion = 0;
    r.stats = {31, 14, 62, 62};
    r.quality = 0.75;
    SUBCASE("with p-value") {
        r.p_value = 0.25;
        CHECK(rule_text(r, m) == "IF a1 = 1 THEN 0 [31 14 62 62 0.75 0.25]");
    }
    SUBCASE("p-value placeholder") {
        CHECK(rule_text(r, m) == "IF a1 = 1 THEN 0 [31 14 62 62 0.75 -]");
    }
    SUBCASE("empty premise prints TRUE") {
        r.premise.clear();
        CHECK(rule_text(r, m) == "IF TRUE THEN 0 [31 14 62 62 0.75 -]");
    }
}

TEST_CASE("numeric bounds collapse to an interval in rule text") {
    Dataset ds = numeric_pair_ds();
    ClassificationRule r;
    r.premise = {num(ds, "g", Relation::GreaterEq, 2.0), num(ds, "g", Relation::Less, 5.0)};
    r.conclusion = 1;
    CHECK(rule_text(r, ds) == "IF g in [2, 5) THEN 1 [0 0 0 0 0 -]");
}

TEST_CASE("action rule text matches the worked form") {
    const Dataset& m = monk1();
    ActionRule r = worked_rule(m);
    CHECK(action_rule_text(r, m) ==
          "IF (a1=1 -> a1=3) AND (-> a2=3) THEN 0 -> 1 "
          "[31 14 62 62 | 17 0 62 62 | 0.27419354838709675 0.27419354838709675]");
}

TEST_CASE("constraints print without an arrow") {
    const Dataset& m = monk1();
    ActionRule r;
    r.source_class = 0;
    r.target_class = 1;
    ElementaryAction ea;
    ea.attribute = attr_index(m, "a6");
    ea.source = nom(m, "a6", "2");
    r.premise = {ea};
    CHECK(action_rule_text(r, m) == "IF a6=2 THEN 0 -> 1 [0 0 0 0 | 0 0 0 0 | 0 0]");
}

TEST_CASE("same-attribute action conditions group into regions") {
    Dataset ds = numeric_pair_ds();
    ActionRule r;
    r.source_class = 0;
    r.target_class = 1;
    ElementaryAction ea1, ea2;
    ea1.attribute = 0;
    ea1.source = num(ds, "g", Relation::GreaterEq, 1.0);
    ea1.target = num(ds, "g", Relation::GreaterEq, 6.0);
    ea2.attribute = 0;
    ea2.source = num(ds, "g", Relation::Less, 5.0);
    r.premise = {ea1, ea2};
    CHECK(action_rule_text(r, ds) ==
          "IF (g in [1,5) -> g>=6) THEN 0 -> 1 [0 0 0 0 | 0 0 0 0 | 0 0]");
}

TEST_CASE("recommendation text") {
    Dataset ds = diabetes_train();
    MetaTable mt = build_meta_table(diabetes_rules(ds), ds);
    Example x;
    x.values = {183.0};
    auto recs = induce_recommendations(mt, x, 0, 5, Measure::C2, 3);
    REQUIRE(!recs.empty());
    CHECK(recommendation_text(recs.front(), mt) ==
          "plas: 183 -> [89, 123] := 106 [8 0 8 8 1]");

    Example y;
    y.values = {100.0};
    auto none = induce_recommendations(mt, y, 0, 5, Measure::C2, 3);
    REQUIRE(!none.empty());
    CHECK(recommendation_text(none.front(), mt) ==
          "no change (already in target region) [8 0 8 8 1]");
}

TEST_CASE("action rule dumps round-trip through json") {
    const Dataset& m = monk1();
    ActionRuleSet rs = induce_action_rules(m, 0, 1, Direction::Backward, 5,
                                           Measure::C2, Measure::C2, Measure::C2);
    std::string text = action_rules_json(rs, m, "{\"mincov\":5}");
    ActionRuleSet back = parse_action_rules_json(text, m);

    CHECK(back.source_class == rs.source_class);
    CHECK(back.target_class == rs.target_class);
    CHECK(back.direction == rs.direction);
    CHECK(back.grow_source_measure == rs.grow_source_measure);
    CHECK(back.grow_target_measure == rs.grow_target_measure);
    CHECK(back.prune_measure == rs.prune_measure);
    CHECK(back.mincov == rs.mincov);
    REQUIRE(back.rules.size() == rs.rules.size());
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        const ActionRule& a = rs.rules[i];
        const ActionRule& b = back.rules[i];
        REQUIRE(b.premise.size() == a.premise.size());
        for (std::size_t k = 0; k < a.premise.size(); ++k) {
            CHECK(b.premise[k].attribute == a.premise[k].attribute);
            CHECK(b.premise[k].source == a.premise[k].source);
            CHECK(b.premise[k].target == a.premise[k].target);
        }
        CHECK(b.source_stats.p == a.source_stats.p);
        CHECK(b.source_stats.n == a.source_stats.n);
        CHECK(b.target_stats.P == a.target_stats.P);
        CHECK(b.source_quality == a.source_quality);
        CHECK(b.target_quality == a.target_quality);
        CHECK(b.source_p_value == a.source_p_value);
        CHECK(b.target_p_value_adjusted == a.target_p_value_adjusted);
    }

    json j = json::parse(text);
    CHECK(j["mode"] == "action");
    CHECK(j["config"]["mincov"] == 5);
    CHECK(j["schema"]["classes"] == json::array({"0", "1"}));
}

TEST_CASE("classification dumps carry the config echo and texts") {
    const Dataset& m = monk1();
    std::vector<RuleSet> sets = {induce_rules(m, 1, 5, Measure::RSS, Measure::RSS)};
    json j = json::parse(rule_sets_json(sets, m, "{\"measure\":\"rss\"}"));
    CHECK(j["mode"] == "classification");
    CHECK(j["config"]["measure"] == "rss");
    REQUIRE(j["rule_sets"].size() == 1);
    CHECK(j["rule_sets"][0]["target_class"] == "1");
    CHECK(j["rule_sets"][0]["grow_measure"] == "rss");
    REQUIRE(!j["rule_sets"][0]["rules"].empty());
    for (const json& jr : j["rule_sets"][0]["rules"]) {
        CHECK(jr["text"].get<std::string>().substr(0, 3) == "IF ");
        CHECK(jr["stats"].contains("p_value_adjusted"));
    }
}

TEST_CASE("parse rejects malformed dumps") {
    const Dataset& m = monk1();
    ActionRuleSet rs;
    rs.source_class = 0;
    rs.target_class = 1;
    rs.rules = {worked_rule(m)};
    std::string good = action_rules_json(rs, m, "");

    CHECK_THROWS_WITH_AS(parse_action_rules_json("not json", m),
                         doctest::Contains("cannot parse rules file"), std::runtime_error);

    std::vector<RuleSet> sets = {induce_rules(m, 1, 5, Measure::RSS, Measure::RSS)};
    CHECK_THROWS_WITH_AS(parse_action_rules_json(rule_sets_json(sets, m, ""), m),
                         doctest::Contains("not an action-rule dump"), std::runtime_error);

    // schema validation against a different dataset
    CHECK_THROWS_AS(parse_action_rules_json(good, iris_reduced()), std::runtime_error);

    json j = json::parse(good);
    SUBCASE("unknown class") {
        j["source_class"] = "zzz";
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("unknown class"), std::runtime_error);
    }
    SUBCASE("ordered relation on a nominal attribute") {
        j["rules"][0]["premise"][0]["source"]["relation"] = ">=";
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("ordered relation"), std::runtime_error);
    }
    SUBCASE("unknown domain value") {
        j["rules"][0]["premise"][0]["source"]["value"] = "7";
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("unknown value"), std::runtime_error);
    }
    SUBCASE("empty elementary action") {
        j["rules"][0]["premise"][0]["source"] = nullptr;
        j["rules"][0]["premise"][0]["target"] = nullptr;
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("empty elementary action"), std::runtime_error);
    }
    SUBCASE("attribute field at odds with its conditions") {
        j["rules"][0]["premise"][0]["attribute"] = "a3";
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("does not match"), std::runtime_error);
    }
    SUBCASE("missing stats block") {
        j["rules"][0].erase("source_stats");
        CHECK_THROWS_WITH_AS(parse_action_rules_json(j.dump(), m),
                             doctest::Contains("malformed rules file"), std::runtime_error);
    }
}

TEST_CASE("text writers emit one line per rule") {
    const Dataset& m = monk1();
    ActionRuleSet rs;
    rs.source_class = 0;
    rs.target_class = 1;
    rs.rules = {worked_rule(m), worked_rule(m)};
    std::ostringstream out;
    write_action_rules_text(rs, m, out);
    std::string s = out.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 2);
    CHECK(s.find("IF (a1=1 -> a1=3)") == 0);
}

}  // TEST_SUITE
