#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "arl/rules.hpp"
#include "helpers.hpp"

using namespace arl;

namespace {

std::vector<std::size_t> all_indices(const Dataset& ds) {
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

Dataset tiny_numeric() {
    return load_inline(
        "x,class\n2,0\n3,0\n5,1\n",
        "x,numeric,flexible,condition\nclass,nominal,-,decision\n");
}

}  // namespace

TEST_SUITE("rules") {

TEST_CASE("covers semantics") {
    const Dataset& ds = monk1();
    Example x = ds.examples()[0];

    std::vector<Condition> empty;
    CHECK(covers(std::span<const Condition>(empty), x));

    Condition eq = nom(ds, "a1", ds.value_text(x, 0));
    CHECK(covers(eq, x));
    Condition other = eq;
    other.value += 1.0;
    if (other.value >= ds.attributes()[0].domain.size()) other.value = 0.0;
    CHECK_FALSE(covers(other, x));

    // numeric boundary: >= is inclusive, < is exclusive
    Dataset nds = tiny_numeric();
    Example e = nds.examples()[1];  // x = 3
    CHECK(covers(Condition{0, Relation::GreaterEq, 3.0}, e));
    CHECK_FALSE(covers(Condition{0, Relation::Less, 3.0}, e));
    CHECK(covers(Condition{0, Relation::Less, 3.5}, e));
}

TEST_CASE("possible conditions enumerate domains and adjacent means") {
    Dataset nds = tiny_numeric();
    auto idx = all_indices(nds);
    auto conds = possible_conditions(nds, idx);
    // numeric values {2,3,5} -> thresholds {2.5, 4}, each as < and >=
    REQUIRE(conds.size() == 4);
    CHECK(conds[0] == Condition{0, Relation::Less, 2.5});
    CHECK(conds[1] == Condition{0, Relation::GreaterEq, 2.5});
    CHECK(conds[2] == Condition{0, Relation::Less, 4.0});
    CHECK(conds[3] == Condition{0, Relation::GreaterEq, 4.0});

    // single distinct value -> nothing for that attribute
    std::vector<std::size_t> only{0};
    CHECK(possible_conditions(nds, only).empty());

    Dataset nomds = load_inline("p,class\nYes,0\nNo,1\n",
                                "p,nominal,flexible,condition\nclass,nominal,-,decision\n");
    auto nconds = possible_conditions(nomds, all_indices(nomds));
    REQUIRE(nconds.size() == 2);
    CHECK(nconds[0] == nom(nomds, "p", "Yes"));
    CHECK(nconds[1] == nom(nomds, "p", "No"));
}

TEST_CASE("rule stats count coverage against the conclusion class") {
    const Dataset& ds = monk1();
    std::vector<Condition> premise{nom(ds, "a1", "1")};
    ConfusionMatrix cm = rule_stats(ds, premise, 0);
    CHECK(cm.p == 31);
    CHECK(cm.n == 14);
    CHECK(cm.P == 62);
    CHECK(cm.N == 62);
}

TEST_CASE("growing on monk1 follows the precision trace") {
    const Dataset& ds = monk1();
    std::vector<bool> uncovered(ds.size(), true);
    GrowthTrace trace;
    ClassificationRule seed;
    seed.conclusion = 0;
    ClassificationRule r = grow_rule(seed, ds, uncovered, 5, Measure::Precision, &trace);

    REQUIRE(trace.size() == 3);
    CHECK(trace[0].condition == nom(ds, "a1", "1"));
    CHECK(trace[0].quality == doctest::Approx(31.0 / 45.0).epsilon(1e-9));
    CHECK(trace[1].condition == nom(ds, "a2", "2"));
    CHECK(trace[1].quality == doctest::Approx(15.0 / 17.0).epsilon(1e-9));
    CHECK(trace[2].condition == nom(ds, "a6", "2"));
    CHECK(trace[2].quality == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(r.stats.p == 9);
    CHECK(r.stats.n == 1);
}

TEST_CASE("growing stops at the precision ceiling") {
    Dataset ds = load_inline(
        "x,y,class\n"
        "a,c,1\na,d,1\na,c,1\na,d,1\na,c,1\na,d,1\n"
        "b,c,0\nb,d,0\nb,c,0\nb,d,0\nb,c,0\nb,d,0\n",
        "x,nominal,flexible,condition\ny,nominal,flexible,condition\nclass,nominal,-,decision\n");
    REQUIRE(ds.classes() == std::vector<std::string>{"1", "0"});  // observed order
    std::vector<bool> uncovered(ds.size(), true);
    ClassificationRule seed;
    seed.conclusion = 0;  // class "1", the x=a block
    ClassificationRule r = grow_rule(seed, ds, uncovered, 5, Measure::Precision);
    REQUIRE(r.premise.size() == 1);
    CHECK(r.premise[0] == nom(ds, "x", "a"));
    CHECK(r.stats.p == 6);
    CHECK(r.stats.n == 0);
}

TEST_CASE("growing returns an empty premise when nothing is admissible") {
    Dataset ds = tiny_numeric();
    std::vector<bool> uncovered(ds.size(), true);
    ClassificationRule seed;
    seed.conclusion = 1;
    ClassificationRule r = grow_rule(seed, ds, uncovered, 50, Measure::Precision);
    CHECK(r.premise.empty());
}

TEST_CASE("merging folds same-attribute numeric conditions") {
    std::vector<Condition> premise{Condition{0, Relation::GreaterEq, 3.0},
                                   Condition{0, Relation::GreaterEq, 5.0},
                                   Condition{0, Relation::Less, 10.0}};
    auto merged = merge_conditions(premise);
    REQUIRE(merged.size() == 2);
    CHECK(merged[0] == Condition{0, Relation::GreaterEq, 5.0});
    CHECK(merged[1] == Condition{0, Relation::Less, 10.0});

    // duplicate nominal condition collapses
    std::vector<Condition> noms{Condition{1, Relation::Equals, 2.0},
                                Condition{1, Relation::Equals, 2.0}};
    CHECK(merge_conditions(noms).size() == 1);
}

TEST_CASE("pruning removes a redundant condition at equal quality") {
    Dataset ds = load_inline(
        "x,class\n0,0\n1,0\n2,1\n3,1\n4,1\n5,0\n",
        "x,numeric,flexible,condition\nclass,nominal,-,decision\n");
    ClassificationRule r;
    r.conclusion = 1;
    r.premise = {Condition{0, Relation::GreaterEq, 1.0}, Condition{0, Relation::GreaterEq, 2.0}};
    r.stats = rule_stats(ds, r.premise, 1);
    r.quality = evaluate(Measure::Precision, r.stats);
    ClassificationRule p = prune_rule(r, ds, Measure::Precision);
    REQUIRE(p.premise.size() == 1);
    CHECK(p.premise[0] == Condition{0, Relation::GreaterEq, 2.0});
}

TEST_CASE("pruning keeps a single condition unchanged") {
    Dataset ds = tiny_numeric();
    ClassificationRule r;
    r.conclusion = 1;
    r.premise = {Condition{0, Relation::GreaterEq, 4.0}};
    r.stats = rule_stats(ds, r.premise, 1);
    r.quality = evaluate(Measure::Precision, r.stats);
    ClassificationRule p = prune_rule(r, ds, Measure::Precision);
    CHECK(p.premise == r.premise);
}

TEST_CASE("induction on iris-reduced yields one perfect setosa rule") {
    const Dataset& ds = iris_reduced();
    int setosa = static_cast<int>(
        std::find(ds.classes().begin(), ds.classes().end(), "setosa") - ds.classes().begin());
    RuleSet rs = induce_rules(ds, setosa, 5, Measure::C2, Measure::C2);
    REQUIRE(rs.rules.size() == 1);
    CHECK(evaluate(Measure::Precision, rs.rules[0].stats) == doctest::Approx(1.0));
}

TEST_CASE("induction with mincov 1 covers every target example") {
    const Dataset& ds = iris_reduced();
    for (int cls = 0; cls < 2; ++cls) {
        RuleSet rs = induce_rules(ds, cls, 1, Measure::C2, Measure::C2);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds.examples()[i].label != cls) continue;
            bool covered = false;
            for (const auto& r : rs.rules) covered = covered || r.covers_example(ds.examples()[i]);
            CHECK(covered);
        }
    }
}

TEST_CASE("too few target examples produce an empty rule set") {
    Dataset ds = load_inline(
        "x,class\n1,0\n2,0\n3,0\n4,0\n5,0\n6,1\n7,1\n8,1\n9,1\n",
        "x,numeric,flexible,condition\nclass,nominal,-,decision\n");
    RuleSet rs = induce_rules(ds, 1, 5, Measure::Precision, Measure::Precision);
    CHECK(rs.rules.empty());
}

TEST_CASE("induced rules carry adjusted significance") {
    RuleSet rs = induce_rules(monk1(), 1, 5, Measure::C2, Measure::C2);
    REQUIRE(!rs.rules.empty());
    for (const auto& r : rs.rules) {
        REQUIRE(r.p_value.has_value());
        REQUIRE(r.p_value_adjusted.has_value());
        CHECK(*r.p_value_adjusted >= *r.p_value - 1e-15);
        CHECK(*r.p_value_adjusted <= 1.0);
    }
}

TEST_CASE("classification votes with the measure and falls back to the majority") {
    Dataset ds = load_inline(
        "x,class\na,0\na,0\na,1\nb,1\nb,0\n",
        "x,nominal,flexible,condition\nclass,nominal,-,decision\n");

    auto stats_rule = [](int cls, long long p, long long n) {
        ClassificationRule r;
        r.conclusion = cls;
        r.stats = {p, n, 10, 10};  // precision = p/(p+n)
        return r;
    };

    // two 0.4 voters beat a single 0.7 voter
    RuleSet a;
    a.target_class = 0;
    a.rules = {stats_rule(0, 4, 6), stats_rule(0, 4, 6)};
    RuleSet b;
    b.target_class = 1;
    b.rules = {stats_rule(1, 7, 3)};
    std::vector<RuleSet> sets{a, b};
    Example x = ds.examples()[0];
    CHECK(classify(sets, x, Measure::Precision, 1, 2) == 0);

    // single voter wins its class
    std::vector<RuleSet> single{b};
    CHECK(classify(single, x, Measure::Precision, 0, 2) == 1);

    // nothing covers -> default class
    RuleSet c;
    c.target_class = 1;
    ClassificationRule miss = stats_rule(1, 9, 1);
    miss.premise = {nom(ds, "x", "b")};
    c.rules = {miss};
    std::vector<RuleSet> missing{c};
    CHECK(classify(missing, x, Measure::Precision, 0, 2) == 0);

    // exact tie goes to the smaller class index
    RuleSet t0, t1;
    t0.target_class = 0;
    t1.target_class = 1;
    t0.rules = {stats_rule(0, 5, 5)};
    t1.rules = {stats_rule(1, 5, 5)};
    std::vector<RuleSet> tied{t1, t0};
    CHECK(classify(tied, x, Measure::Precision, 1, 2) == 0);
}

}  // TEST_SUITE
