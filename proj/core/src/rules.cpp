#include "arl/rules.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace arl {

bool covers(const Condition& c, const Example& e) {
    double v = e.values[c.attribute];
    switch (c.relation) {
        case Relation::Equals: return v == c.value;
        case Relation::Less: return v < c.value;
        case Relation::GreaterEq: return v >= c.value;
    }
    return false;
}

bool covers(std::span<const Condition> premise, const Example& e) {
    for (const Condition& c : premise)
        if (!covers(c, e)) return false;
    return true;
}

namespace {

std::vector<std::size_t> covered_indices(const Dataset& ds, std::span<const Condition> premise) {
    std::vector<std::size_t> out;
    out.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (covers(premise, ds.examples()[i])) out.push_back(i);
    return out;
}

void numeric_thresholds(const Dataset& ds, std::span<const std::size_t> covered,
                        std::size_t attr, std::vector<double>& out) {
    out.clear();
    for (std::size_t i : covered) out.push_back(ds.examples()[i].values[attr]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() < 2) {
        out.clear();
        return;
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = (out[i] + out[i + 1]) / 2.0;
    out.pop_back();
}

void append_attribute_conditions(const Dataset& ds, std::span<const std::size_t> covered,
                                 std::size_t a, std::vector<Condition>& out,
                                 std::vector<double>& scratch) {
    const Attribute& attr = ds.attributes()[a];
    if (attr.kind == AttributeKind::Nominal) {
        for (std::size_t v = 0; v < attr.domain.size(); ++v)
            out.push_back(Condition{a, Relation::Equals, static_cast<double>(v)});
    } else {
        numeric_thresholds(ds, covered, a, scratch);
        for (double t : scratch) {
            out.push_back(Condition{a, Relation::Less, t});
            out.push_back(Condition{a, Relation::GreaterEq, t});
        }
    }
}

}  // namespace

std::vector<Condition> possible_conditions(const Dataset& ds,
                                           std::span<const std::size_t> covered) {
    std::vector<Condition> out;
    std::vector<double> scratch;
    for (std::size_t a = 0; a < ds.attributes().size(); ++a)
        append_attribute_conditions(ds, covered, a, out, scratch);
    return out;
}

std::vector<Condition> possible_conditions_for_attribute(const Dataset& ds,
                                                         std::span<const std::size_t> covered,
                                                         std::size_t attribute) {
    std::vector<Condition> out;
    std::vector<double> scratch;
    append_attribute_conditions(ds, covered, attribute, out, scratch);
    return out;
}

ConfusionMatrix rule_stats(const Dataset& ds, std::span<const Condition> premise, int conclusion) {
    ConfusionMatrix cm;
    cm.P = ds.class_count(conclusion);
    cm.N = static_cast<long long>(ds.size()) - cm.P;
    for (const Example& e : ds.examples()) {
        if (!covers(premise, e)) continue;
        if (e.label == conclusion) ++cm.p;
        else ++cm.n;
    }
    return cm;
}

ClassificationRule grow_rule(ClassificationRule seed, const Dataset& ds,
                             const std::vector<bool>& uncovered, int mincov, Measure measure,
                             GrowthTrace* trace, const ConditionFilter& filter) {
    const long long P = ds.class_count(seed.conclusion);
    const long long N = static_cast<long long>(ds.size()) - P;

    std::vector<std::size_t> covered = covered_indices(ds, seed.premise);
    double q_best = -std::numeric_limits<double>::infinity();
    std::size_t cov_best = 0;
    bool have_best = false;

    std::vector<std::size_t> ext, best_ext;
    while (true) {
        auto candidates = possible_conditions(ds, covered);
        bool found = false;
        Condition chosen{};
        ConfusionMatrix chosen_stats;
        for (const Condition& w : candidates) {
            if (filter && !filter(w)) continue;
            ext.clear();
            int newly = 0;
            for (std::size_t i : covered) {
                if (!covers(w, ds.examples()[i])) continue;
                ext.push_back(i);
                if (uncovered[i]) ++newly;
            }
            if (newly < mincov) continue;
            ConfusionMatrix cm{0, 0, P, N};
            for (std::size_t i : ext)
                (ds.examples()[i].label == seed.conclusion ? cm.p : cm.n)++;
            double q = evaluate(measure, cm);
            if (q > q_best || (q == q_best && (!have_best || ext.size() > cov_best))) {
                q_best = q;
                cov_best = ext.size();
                have_best = true;
                found = true;
                chosen = w;
                chosen_stats = cm;
                best_ext = ext;
            }
        }
        if (!found) break;
        seed.premise.push_back(chosen);
        covered = best_ext;
        if (trace)
            trace->push_back(GrowthStep{chosen, q_best, static_cast<int>(cov_best), chosen_stats});
    }

    seed.stats = rule_stats(ds, seed.premise, seed.conclusion);
    if (seed.stats.p + seed.stats.n > 0) seed.quality = evaluate(measure, seed.stats);
    return seed;
}

std::vector<Condition> merge_conditions(std::vector<Condition> premise) {
    std::vector<Condition> out;
    for (const Condition& c : premise) {
        bool merged = false;
        for (Condition& o : out) {
            if (o.attribute != c.attribute || o.relation != c.relation) continue;
            if (c.relation == Relation::GreaterEq) o.value = std::max(o.value, c.value);
            else if (c.relation == Relation::Less) o.value = std::min(o.value, c.value);
            else if (o.value != c.value) continue;  // contradictory equals: keep both
            merged = true;
            break;
        }
        if (!merged) out.push_back(c);
    }
    return out;
}

ClassificationRule prune_rule(ClassificationRule rule, const Dataset& ds, Measure measure) {
    rule.stats = rule_stats(ds, rule.premise, rule.conclusion);
    if (rule.stats.p + rule.stats.n > 0) rule.quality = evaluate(measure, rule.stats);

    while (rule.premise.size() > 1) {
        double best_gain = -std::numeric_limits<double>::infinity();
        int best_idx = -1;
        ConfusionMatrix best_stats;
        // Scan from the most recently added condition so ties remove it.
        for (int i = static_cast<int>(rule.premise.size()) - 1; i >= 0; --i) {
            std::vector<Condition> reduced = rule.premise;
            reduced.erase(reduced.begin() + i);
            ConfusionMatrix cm = rule_stats(ds, reduced, rule.conclusion);
            double q = evaluate(measure, cm);
            double gain = q - rule.quality;
            if (gain >= 0.0 && gain > best_gain) {
                best_gain = gain;
                best_idx = i;
                best_stats = cm;
            }
        }
        if (best_idx < 0) break;
        rule.premise.erase(rule.premise.begin() + best_idx);
        rule.stats = best_stats;
        rule.quality = evaluate(measure, best_stats);
    }

    rule.premise = merge_conditions(std::move(rule.premise));
    rule.stats = rule_stats(ds, rule.premise, rule.conclusion);
    rule.quality = evaluate(measure, rule.stats);
    return rule;
}

RuleSet induce_rules(const Dataset& ds, int target_class, int mincov, Measure grow_measure,
                     Measure prune_measure, InductionLog* log) {
    if (target_class < 0 || target_class >= static_cast<int>(ds.classes().size()))
        throw std::invalid_argument("induce_rules: target class out of range");

    RuleSet rs;
    rs.target_class = target_class;
    rs.default_class = ds.majority_class();
    rs.grow_measure = grow_measure;
    rs.prune_measure = prune_measure;
    rs.mincov = mincov;

    std::vector<bool> uncovered(ds.size(), true);
    auto uncovered_positives = [&] {
        int c = 0;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (uncovered[i] && ds.examples()[i].label == target_class) ++c;
        return c;
    };

    while (uncovered_positives() >= mincov) {
        ClassificationRule seed;
        seed.conclusion = target_class;
        GrowthTrace trace;
        ClassificationRule grown =
            grow_rule(std::move(seed), ds, uncovered, mincov, grow_measure, &trace);
        if (grown.premise.empty()) break;
        ClassificationRule pruned = prune_rule(std::move(grown), ds, prune_measure);

        int newly = 0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (uncovered[i] && pruned.covers_example(ds.examples()[i])) {
                uncovered[i] = false;
                ++newly;
            }
        }
        if (log) {
            log->newly_covered.push_back(newly);
            log->traces.push_back(std::move(trace));
        }
        rs.rules.push_back(std::move(pruned));
        if (newly == 0) break;  // defensive: no progress
    }

    std::vector<double> pv;
    pv.reserve(rs.rules.size());
    for (ClassificationRule& r : rs.rules) {
        r.p_value = fisher_p_value(r.stats);
        pv.push_back(*r.p_value);
    }
    auto adj = fdr_adjust(pv);
    for (std::size_t i = 0; i < rs.rules.size(); ++i) rs.rules[i].p_value_adjusted = adj[i];
    return rs;
}

int classify(std::span<const RuleSet> sets, const Example& e, Measure voting_measure,
             int default_class, std::size_t class_count) {
    std::vector<std::vector<double>> votes(class_count);
    for (const RuleSet& rs : sets)
        for (const ClassificationRule& r : rs.rules)
            if (r.covers_example(e))
                votes[static_cast<std::size_t>(r.conclusion)].push_back(
                    evaluate(voting_measure, r.stats));

    bool any = false;
    for (auto& v : votes)
        if (!v.empty()) any = true;
    if (!any) return default_class;

    // Sort each class's contributions so the sum is independent of rule order.
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < class_count; ++c) {
        std::sort(votes[c].begin(), votes[c].end());
        double s = 0.0;
        for (double q : votes[c]) s += q;
        if (s > best_score) {
            best_score = s;
            best = static_cast<int>(c);
        }
    }
    return best;
}

}  // namespace arl
