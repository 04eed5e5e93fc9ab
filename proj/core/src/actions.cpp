#include "arl/actions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace arl {

Direction parse_direction(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "forward") return Direction::Forward;
    if (s == "backward") return Direction::Backward;
    throw std::invalid_argument("unknown direction '" + name + "' (expected forward or backward)");
}

std::string direction_name(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

ClassificationRule source_part(const ActionRule& r) {
    ClassificationRule out;
    out.conclusion = r.source_class;
    for (const ElementaryAction& ea : r.premise)
        if (ea.source) out.premise.push_back(*ea.source);
    out.premise = merge_conditions(std::move(out.premise));
    return out;
}

ClassificationRule target_part(const ActionRule& r) {
    ClassificationRule out;
    out.conclusion = r.target_class;
    for (const ElementaryAction& ea : r.premise)
        if (ea.target) out.premise.push_back(*ea.target);
    out.premise = merge_conditions(std::move(out.premise));
    return out;
}

void refresh_action_stats(ActionRule& r, const Dataset& ds, Measure m_source, Measure m_target) {
    r.source_stats = rule_stats(ds, source_part(r).premise, r.source_class);
    r.target_stats = rule_stats(ds, target_part(r).premise, r.target_class);
    r.source_quality =
        r.source_stats.p + r.source_stats.n > 0 ? evaluate(m_source, r.source_stats) : 0.0;
    r.target_quality =
        r.target_stats.p + r.target_stats.n > 0 ? evaluate(m_target, r.target_stats) : 0.0;
}

namespace {

std::vector<std::size_t> covered_by(const Dataset& ds, std::span<const Condition> premise) {
    std::vector<std::size_t> out;
    out.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (covers(premise, ds.examples()[i])) out.push_back(i);
    return out;
}

struct Pick {
    bool found = false;
    Condition condition{};
    ConfusionMatrix stats;
    std::vector<std::size_t> covered;
};

// Greedy scan shared by both directions. `threshold`/`threshold_cov` carry the
// persistent acceptance bar of the driving search; pass locals for the fresh
// per-iteration search of the dependent side.
Pick best_condition(const Dataset& ds, const std::vector<Condition>& candidates,
                    const std::vector<std::size_t>& covered, const std::vector<bool>* uncovered,
                    int mincov, Measure m, int positive_class, double& threshold,
                    std::size_t& threshold_cov) {
    const long long P = ds.class_count(positive_class);
    const long long N = static_cast<long long>(ds.size()) - P;
    Pick pick;
    std::vector<std::size_t> ext;
    for (const Condition& w : candidates) {
        ext.clear();
        int admissible_count = 0;
        for (std::size_t i : covered) {
            if (!covers(w, ds.examples()[i])) continue;
            ext.push_back(i);
            if (!uncovered || (*uncovered)[i]) ++admissible_count;
        }
        if (admissible_count < mincov) continue;
        ConfusionMatrix cm{0, 0, P, N};
        for (std::size_t i : ext)
            (ds.examples()[i].label == positive_class ? cm.p : cm.n)++;
        double q = evaluate(m, cm);
        if (q > threshold || (q == threshold && ext.size() > threshold_cov)) {
            threshold = q;
            threshold_cov = ext.size();
            pick.found = true;
            pick.condition = w;
            pick.stats = cm;
            pick.covered = ext;
        }
    }
    return pick;
}

void collapse_identity_actions(ActionRule& r) {
    for (ElementaryAction& ea : r.premise)
        if (ea.source && ea.target && *ea.source == *ea.target) ea.target.reset();
}

ActionRule grow_directional(ActionRule rule, const Dataset& ds, const std::vector<bool>& uncovered,
                            int mincov, Measure m_source, Measure m_target, Direction dir,
                            ActionGrowthTrace* trace) {
    const bool forward = dir == Direction::Forward;
    const Measure m_drive = forward ? m_source : m_target;
    const Measure m_other = forward ? m_target : m_source;
    const int drive_class = forward ? rule.source_class : rule.target_class;
    const int other_class = forward ? rule.target_class : rule.source_class;

    double q_best = -std::numeric_limits<double>::infinity();
    std::size_t cov_best = 0;

    while (true) {
        ClassificationRule drive_part = forward ? source_part(rule) : target_part(rule);
        std::vector<std::size_t> drive_cov = covered_by(ds, drive_part.premise);

        std::vector<Condition> candidates = possible_conditions(ds, drive_cov);
        if (!forward) {
            // Only flexible attributes can be changed, so only they may drive.
            std::erase_if(candidates, [&](const Condition& c) {
                return ds.attributes()[c.attribute].mutability == Mutability::Stable;
            });
        }
        Pick drive =
            best_condition(ds, candidates, drive_cov, &uncovered, mincov, m_drive, drive_class,
                           q_best, cov_best);
        if (!drive.found) break;

        std::size_t a = drive.condition.attribute;
        ElementaryAction ea;
        ea.attribute = a;
        ActionGrowthStep step;

        Pick other;
        bool search_other =
            forward ? ds.attributes()[a].mutability == Mutability::Flexible : true;
        if (search_other) {
            ClassificationRule other_part = forward ? target_part(rule) : source_part(rule);
            std::vector<std::size_t> other_cov = covered_by(ds, other_part.premise);
            std::vector<Condition> other_candidates =
                possible_conditions_for_attribute(ds, other_cov, a);
            double local_q = -std::numeric_limits<double>::infinity();
            std::size_t local_cov = 0;
            other = best_condition(ds, other_candidates, other_cov, nullptr, mincov, m_other,
                                   other_class, local_q, local_cov);
        }

        if (forward) {
            ea.source = drive.condition;
            if (other.found) ea.target = other.condition;
            step.source = drive.condition;
            step.source_quality = q_best;
            step.source_stats = drive.stats;
            if (other.found) {
                step.target = other.condition;
                step.target_quality = evaluate(m_other, other.stats);
                step.target_stats = other.stats;
            }
        } else {
            ea.target = drive.condition;
            if (other.found) ea.source = other.condition;
            step.target = drive.condition;
            step.target_quality = q_best;
            step.target_stats = drive.stats;
            if (other.found) {
                step.source = other.condition;
                step.source_quality = evaluate(m_other, other.stats);
                step.source_stats = other.stats;
            } else {
                step.source_quality = 0.0;
            }
        }
        rule.premise.push_back(std::move(ea));
        if (trace) trace->push_back(std::move(step));
    }

    collapse_identity_actions(rule);
    refresh_action_stats(rule, ds, m_source, m_target);
    return rule;
}

}  // namespace

ActionRule grow_action_rule_forward(ActionRule seed, const Dataset& ds,
                                    const std::vector<bool>& uncovered, int mincov,
                                    Measure m_source, Measure m_target, ActionGrowthTrace* trace) {
    return grow_directional(std::move(seed), ds, uncovered, mincov, m_source, m_target,
                            Direction::Forward, trace);
}

ActionRule grow_action_rule_backward(ActionRule seed, const Dataset& ds,
                                     const std::vector<bool>& uncovered, int mincov,
                                     Measure m_source, Measure m_target, ActionGrowthTrace* trace) {
    return grow_directional(std::move(seed), ds, uncovered, mincov, m_source, m_target,
                            Direction::Backward, trace);
}

namespace {

// Merges same-attribute numeric conditions inside each part while keeping the
// elementary-action structure: later occurrences fold into the first one.
void merge_part_conditions(ActionRule& r, bool source_side) {
    struct Slot {
        std::size_t attribute;
        Relation relation;
        std::optional<Condition>* holder;
    };
    std::vector<Slot> slots;
    for (ElementaryAction& ea : r.premise) {
        std::optional<Condition>& c = source_side ? ea.source : ea.target;
        if (!c) continue;
        bool folded = false;
        for (Slot& s : slots) {
            if (s.attribute != c->attribute || s.relation != c->relation) continue;
            Condition& first = **s.holder;
            if (c->relation == Relation::GreaterEq)
                first.value = std::max(first.value, c->value);
            else if (c->relation == Relation::Less)
                first.value = std::min(first.value, c->value);
            else if (first.value != c->value)
                continue;  // distinct equals: leave both
            c.reset();
            folded = true;
            break;
        }
        if (!folded) slots.push_back(Slot{c->attribute, c->relation, &c});
    }
    std::erase_if(r.premise, [](const ElementaryAction& ea) { return !ea.source && !ea.target; });
}

}  // namespace

ActionRule prune_action_rule(ActionRule rule, const Dataset& ds, Measure m_source,
                             Measure m_target) {
    if (rule.premise.empty()) throw std::invalid_argument("prune_action_rule: empty premise");
    refresh_action_stats(rule, ds, m_source, m_target);

    while (true) {
        // Edit kinds: 0 = drop whole action, 1 = drop source, 2 = drop target.
        int best_i = -1, best_kind = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int i = static_cast<int>(rule.premise.size()) - 1; i >= 0; --i) {
            const ElementaryAction& ea = rule.premise[i];
            for (int kind : {0, 1, 2}) {
                if (kind == 0 && rule.premise.size() == 1) continue;  // never empty the premise
                if (kind == 1 && !(ea.source && ea.target)) continue;
                if (kind == 2 && !(ea.source && ea.target)) continue;
                if (kind == 0 && !ea.source && !ea.target) continue;

                ActionRule edited = rule;
                ElementaryAction& tgt = edited.premise[i];
                if (kind == 0) {
                    edited.premise.erase(edited.premise.begin() + i);
                } else if (kind == 1) {
                    tgt.source.reset();
                } else {
                    tgt.target.reset();
                }
                ConfusionMatrix s = rule_stats(ds, source_part(edited).premise, rule.source_class);
                ConfusionMatrix t = rule_stats(ds, target_part(edited).premise, rule.target_class);
                double qs = evaluate(m_source, s);
                double qt = evaluate(m_target, t);
                if (qs < rule.source_quality || qt < rule.target_quality) continue;
                double gain = (qs - rule.source_quality) + (qt - rule.target_quality);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_i = i;
                    best_kind = kind;
                }
            }
        }
        if (best_i < 0) break;
        if (best_kind == 0)
            rule.premise.erase(rule.premise.begin() + best_i);
        else if (best_kind == 1)
            rule.premise[best_i].source.reset();
        else
            rule.premise[best_i].target.reset();
        refresh_action_stats(rule, ds, m_source, m_target);
    }

    merge_part_conditions(rule, true);
    merge_part_conditions(rule, false);
    refresh_action_stats(rule, ds, m_source, m_target);
    return rule;
}

ActionRuleSet induce_action_rules(const Dataset& ds, int source_class, int target_class,
                                  Direction direction, int mincov, Measure grow_source,
                                  Measure grow_target, Measure prune, ActionInductionLog* log) {
    int k = static_cast<int>(ds.classes().size());
    if (source_class < 0 || source_class >= k || target_class < 0 || target_class >= k)
        throw std::invalid_argument("induce_action_rules: class out of range");
    if (source_class == target_class)
        throw std::invalid_argument("induce_action_rules: source and target class must differ");
    if (ds.class_count(source_class) == 0 || ds.class_count(target_class) == 0)
        throw std::invalid_argument("induce_action_rules: class absent from training data");

    ActionRuleSet rs;
    rs.source_class = source_class;
    rs.target_class = target_class;
    rs.direction = direction;
    rs.grow_source_measure = grow_source;
    rs.grow_target_measure = grow_target;
    rs.prune_measure = prune;
    rs.mincov = mincov;

    const bool forward = direction == Direction::Forward;
    const int drive_class = forward ? source_class : target_class;

    // The uncovered set tracks driving-class examples only.
    std::vector<bool> uncovered(ds.size(), false);
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (ds.examples()[i].label == drive_class) uncovered[i] = true;
    auto uncovered_count = [&] {
        int c = 0;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (uncovered[i]) ++c;
        return c;
    };

    while (uncovered_count() >= mincov) {
        ActionRule seed;
        seed.source_class = source_class;
        seed.target_class = target_class;
        ActionGrowthTrace trace;
        ActionRule grown = forward
                               ? grow_action_rule_forward(std::move(seed), ds, uncovered, mincov,
                                                          grow_source, grow_target, &trace)
                               : grow_action_rule_backward(std::move(seed), ds, uncovered, mincov,
                                                           grow_source, grow_target, &trace);
        if (grown.premise.empty()) break;
        ActionRule pruned = prune_action_rule(std::move(grown), ds, prune, prune);

        ClassificationRule drive_part = forward ? source_part(pruned) : target_part(pruned);
        int newly = 0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (uncovered[i] && covers(drive_part.premise, ds.examples()[i])) {
                uncovered[i] = false;
                ++newly;
            }
        }
        if (log) {
            log->newly_covered.push_back(newly);
            log->traces.push_back(std::move(trace));
        }
        rs.rules.push_back(std::move(pruned));
        if (newly == 0) break;
    }

    std::vector<double> ps, pt;
    for (ActionRule& r : rs.rules) {
        r.source_p_value = fisher_p_value(r.source_stats);
        r.target_p_value = fisher_p_value(r.target_stats);
        ps.push_back(*r.source_p_value);
        pt.push_back(*r.target_p_value);
    }
    auto adj_s = fdr_adjust(ps);
    auto adj_t = fdr_adjust(pt);
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        rs.rules[i].source_p_value_adjusted = adj_s[i];
        rs.rules[i].target_p_value_adjusted = adj_t[i];
    }
    return rs;
}

ActionSetCharacteristics characterize(const ActionRuleSet& rs) {
    ActionSetCharacteristics c;
    c.rule_count = static_cast<double>(rs.rules.size());
    if (rs.rules.empty()) return c;
    for (const ActionRule& r : rs.rules) {
        int conds = 0, acts = 0;
        for (const ElementaryAction& ea : r.premise) {
            if (ea.source) ++conds;
            if (ea.target) ++conds;
            if (ea.is_action()) ++acts;
        }
        c.conditions_per_rule += conds;
        c.actions_per_rule += acts;
        c.source_precision += evaluate(Measure::Precision, r.source_stats);
        c.target_precision += evaluate(Measure::Precision, r.target_stats);
        c.source_coverage += static_cast<double>(r.source_stats.p) / r.source_stats.P;
        c.target_coverage += static_cast<double>(r.target_stats.p) / r.target_stats.P;
        if (r.source_p_value_adjusted && *r.source_p_value_adjusted < 0.05)
            c.significant_source_fraction += 1.0;
        if (r.target_p_value_adjusted && *r.target_p_value_adjusted < 0.05)
            c.significant_target_fraction += 1.0;
    }
    double n = static_cast<double>(rs.rules.size());
    c.conditions_per_rule /= n;
    c.actions_per_rule /= n;
    c.source_precision /= n;
    c.target_precision /= n;
    c.source_coverage /= n;
    c.target_coverage /= n;
    c.significant_source_fraction /= n;
    c.significant_target_fraction /= n;
    return c;
}

}  // namespace arl
