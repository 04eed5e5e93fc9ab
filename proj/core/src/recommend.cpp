#include "arl/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "arl/io.hpp"

namespace arl {

MetaTable::MetaTable(std::vector<MetaAttribute> attrs, const Dataset& train)
    : attrs_(std::move(attrs)), train_(&train) {
    std::vector<Attribute> meta_attrs;
    for (const MetaAttribute& ma : attrs_) {
        Attribute a = train.attributes()[ma.attribute];
        if (ma.interval) {
            a.kind = AttributeKind::Numeric;
            a.domain.clear();
        }
        meta_attrs.push_back(std::move(a));
    }
    std::vector<Example> meta_examples;
    meta_examples.reserve(train.size());
    for (const Example& e : train.examples())
        meta_examples.push_back(Example{to_meta(e), e.label});
    meta_train_ = Dataset(std::move(meta_attrs), train.classes(), std::move(meta_examples));
}

std::vector<double> MetaTable::to_meta(const Example& e) const {
    std::vector<double> out;
    out.reserve(attrs_.size());
    for (const MetaAttribute& ma : attrs_) {
        double v = e.values[ma.attribute];
        if (!ma.interval) {
            out.push_back(v);
            continue;
        }
        // Right-closed intervals: id k while v <= cuts[k-1], else the last one.
        int id = ma.interval_count();
        for (std::size_t k = 0; k < ma.cuts.size(); ++k) {
            if (v <= ma.cuts[k]) {
                id = static_cast<int>(k) + 1;
                break;
            }
        }
        out.push_back(static_cast<double>(id));
    }
    return out;
}

std::pair<double, double> MetaTable::interval_bounds(const MetaAttribute& ma, int id) const {
    if (!ma.interval) throw std::invalid_argument("interval_bounds: nominal meta-attribute");
    if (id < 1 || id > ma.interval_count())
        throw std::invalid_argument("interval_bounds: interval id out of range");
    double lo = id == 1 ? train_->numeric_min(ma.attribute) : ma.cuts[id - 2];
    double hi = id == ma.interval_count() ? train_->numeric_max(ma.attribute) : ma.cuts[id - 1];
    return {lo, hi};
}

MetaTable build_meta_table(const ActionRuleSet& rules, const Dataset& train) {
    if (rules.rules.empty()) throw std::invalid_argument("build_meta_table: empty rule set");

    std::map<std::size_t, std::set<double>> thresholds;  // numeric attr -> cut candidates
    std::set<std::size_t> used;
    auto add = [&](const std::optional<Condition>& c) {
        if (!c) return;
        used.insert(c->attribute);
        if (train.attributes()[c->attribute].kind == AttributeKind::Numeric)
            thresholds[c->attribute].insert(c->value);
    };
    for (const ActionRule& r : rules.rules) {
        for (const ElementaryAction& ea : r.premise) {
            add(ea.source);
            add(ea.target);
        }
    }

    std::vector<MetaAttribute> attrs;
    for (std::size_t a : used) {
        MetaAttribute ma;
        ma.attribute = a;
        if (train.attributes()[a].kind == AttributeKind::Numeric) {
            ma.interval = true;
            ma.cuts.assign(thresholds[a].begin(), thresholds[a].end());
        }
        attrs.push_back(std::move(ma));
    }
    return MetaTable(std::move(attrs), train);
}

namespace {

// Interval-id range selected by the (merged) conditions on one meta-attribute.
std::pair<int, int> id_range(const std::vector<Condition>& conds, const MetaAttribute& ma) {
    int lo = 1, hi = ma.interval_count();
    for (const Condition& c : conds) {
        if (c.relation == Relation::GreaterEq)
            lo = std::max(lo, static_cast<int>(std::ceil(c.value)));
        else if (c.relation == Relation::Less)
            hi = std::min(hi, static_cast<int>(std::ceil(c.value)) - 1);
    }
    return {lo, hi};
}

std::string interval_text(const MetaTable& mt, const MetaAttribute& ma, int lo_id, int hi_id) {
    double lo = mt.interval_bounds(ma, lo_id).first;
    double hi = mt.interval_bounds(ma, hi_id).second;
    std::string open = lo_id == 1 ? "[" : "(";
    return open + format_double(lo) + ", " + format_double(hi) + "]";
}

Recommendation to_recommendation(const ClassificationRule& rule, const MetaTable& mt,
                                 const Example& x, const Example& x_meta) {
    const Dataset& train = mt.train();
    Recommendation rec;
    rec.conditions = rule.premise;
    rec.quality = rule.quality;
    rec.stats = rule.stats;

    for (std::size_t j = 0; j < mt.meta_attributes().size(); ++j) {
        std::vector<Condition> conds;
        for (const Condition& c : rule.premise)
            if (c.attribute == j) conds.push_back(c);
        if (conds.empty()) continue;
        bool satisfied = true;
        for (const Condition& c : conds)
            if (!covers(c, x_meta)) satisfied = false;
        if (satisfied) continue;

        const MetaAttribute& ma = mt.meta_attributes()[j];
        const Attribute& base = train.attributes()[ma.attribute];
        RecommendedChange ch;
        ch.attribute = ma.attribute;
        if (ma.interval) {
            auto [lo_id, hi_id] = id_range(conds, ma);
            auto [lo, hi] = std::pair{mt.interval_bounds(ma, lo_id).first,
                                      mt.interval_bounds(ma, hi_id).second};
            ch.realized = (lo + hi) / 2.0;
            ch.from_text = format_double(x.values[ma.attribute]);
            ch.to_text = interval_text(mt, ma, lo_id, hi_id);
        } else {
            ch.nominal = true;
            ch.realized = conds.front().value;
            ch.from_text = base.domain[static_cast<std::size_t>(x.values[ma.attribute])];
            ch.to_text = base.domain[static_cast<std::size_t>(ch.realized)];
        }
        rec.actions.push_back(std::move(ch));
    }
    return rec;
}

}  // namespace

std::vector<Recommendation> induce_recommendations(const MetaTable& mt, const Example& x,
                                                   int target_class, int mincov, Measure measure,
                                                   int max_recs) {
    const Dataset& meta = mt.meta_train();
    const Dataset& train = mt.train();
    Example x_meta{mt.to_meta(x), -1};

    ConditionFilter filter = [&](const Condition& c) {
        const MetaAttribute& ma = mt.meta_attributes()[c.attribute];
        if (train.attributes()[ma.attribute].mutability != Mutability::Stable) return true;
        return covers(c, x_meta);
    };

    std::vector<Recommendation> recs;
    std::vector<bool> uncovered(meta.size(), true);
    auto uncovered_positives = [&] {
        int c = 0;
        for (std::size_t i = 0; i < meta.size(); ++i)
            if (uncovered[i] && meta.examples()[i].label == target_class) ++c;
        return c;
    };

    while (uncovered_positives() >= mincov) {
        ClassificationRule seed;
        seed.conclusion = target_class;
        ClassificationRule grown =
            grow_rule(std::move(seed), meta, uncovered, mincov, measure, nullptr, filter);
        if (grown.premise.empty()) break;
        ClassificationRule pruned = prune_rule(std::move(grown), meta, measure);

        int newly = 0;
        for (std::size_t i = 0; i < meta.size(); ++i) {
            if (uncovered[i] && pruned.covers_example(meta.examples()[i])) {
                uncovered[i] = false;
                ++newly;
            }
        }
        recs.push_back(to_recommendation(pruned, mt, x, x_meta));
        if (newly == 0) break;
    }

    std::stable_sort(recs.begin(), recs.end(),
                     [](const Recommendation& a, const Recommendation& b) {
                         return a.quality > b.quality;
                     });
    if (max_recs >= 0 && static_cast<int>(recs.size()) > max_recs) recs.resize(max_recs);
    return recs;
}

Example realize(const Recommendation& rec, const Example& x, const MetaTable&) {
    Example out = x;
    for (const RecommendedChange& ch : rec.actions) out.values[ch.attribute] = ch.realized;
    return out;
}

std::optional<Example> best_action_rule_transform(const ActionRuleSet& rules, const Example& x,
                                                  Measure measure, const Dataset& train) {
    const ActionRule* best = nullptr;
    double best_q = 0.0;
    for (const ActionRule& r : rules.rules) {
        if (!covers(source_part(r).premise, x)) continue;
        double q = evaluate(measure, r.source_stats);
        if (!best || q > best_q || (q == best_q && r.source_stats.p > best->source_stats.p)) {
            best = &r;
            best_q = q;
        }
    }
    if (!best) return std::nullopt;

    Example out = x;
    // Per attribute, collect the target region prescribed by actions and
    // narrowing actions; constraints prescribe nothing.
    std::map<std::size_t, std::vector<Condition>> targets;
    for (const ElementaryAction& ea : best->premise)
        if (ea.target) targets[ea.target->attribute].push_back(*ea.target);

    for (auto& [attr, conds] : targets) {
        bool satisfied = true;
        for (const Condition& c : conds)
            if (!covers(c, out)) satisfied = false;
        if (satisfied) continue;  // already in the target region
        if (train.attributes()[attr].kind == AttributeKind::Nominal) {
            out.values[attr] = conds.front().value;
        } else {
            double lo = train.numeric_min(attr), hi = train.numeric_max(attr);
            for (const Condition& c : conds) {
                if (c.relation == Relation::GreaterEq) lo = std::max(lo, c.value);
                else if (c.relation == Relation::Less) hi = std::min(hi, c.value);
            }
            out.values[attr] = (lo + hi) / 2.0;
        }
    }
    return out;
}

}  // namespace arl
