#include "arl/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace arl {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

namespace {

std::string relation_text(Relation r) {
    switch (r) {
        case Relation::Equals: return "=";
        case Relation::Less: return "<";
        case Relation::GreaterEq: return ">=";
    }
    return "?";
}

std::string value_text(const Condition& c, const Dataset& ds) {
    const Attribute& a = ds.attributes()[c.attribute];
    if (a.kind == AttributeKind::Nominal) return a.domain[static_cast<std::size_t>(c.value)];
    return format_double(c.value);
}

// Compact one-attribute region: `a=x`, `b>=t`, `b<t` or `b in [lo,hi)`.
std::string region_text(const std::vector<Condition>& conds, const Dataset& ds) {
    const std::string& name = ds.attributes()[conds.front().attribute].name;
    const double* lo = nullptr;
    const double* hi = nullptr;
    for (const Condition& c : conds) {
        if (c.relation == Relation::Equals) return name + "=" + value_text(c, ds);
        if (c.relation == Relation::GreaterEq) lo = &c.value;
        else hi = &c.value;
    }
    if (lo && hi)
        return name + " in [" + format_double(*lo) + "," + format_double(*hi) + ")";
    if (lo) return name + ">=" + format_double(*lo);
    return name + "<" + format_double(*hi);
}

std::string stats_text(const ConfusionMatrix& m) {
    return std::to_string(m.p) + " " + std::to_string(m.n) + " " + std::to_string(m.P) + " " +
           std::to_string(m.N);
}

}  // namespace

std::string condition_text(const Condition& c, const Dataset& ds) {
    const std::string& name = ds.attributes()[c.attribute].name;
    return name + " " + relation_text(c.relation) + " " + value_text(c, ds);
}

std::string rule_text(const ClassificationRule& r, const Dataset& ds) {
    std::string out = "IF ";
    bool first = true;
    for (std::size_t i = 0; i < r.premise.size(); ++i) {
        const Condition& c = r.premise[i];
        // Present a >= lo / a < hi pairs on one numeric attribute as an interval.
        const Condition* partner = nullptr;
        bool emitted_earlier = false;
        for (std::size_t j = 0; j < r.premise.size(); ++j) {
            if (j == i || r.premise[j].attribute != c.attribute) continue;
            if (c.relation == Relation::Equals || r.premise[j].relation == c.relation) continue;
            if (r.premise[j].relation == Relation::Equals) continue;
            if (j < i) emitted_earlier = true;
            else partner = &r.premise[j];
        }
        if (emitted_earlier) continue;
        if (!first) out += " AND ";
        first = false;
        if (partner) {
            const Condition* ge = c.relation == Relation::GreaterEq ? &c : partner;
            const Condition* lt = c.relation == Relation::Less ? &c : partner;
            out += ds.attributes()[c.attribute].name + " in [" + format_double(ge->value) + ", " +
                   format_double(lt->value) + ")";
        } else {
            out += condition_text(c, ds);
        }
    }
    if (first) out += "TRUE";
    out += " THEN " + ds.classes()[static_cast<std::size_t>(r.conclusion)];
    out += " [" + stats_text(r.stats) + " " + format_double(r.quality) + " " +
           (r.p_value ? format_double(*r.p_value) : std::string("-")) + "]";
    return out;
}

std::string action_rule_text(const ActionRule& r, const Dataset& ds) {
    // Group elementary actions per attribute, keeping first-occurrence order.
    std::vector<std::size_t> order;
    std::map<std::size_t, std::pair<std::vector<Condition>, std::vector<Condition>>> groups;
    for (const ElementaryAction& ea : r.premise) {
        if (!groups.count(ea.attribute)) order.push_back(ea.attribute);
        auto& g = groups[ea.attribute];
        if (ea.source) g.first.push_back(*ea.source);
        if (ea.target) g.second.push_back(*ea.target);
    }

    std::string out = "IF ";
    bool first = true;
    for (std::size_t a : order) {
        if (!first) out += " AND ";
        first = false;
        auto& [src, tgt] = groups[a];
        if (!src.empty() && !tgt.empty())
            out += "(" + region_text(src, ds) + " -> " + region_text(tgt, ds) + ")";
        else if (!src.empty())
            out += region_text(src, ds);
        else
            out += "(-> " + region_text(tgt, ds) + ")";
    }
    if (first) out += "TRUE";
    out += " THEN " + ds.classes()[static_cast<std::size_t>(r.source_class)] + " -> " +
           ds.classes()[static_cast<std::size_t>(r.target_class)];
    out += " [" + stats_text(r.source_stats) + " | " + stats_text(r.target_stats) + " | " +
           format_double(r.source_quality) + " " + format_double(r.target_quality) + "]";
    return out;
}

std::string recommendation_text(const Recommendation& rec, const MetaTable& mt) {
    const Dataset& train = mt.train();
    std::string out;
    if (rec.actions.empty()) {
        out = "no change (already in target region)";
    } else {
        bool first = true;
        for (const RecommendedChange& ch : rec.actions) {
            if (!first) out += " AND ";
            first = false;
            out += train.attributes()[ch.attribute].name + ": " + ch.from_text + " -> " +
                   ch.to_text;
            if (!ch.nominal) out += " := " + format_double(ch.realized);
        }
    }
    out += " [" + stats_text(rec.stats) + " " + format_double(rec.quality) + "]";
    return out;
}

void write_rules_text(const RuleSet& rs, const Dataset& ds, std::ostream& out) {
    for (const ClassificationRule& r : rs.rules) out << rule_text(r, ds) << "\n";
}

void write_action_rules_text(const ActionRuleSet& rs, const Dataset& ds, std::ostream& out) {
    for (const ActionRule& r : rs.rules) out << action_rule_text(r, ds) << "\n";
}

namespace {

json schema_json(const Dataset& ds) {
    json attrs = json::array();
    for (const Attribute& a : ds.attributes()) {
        json ja;
        ja["name"] = a.name;
        ja["kind"] = a.kind == AttributeKind::Nominal ? "nominal" : "numeric";
        ja["mutability"] = a.mutability == Mutability::Stable ? "stable" : "flexible";
        if (a.kind == AttributeKind::Nominal) ja["domain"] = a.domain;
        attrs.push_back(std::move(ja));
    }
    json j;
    j["attributes"] = std::move(attrs);
    j["classes"] = ds.classes();
    return j;
}

json condition_json(const Condition& c, const Dataset& ds) {
    json j;
    j["attribute"] = ds.attributes()[c.attribute].name;
    j["relation"] = relation_text(c.relation);
    if (ds.attributes()[c.attribute].kind == AttributeKind::Nominal)
        j["value"] = ds.attributes()[c.attribute].domain[static_cast<std::size_t>(c.value)];
    else
        j["value"] = c.value;
    return j;
}

json part_json(const ConfusionMatrix& m, double quality, const std::optional<double>& pv,
               const std::optional<double>& pv_adj) {
    json j;
    j["p"] = m.p;
    j["n"] = m.n;
    j["P"] = m.P;
    j["N"] = m.N;
    j["quality"] = quality;
    j["p_value"] = pv ? json(*pv) : json(nullptr);
    j["p_value_adjusted"] = pv_adj ? json(*pv_adj) : json(nullptr);
    return j;
}

json config_json(const std::string& config_echo_json) {
    if (config_echo_json.empty()) return nullptr;
    return json::parse(config_echo_json);
}

Condition parse_condition(const json& j, const Dataset& ds) {
    std::string name = j.at("attribute").get<std::string>();
    std::string rel = j.at("relation").get<std::string>();
    Condition c;
    bool found = false;
    for (std::size_t a = 0; a < ds.attributes().size(); ++a) {
        if (ds.attributes()[a].name == name) {
            c.attribute = a;
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("rules file uses unknown attribute '" + name + "'");
    if (rel == "=") c.relation = Relation::Equals;
    else if (rel == "<") c.relation = Relation::Less;
    else if (rel == ">=") c.relation = Relation::GreaterEq;
    else throw std::runtime_error("rules file uses unknown relation '" + rel + "'");

    const Attribute& attr = ds.attributes()[c.attribute];
    if (attr.kind == AttributeKind::Nominal) {
        if (c.relation != Relation::Equals)
            throw std::runtime_error("ordered relation on nominal attribute '" + name + "'");
        std::string v = j.at("value").get<std::string>();
        auto idx = attr.domain_index(v);
        if (!idx)
            throw std::runtime_error("rules file uses unknown value '" + v + "' of attribute '" +
                                     name + "'");
        c.value = static_cast<double>(*idx);
    } else {
        c.value = j.at("value").get<double>();
    }
    return c;
}

int parse_class(const json& j, const Dataset& ds, const char* field) {
    std::string name = j.at(field).get<std::string>();
    for (std::size_t i = 0; i < ds.classes().size(); ++i)
        if (ds.classes()[i] == name) return static_cast<int>(i);
    throw std::runtime_error("rules file uses unknown class '" + name + "'");
}

void check_schema(const json& j, const Dataset& ds) {
    const json& schema = j.at("schema");
    const json& attrs = schema.at("attributes");
    if (attrs.size() != ds.attributes().size())
        throw std::runtime_error("rules file schema has " + std::to_string(attrs.size()) +
                                 " attributes, dataset has " +
                                 std::to_string(ds.attributes().size()));
    for (std::size_t i = 0; i < ds.attributes().size(); ++i) {
        const Attribute& a = ds.attributes()[i];
        const json& ja = attrs[i];
        if (ja.at("name").get<std::string>() != a.name)
            throw std::runtime_error("rules file schema attribute " + std::to_string(i) + " is '" +
                                     ja.at("name").get<std::string>() + "', dataset has '" +
                                     a.name + "'");
        std::string kind = a.kind == AttributeKind::Nominal ? "nominal" : "numeric";
        if (ja.at("kind").get<std::string>() != kind)
            throw std::runtime_error("rules file schema attribute '" + a.name +
                                     "' kind mismatch");
        if (a.kind == AttributeKind::Nominal &&
            ja.at("domain").get<std::vector<std::string>>() != a.domain)
            throw std::runtime_error("rules file schema attribute '" + a.name +
                                     "' domain mismatch");
    }
    if (schema.at("classes").get<std::vector<std::string>>() != ds.classes())
        throw std::runtime_error("rules file class list does not match dataset");
}

}  // namespace

std::string rule_sets_json(const std::vector<RuleSet>& sets, const Dataset& ds,
                           const std::string& config_echo_json) {
    json j;
    j["mode"] = "classification";
    j["config"] = config_json(config_echo_json);
    j["schema"] = schema_json(ds);
    json jsets = json::array();
    for (const RuleSet& rs : sets) {
        json js;
        js["target_class"] = ds.classes()[static_cast<std::size_t>(rs.target_class)];
        js["default_class"] = ds.classes()[static_cast<std::size_t>(rs.default_class)];
        js["grow_measure"] = measure_name(rs.grow_measure);
        js["prune_measure"] = measure_name(rs.prune_measure);
        js["mincov"] = rs.mincov;
        json jrules = json::array();
        for (const ClassificationRule& r : rs.rules) {
            json jr;
            json prem = json::array();
            for (const Condition& c : r.premise) prem.push_back(condition_json(c, ds));
            jr["premise"] = std::move(prem);
            jr["conclusion"] = ds.classes()[static_cast<std::size_t>(r.conclusion)];
            jr["stats"] = part_json(r.stats, r.quality, r.p_value, r.p_value_adjusted);
            jr["text"] = rule_text(r, ds);
            jrules.push_back(std::move(jr));
        }
        js["rules"] = std::move(jrules);
        jsets.push_back(std::move(js));
    }
    j["rule_sets"] = std::move(jsets);
    return j.dump(2) + "\n";
}

std::string action_rules_json(const ActionRuleSet& rs, const Dataset& ds,
                              const std::string& config_echo_json) {
    json j;
    j["mode"] = "action";
    j["config"] = config_json(config_echo_json);
    j["schema"] = schema_json(ds);
    j["direction"] = direction_name(rs.direction);
    j["source_class"] = ds.classes()[static_cast<std::size_t>(rs.source_class)];
    j["target_class"] = ds.classes()[static_cast<std::size_t>(rs.target_class)];
    j["grow_source_measure"] = measure_name(rs.grow_source_measure);
    j["grow_target_measure"] = measure_name(rs.grow_target_measure);
    j["prune_measure"] = measure_name(rs.prune_measure);
    j["mincov"] = rs.mincov;
    json jrules = json::array();
    for (const ActionRule& r : rs.rules) {
        json jr;
        json prem = json::array();
        for (const ElementaryAction& ea : r.premise) {
            json je;
            je["attribute"] = ds.attributes()[ea.attribute].name;
            je["source"] = ea.source ? condition_json(*ea.source, ds) : json(nullptr);
            je["target"] = ea.target ? condition_json(*ea.target, ds) : json(nullptr);
            prem.push_back(std::move(je));
        }
        jr["premise"] = std::move(prem);
        jr["source_stats"] =
            part_json(r.source_stats, r.source_quality, r.source_p_value, r.source_p_value_adjusted);
        jr["target_stats"] =
            part_json(r.target_stats, r.target_quality, r.target_p_value, r.target_p_value_adjusted);
        jr["text"] = action_rule_text(r, ds);
        jrules.push_back(std::move(jr));
    }
    j["rules"] = std::move(jrules);
    return j.dump(2) + "\n";
}

ActionRuleSet parse_action_rules_json(const std::string& text, const Dataset& ds) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("cannot parse rules file: ") + e.what());
    }
    try {
        if (j.at("mode").get<std::string>() != "action")
            throw std::runtime_error("rules file is not an action-rule dump");
        check_schema(j, ds);

        ActionRuleSet rs;
        rs.direction = parse_direction(j.at("direction").get<std::string>());
        rs.source_class = parse_class(j, ds, "source_class");
        rs.target_class = parse_class(j, ds, "target_class");
        rs.grow_source_measure = parse_measure(j.at("grow_source_measure").get<std::string>());
        rs.grow_target_measure = parse_measure(j.at("grow_target_measure").get<std::string>());
        rs.prune_measure = parse_measure(j.at("prune_measure").get<std::string>());
        rs.mincov = j.at("mincov").get<int>();

        for (const json& jr : j.at("rules")) {
            ActionRule r;
            r.source_class = rs.source_class;
            r.target_class = rs.target_class;
            for (const json& je : jr.at("premise")) {
                ElementaryAction ea;
                if (!je.at("source").is_null()) ea.source = parse_condition(je.at("source"), ds);
                if (!je.at("target").is_null()) ea.target = parse_condition(je.at("target"), ds);
                if (!ea.source && !ea.target)
                    throw std::runtime_error("empty elementary action in rules file");
                ea.attribute = ea.source ? ea.source->attribute : ea.target->attribute;
                if (ea.source && ea.target && ea.source->attribute != ea.target->attribute)
                    throw std::runtime_error(
                        "elementary action spans two attributes in rules file");
                for (const char* side : {"source", "target"}) {
                    const json& jc = je.at(side);
                    if (!jc.is_null() &&
                        jc.at("attribute").get<std::string>() !=
                            je.at("attribute").get<std::string>())
                        throw std::runtime_error(
                            "elementary action attribute does not match its conditions");
                }
                r.premise.push_back(std::move(ea));
            }
            const json& ss = jr.at("source_stats");
            const json& ts = jr.at("target_stats");
            r.source_stats = ConfusionMatrix{ss.at("p").get<long long>(), ss.at("n").get<long long>(),
                                             ss.at("P").get<long long>(), ss.at("N").get<long long>()};
            r.target_stats = ConfusionMatrix{ts.at("p").get<long long>(), ts.at("n").get<long long>(),
                                             ts.at("P").get<long long>(), ts.at("N").get<long long>()};
            r.source_quality = ss.at("quality").get<double>();
            r.target_quality = ts.at("quality").get<double>();
            if (!ss.at("p_value").is_null()) r.source_p_value = ss.at("p_value").get<double>();
            if (!ts.at("p_value").is_null()) r.target_p_value = ts.at("p_value").get<double>();
            if (!ss.at("p_value_adjusted").is_null())
                r.source_p_value_adjusted = ss.at("p_value_adjusted").get<double>();
            if (!ts.at("p_value_adjusted").is_null())
                r.target_p_value_adjusted = ts.at("p_value_adjusted").get<double>();
            rs.rules.push_back(std::move(r));
        }
        return rs;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed rules file: ") + e.what());
    }
}

}  // namespace arl
