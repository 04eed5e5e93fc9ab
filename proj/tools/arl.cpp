#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/eval.hpp"
#include "arl/io.hpp"
#include "arl/quality.hpp"
#include "arl/recommend.hpp"
#include "arl/rules.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string data, schema, out = ".";
    std::string mode;
    std::string direction = "backward";
    std::string measure = "c2", grow_measure, prune_measure;
    std::string source, target;
    std::string strategy = "recommendation";
    std::string rules, examples;
    std::string verifier_command, verifier_dir;
    int mincov = 5, folds = 10, max_recs = 3, threads = 1;
    std::uint64_t seed = 43;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

arl::Measure measure_or(const std::string& name, arl::Measure fallback) {
    return name.empty() ? fallback : arl::parse_measure(name);
}

int resolve_class(const arl::Dataset& ds, const std::string& name) {
    const auto& cs = ds.classes();
    auto it = std::find(cs.begin(), cs.end(), name);
    if (it != cs.end()) return static_cast<int>(it - cs.begin());
    try {
        std::size_t pos = 0;
        int v = std::stoi(name, &pos);
        if (pos == name.size() && v >= 0 && v < static_cast<int>(cs.size())) return v;
    } catch (const std::exception&) {
    }
    std::string known;
    for (const auto& c : cs) known += (known.empty() ? "" : ", ") + c;
    throw UsageError("unknown class '" + name + "' (dataset classes: " + known + ")");
}

std::string sanitize(const std::string& s) {
    std::string r = s;
    for (char& c : r)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return r;
}

void write_file(const fs::path& p, std::string content) {
    if (content.empty() || content.back() != '\n') content += '\n';
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

std::string read_file(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Every output file carries the resolved configuration; text and CSV files
// get it as a leading comment line.
std::string config_comment(const json& cfg) { return "# config " + cfg.dump() + "\n"; }

std::string fmt(double v) { return arl::format_double(v); }

json stats_json(const arl::ConfusionMatrix& cm) {
    return json{{"p", cm.p}, {"n", cm.n}, {"P", cm.P}, {"N", cm.N}};
}

json characteristics_json(const arl::ActionSetCharacteristics& c) {
    return json{{"rule_count", c.rule_count},
                {"conditions_per_rule", c.conditions_per_rule},
                {"actions_per_rule", c.actions_per_rule},
                {"source_precision", c.source_precision},
                {"target_precision", c.target_precision},
                {"source_coverage", c.source_coverage},
                {"target_coverage", c.target_coverage},
                {"significant_source_fraction", c.significant_source_fraction},
                {"significant_target_fraction", c.significant_target_fraction}};
}

std::string characteristics_csv_cells(const arl::ActionSetCharacteristics& c) {
    std::string s;
    for (double v : {c.rule_count, c.conditions_per_rule, c.actions_per_rule, c.source_precision,
                     c.target_precision, c.source_coverage, c.target_coverage,
                     c.significant_source_fraction, c.significant_target_fraction})
        s += "," + fmt(v);
    return s;
}

const char* kCharacteristicsHeader =
    "rule_count,conditions_per_rule,actions_per_rule,source_precision,target_precision,"
    "source_coverage,target_coverage,significant_source_fraction,significant_target_fraction";

json values_json(const arl::Dataset& ds, const arl::Example& e) {
    json j = json::object();
    for (std::size_t a = 0; a < ds.attributes().size(); ++a)
        j[ds.attributes()[a].name] = ds.value_text(e, a);
    return j;
}

std::string values_text(const arl::Dataset& ds, const arl::Example& e) {
    std::string s;
    for (std::size_t a = 0; a < ds.attributes().size(); ++a) {
        if (a) s += ", ";
        s += ds.attributes()[a].name + "=" + ds.value_text(e, a);
    }
    return s;
}

void print_runtime(std::chrono::steady_clock::time_point t0) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << "completed in " << ms << " ms\n";
}

// ---------------------------------------------------------------- induce ---

void summarize_rule_set(const arl::RuleSet& rs, const std::string& cls) {
    double conds = 0, prec = 0, cov = 0, sig = 0;
    for (const auto& r : rs.rules) {
        conds += static_cast<double>(r.premise.size());
        prec += arl::evaluate(arl::Measure::Precision, r.stats);
        cov += r.stats.P > 0 ? static_cast<double>(r.stats.p) / static_cast<double>(r.stats.P) : 0.0;
        sig += (r.p_value_adjusted && *r.p_value_adjusted < 0.05) ? 1.0 : 0.0;
    }
    double n = rs.rules.empty() ? 1.0 : static_cast<double>(rs.rules.size());
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "class %s: rules=%zu conds/rule=%.2f precision=%.3f coverage=%.3f significant=%.2f",
                  cls.c_str(), rs.rules.size(), conds / n, prec / n, cov / n, sig / n);
    std::cout << buf << "\n";
}

void summarize_action_set(const arl::ActionRuleSet& rs) {
    arl::ActionSetCharacteristics c = arl::characterize(rs);
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "rules=%.0f conds/rule=%.2f actions/rule=%.2f precision(src/tgt)=%.3f/%.3f "
                  "coverage(src/tgt)=%.3f/%.3f significant(src/tgt)=%.2f/%.2f",
                  c.rule_count, c.conditions_per_rule, c.actions_per_rule, c.source_precision,
                  c.target_precision, c.source_coverage, c.target_coverage,
                  c.significant_source_fraction, c.significant_target_fraction);
    std::cout << buf << "\n";
}

int cmd_induce(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    arl::Dataset ds = arl::load_dataset(o.data, o.schema);
    arl::Measure base = arl::parse_measure(o.measure);
    arl::Measure grow = measure_or(o.grow_measure, base);
    arl::Measure prune = measure_or(o.prune_measure, base);
    fs::create_directories(o.out);

    json cfg{{"command", "induce"},     {"data", o.data},
             {"schema", o.schema},      {"mode", o.mode},
             {"measure", o.measure},    {"grow_measure", arl::measure_name(grow)},
             {"prune_measure", arl::measure_name(prune)}, {"mincov", o.mincov},
             {"out", o.out}};

    if (o.mode == "classification") {
        std::vector<arl::RuleSet> sets;
        for (std::size_t c = 0; c < ds.classes().size(); ++c)
            sets.push_back(arl::induce_rules(ds, static_cast<int>(c), o.mincov, grow, prune));
        write_file(fs::path(o.out) / "rules.json", arl::rule_sets_json(sets, ds, cfg.dump()));
        for (std::size_t c = 0; c < sets.size(); ++c) {
            std::ostringstream os;
            os << config_comment(cfg);
            arl::write_rules_text(sets[c], ds, os);
            write_file(fs::path(o.out) / ("rules_" + sanitize(ds.classes()[c]) + ".txt"), os.str());
            summarize_rule_set(sets[c], ds.classes()[c]);
        }
    } else if (o.mode == "action") {
        if (o.source.empty() || o.target.empty())
            throw UsageError("action mode needs --source and --target classes");
        int src = resolve_class(ds, o.source), tgt = resolve_class(ds, o.target);
        arl::Direction dir = arl::parse_direction(o.direction);
        cfg["direction"] = arl::direction_name(dir);
        cfg["source"] = ds.classes()[static_cast<std::size_t>(src)];
        cfg["target"] = ds.classes()[static_cast<std::size_t>(tgt)];
        arl::ActionRuleSet rs =
            arl::induce_action_rules(ds, src, tgt, dir, o.mincov, grow, grow, prune);
        write_file(fs::path(o.out) / "action_rules.json", arl::action_rules_json(rs, ds, cfg.dump()));
        std::ostringstream os;
        os << config_comment(cfg);
        arl::write_action_rules_text(rs, ds, os);
        write_file(fs::path(o.out) / "action_rules.txt", os.str());
        summarize_action_set(rs);
    } else {
        throw UsageError("unknown induce mode '" + o.mode + "' (expected classification or action)");
    }
    print_runtime(t0);
    return 0;
}

// ------------------------------------------------------------- recommend ---

int cmd_recommend(const Options& o, bool mincov_given) {
    auto t0 = std::chrono::steady_clock::now();
    arl::Dataset ds = arl::load_dataset(o.data, o.schema);
    arl::ActionRuleSet rs = arl::parse_action_rules_json(read_file(o.rules), ds);
    arl::Measure measure = arl::parse_measure(o.measure);
    arl::Strategy strategy = arl::parse_strategy(o.strategy);
    if (strategy == arl::Strategy::Identity)
        throw UsageError("strategy 'identity' is only available in evaluate");
    int mincov = mincov_given ? o.mincov : rs.mincov;

    std::string etext = read_file(o.examples);
    std::vector<arl::Example> xs;
    if (etext.find_first_not_of(" \t\r\n") != std::string::npos) {
        std::istringstream is(etext);
        xs = arl::load_examples(is, ds, o.examples);
    }

    fs::create_directories(o.out);
    json cfg{{"command", "recommend"},
             {"data", o.data},
             {"schema", o.schema},
             {"rules", o.rules},
             {"examples", o.examples},
             {"strategy", arl::strategy_name(strategy)},
             {"measure", arl::measure_name(measure)},
             {"mincov", mincov},
             {"max_recs", o.max_recs},
             {"source", rs.source_class < static_cast<int>(ds.classes().size())
                            ? ds.classes()[static_cast<std::size_t>(rs.source_class)]
                            : ""},
             {"target", ds.classes()[static_cast<std::size_t>(rs.target_class)]},
             {"out", o.out}};

    std::optional<arl::MetaTable> mt;
    if (strategy == arl::Strategy::Recommendation) {
        if (rs.rules.empty()) throw std::runtime_error(o.rules + ": rule file contains no rules");
        mt.emplace(arl::build_meta_table(rs, ds));
    }

    json jex = json::array();
    std::string text = config_comment(cfg);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const arl::Example& x = xs[i];
        text += "example " + std::to_string(i) + " (" + values_text(ds, x) + ")\n";
        json je{{"index", i}, {"values", values_json(ds, x)}};
        if (strategy == arl::Strategy::Recommendation) {
            auto recs = arl::induce_recommendations(*mt, x, rs.target_class, mincov, measure,
                                                    o.max_recs);
            json jr = json::array();
            for (std::size_t k = 0; k < recs.size(); ++k) {
                const auto& rec = recs[k];
                json actions = json::array();
                for (const auto& a : rec.actions) {
                    json ja{{"attribute", ds.attributes()[a.attribute].name},
                            {"from", a.from_text},
                            {"to", a.to_text}};
                    if (a.nominal)
                        ja["realized"] = ds.attributes()[a.attribute]
                                             .domain[static_cast<std::size_t>(a.realized)];
                    else
                        ja["realized"] = a.realized;
                    actions.push_back(ja);
                }
                jr.push_back(json{{"text", arl::recommendation_text(rec, *mt)},
                                  {"quality", rec.quality},
                                  {"stats", stats_json(rec.stats)},
                                  {"actions", actions}});
                text += "  rec " + std::to_string(k + 1) + ": " +
                        arl::recommendation_text(rec, *mt) + "\n";
            }
            je["recommendations"] = jr;
            if (recs.empty()) {
                je["status"] = "no-recommendation";
                text += "  no recommendation\n";
            } else if (recs.front().actions.empty()) {
                je["status"] = "already-target-like";
                je["realized"] = values_json(ds, x);
            } else {
                je["status"] = "recommended";
                arl::Example r = arl::realize(recs.front(), x, *mt);
                je["realized"] = values_json(ds, r);
                text += "  realized: " + values_text(ds, r) + "\n";
            }
        } else {  // best-rule
            auto r = arl::best_action_rule_transform(rs, x, measure, ds);
            if (!r) {
                je["status"] = "no-covering-rule";
                text += "  no action rule covers this example\n";
            } else if (r->values == x.values) {
                je["status"] = "already-target-like";
                je["realized"] = values_json(ds, x);
                text += "  no change (already in target region)\n";
            } else {
                je["status"] = "transformed";
                je["realized"] = values_json(ds, *r);
                text += "  realized: " + values_text(ds, *r) + "\n";
            }
        }
        jex.push_back(je);
    }

    json out{{"config", cfg}, {"examples", jex}};
    write_file(fs::path(o.out) / "recommendations.json", out.dump(2));
    write_file(fs::path(o.out) / "recommendations.txt", text);
    std::cout << xs.size() << " example(s) processed\n";
    print_runtime(t0);
    return 0;
}

// -------------------------------------------------------------- evaluate ---

int cmd_evaluate(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    arl::Dataset ds = arl::load_dataset(o.data, o.schema);
    arl::Measure base = arl::parse_measure(o.measure);
    arl::Measure grow = measure_or(o.grow_measure, base);
    arl::Measure prune = measure_or(o.prune_measure, base);
    fs::create_directories(o.out);

    if (o.mode == "classification") {
        json cfg{{"command", "evaluate"},    {"mode", "classification"},
                 {"data", o.data},           {"schema", o.schema},
                 {"measure", arl::measure_name(base)},
                 {"grow_measure", arl::measure_name(grow)},
                 {"prune_measure", arl::measure_name(prune)},
                 {"mincov", o.mincov},       {"folds", o.folds},
                 {"seed", o.seed},           {"threads", o.threads},
                 {"out", o.out}};
        arl::ClassificationReport rep;
        try {
            rep = arl::run_classification_experiment(ds, o.folds, o.seed, grow, prune, base,
                                                     o.mincov, o.threads);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(o.data + ": " + e.what());
        }

        json jfolds = json::array();
        for (std::size_t f = 0; f < rep.folds.size(); ++f) {
            json ppv = json::object();
            for (std::size_t c = 0; c < ds.classes().size(); ++c)
                ppv[ds.classes()[c]] =
                    rep.folds[f].class_ppv[c] ? json(*rep.folds[f].class_ppv[c]) : json();
            jfolds.push_back(json{{"fold", f}, {"accuracy", rep.folds[f].accuracy}, {"ppv", ppv}});
        }
        json mean_ppv = json::object();
        for (std::size_t c = 0; c < ds.classes().size(); ++c)
            mean_ppv[ds.classes()[c]] =
                rep.mean_class_ppv[c] ? json(*rep.mean_class_ppv[c]) : json();
        json out{{"config", cfg},
                 {"folds", jfolds},
                 {"mean_accuracy", rep.mean_accuracy},
                 {"mean_ppv", mean_ppv}};
        write_file(fs::path(o.out) / "report.json", out.dump(2));

        std::string header = "fold,accuracy";
        for (const auto& c : ds.classes()) header += ",ppv_" + sanitize(c);
        std::string csv = config_comment(cfg) + header + "\n";
        for (std::size_t f = 0; f < rep.folds.size(); ++f) {
            csv += std::to_string(f) + "," + fmt(rep.folds[f].accuracy);
            for (const auto& v : rep.folds[f].class_ppv) csv += "," + (v ? fmt(*v) : "");
            csv += "\n";
        }
        write_file(fs::path(o.out) / "classification_folds.csv", csv);

        std::string sum = config_comment(cfg) + "accuracy";
        for (const auto& c : ds.classes()) sum += ",ppv_" + sanitize(c);
        sum += "\n" + fmt(rep.mean_accuracy);
        for (const auto& v : rep.mean_class_ppv) sum += "," + (v ? fmt(*v) : "");
        write_file(fs::path(o.out) / "classification_summary.csv", sum + "\n");

        char buf[96];
        std::snprintf(buf, sizeof buf, "mean accuracy %.2f%% over %d folds", 100 * rep.mean_accuracy,
                      o.folds);
        std::cout << buf << "\n";
    } else if (o.mode == "recommendation") {
        arl::RecommendationExperimentConfig ec;
        ec.source_class = o.source.empty() ? 0 : resolve_class(ds, o.source);
        ec.target_class = o.target.empty() ? 1 : resolve_class(ds, o.target);
        ec.direction = arl::parse_direction(o.direction);
        ec.grow_source = ec.grow_target = grow;
        ec.prune = prune;
        ec.recommendation = base;
        ec.mincov = o.mincov;
        ec.folds = o.folds;
        ec.seed = o.seed;
        ec.strategy = arl::parse_strategy(o.strategy);
        ec.max_recs = o.max_recs;
        ec.threads = o.threads;

        json cfg{{"command", "evaluate"},
                 {"mode", "recommendation"},
                 {"data", o.data},
                 {"schema", o.schema},
                 {"direction", arl::direction_name(ec.direction)},
                 {"measure", arl::measure_name(base)},
                 {"grow_measure", arl::measure_name(grow)},
                 {"prune_measure", arl::measure_name(prune)},
                 {"source", ds.classes()[static_cast<std::size_t>(ec.source_class)]},
                 {"target", ds.classes()[static_cast<std::size_t>(ec.target_class)]},
                 {"strategy", arl::strategy_name(ec.strategy)},
                 {"mincov", ec.mincov},
                 {"folds", ec.folds},
                 {"seed", ec.seed},
                 {"max_recs", ec.max_recs},
                 {"threads", ec.threads},
                 {"verifier", o.verifier_command.empty() ? "internal" : o.verifier_command},
                 {"out", o.out}};

        std::unique_ptr<arl::Verifier> external;
        if (!o.verifier_command.empty()) {
            std::string dir =
                o.verifier_dir.empty() ? (fs::path(o.out) / "verifier").string() : o.verifier_dir;
            fs::create_directories(dir);
            external = std::make_unique<arl::CommandVerifier>(o.verifier_command, dir);
        }
        arl::RecommendationReport rep;
        try {
            rep = arl::run_recommendation_experiment(ds, ec, external.get());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(o.data + ": " + e.what());
        }

        json jfolds = json::array();
        for (std::size_t f = 0; f < rep.folds.size(); ++f) {
            const auto& fr = rep.folds[f];
            jfolds.push_back(json{{"fold", f},
                                  {"source_examples", fr.source_examples},
                                  {"transformed", fr.transformed},
                                  {"verified", fr.verified},
                                  {"failures", fr.failures},
                                  {"accuracy", fr.accuracy},
                                  {"accuracy_excl_failures", fr.accuracy_excl_failures},
                                  {"characteristics", characteristics_json(fr.characteristics)}});
        }
        json out{{"config", cfg},
                 {"folds", jfolds},
                 {"mean_accuracy", rep.mean_accuracy},
                 {"mean_accuracy_excl_failures", rep.mean_accuracy_excl_failures},
                 {"mean_characteristics", characteristics_json(rep.mean_characteristics)}};
        write_file(fs::path(o.out) / "report.json", out.dump(2));

        std::string csv = config_comment(cfg) +
                          "fold,source_examples,transformed,verified,failures,accuracy,"
                          "accuracy_excl_failures," +
                          kCharacteristicsHeader + "\n";
        for (std::size_t f = 0; f < rep.folds.size(); ++f) {
            const auto& fr = rep.folds[f];
            csv += std::to_string(f) + "," + std::to_string(fr.source_examples) + "," +
                   std::to_string(fr.transformed) + "," + std::to_string(fr.verified) + "," +
                   std::to_string(fr.failures) + "," + fmt(fr.accuracy) + "," +
                   fmt(fr.accuracy_excl_failures) + characteristics_csv_cells(fr.characteristics) +
                   "\n";
        }
        write_file(fs::path(o.out) / "recommendation_folds.csv", csv);

        std::string sum = config_comment(cfg) + "accuracy,accuracy_excl_failures," +
                          kCharacteristicsHeader + "\n" + fmt(rep.mean_accuracy) + "," +
                          fmt(rep.mean_accuracy_excl_failures) +
                          characteristics_csv_cells(rep.mean_characteristics);
        write_file(fs::path(o.out) / "recommendation_summary.csv", sum + "\n");

        char buf[96];
        std::snprintf(buf, sizeof buf, "recommendation accuracy %.2f%% over %d folds",
                      rep.mean_accuracy, o.folds);
        std::cout << buf << "\n";
    } else {
        throw UsageError("evaluate needs --mode classification or --mode recommendation");
    }
    print_runtime(t0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separate-and-conquer rule induction, action rules and recommendations"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file; flags take precedence");

    Options o;
    o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto add_data = [&](CLI::App* c) {
        c->add_option("--data", o.data, "data CSV file")->required();
        c->add_option("--schema", o.schema, "schema file")->required();
        c->add_option("--out", o.out, "output directory")->capture_default_str();
    };
    auto add_measures = [&](CLI::App* c) {
        c->add_option("--measure", o.measure, "quality measure for every phase")
            ->capture_default_str();
        c->add_option("--grow-measure", o.grow_measure, "override the growing measure");
        c->add_option("--prune-measure", o.prune_measure, "override the pruning measure");
    };

    CLI::App* ind = app.add_subcommand("induce", "induce classification or action rules");
    add_data(ind);
    add_measures(ind);
    ind->add_option("--mode", o.mode, "classification | action")->default_val("classification");
    ind->add_option("--direction", o.direction, "forward | backward")->capture_default_str();
    ind->add_option("--source", o.source, "source class (action mode)");
    ind->add_option("--target", o.target, "target class (action mode)");
    ind->add_option("--mincov", o.mincov, "minimum newly covered examples per rule")
        ->capture_default_str();

    CLI::App* rec = app.add_subcommand("recommend", "recommendations from an action-rule dump");
    add_data(rec);
    rec->add_option("--rules", o.rules, "action-rule JSON dump from a prior induce run")
        ->required();
    rec->add_option("--examples", o.examples, "examples CSV (labels optional)")->required();
    rec->add_option("--strategy", o.strategy, "recommendation | best-rule")->capture_default_str();
    rec->add_option("--measure", o.measure, "recommendation quality measure")
        ->capture_default_str();
    auto* rec_mincov = rec->add_option("--mincov", o.mincov, "minimum coverage (default: from dump)");
    rec->add_option("--max-recs", o.max_recs, "recommendations kept per example")
        ->capture_default_str();

    CLI::App* ev = app.add_subcommand("evaluate", "cross-validated experiments");
    add_data(ev);
    add_measures(ev);
    ev->add_option("--mode", o.mode, "classification | recommendation");
    ev->add_flag_callback("--classification", [&] { o.mode = "classification"; },
                          "shorthand for --mode classification");
    ev->add_flag_callback("--recommendation", [&] { o.mode = "recommendation"; },
                          "shorthand for --mode recommendation");
    ev->add_option("--direction", o.direction, "forward | backward")->capture_default_str();
    ev->add_option("--source", o.source, "source class (default: first class)");
    ev->add_option("--target", o.target, "target class (default: second class)");
    ev->add_option("--strategy", o.strategy, "recommendation | best-rule | identity")
        ->capture_default_str();
    ev->add_option("--mincov", o.mincov, "minimum newly covered examples per rule")
        ->capture_default_str();
    ev->add_option("--folds", o.folds, "cross-validation folds")->capture_default_str();
    ev->add_option("--seed", o.seed, "fold split seed")->capture_default_str();
    ev->add_option("--max-recs", o.max_recs, "recommendations kept per example")
        ->capture_default_str();
    ev->add_option("--threads", o.threads, "parallel fold workers")->capture_default_str();
    ev->add_option("--verifier-command", o.verifier_command,
                   "external verifier: <cmd> train.csv train.schema examples.csv predictions.txt");
    ev->add_option("--verifier-dir", o.verifier_dir, "exchange directory for the verifier");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ind->parsed()) return cmd_induce(o);
        if (rec->parsed()) return cmd_recommend(o, rec_mincov->count() > 0);
        if (ev->parsed()) {
            if (o.mode.empty())
                throw UsageError("evaluate needs --mode classification or --mode recommendation");
            return cmd_evaluate(o);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
