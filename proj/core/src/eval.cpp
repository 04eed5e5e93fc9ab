#include "arl/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace arl {

std::vector<int> Verifier::predict_batch(const std::vector<Example>& es) const {
    std::vector<int> out;
    out.reserve(es.size());
    for (const Example& e : es) out.push_back(predict(e));
    return out;
}

void RuleVerifier::fit(const Dataset& train) {
    sets_.clear();
    for (int c = 0; c < static_cast<int>(train.classes().size()); ++c)
        sets_.push_back(induce_rules(train, c, mincov_, measure_, measure_));
    default_class_ = train.majority_class();
    class_count_ = train.classes().size();
    fitted_ = true;
}

int RuleVerifier::predict(const Example& e) const {
    if (!fitted_) throw std::logic_error("unfitted verifier");
    return classify(sets_, e, measure_, default_class_, class_count_);
}

std::unique_ptr<Verifier> default_verifier() {
    return std::make_unique<RuleVerifier>(Measure::C2, 5);
}

CommandVerifier::CommandVerifier(std::string command, std::string exchange_dir)
    : command_(std::move(command)), dir_(std::move(exchange_dir)) {
    std::filesystem::create_directories(dir_);
}

void CommandVerifier::fit(const Dataset& train) {
    train_ = &train;
    train_csv_ = dir_ + "/train.csv";
    train_schema_ = dir_ + "/train.schema";
    std::ofstream csv(train_csv_);
    write_dataset_csv(train, csv);
    std::ofstream schema(train_schema_);
    write_schema(train, "class", schema);
    if (!csv || !schema)
        throw std::runtime_error("cannot write verifier exchange files in " + dir_);
}

int CommandVerifier::predict(const Example& e) const {
    return predict_batch({e}).front();
}

std::vector<int> CommandVerifier::predict_batch(const std::vector<Example>& es) const {
    if (!train_) throw std::logic_error("unfitted verifier");
    if (es.empty()) return {};
    int id = batch_id_++;
    std::string examples_path = dir_ + "/examples_" + std::to_string(id) + ".csv";
    std::string predictions_path = dir_ + "/predictions_" + std::to_string(id) + ".txt";

    {
        std::ofstream out(examples_path);
        const auto& attrs = train_->attributes();
        for (std::size_t a = 0; a < attrs.size(); ++a)
            out << (a ? "," : "") << attrs[a].name;
        out << "\n";
        for (const Example& e : es) {
            for (std::size_t a = 0; a < attrs.size(); ++a)
                out << (a ? "," : "") << train_->value_text(e, a);
            out << "\n";
        }
        if (!out) throw std::runtime_error("cannot write " + examples_path);
    }

    std::string cmd = command_ + " \"" + train_csv_ + "\" \"" + train_schema_ + "\" \"" +
                      examples_path + "\" \"" + predictions_path + "\"";
    int rc = std::system(cmd.c_str());
    if (rc != 0)
        throw std::runtime_error("verifier command failed (exit " + std::to_string(rc) +
                                 "): " + cmd);

    std::ifstream in(predictions_path);
    if (!in) throw std::runtime_error("verifier produced no predictions file " + predictions_path);
    std::vector<int> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        line = line.substr(start);
        if (line.empty()) continue;
        auto it = std::find(train_->classes().begin(), train_->classes().end(), line);
        if (it == train_->classes().end())
            throw std::runtime_error("verifier predicted unknown class '" + line + "'");
        out.push_back(static_cast<int>(it - train_->classes().begin()));
    }
    if (out.size() != es.size())
        throw std::runtime_error("verifier returned " + std::to_string(out.size()) +
                                 " predictions for " + std::to_string(es.size()) + " examples");
    return out;
}

std::optional<double> ppv(const std::vector<int>& predicted, const std::vector<int>& actual,
                          int cls) {
    long long hits = 0, total = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] != cls) continue;
        ++total;
        if (actual[i] == cls) ++hits;
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(hits) / static_cast<double>(total);
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

ClassificationReport run_classification_experiment(const Dataset& ds, int k, std::uint64_t seed,
                                                   Measure grow, Measure prune, Measure voting,
                                                   int mincov, int threads) {
    auto folds = stratified_folds(ds, k, seed);
    std::size_t classes = ds.classes().size();
    ClassificationReport report;
    report.folds.resize(folds.size());

    parallel_for(static_cast<int>(folds.size()), threads, [&](int f) {
        const Fold& fold = folds[static_cast<std::size_t>(f)];
        std::vector<RuleSet> sets;
        for (int c = 0; c < static_cast<int>(classes); ++c)
            sets.push_back(induce_rules(fold.train, c, mincov, grow, prune));
        int default_class = fold.train.majority_class();

        std::vector<int> predicted, actual;
        for (const Example& e : fold.test.examples()) {
            predicted.push_back(classify(sets, e, voting, default_class, classes));
            actual.push_back(e.label);
        }
        ClassificationFoldReport& fr = report.folds[static_cast<std::size_t>(f)];
        long long correct = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i)
            if (predicted[i] == actual[i]) ++correct;
        fr.accuracy = static_cast<double>(correct) / static_cast<double>(predicted.size());
        for (int c = 0; c < static_cast<int>(classes); ++c)
            fr.class_ppv.push_back(ppv(predicted, actual, c));
    });

    report.mean_class_ppv.resize(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        double sum = 0.0;
        int count = 0;
        for (const auto& fr : report.folds) {
            if (!fr.class_ppv[c]) continue;
            sum += *fr.class_ppv[c];
            ++count;
        }
        if (count > 0) report.mean_class_ppv[c] = sum / count;
    }
    for (const auto& fr : report.folds) report.mean_accuracy += fr.accuracy;
    report.mean_accuracy /= static_cast<double>(report.folds.size());
    return report;
}

Strategy parse_strategy(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "best-rule" || s == "bestrule") return Strategy::BestRule;
    if (s == "recommendation") return Strategy::Recommendation;
    if (s == "identity") return Strategy::Identity;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected best-rule, recommendation or identity)");
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::BestRule: return "best-rule";
        case Strategy::Recommendation: return "recommendation";
        case Strategy::Identity: return "identity";
    }
    return "?";
}

namespace {

RecommendationFoldReport evaluate_fold(const Fold& fold, const RecommendationExperimentConfig& cfg,
                                       Verifier& verifier) {
    RecommendationFoldReport fr;
    ActionRuleSet ars =
        induce_action_rules(fold.train, cfg.source_class, cfg.target_class, cfg.direction,
                            cfg.mincov, cfg.grow_source, cfg.grow_target, cfg.prune);
    fr.characteristics = characterize(ars);
    verifier.fit(fold.train);

    std::optional<MetaTable> mt;
    if (cfg.strategy == Strategy::Recommendation && !ars.rules.empty())
        mt.emplace(build_meta_table(ars, fold.train));

    std::vector<Example> transformed;
    for (const Example& e : fold.test.examples()) {
        if (e.label != cfg.source_class) continue;
        ++fr.source_examples;
        std::optional<Example> t;
        switch (cfg.strategy) {
            case Strategy::BestRule:
                t = best_action_rule_transform(ars, e, cfg.recommendation, fold.train);
                break;
            case Strategy::Recommendation: {
                if (!mt) break;
                auto recs = induce_recommendations(*mt, e, cfg.target_class, cfg.mincov,
                                                   cfg.recommendation, cfg.max_recs);
                if (!recs.empty()) t = realize(recs.front(), e, *mt);
                break;
            }
            case Strategy::Identity: t = e; break;
        }
        if (t) transformed.push_back(std::move(*t));
        else ++fr.failures;
    }
    fr.transformed = static_cast<int>(transformed.size());

    std::vector<int> predictions = verifier.predict_batch(transformed);
    for (int p : predictions)
        if (p == cfg.target_class) ++fr.verified;

    fr.accuracy = fr.source_examples
                      ? 100.0 * static_cast<double>(fr.verified) / fr.source_examples
                      : 0.0;
    fr.accuracy_excl_failures =
        fr.transformed ? 100.0 * static_cast<double>(fr.verified) / fr.transformed : 0.0;
    return fr;
}

}  // namespace

RecommendationReport run_recommendation_experiment(const Dataset& ds,
                                                   const RecommendationExperimentConfig& cfg,
                                                   Verifier* verifier) {
    auto folds = stratified_folds(ds, cfg.folds, cfg.seed);
    RecommendationReport report;
    report.folds.resize(folds.size());

    if (verifier) {
        // An external verifier holds cross-call state; keep folds sequential.
        for (std::size_t f = 0; f < folds.size(); ++f)
            report.folds[f] = evaluate_fold(folds[f], cfg, *verifier);
    } else {
        parallel_for(static_cast<int>(folds.size()), cfg.threads, [&](int f) {
            RuleVerifier local;
            report.folds[static_cast<std::size_t>(f)] =
                evaluate_fold(folds[static_cast<std::size_t>(f)], cfg, local);
        });
    }

    double n = static_cast<double>(report.folds.size());
    ActionSetCharacteristics& mc = report.mean_characteristics;
    for (const RecommendationFoldReport& fr : report.folds) {
        report.mean_accuracy += fr.accuracy;
        report.mean_accuracy_excl_failures += fr.accuracy_excl_failures;
        const ActionSetCharacteristics& c = fr.characteristics;
        mc.rule_count += c.rule_count;
        mc.conditions_per_rule += c.conditions_per_rule;
        mc.actions_per_rule += c.actions_per_rule;
        mc.source_precision += c.source_precision;
        mc.target_precision += c.target_precision;
        mc.source_coverage += c.source_coverage;
        mc.target_coverage += c.target_coverage;
        mc.significant_source_fraction += c.significant_source_fraction;
        mc.significant_target_fraction += c.significant_target_fraction;
    }
    report.mean_accuracy /= n;
    report.mean_accuracy_excl_failures /= n;
    mc.rule_count /= n;
    mc.conditions_per_rule /= n;
    mc.actions_per_rule /= n;
    mc.source_precision /= n;
    mc.target_precision /= n;
    mc.source_coverage /= n;
    mc.target_coverage /= n;
    mc.significant_source_fraction /= n;
    mc.significant_target_fraction /= n;
    return report;
}

}  // namespace arl
