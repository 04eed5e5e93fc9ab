#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arl/actions.hpp"
#include "arl/dataset.hpp"
#include "arl/recommend.hpp"
#include "arl/rules.hpp"

namespace arl {

// Judges whether a transformed example reached the target class.
struct Verifier {
    virtual ~Verifier() = default;
    virtual void fit(const Dataset& train) = 0;
    virtual int predict(const Example& e) const = 0;
    virtual std::vector<int> predict_batch(const std::vector<Example>& es) const;
};

// Internal rule-based classifier used as the default verifier.
class RuleVerifier : public Verifier {
public:
    explicit RuleVerifier(Measure measure = Measure::C2, int mincov = 5)
        : measure_(measure), mincov_(mincov) {}
    void fit(const Dataset& train) override;
    int predict(const Example& e) const override;

private:
    Measure measure_;
    int mincov_;
    bool fitted_ = false;
    std::vector<RuleSet> sets_;
    int default_class_ = 0;
    std::size_t class_count_ = 0;
};

std::unique_ptr<Verifier> default_verifier();

// File-based exchange with an external classifier. fit() writes the training
// set; predict_batch() writes the examples and runs
//   <command> <train.csv> <train.schema> <examples.csv> <predictions.txt>
// expecting one class label per line in the predictions file.
class CommandVerifier : public Verifier {
public:
    CommandVerifier(std::string command, std::string exchange_dir);
    void fit(const Dataset& train) override;
    int predict(const Example& e) const override;
    std::vector<int> predict_batch(const std::vector<Example>& es) const override;

private:
    std::string command_, dir_, train_csv_, train_schema_;
    const Dataset* train_ = nullptr;
    mutable int batch_id_ = 0;
};

// Positive predictive value of `cls` among predictions; empty when the class
// was never predicted.
std::optional<double> ppv(const std::vector<int>& predicted, const std::vector<int>& actual,
                          int cls);

struct ClassificationFoldReport {
    std::vector<std::optional<double>> class_ppv;
    double accuracy = 0.0;
};

struct ClassificationReport {
    std::vector<ClassificationFoldReport> folds;
    std::vector<std::optional<double>> mean_class_ppv;  // absent folds excluded
    double mean_accuracy = 0.0;
};

ClassificationReport run_classification_experiment(const Dataset& ds, int k, std::uint64_t seed,
                                                   Measure grow, Measure prune, Measure voting,
                                                   int mincov, int threads = 1);

enum class Strategy { BestRule, Recommendation, Identity };

Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

struct RecommendationExperimentConfig {
    int source_class = 0;
    int target_class = 1;
    Direction direction = Direction::Backward;
    Measure grow_source = Measure::C2;
    Measure grow_target = Measure::C2;
    Measure prune = Measure::C2;
    Measure recommendation = Measure::C2;  // recommendation induction + rule choice
    int mincov = 5;
    int folds = 10;
    std::uint64_t seed = 43;
    Strategy strategy = Strategy::Recommendation;
    int max_recs = 3;
    int threads = 1;
};

struct RecommendationFoldReport {
    int source_examples = 0;
    int transformed = 0;  // examples a transformation existed for
    int verified = 0;     // transformed and judged target class
    int failures = 0;     // no rule / no recommendation
    double accuracy = 0.0;             // percent, failures count in the denominator
    double accuracy_excl_failures = 0.0;
    ActionSetCharacteristics characteristics;
};

struct RecommendationReport {
    std::vector<RecommendationFoldReport> folds;
    double mean_accuracy = 0.0;
    double mean_accuracy_excl_failures = 0.0;
    ActionSetCharacteristics mean_characteristics;
};

// Per fold: induce action rules on the training part, fit the verifier on the
// same part, transform every source-class test example with the chosen
// strategy and count the ones the verifier assigns to the target class.
// Untransformable examples are failures and stay in the denominator.
RecommendationReport run_recommendation_experiment(const Dataset& ds,
                                                   const RecommendationExperimentConfig& cfg,
                                                   Verifier* verifier = nullptr);

}  // namespace arl
