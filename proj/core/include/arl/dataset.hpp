#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace arl {

enum class AttributeKind { Nominal, Numeric };
enum class Mutability { Stable, Flexible };

struct Attribute {
    std::string name;
    AttributeKind kind = AttributeKind::Nominal;
    Mutability mutability = Mutability::Flexible;
    // Observed values in file order; nominal attributes only.
    std::vector<std::string> domain;

    std::optional<int> domain_index(const std::string& value) const;
};

// Nominal cells store the domain index; numeric cells store the value.
struct Example {
    std::vector<double> values;
    int label = -1;  // class index, -1 when unlabeled
};

class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Attribute> attributes,
            std::vector<std::string> classes,
            std::vector<Example> examples);

    const std::vector<Attribute>& attributes() const { return attributes_; }
    const std::vector<std::string>& classes() const { return classes_; }
    const std::vector<Example>& examples() const { return examples_; }
    std::size_t size() const { return examples_.size(); }

    int class_count(int cls) const { return class_counts_[static_cast<std::size_t>(cls)]; }
    int majority_class() const;

    // Per-dataset cache of numeric ranges; meaningless for nominal columns.
    double numeric_min(std::size_t attr) const { return mins_[attr]; }
    double numeric_max(std::size_t attr) const { return maxs_[attr]; }

    std::string value_text(const Example& e, std::size_t attr) const;

private:
    std::vector<Attribute> attributes_;
    std::vector<std::string> classes_;
    std::vector<Example> examples_;
    std::vector<int> class_counts_;
    std::vector<double> mins_, maxs_;
};

// CSV with a header row plus a sidecar schema file; see README for the format.
Dataset load_dataset(const std::string& data_path, const std::string& schema_path);
Dataset load_dataset(std::istream& data, std::istream& schema,
                     const std::string& data_name = "<data>",
                     const std::string& schema_name = "<schema>");

// Writes the dataset back in the loadable CSV format (numerics round-trip).
void write_dataset_csv(const Dataset& ds, std::ostream& out);
void write_dataset_csv(const Dataset& ds, const std::string& path);
void write_schema(const Dataset& ds, const std::string& decision_name, std::ostream& out);
void write_schema(const Dataset& ds, const std::string& decision_name, const std::string& path);

// Unlabeled (or optionally labeled) examples in the same CSV format; the
// decision column may be omitted. Attribute columns must match `ref`.
std::vector<Example> load_examples(const std::string& data_path, const Dataset& ref);
std::vector<Example> load_examples(std::istream& data, const Dataset& ref,
                                   const std::string& data_name = "<data>");

struct Fold {
    Dataset train;
    Dataset test;
};

// Deterministic stratified k-fold split: per-class counts across folds differ
// by at most one; the same seed always yields the same split.
std::vector<Fold> stratified_folds(const Dataset& ds, int k, std::uint64_t seed);

}  // namespace arl
