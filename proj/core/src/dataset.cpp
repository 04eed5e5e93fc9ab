#include "arl/dataset.hpp"

#include "arl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace arl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_missing(const std::string& tok) { return tok.empty() || tok == "?"; }

struct SchemaColumn {
    std::string name;
    AttributeKind kind = AttributeKind::Nominal;
    Mutability mutability = Mutability::Flexible;
    bool decision = false;
};

std::vector<SchemaColumn> parse_schema(std::istream& in, const std::string& schema_name) {
    std::vector<SchemaColumn> cols;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tok = split_csv_line(t);
        if (tok.size() != 4)
            throw std::runtime_error(schema_name + ":" + std::to_string(line_no) +
                                     ": expected 'name,kind,mutability,role'");
        SchemaColumn c;
        c.name = tok[0];
        if (tok[1] == "nominal") c.kind = AttributeKind::Nominal;
        else if (tok[1] == "numeric") c.kind = AttributeKind::Numeric;
        else throw std::runtime_error(schema_name + ":" + std::to_string(line_no) +
                                      ": unknown kind '" + tok[1] + "'");
        if (tok[2] == "stable") c.mutability = Mutability::Stable;
        else if (tok[2] == "flexible" || tok[2] == "-") c.mutability = Mutability::Flexible;
        else throw std::runtime_error(schema_name + ":" + std::to_string(line_no) +
                                      ": unknown mutability '" + tok[2] + "'");
        if (tok[3] == "decision") c.decision = true;
        else if (tok[3] == "condition") c.decision = false;
        else throw std::runtime_error(schema_name + ":" + std::to_string(line_no) +
                                      ": unknown role '" + tok[3] + "'");
        cols.push_back(std::move(c));
    }
    int decisions = static_cast<int>(std::count_if(cols.begin(), cols.end(),
                                                   [](const SchemaColumn& c) { return c.decision; }));
    if (decisions == 0) throw std::runtime_error(schema_name + ": missing decision column");
    if (decisions > 1) throw std::runtime_error(schema_name + ": multiple decision columns");
    return cols;
}

double parse_numeric(const std::string& tok, const std::string& where) {
    const char* s = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !std::isfinite(v))
        throw std::runtime_error(where + ": cannot parse '" + tok + "' as numeric");
    return v;
}

}  // namespace

std::optional<int> Attribute::domain_index(const std::string& value) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == value) return static_cast<int>(i);
    return std::nullopt;
}

Dataset::Dataset(std::vector<Attribute> attributes, std::vector<std::string> classes,
                 std::vector<Example> examples)
    : attributes_(std::move(attributes)),
      classes_(std::move(classes)),
      examples_(std::move(examples)) {
    if (attributes_.empty()) throw std::invalid_argument("dataset has no attributes");
    if (classes_.size() < 2) throw std::invalid_argument("dataset needs at least 2 classes");
    if (examples_.empty()) throw std::invalid_argument("empty dataset");
    class_counts_.assign(classes_.size(), 0);
    mins_.assign(attributes_.size(), std::numeric_limits<double>::quiet_NaN());
    maxs_.assign(attributes_.size(), std::numeric_limits<double>::quiet_NaN());
    for (const Example& e : examples_) {
        if (e.values.size() != attributes_.size())
            throw std::invalid_argument("example arity does not match attributes");
        if (e.label < 0 || e.label >= static_cast<int>(classes_.size()))
            throw std::invalid_argument("example label out of range");
        ++class_counts_[static_cast<std::size_t>(e.label)];
        for (std::size_t a = 0; a < attributes_.size(); ++a) {
            if (attributes_[a].kind != AttributeKind::Numeric) continue;
            double v = e.values[a];
            if (std::isnan(mins_[a]) || v < mins_[a]) mins_[a] = v;
            if (std::isnan(maxs_[a]) || v > maxs_[a]) maxs_[a] = v;
        }
    }
    for (std::size_t c = 0; c < classes_.size(); ++c)
        if (class_counts_[c] == 0)
            throw std::invalid_argument("class '" + classes_[c] + "' has no examples");
}

int Dataset::majority_class() const {
    int best = 0;
    for (std::size_t c = 1; c < class_counts_.size(); ++c)
        if (class_counts_[c] > class_counts_[static_cast<std::size_t>(best)])
            best = static_cast<int>(c);
    return best;
}

std::string Dataset::value_text(const Example& e, std::size_t attr) const {
    const Attribute& a = attributes_[attr];
    double v = e.values[attr];
    if (a.kind == AttributeKind::Nominal) return a.domain[static_cast<std::size_t>(v)];
    return format_double(v);
}

Dataset load_dataset(const std::string& data_path, const std::string& schema_path) {
    std::ifstream data(data_path);
    if (!data) throw std::runtime_error("cannot open data file: " + data_path);
    std::ifstream schema(schema_path);
    if (!schema) throw std::runtime_error("cannot open schema file: " + schema_path);
    return load_dataset(data, schema, data_path, schema_path);
}

Dataset load_dataset(std::istream& data, std::istream& schema, const std::string& data_name,
                     const std::string& schema_name) {
    auto cols = parse_schema(schema, schema_name);

    std::string header_line;
    if (!std::getline(data, header_line))
        throw std::runtime_error(data_name + ": empty file");
    auto header = split_csv_line(header_line);

    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (!by_name.emplace(cols[i].name, i).second)
            throw std::runtime_error(schema_name + ": duplicate column '" + cols[i].name + "'");
    }
    for (const std::string& h : header)
        if (!by_name.count(h))
            throw std::runtime_error(data_name + ": column '" + h + "' missing from schema");
    if (header.size() != cols.size())
        throw std::runtime_error(schema_name + ": unknown column in schema (data has " +
                                 std::to_string(header.size()) + " columns, schema " +
                                 std::to_string(cols.size()) + ")");

    std::vector<std::size_t> schema_of_col(header.size());
    int decision_col = -1;
    std::vector<Attribute> attrs;
    std::vector<int> attr_of_col(header.size(), -1);
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::size_t si = by_name[header[i]];
        schema_of_col[i] = si;
        if (cols[si].decision) {
            decision_col = static_cast<int>(i);
        } else {
            Attribute a;
            a.name = cols[si].name;
            a.kind = cols[si].kind;
            a.mutability = cols[si].mutability;
            attr_of_col[i] = static_cast<int>(attrs.size());
            attrs.push_back(std::move(a));
        }
    }
    if (decision_col < 0)
        throw std::runtime_error(data_name + ": missing decision column");

    std::vector<std::string> classes;
    std::vector<Example> examples;
    std::string line;
    int row = 1;
    while (std::getline(data, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto tok = split_csv_line(line);
        if (tok.size() != header.size())
            throw std::runtime_error(data_name + ":" + std::to_string(row) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(tok.size()));
        Example e;
        e.values.resize(attrs.size());
        for (std::size_t i = 0; i < tok.size(); ++i) {
            const std::string where =
                data_name + ":" + std::to_string(row) + ": column '" + header[i] + "'";
            if (is_missing(tok[i]))
                throw std::runtime_error(where + ": missing value");
            if (static_cast<int>(i) == decision_col) {
                auto it = std::find(classes.begin(), classes.end(), tok[i]);
                if (it == classes.end()) {
                    classes.push_back(tok[i]);
                    e.label = static_cast<int>(classes.size()) - 1;
                } else {
                    e.label = static_cast<int>(it - classes.begin());
                }
            } else {
                Attribute& a = attrs[static_cast<std::size_t>(attr_of_col[i])];
                if (a.kind == AttributeKind::Numeric) {
                    e.values[static_cast<std::size_t>(attr_of_col[i])] = parse_numeric(tok[i], where);
                } else {
                    auto idx = a.domain_index(tok[i]);
                    if (!idx) {
                        a.domain.push_back(tok[i]);
                        idx = static_cast<int>(a.domain.size()) - 1;
                    }
                    e.values[static_cast<std::size_t>(attr_of_col[i])] = *idx;
                }
            }
        }
        examples.push_back(std::move(e));
    }
    if (examples.empty()) throw std::runtime_error(data_name + ": empty dataset");
    return Dataset(std::move(attrs), std::move(classes), std::move(examples));
}

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
    for (std::size_t a = 0; a < ds.attributes().size(); ++a)
        out << ds.attributes()[a].name << ',';
    out << "class\n";
    for (const Example& e : ds.examples()) {
        for (std::size_t a = 0; a < ds.attributes().size(); ++a)
            out << ds.value_text(e, a) << ',';
        out << ds.classes()[static_cast<std::size_t>(e.label)] << '\n';
    }
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_dataset_csv(ds, f);
}

void write_schema(const Dataset& ds, const std::string& decision_name, std::ostream& out) {
    for (const Attribute& a : ds.attributes()) {
        out << a.name << ',' << (a.kind == AttributeKind::Numeric ? "numeric" : "nominal") << ','
            << (a.mutability == Mutability::Stable ? "stable" : "flexible") << ",condition\n";
    }
    out << decision_name << ",nominal,-,decision\n";
}

void write_schema(const Dataset& ds, const std::string& decision_name, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_schema(ds, decision_name, f);
}

std::vector<Example> load_examples(const std::string& data_path, const Dataset& ref) {
    std::ifstream f(data_path);
    if (!f) throw std::runtime_error("cannot open examples file: " + data_path);
    return load_examples(f, ref, data_path);
}

std::vector<Example> load_examples(std::istream& data, const Dataset& ref,
                                   const std::string& data_name) {
    std::string header_line;
    if (!std::getline(data, header_line))
        throw std::runtime_error(data_name + ": empty file");
    auto header = split_csv_line(header_line);

    // Columns must be the reference attributes, optionally plus a final
    // decision column (any name not matching an attribute).
    std::vector<int> attr_of_col(header.size(), -1);
    int decision_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool found = false;
        for (std::size_t a = 0; a < ref.attributes().size(); ++a) {
            if (ref.attributes()[a].name == header[i]) {
                attr_of_col[i] = static_cast<int>(a);
                found = true;
                break;
            }
        }
        if (!found) {
            if (decision_col >= 0)
                throw std::runtime_error(data_name + ": unknown column '" + header[i] + "'");
            decision_col = static_cast<int>(i);
        }
    }
    std::vector<bool> seen(ref.attributes().size(), false);
    for (int a : attr_of_col)
        if (a >= 0) seen[static_cast<std::size_t>(a)] = true;
    for (std::size_t a = 0; a < seen.size(); ++a)
        if (!seen[a])
            throw std::runtime_error(data_name + ": missing column '" + ref.attributes()[a].name + "'");

    std::vector<Example> out;
    std::string line;
    int row = 1;
    while (std::getline(data, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto tok = split_csv_line(line);
        if (tok.size() != header.size())
            throw std::runtime_error(data_name + ":" + std::to_string(row) + ": expected " +
                                     std::to_string(header.size()) + " fields");
        Example e;
        e.values.resize(ref.attributes().size());
        for (std::size_t i = 0; i < tok.size(); ++i) {
            const std::string where =
                data_name + ":" + std::to_string(row) + ": column '" + header[i] + "'";
            if (static_cast<int>(i) == decision_col) {
                auto it = std::find(ref.classes().begin(), ref.classes().end(), tok[i]);
                if (it == ref.classes().end())
                    throw std::runtime_error(where + ": unknown class '" + tok[i] + "'");
                e.label = static_cast<int>(it - ref.classes().begin());
                continue;
            }
            if (is_missing(tok[i])) throw std::runtime_error(where + ": missing value");
            const Attribute& a = ref.attributes()[static_cast<std::size_t>(attr_of_col[i])];
            if (a.kind == AttributeKind::Numeric) {
                e.values[static_cast<std::size_t>(attr_of_col[i])] = parse_numeric(tok[i], where);
            } else {
                auto idx = a.domain_index(tok[i]);
                if (!idx)
                    throw std::runtime_error(where + ": value '" + tok[i] +
                                             "' not in the training domain");
                e.values[static_cast<std::size_t>(attr_of_col[i])] = *idx;
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Fold> stratified_folds(const Dataset& ds, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_folds: k must be at least 2");
    for (std::size_t c = 0; c < ds.classes().size(); ++c)
        if (ds.class_count(static_cast<int>(c)) < k)
            throw std::invalid_argument("stratified_folds: class '" + ds.classes()[c] +
                                        "' has fewer than k=" + std::to_string(k) + " examples");

    std::vector<std::vector<std::size_t>> by_class(ds.classes().size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class[static_cast<std::size_t>(ds.examples()[i].label)].push_back(i);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> fold_members(static_cast<std::size_t>(k));
    for (auto& grp : by_class) {
        std::shuffle(grp.begin(), grp.end(), rng);
        for (std::size_t pos = 0; pos < grp.size(); ++pos)
            fold_members[pos % static_cast<std::size_t>(k)].push_back(grp[pos]);
    }

    std::vector<Fold> folds;
    folds.reserve(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) {
        std::vector<bool> in_test(ds.size(), false);
        for (std::size_t i : fold_members[static_cast<std::size_t>(f)]) in_test[i] = true;
        std::vector<Example> train, test;
        for (std::size_t i = 0; i < ds.size(); ++i)
            (in_test[i] ? test : train).push_back(ds.examples()[i]);
        folds.push_back(Fold{Dataset(ds.attributes(), ds.classes(), std::move(train)),
                             Dataset(ds.attributes(), ds.classes(), std::move(test))});
    }
    return folds;
}

}  // namespace arl
