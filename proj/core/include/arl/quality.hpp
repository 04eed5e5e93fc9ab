#pragma once

#include <string>
#include <vector>

namespace arl {

// p/n: positives/negatives covered by the rule, P/N: totals in the dataset.
struct ConfusionMatrix {
    long long p = 0;
    long long n = 0;
    long long P = 0;
    long long N = 0;
};

enum class Measure { Precision, WLap, C2, Gain, Correlation, RSS, Lift };

// Case-insensitive: precision, wlap, c2, gain, corr (or correlation), rss, lift.
Measure parse_measure(const std::string& name);
std::string measure_name(Measure m);
const std::vector<std::string>& measure_names();

double evaluate(Measure m, const ConfusionMatrix& cm);

// One-sided Fisher exact test: upper tail P[X >= p] of the hypergeometric
// distribution with population P+N, P successes and p+n draws.
double fisher_p_value(const ConfusionMatrix& cm);

// Benjamini-Hochberg adjustment; result is aligned with the input order.
std::vector<double> fdr_adjust(const std::vector<double>& p_values);

}  // namespace arl
