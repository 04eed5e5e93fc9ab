#include "arl/quality.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arl {

namespace {

double entropy2(double q) {
    double h = 0.0;
    if (q > 0.0 && q < 1.0) h = -q * std::log(q) - (1.0 - q) * std::log(1.0 - q);
    return h;
}

double log_choose(long long n, long long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

Measure parse_measure(const std::string& name) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "precision") return Measure::Precision;
    if (s == "wlap") return Measure::WLap;
    if (s == "c2") return Measure::C2;
    if (s == "gain") return Measure::Gain;
    if (s == "corr" || s == "correlation") return Measure::Correlation;
    if (s == "rss") return Measure::RSS;
    if (s == "lift") return Measure::Lift;
    std::string known;
    for (const auto& n : measure_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown measure '" + name + "' (known: " + known + ")");
}

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::Precision: return "precision";
        case Measure::WLap: return "wlap";
        case Measure::C2: return "c2";
        case Measure::Gain: return "gain";
        case Measure::Correlation: return "corr";
        case Measure::RSS: return "rss";
        case Measure::Lift: return "lift";
    }
    return "?";
}

const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names = {"precision", "wlap", "c2", "gain",
                                                   "corr", "rss", "lift"};
    return names;
}

double evaluate(Measure m, const ConfusionMatrix& cm) {
    const double p = static_cast<double>(cm.p);
    const double n = static_cast<double>(cm.n);
    const double P = static_cast<double>(cm.P);
    const double N = static_cast<double>(cm.N);
    assert(cm.p >= 0 && cm.n >= 0 && cm.p <= cm.P && cm.n <= cm.N && cm.p + cm.n >= 1);

    switch (m) {
        case Measure::Precision:
            return p / (p + n);
        case Measure::WLap:
            return (p + 1.0) * (P + N) / ((p + n + 2.0) * P);
        case Measure::C2:
            return ((N * p - P * n) / (N * (p + n))) * ((P + p) / (2.0 * P));
        case Measure::RSS:
            return p / P - n / N;
        case Measure::Lift:
            return (p / (p + n)) * (P + N) / P;
        case Measure::Correlation: {
            double den = P * N * (p + n) * (P + N - p - n);
            if (den <= 0.0) return 0.0;
            return (p * N - n * P) / std::sqrt(den);
        }
        case Measure::Gain: {
            double total = P + N;
            double covered = p + n;
            double uncovered = total - covered;
            double hy = entropy2(P / total);
            double hyx = (covered / total) * entropy2(p / covered);
            if (uncovered > 0.0) hyx += (uncovered / total) * entropy2((P - p) / uncovered);
            return hy - hyx;
        }
    }
    return 0.0;
}

double fisher_p_value(const ConfusionMatrix& cm) {
    const long long draws = cm.p + cm.n;
    const long long hi = std::min(cm.P, draws);
    const double log_denom = log_choose(cm.P + cm.N, draws);
    // Sum the tail in log space against its largest term.
    double max_log = -INFINITY;
    std::vector<double> logs;
    for (long long k = cm.p; k <= hi; ++k) {
        if (draws - k > cm.N) continue;  // infeasible split
        double lg = log_choose(cm.P, k) + log_choose(cm.N, draws - k) - log_denom;
        logs.push_back(lg);
        max_log = std::max(max_log, lg);
    }
    if (logs.empty()) return 0.0;
    double sum = 0.0;
    for (double lg : logs) sum += std::exp(lg - max_log);
    double v = std::exp(max_log) * sum;
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> fdr_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    if (m == 0) return {};
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        double q = p_values[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
        running = std::min(running, std::min(q, 1.0));
        adjusted[order[r]] = running;
    }
    return adjusted;
}

}  // namespace arl
