#pragma once

#include "metrics/kobayashi.hpp"
#include "metrics/metric_bound.hpp"

#include <set>
#include <string>
#include <vector>

namespace metrics {

struct SweepConfig {
    int m = 2;
    double delta_min = 1e-4;
    double delta_max = 1e-2;
    int steps = 0; // 0: 16 points per decade
    std::set<Metric> metrics{Metric::kobayashi, Metric::sibony, Metric::caratheodory};
    std::vector<TangentVector2> directions{TangentVector2{Complex{1.0, 0.0}, Complex{0.0, 0.0}}};
    int disc_budget = 2000;
    unsigned seed = 0;

    void validate() const;
    int effective_steps() const;
    std::vector<double> delta_grid() const; // log-spaced
};

struct SweepRecord {
    int m = 2;
    double delta = 0.0;
    Metric metric = Metric::caratheodory;
    BoundKind kind = BoundKind::exact;
    std::string method;
    double value = 0.0;
    TangentVector2 direction;
    std::string error; // empty when the record is valid
};

struct ExponentFit {
    Metric metric = Metric::caratheodory;
    BoundKind kind = BoundKind::exact;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double theoretical_slope = 0.0;
    bool within_tolerance = false;
};

std::vector<SweepRecord> run_sweep(const SweepConfig& config);

double theoretical_slope(Metric metric, BoundKind kind, int m);

// OLS on (ln delta, ln value) over records of one (metric, kind) family.
// Throws on fewer than 4 usable records or non-positive values.
ExponentFit fit_exponent(const std::vector<SweepRecord>& records, Metric metric,
                         BoundKind kind, int m);

// Eq.-(6)-style ordering across each delta of a sweep; returns the messages
// for every violation beyond 1e-9 slack (empty means the chain holds).
std::vector<std::string> ordering_violations(const std::vector<SweepRecord>& records);

std::string emit_csv(const std::vector<SweepRecord>& records);
std::string emit_json(const std::vector<SweepRecord>& records,
                      const std::vector<ExponentFit>& fits);
std::vector<SweepRecord> records_from_json(const std::string& text);

// shortest round-trip decimal form of a double
std::string format_double(double v);

} // namespace metrics
