#pragma once

#include "metrics/geometry.hpp"

#include <string>

namespace metrics {

enum class Metric { kobayashi, sibony, caratheodory };
enum class BoundKind { lower, upper, exact };

const char* to_string(Metric m);
const char* to_string(BoundKind k);
Metric metric_from_string(const std::string& s);

// One metric estimate at (P_delta, direction).
struct MetricBound {
    Metric metric = Metric::caratheodory;
    BoundKind kind = BoundKind::exact;
    double value = 0.0;
    std::string method;
    double delta = 0.0;
    TangentVector2 direction;
};

} // namespace metrics
