#include "metrics/metric_bound.hpp"

#include <stdexcept>

namespace metrics {

const char* to_string(Metric m) {
    switch (m) {
        case Metric::kobayashi: return "kobayashi";
        case Metric::sibony: return "sibony";
        case Metric::caratheodory: return "caratheodory";
    }
    return "?";
}

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
        case BoundKind::exact: return "exact";
    }
    return "?";
}

Metric metric_from_string(const std::string& s) {
    if (s == "kobayashi") return Metric::kobayashi;
    if (s == "sibony") return Metric::sibony;
    if (s == "caratheodory") return Metric::caratheodory;
    throw std::invalid_argument("unknown metric name: " + s);
}

} // namespace metrics
