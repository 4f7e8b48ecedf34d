#include "metrics/caratheodory.hpp"

#include "metrics/errors.hpp"

namespace metrics {

MetricBound caratheodory_ring(const EggRingDomain& domain, const BasePoint& base,
                              const TangentVector2& xi) {
    if (!contains(domain, base.point, 0.0))
        throw std::domain_error("caratheodory_ring: base point outside the ring");
    MetricBound b;
    b.metric = Metric::caratheodory;
    b.kind = BoundKind::exact;
    b.value = pushforward_norm(base.p, xi);
    b.method = "hull-mobius";
    b.delta = base.delta;
    b.direction = xi;
    return b;
}

MetricBound lemma4_value(const EggRingDomain& domain, const BasePoint& base,
                         const TangentVector2& xi, const LineSearchOptions& opt) {
    if (xi.is_zero())
        throw std::invalid_argument("lemma4_value: degenerate direction xi = 0");
    if (!line_misses_inner(domain, base.point, xi, opt))
        throw NotApplicableError("lemma4_value: line through P in direction xi meets the inner egg");
    MetricBound b;
    b.metric = Metric::caratheodory; // value applies verbatim to all three metrics
    b.kind = BoundKind::exact;
    b.value = pushforward_norm(base.p, xi);
    b.method = "line-hull";
    b.delta = base.delta;
    b.direction = xi;
    return b;
}

} // namespace metrics
