#pragma once

#include "metrics/geometry.hpp"
#include "metrics/metric_bound.hpp"

namespace metrics {

// Exact Caratheodory metric of the ring at P_delta: the holomorphic convex
// hull of the ring is the closed unit ball, so the value is the ball metric.
MetricBound caratheodory_ring(const EggRingDomain& domain, const BasePoint& base,
                              const TangentVector2& xi);

// When the complex line P + zeta*xi misses the inner egg, all three metrics
// coincide with the ball value. Throws NotApplicableError otherwise.
MetricBound lemma4_value(const EggRingDomain& domain, const BasePoint& base,
                         const TangentVector2& xi, const LineSearchOptions& opt = {});

} // namespace metrics
