#pragma once

#include "metrics/geometry.hpp"
#include "metrics/metric_bound.hpp"

namespace metrics {

// Analytic disc phi(zeta) = (p + lambda zeta + a2 zeta^2, mu zeta^2).
// phi(0) = P_delta and phi'(0) = (lambda, 0), parallel to nu = (1, 0).
struct CandidateDisc {
    double lambda = 0.0;
    Complex a2{0.0, 0.0};
    double mu = 0.0;
    BasePoint base;

    ComplexPoint2 at(Complex zeta) const {
        const Complex z = Complex{base.p, 0.0} + lambda * zeta + a2 * zeta * zeta;
        return {z, mu * zeta * zeta};
    }
};

struct FeasibilityReport {
    bool feasible = false;
    double worst_margin = 0.0;
    Complex worst_zeta{0.0, 0.0};
    long samples_checked = 0;
};

// Grid check of phi(D) against the ring, radii up to 1 - 1e-6. The inner
// constraint can be worst in the interior, so the full disc is sampled.
FeasibilityReport disc_feasible(const CandidateDisc& disc, const EggRingDomain& domain,
                                int radial_steps, int angular_steps, double margin);

struct DiscSearchOptions {
    int search_budget = 2000;    // feasibility evaluations
    int radial_steps = 256;
    int angular_steps = 256;
    int certify_factor = 4;      // final re-check density multiplier
    double margin = 1e-9;
    bool restrict_mu_zero = false;
    double safety_shrink = 1e-5; // relative shave of lambda after bisection
};

struct DiscSearchResult {
    MetricBound bound;
    CandidateDisc best;
    FeasibilityReport certification;
};

// Maximizes lambda over the disc family and returns 1/lambda* as a
// Kobayashi upper bound in direction nu = (1, 0).
DiscSearchResult kobayashi_upper_disc(const EggRingDomain& domain, const BasePoint& base,
                                      const DiscSearchOptions& opt = {});

// max of the Caratheodory exact value and the Sibony witness lower bound.
MetricBound kobayashi_lower(const EggRingDomain& domain, const BasePoint& base,
                            const TangentVector2& xi);

struct TangentialReport {
    double exact_value = 0.0;
    double disc_value = 0.0;
    double rel_deviation = 0.0;
};

// Disc search in the tangential direction (0, 1) with family (p, mu zeta),
// compared against the closed-form ball value 1/sqrt(1-p^2).
TangentialReport tangential_crosscheck(const EggRingDomain& domain, const BasePoint& base,
                                       const DiscSearchOptions& opt = {});

} // namespace metrics
