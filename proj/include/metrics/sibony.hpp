#pragma once

#include "metrics/geometry.hpp"
#include "metrics/metric_bound.hpp"
#include "metrics/psh_verify.hpp"

namespace metrics {

// Parameters of the patched admissible function giving the Sibony lower
// bound at P_delta. Stores and evaluates U = e^u, so the value is finite
// on the zero set (e^max(a,b) = max(e^a, e^b)).
struct SibonyWitness {
    double delta = 0.0;
    int m = 2;
    double c = 1.0 / 3.0;
    double big_l = 200.0;
    double big_l_prime = 0.0; // log(big_l)
    double epsilon = 0.0;

    // epsilon defaults to half its admissible bound m*log(0.96)/log(delta)
    static SibonyWitness make(double delta, int m);
    void validate() const;

    double p() const { return 0.5 + delta; }
    double patch_radius() const; // c^{2/m} delta^{1/m}
    double scale() const { return std::exp(-big_l_prime); }

    // f(z) = delta^{2/m} |(z-p)/(z-p+2 delta)|^2; throws on the pole
    double f(Complex z) const;

    // raw evaluator: defined by the formula, no domain membership check
    double value(const ComplexPoint2& q) const;
    // 0: f(z)+|w|^2 branch, 1: L|w|^{2+eps} branch
    int branch(const ComplexPoint2& q) const;

    // closed-form complex Hessian of U at P_delta
    HermitianForm2 hessian_at_base() const;

    AdmissibleCandidate candidate() const;
};

// Checked evaluation of the witness on the ring (q must lie in the ring).
double witness_U(const ComplexPoint2& q, const SibonyWitness& w, const EggRingDomain& domain);

// sqrt of the witness Hessian at P_delta in direction xi:
// sqrt( e^{-L'} ( |xi_z|^2 delta^{2/m-2}/4 + |xi_w|^2 ) ).
MetricBound sibony_lower(const BasePoint& base, int m, const TangentVector2& xi);

// beta = (K_m / delta)^{(m-1)/m}, K_m = m^{-1/(m-1)} - m^{-m/(m-1)}.
// For |v| >= beta the line P_delta + zeta (1, v) misses the inner egg.
double beta_threshold(double delta, int m);

// (2/(1-p^2)) sqrt(1/4 + (1-p^2) beta^2), direction nu = (1, 0).
MetricBound sibony_upper(const BasePoint& base, int m);

// sqrt-form subadditivity of a PSD Hermitian form; throws if H is not PSD.
bool subadditive_bound(const HermitianForm2& H, const TangentVector2& xi1,
                       const TangentVector2& xi2);

// Patches a candidate admissible near q into one defined on the whole ring:
// e^{-L_loc}(u + eps_loc |x-q|^2) near q, e^{-L_loc} 2|x-q|^4/r^4 far away.
AdmissibleCandidate localize_admissible(const AdmissibleCandidate& u, const ComplexPoint2& q,
                                        double r, double eps_loc, double l_loc);

} // namespace metrics
