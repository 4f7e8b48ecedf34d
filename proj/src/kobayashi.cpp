#include "metrics/kobayashi.hpp"

#include "metrics/caratheodory.hpp"
#include "metrics/errors.hpp"
#include "metrics/sibony.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace metrics {

namespace {

constexpr double kRadiusCap = 1.0 - 1e-6;

struct GridSpec {
    int radial;
    int angular;
    double margin;
};

// slack of both defining functions at phi(zeta); feasible iff > 0
double point_slack(const CandidateDisc& disc, const EggRingDomain& domain, Complex zeta,
                   double margin) {
    const ComplexPoint2 q = disc.at(zeta);
    const double inner = egg_level(domain, q) - domain.inner_level - margin;
    const double r2 = domain.outer_radius * domain.outer_radius;
    const double outer = (r2 - margin) - (std::norm(q.z) + std::norm(q.w));
    return std::min(inner, outer);
}

// fast pass used inside the search: stops at the first violation
bool grid_feasible_fast(const CandidateDisc& disc, const EggRingDomain& domain,
                        const GridSpec& g) {
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int i = 0; i < g.radial; ++i) {
        const double r = kRadiusCap * (i + 1) / g.radial;
        for (int j = 0; j < g.angular; ++j) {
            const double th = two_pi * j / g.angular;
            if (point_slack(disc, domain, r * Complex{std::cos(th), std::sin(th)}, g.margin) <= 0.0)
                return false;
        }
    }
    return true;
}

} // namespace

FeasibilityReport disc_feasible(const CandidateDisc& disc, const EggRingDomain& domain,
                                int radial_steps, int angular_steps, double margin) {
    if (radial_steps < 64 || angular_steps < 64)
        throw std::invalid_argument("disc_feasible: need at least 64 steps per axis");
    const double two_pi = 2.0 * std::acos(-1.0);
    FeasibilityReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < radial_steps; ++i) {
        const double r = kRadiusCap * (i + 1) / radial_steps;
        for (int j = 0; j < angular_steps; ++j) {
            const double th = two_pi * j / angular_steps;
            const Complex zeta = r * Complex{std::cos(th), std::sin(th)};
            const double s = point_slack(disc, domain, zeta, margin);
            ++rep.samples_checked;
            if (s < rep.worst_margin) {
                rep.worst_margin = s;
                rep.worst_zeta = zeta;
            }
        }
    }
    // center of the disc
    const double s0 = point_slack(disc, domain, Complex{0.0, 0.0}, margin);
    ++rep.samples_checked;
    if (s0 < rep.worst_margin) {
        rep.worst_margin = s0;
        rep.worst_zeta = Complex{0.0, 0.0};
    }
    rep.feasible = rep.worst_margin > 0.0;
    return rep;
}

namespace {

// largest feasible lambda for a fixed mu, by bracketing + bisection
double max_lambda(const EggRingDomain& domain, const BasePoint& base, double mu,
                  const GridSpec& g, long& evals) {
    auto feasible = [&](double lambda) {
        ++evals;
        CandidateDisc d{lambda, Complex{0.0, 0.0}, mu, base};
        return grid_feasible_fast(d, domain, g);
    };
    double lo = base.delta / 2.0;
    if (!feasible(lo)) return 0.0; // mu too large for even the safe lambda
    double hi = 2.0 * lo;
    while (hi < 2.0 && feasible(hi)) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 60 && (hi - lo) > 1e-9 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

DiscSearchResult kobayashi_upper_disc(const EggRingDomain& domain, const BasePoint& base,
                                      const DiscSearchOptions& opt) {
    if (opt.search_budget < 100)
        throw std::invalid_argument("kobayashi_upper_disc: search budget must be >= 100");
    const GridSpec g{opt.radial_steps, opt.angular_steps, opt.margin};
    long evals = 0;

    double best_lambda = 0.0;
    double best_mu = 0.0;

    auto consider = [&](double mu) {
        const double lam = max_lambda(domain, base, mu, g, evals);
        if (lam > best_lambda) {
            best_lambda = lam;
            best_mu = mu;
        }
    };

    if (opt.restrict_mu_zero) {
        consider(0.0);
    } else {
        consider(0.0);
        const int n_coarse = std::clamp(opt.search_budget / 120, 8, 24);
        const double mu_min = std::sqrt(base.delta);
        const double mu_max = 1.0;
        const double ratio = std::pow(mu_max / mu_min, 1.0 / (n_coarse - 1));
        for (int i = 0; i < n_coarse; ++i) consider(mu_min * std::pow(ratio, i));
        // two rounds of local refinement around the best mu
        double factor = ratio;
        for (int round = 0; round < 2 && best_mu > 0.0; ++round) {
            const double lo = best_mu / factor;
            const double hi = std::min(mu_max, best_mu * factor);
            for (int i = 0; i < 8; ++i) consider(lo + (hi - lo) * (i + 0.5) / 8.0);
            factor = std::sqrt(factor);
        }
    }

    if (!(best_lambda > 0.0))
        throw OptimizationError("kobayashi_upper_disc: no feasible disc found");

    // shave by the sampling-resolution safety factor, then certify denser
    double lambda = best_lambda * (1.0 - opt.safety_shrink);
    CandidateDisc cand{lambda, Complex{0.0, 0.0}, best_mu, base};
    FeasibilityReport cert;
    int tries = 0;
    for (;;) {
        cand.lambda = lambda;
        cert = disc_feasible(cand, domain, opt.radial_steps * opt.certify_factor,
                             opt.angular_steps * opt.certify_factor, opt.margin);
        if (cert.feasible) break;
        if (++tries > 50)
            throw OptimizationError("kobayashi_upper_disc: dense certification kept failing");
        lambda *= 0.999;
    }

    DiscSearchResult res;
    res.best = cand;
    res.certification = cert;
    res.bound.metric = Metric::kobayashi;
    res.bound.kind = BoundKind::upper;
    res.bound.value = 1.0 / lambda;
    res.bound.method = opt.restrict_mu_zero ? "disc-linear" : "disc-family";
    res.bound.delta = base.delta;
    res.bound.direction = TangentVector2{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    return res;
}

MetricBound kobayashi_lower(const EggRingDomain& domain, const BasePoint& base,
                            const TangentVector2& xi) {
    const MetricBound cara = caratheodory_ring(domain, base, xi);
    const MetricBound sib = sibony_lower(base, domain.m, xi);
    MetricBound b;
    b.metric = Metric::kobayashi;
    b.kind = BoundKind::lower;
    b.value = std::max(cara.value, sib.value);
    b.method = cara.value >= sib.value ? "hull-mobius" : "psh-witness";
    b.delta = base.delta;
    b.direction = xi;
    return b;
}

TangentialReport tangential_crosscheck(const EggRingDomain& domain, const BasePoint& base,
                                       const DiscSearchOptions& opt) {
    // family (p, mu zeta); |z| = p > 1/2 keeps the line clear of the egg,
    // so mu is limited by the outer ball only
    const double two_pi = 2.0 * std::acos(-1.0);
    auto feasible = [&](double mu) {
        for (int i = 0; i < opt.radial_steps; ++i) {
            const double r = kRadiusCap * (i + 1) / opt.radial_steps;
            for (int j = 0; j < opt.angular_steps; ++j) {
                const double th = two_pi * j / opt.angular_steps;
                const Complex zeta = r * Complex{std::cos(th), std::sin(th)};
                const ComplexPoint2 q{Complex{base.p, 0.0}, mu * zeta};
                if (!contains(domain, q, opt.margin)) return false;
            }
        }
        return true;
    };
    double lo = 0.5 * std::sqrt(1.0 - base.p * base.p);
    if (!feasible(lo)) throw OptimizationError("tangential_crosscheck: safe mu infeasible");
    double hi = 2.0;
    for (int it = 0; it < 60 && (hi - lo) > 1e-9 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    // shave for the sampling resolution, as in the main search, so the
    // reported value stays a genuine upper bound
    lo *= 1.0 - opt.safety_shrink;
    TangentialReport rep;
    rep.exact_value = pushforward_norm(base.p, TangentVector2{Complex{0.0, 0.0}, Complex{1.0, 0.0}});
    rep.disc_value = 1.0 / lo;
    rep.rel_deviation = std::abs(rep.disc_value - rep.exact_value) / rep.exact_value;
    return rep;
}

} // namespace metrics
