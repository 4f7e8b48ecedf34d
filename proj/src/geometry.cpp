#include "metrics/geometry.hpp"

#include "metrics/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace metrics {

void EggRingDomain::validate() const {
    if (m < 2) throw std::invalid_argument("EggRingDomain: m must be >= 2");
    if (!(inner_level > 0.0 && inner_level < 1.0))
        throw std::invalid_argument("EggRingDomain: inner_level must lie in (0, 1)");
    if (!(outer_radius > 0.0))
        throw std::invalid_argument("EggRingDomain: outer_radius must be positive");
}

BasePoint BasePoint::at(double delta) {
    if (!(delta > 0.0 && delta < 0.25))
        throw std::invalid_argument("BasePoint: delta must lie in (0, 1/4)");
    BasePoint b;
    b.delta = delta;
    b.p = 0.5 + delta;
    b.point = ComplexPoint2{Complex{b.p, 0.0}, Complex{0.0, 0.0}};
    return b;
}

double egg_level(const EggRingDomain& domain, const ComplexPoint2& q) {
    const double az = std::abs(q.z);
    const double aw = std::abs(q.w);
    return az * az + std::pow(aw, static_cast<double>(domain.m));
}

bool contains(const EggRingDomain& domain, const ComplexPoint2& q, double margin) {
    if (margin < 0.0) throw std::invalid_argument("contains: margin must be >= 0");
    const double ball = std::norm(q.z) + std::norm(q.w);
    const double r2 = domain.outer_radius * domain.outer_radius;
    return egg_level(domain, q) > domain.inner_level + margin && ball < r2 - margin;
}

double pushforward_norm(double p, const TangentVector2& xi) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("pushforward_norm: p must lie in (0, 1)");
    const double s = 1.0 - p * p;
    return std::sqrt(std::norm(xi.z) / (s * s) + std::norm(xi.w) / s);
}

double line_min_level(const EggRingDomain& domain, const ComplexPoint2& P,
                      const TangentVector2& xi, const LineSearchOptions& opt) {
    if (xi.is_zero())
        throw std::invalid_argument("line_min_level: degenerate direction xi = 0");

    const double R = 2.0 / xi.norm();

    double best = egg_level(domain, P);
    double bx = 0.0, by = 0.0;

    auto level_at = [&](double x, double y) {
        const Complex zeta{x, y};
        return egg_level(domain, ComplexPoint2{P.z + zeta * xi.z, P.w + zeta * xi.w});
    };

    auto scan = [&](double cx, double cy, double half, int steps) {
        const double step = 2.0 * half / steps;
        for (int i = 0; i <= steps; ++i) {
            const double x = cx - half + i * step;
            for (int j = 0; j <= steps; ++j) {
                const double y = cy - half + j * step;
                const double v = level_at(x, y);
                if (v < best) {
                    best = v;
                    bx = x;
                    by = y;
                }
            }
        }
        return step;
    };

    double cell = scan(0.0, 0.0, R, opt.coarse_steps);
    for (int round = 0; round < opt.refine_rounds; ++round) {
        // re-scan a window of +-1.5 cells around the current best
        cell = scan(bx, by, 1.5 * cell, opt.refine_steps);
    }
    return best;
}

bool line_misses_inner(const EggRingDomain& domain, const ComplexPoint2& P,
                       const TangentVector2& xi, const LineSearchOptions& opt) {
    return line_min_level(domain, P, xi, opt) > domain.inner_level + opt.margin;
}

} // namespace metrics
