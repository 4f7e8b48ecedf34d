#include "metrics/psh_verify.hpp"

#include "metrics/errors.hpp"
#include "metrics/parallel.hpp"
#include "metrics/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace metrics {

double HermitianForm2::eval(const TangentVector2& xi) const {
    return h_zz * std::norm(xi.z) + h_ww * std::norm(xi.w) +
           2.0 * std::real(h_zw * xi.z * std::conj(xi.w));
}

double HermitianForm2::min_eigenvalue() const {
    const double tr = h_zz + h_ww;
    const double disc = std::sqrt((h_zz - h_ww) * (h_zz - h_ww) + 4.0 * std::norm(h_zw));
    return 0.5 * (tr - disc);
}

double HermitianForm2::max_eigenvalue() const {
    const double tr = h_zz + h_ww;
    const double disc = std::sqrt((h_zz - h_ww) * (h_zz - h_ww) + 4.0 * std::norm(h_zw));
    return 0.5 * (tr + disc);
}

namespace {

ComplexPoint2 shifted(const ComplexPoint2& q, double dx1, double dy1, double dx2, double dy2) {
    return {q.z + Complex{dx1, dy1}, q.w + Complex{dx2, dy2}};
}

} // namespace

HermitianForm2 fd_complex_hessian(const std::function<double(const ComplexPoint2&)>& U,
                                  const ComplexPoint2& q, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_complex_hessian: step must be positive");
    auto at = [&](double a, double b, double c, double d) {
        const double v = U(shifted(q, a, b, c, d));
        if (!std::isfinite(v))
            throw SamplingError("fd_complex_hessian: stencil hit a non-finite value");
        return v;
    };
    const double u0 = at(0, 0, 0, 0);
    const double inv4h2 = 1.0 / (4.0 * h * h);

    HermitianForm2 H;
    // dz dzbar = (u_xx + u_yy)/4
    H.h_zz = (at(h, 0, 0, 0) + at(-h, 0, 0, 0) + at(0, h, 0, 0) + at(0, -h, 0, 0) - 4.0 * u0) * inv4h2;
    H.h_ww = (at(0, 0, h, 0) + at(0, 0, -h, 0) + at(0, 0, 0, h) + at(0, 0, 0, -h) - 4.0 * u0) * inv4h2;

    // dz dwbar = 1/4 [ D_{x1 x2} + D_{y1 y2} + i (D_{x1 y2} - D_{y1 x2}) ]
    auto cross = [&](int a, int b) {
        // a, b select real coordinates: 0 = x1, 1 = y1, 2 = x2, 3 = y2
        auto off = [&](int c, double s, double d[4]) { d[c] += s; };
        double dp[4] = {0, 0, 0, 0}, dm[4] = {0, 0, 0, 0}, mp[4] = {0, 0, 0, 0}, mm[4] = {0, 0, 0, 0};
        off(a, h, dp); off(b, h, dp);
        off(a, h, dm); off(b, -h, dm);
        off(a, -h, mp); off(b, h, mp);
        off(a, -h, mm); off(b, -h, mm);
        return (at(dp[0], dp[1], dp[2], dp[3]) - at(dm[0], dm[1], dm[2], dm[3]) -
                at(mp[0], mp[1], mp[2], mp[3]) + at(mm[0], mm[1], mm[2], mm[3])) * inv4h2;
    };
    const double dx1x2 = cross(0, 2);
    const double dy1y2 = cross(1, 3);
    const double dx1y2 = cross(0, 3);
    const double dy1x2 = cross(1, 2);
    H.h_zw = 0.25 * Complex{dx1x2 + dy1y2, dx1y2 - dy1x2};
    return H;
}

bool submean_test(const std::function<double(const ComplexPoint2&)>& U,
                  const EggRingDomain& domain, const ComplexPoint2& q,
                  double radius, int n_lines, int n_angles) {
    if (!(radius > 0.0) || n_lines < 1 || n_angles < 2)
        throw std::invalid_argument("submean_test: bad parameters");
    const double u0 = U(q);
    if (u0 == 0.0) return true; // log U(q) = -inf: vacuous
    const double log_u0 = std::log(u0);

    const double pi = std::acos(-1.0);
    for (int l = 0; l < n_lines; ++l) {
        // deterministic spread of complex directions over both coordinates
        const double a = pi * (l + 0.5) / n_lines;
        const double ph = 2.0 * pi * l / n_lines;
        const TangentVector2 eta{Complex{std::cos(a), 0.0},
                                 Complex{std::sin(a) * std::cos(ph), std::sin(a) * std::sin(ph)}};
        double acc = 0.0;
        for (int j = 0; j < n_angles; ++j) {
            const double th = 2.0 * pi * j / n_angles;
            const Complex zeta = radius * Complex{std::cos(th), std::sin(th)};
            const ComplexPoint2 s{q.z + zeta * eta.z, q.w + zeta * eta.w};
            if (!contains(domain, s, 0.0))
                throw SamplingError("submean_test: sampled disc leaves the ring");
            const double v = U(s);
            acc += v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
        }
        if (!(log_u0 <= acc / n_angles + 1e-9)) return false;
    }
    return true;
}

bool near_seam(const AdmissibleCandidate& candidate, const ComplexPoint2& q, double radius) {
    if (!candidate.branch) return false;
    const int b0 = candidate.branch(q);
    static const double dirs[8][4] = {
        {1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, -1, 0, 0},
        {0, 0, 1, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}};
    for (const auto& d : dirs) {
        const ComplexPoint2 s = shifted(q, radius * d[0], radius * d[1], radius * d[2], radius * d[3]);
        if (candidate.branch(s) != b0) return true;
    }
    // diagonal probes at the same radius
    const double r = radius / std::sqrt(2.0);
    static const double diag[4][4] = {{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, -1}};
    for (const auto& d : diag) {
        const ComplexPoint2 s = shifted(q, r * d[0], r * d[1], r * d[2], r * d[3]);
        if (candidate.branch(s) != b0) return true;
    }
    return false;
}

PshCertificate certify_admissible(const AdmissibleCandidate& candidate,
                                  const EggRingDomain& domain, long sample_count,
                                  unsigned seed, const CertifyOptions& opt) {
    if (sample_count < 10000)
        throw std::invalid_argument("certify_admissible: need at least 10^4 samples");
    if (!candidate.value) throw std::invalid_argument("certify_admissible: empty evaluator");

    // draw quasi-random in-domain points first, rejecting against contains
    std::vector<ComplexPoint2> pts;
    pts.reserve(sample_count);
    HaltonSampler halton(seed);
    const double R = domain.outer_radius;
    long draws = 0;
    while (static_cast<long>(pts.size()) < sample_count) {
        double u[4];
        halton.next(u);
        ++draws;
        const ComplexPoint2 q{Complex{R * (2.0 * u[0] - 1.0), R * (2.0 * u[1] - 1.0)},
                              Complex{R * (2.0 * u[2] - 1.0), R * (2.0 * u[3] - 1.0)}};
        if (contains(domain, q, opt.boundary_margin)) pts.push_back(q);
        if (draws >= 100 * sample_count)
            throw SamplingError("certify_admissible: rejection efficiency below 1%");
    }

    PshCertificate cert;
    cert.points_checked = sample_count;
    cert.min_eigenvalue_seen = std::numeric_limits<double>::infinity();

    const double base_val = candidate.value(candidate.base);
    cert.base_value_ok = std::abs(base_val) <= 1e-12;

    struct Partial {
        double min_eig = std::numeric_limits<double>::infinity();
        ComplexPoint2 worst;
        long seams = 0;
        bool range_ok = true;
        bool submean_ok = true;
    };
    const int workers = max_threads();
    const long chunk = (sample_count + workers - 1) / workers;
    std::vector<Partial> parts(workers);

    parallel_for(workers, [&](long t) {
        Partial& part = parts[t];
        const long lo = t * chunk;
        const long hi = std::min<long>(sample_count, lo + chunk);
        for (long i = lo; i < hi; ++i) {
            const ComplexPoint2& q = pts[i];
            const double v = candidate.value(q);
            if (!(v >= 0.0 && v <= 1.0 + 1e-12)) part.range_ok = false;
            if (near_seam(candidate, q, 10.0 * opt.fd_step)) {
                ++part.seams;
                if (!submean_test(candidate.value, domain, q, opt.submean_radius,
                                  opt.submean_lines, opt.submean_angles))
                    part.submean_ok = false;
                continue;
            }
            const HermitianForm2 H = fd_complex_hessian(candidate.value, q, opt.fd_step);
            const double eig = H.min_eigenvalue();
            if (eig < part.min_eig) {
                part.min_eig = eig;
                part.worst = q;
            }
        }
    });

    for (const auto& part : parts) {
        cert.seam_points_skipped += part.seams;
        cert.range_ok = cert.range_ok && part.range_ok;
        cert.submean_ok = cert.submean_ok && part.submean_ok;
        if (part.min_eig < cert.min_eigenvalue_seen) {
            cert.min_eigenvalue_seen = part.min_eig;
            cert.worst_point = part.worst;
        }
    }
    if (!std::isfinite(cert.min_eigenvalue_seen)) cert.min_eigenvalue_seen = 0.0;
    return cert;
}

} // namespace metrics
