#include "metrics/sibony.hpp"

#include "metrics/errors.hpp"
#include "metrics/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace metrics {

SibonyWitness SibonyWitness::make(double delta, int m) {
    SibonyWitness w;
    w.delta = delta;
    w.m = m;
    w.big_l_prime = std::log(w.big_l);
    w.epsilon = 0.5 * m * std::log(0.96) / std::log(delta);
    w.validate();
    return w;
}

void SibonyWitness::validate() const {
    if (m < 2) throw std::invalid_argument("SibonyWitness: m must be >= 2");
    if (!(delta >= 1e-6 && delta <= 0.2))
        throw std::invalid_argument("SibonyWitness: delta must lie in [1e-6, 0.2]");
    if (!(c > 0.0 && c <= 1.0 / 3.0))
        throw std::invalid_argument("SibonyWitness: c must lie in (0, 1/3]");
    if (!(big_l > 1.0) || std::abs(big_l_prime - std::log(big_l)) > 1e-12)
        throw std::invalid_argument("SibonyWitness: L and L' must satisfy L' = log L");
    const double eps_max = m * std::log(0.96) / std::log(delta);
    if (!(epsilon > 0.0 && epsilon < eps_max))
        throw std::invalid_argument("SibonyWitness: epsilon out of admissible range");
}

double SibonyWitness::patch_radius() const {
    return std::pow(c, 2.0 / m) * std::pow(delta, 1.0 / m);
}

double SibonyWitness::f(Complex z) const {
    const Complex num = z - p();
    const Complex den = num + 2.0 * delta;
    if (std::abs(den) <= 1e-9 * delta)
        throw std::domain_error("SibonyWitness::f: pole at z = p - 2 delta");
    return std::pow(delta, 2.0 / m) * std::norm(num / den);
}

double SibonyWitness::value(const ComplexPoint2& q) const {
    const double aw2 = std::norm(q.w);
    const double patch = big_l * std::pow(aw2, 1.0 + 0.5 * epsilon); // L |w|^{2+eps}
    const double s = scale();
    if (std::sqrt(aw2) >= patch_radius()) return s * patch;
    return s * std::max(f(q.z) + aw2, patch);
}

int SibonyWitness::branch(const ComplexPoint2& q) const {
    const double aw2 = std::norm(q.w);
    if (std::sqrt(aw2) >= patch_radius()) return 1;
    const double patch = big_l * std::pow(aw2, 1.0 + 0.5 * epsilon);
    return patch >= f(q.z) + aw2 ? 1 : 0;
}

HermitianForm2 SibonyWitness::hessian_at_base() const {
    // near P_delta: U = e^{-L'}(f(z) + |w|^2), dz dzbar f(p) = delta^{2/m}/(4 delta^2)
    HermitianForm2 H;
    const double s = scale();
    H.h_zz = s * std::pow(delta, 2.0 / m - 2.0) / 4.0;
    H.h_ww = s;
    H.h_zw = Complex{0.0, 0.0};
    return H;
}

AdmissibleCandidate SibonyWitness::candidate() const {
    AdmissibleCandidate cand;
    SibonyWitness w = *this;
    cand.value = [w](const ComplexPoint2& q) { return w.value(q); };
    cand.branch = [w](const ComplexPoint2& q) { return w.branch(q); };
    cand.base = ComplexPoint2{Complex{p(), 0.0}, Complex{0.0, 0.0}};
    cand.tag = "psh-witness";
    cand.hessian_at_base = hessian_at_base();
    return cand;
}

double witness_U(const ComplexPoint2& q, const SibonyWitness& w, const EggRingDomain& domain) {
    if (!contains(domain, q, 0.0))
        throw std::domain_error("witness_U: point outside the ring");
    return w.value(q);
}

MetricBound sibony_lower(const BasePoint& base, int m, const TangentVector2& xi) {
    if (m < 2) throw std::invalid_argument("sibony_lower: m must be >= 2");
    const double s = 1.0 / 200.0; // e^{-L'} with L' = log 200
    const double d = base.delta;
    const double h = s * (std::norm(xi.z) * std::pow(d, 2.0 / m - 2.0) / 4.0 + std::norm(xi.w));
    MetricBound b;
    b.metric = Metric::sibony;
    b.kind = BoundKind::lower;
    b.value = std::sqrt(h);
    b.method = "psh-witness";
    b.delta = d;
    b.direction = xi;
    return b;
}

double beta_threshold(double delta, int m) {
    if (!(delta > 0.0 && delta < 0.25))
        throw std::invalid_argument("beta_threshold: delta must lie in (0, 1/4)");
    if (m < 2) throw std::invalid_argument("beta_threshold: m must be >= 2");
    const double dm = static_cast<double>(m);
    const double km = std::pow(dm, -1.0 / (dm - 1.0)) - std::pow(dm, -dm / (dm - 1.0));
    return std::pow(km / delta, (dm - 1.0) / dm);
}

MetricBound sibony_upper(const BasePoint& base, int m) {
    const double beta = beta_threshold(base.delta, m);
    const double s = 1.0 - base.p * base.p;
    MetricBound b;
    b.metric = Metric::sibony;
    b.kind = BoundKind::upper;
    b.value = (2.0 / s) * std::sqrt(0.25 + s * beta * beta);
    b.method = "beta-decomposition";
    b.delta = base.delta;
    b.direction = TangentVector2{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    return b;
}

bool subadditive_bound(const HermitianForm2& H, const TangentVector2& xi1,
                       const TangentVector2& xi2) {
    const double tol = 1e-12 * std::max(1.0, H.max_eigenvalue());
    if (H.min_eigenvalue() < -tol)
        throw InvalidWitnessError("subadditive_bound: Hessian is not positive semidefinite");
    auto root = [&](const TangentVector2& v) { return std::sqrt(std::max(0.0, H.eval(v))); };
    return root(xi1 + xi2) <= root(xi1) + root(xi2) + 1e-12;
}

AdmissibleCandidate localize_admissible(const AdmissibleCandidate& u, const ComplexPoint2& q,
                                        double r, double eps_loc, double l_loc) {
    if (!(r > 0.0)) throw std::invalid_argument("localize_admissible: r must be positive");
    if (!(eps_loc > 0.0 && eps_loc * 4.0 <= 0.5))
        throw std::invalid_argument("localize_admissible: need 0 < eps_loc <= 1/8");
    if (!u.value) throw std::invalid_argument("localize_admissible: empty candidate");

    const double scale = std::exp(-l_loc);
    const double r4 = r * r * r * r;
    auto dist_sq = [q](const ComplexPoint2& x) {
        return std::norm(x.z - q.z) + std::norm(x.w - q.w);
    };
    auto far_term = [r4, dist_sq](const ComplexPoint2& x) {
        const double d2 = dist_sq(x);
        return 2.0 * d2 * d2 / r4;
    };

    // seam consistency at the patch sphere: the near-side max must already
    // equal the far branch there, otherwise the pieces do not glue
    {
        HaltonSampler halton(7);
        int checked = 0;
        for (int k = 0; k < 64 && checked < 16; ++k) {
            double s[4];
            halton.next(s);
            double d[4] = {2.0 * s[0] - 1.0, 2.0 * s[1] - 1.0, 2.0 * s[2] - 1.0, 2.0 * s[3] - 1.0};
            const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
            if (n < 1e-3) continue;
            const ComplexPoint2 x{q.z + (r / n) * Complex{d[0], d[1]},
                                  q.w + (r / n) * Complex{d[2], d[3]}};
            double inner;
            try {
                inner = u.value(x) + eps_loc * dist_sq(x);
            } catch (...) {
                continue; // sphere point outside the candidate's region
            }
            const double far = far_term(x); // = 2 at the sphere
            if (std::max(inner, far) > far + 1e-9 * std::max(1.0, far))
                throw ConstructionError("localize_admissible: near branch exceeds far branch at the seam");
            ++checked;
        }
    }

    AdmissibleCandidate out;
    auto inner_value = u.value;
    auto inner_branch = u.branch;
    const double r2 = r * r;
    out.value = [inner_value, q, r2, eps_loc, scale, far_term, dist_sq](const ComplexPoint2& x) {
        const double d2 = dist_sq(x);
        const double far = far_term(x);
        if (d2 >= r2) return scale * far;
        return scale * std::max(inner_value(x) + eps_loc * d2, far);
    };
    out.branch = [inner_value, inner_branch, q, r2, eps_loc, far_term, dist_sq](const ComplexPoint2& x) {
        const double d2 = dist_sq(x);
        if (d2 >= r2) return 2;
        const double far = far_term(x);
        if (far >= inner_value(x) + eps_loc * d2) return 2;
        return inner_branch ? inner_branch(x) : 0;
    };
    out.base = q;
    out.tag = u.tag + "+localized";
    if (u.hessian_at_base) {
        HermitianForm2 H = *u.hessian_at_base;
        H.h_zz = scale * (H.h_zz + eps_loc);
        H.h_ww = scale * (H.h_ww + eps_loc);
        H.h_zw = scale * H.h_zw;
        out.hessian_at_base = H;
    }
    return out;
}

} // namespace metrics
