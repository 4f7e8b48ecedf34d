#pragma once

#include <cmath>
#include <complex>

namespace metrics {

using Complex = std::complex<double>;

// Point (z, w) in complex 2-space.
struct ComplexPoint2 {
    Complex z{0.0, 0.0};
    Complex w{0.0, 0.0};

    bool finite() const {
        return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
               std::isfinite(w.real()) && std::isfinite(w.imag());
    }
};

// Direction (xi_z, xi_w); the zero vector is allowed.
struct TangentVector2 {
    Complex z{0.0, 0.0};
    Complex w{0.0, 0.0};

    bool is_zero() const { return z == Complex{0.0, 0.0} && w == Complex{0.0, 0.0}; }
    double norm_sq() const { return std::norm(z) + std::norm(w); }
    double norm() const { return std::sqrt(norm_sq()); }
    bool finite() const {
        return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
               std::isfinite(w.real()) && std::isfinite(w.imag());
    }
};

inline TangentVector2 operator*(double t, const TangentVector2& v) {
    return {t * v.z, t * v.w};
}
inline TangentVector2 operator+(const TangentVector2& a, const TangentVector2& b) {
    return {a.z + b.z, a.w + b.w};
}

// Unit ball minus the inner egg {|z|^2 + |w|^m <= inner_level}.
// Theorem-2 style outer boundary |z|^2 + |w|^m = 1 is kept as a variant flag
// for future extension; all computations here use the ball outside.
struct EggRingDomain {
    int m = 2;
    double inner_level = 0.25;
    double outer_radius = 1.0;
    bool ball_outside = true;

    void validate() const;
};

// P_delta = (1/2 + delta, 0) at boundary distance delta from the inner egg.
struct BasePoint {
    double delta = 0.0;
    double p = 0.0;
    ComplexPoint2 point;

    static BasePoint at(double delta);
};

// |z|^2 + |w|^m
double egg_level(const EggRingDomain& domain, const ComplexPoint2& q);

// q in the ring with the given slack on both defining functions:
// egg_level(q) > 1/4 + margin and |z|^2 + |w|^2 < 1 - margin.
bool contains(const EggRingDomain& domain, const ComplexPoint2& q, double margin = 0.0);

// Euclidean length of the ball Mobius pushforward at (p, 0):
// sqrt(|xi_z|^2/(1-p^2)^2 + |xi_w|^2/(1-p^2)).
// Equals both the Caratheodory and Kobayashi metric of the ball at (p, 0).
double pushforward_norm(double p, const TangentVector2& xi);

struct LineSearchOptions {
    int coarse_steps = 256;
    int refine_rounds = 5;
    int refine_steps = 64;
    double margin = 1e-9;
};

// inf over zeta in C of egg_level(P + zeta*xi), minimized over the box
// |Re zeta|, |Im zeta| <= 2/|xi| (the inner egg sits inside |zeta*xi| <= 2).
double line_min_level(const EggRingDomain& domain, const ComplexPoint2& P,
                      const TangentVector2& xi, const LineSearchOptions& opt = {});

// True iff the complex line P + zeta*xi stays clear of the inner egg.
bool line_misses_inner(const EggRingDomain& domain, const ComplexPoint2& P,
                       const TangentVector2& xi, const LineSearchOptions& opt = {});

} // namespace metrics
