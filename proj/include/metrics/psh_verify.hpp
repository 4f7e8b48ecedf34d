#pragma once

#include "metrics/geometry.hpp"

#include <functional>
#include <optional>
#include <string>

namespace metrics {

// Complex Hessian d^2/dz_i dzbar_j as a Hermitian 2x2 form.
struct HermitianForm2 {
    double h_zz = 0.0;
    double h_ww = 0.0;
    Complex h_zw{0.0, 0.0};

    // H(xi, conj xi)
    double eval(const TangentVector2& xi) const;
    double min_eigenvalue() const;
    double max_eigenvalue() const;
    bool psd(double tol = 0.0) const { return min_eigenvalue() >= -tol; }
};

// A candidate admissible function: 0 <= U <= 1 on the ring, U(base) = 0,
// log U plurisubharmonic. These properties are certified numerically, not
// assumed. `branch` indexes which smooth piece of a max-patched definition
// is active; certification skips finite differences where it changes.
struct AdmissibleCandidate {
    std::function<double(const ComplexPoint2&)> value;
    std::function<int(const ComplexPoint2&)> branch; // may be empty (no seams)
    ComplexPoint2 base;
    std::string tag;
    std::optional<HermitianForm2> hessian_at_base; // closed form, when known
};

// Wirtinger second derivatives by central finite differences, step h.
HermitianForm2 fd_complex_hessian(const std::function<double(const ComplexPoint2&)>& U,
                                  const ComplexPoint2& q, double h);

// Sub-mean-value test for log U on sampled complex lines through q.
// Throws SamplingError if a sampled disc leaves the ring.
bool submean_test(const std::function<double(const ComplexPoint2&)>& U,
                  const EggRingDomain& domain, const ComplexPoint2& q,
                  double radius, int n_lines, int n_angles);

struct PshCertificate {
    double min_eigenvalue_seen = 0.0;
    ComplexPoint2 worst_point;
    long points_checked = 0;
    long seam_points_skipped = 0;
    bool range_ok = true;
    bool base_value_ok = true;
    bool submean_ok = true;

    bool passed(double eig_tol = 1e-6) const {
        return min_eigenvalue_seen >= -eig_tol && range_ok && base_value_ok && submean_ok;
    }
};

struct CertifyOptions {
    double fd_step = 1e-5;
    double boundary_margin = 1e-3; // level-set slack kept around each sample
    double eig_tol = 1e-6;
    double submean_radius = 1e-4;
    int submean_lines = 4;
    int submean_angles = 16;
};

// True if the candidate's branch index changes within distance `radius` of q
// (probed along the coordinate axes and diagonals).
bool near_seam(const AdmissibleCandidate& candidate, const ComplexPoint2& q, double radius);

// Quasi-random certification over the ring: range and base-value checks
// everywhere, FD Hessian PSD off-seam, sub-mean-value near seams.
// Deterministic for a fixed seed.
PshCertificate certify_admissible(const AdmissibleCandidate& candidate,
                                  const EggRingDomain& domain, long sample_count,
                                  unsigned seed, const CertifyOptions& opt = {});

} // namespace metrics
