// End-to-end acceptance checks for the metrics library. Each criterion
// prints one PASS/FAIL line; the exit code is the number of failures.

#include "metrics/caratheodory.hpp"
#include "metrics/errors.hpp"
#include "metrics/kobayashi.hpp"
#include "metrics/parallel.hpp"
#include "metrics/psh_verify.hpp"
#include "metrics/sampling.hpp"
#include "metrics/sibony.hpp"
#include "metrics/sweep.hpp"
#include "test_helpers.hpp"

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace metrics;

namespace {

const TangentVector2 kNu{Complex{1, 0}, Complex{0, 0}};
const TangentVector2 kTau{Complex{0, 0}, Complex{1, 0}};

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            if (!ok) detail << "; ";
            detail << msg;
            ok = false;
        }
    }
    void note(const std::string& msg) {
        if (ok) {
            if (detail.tellp() > 0) detail << ", ";
            detail << msg;
        }
    }
};

int run_criterion(int n, const char* title, const std::function<void(Checker&)>& body) {
    Checker c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%s)\n", c.ok ? "PASS" : "FAIL", n, title,
                c.detail.str().c_str());
    std::fflush(stdout);
    return c.ok ? 0 : 1;
}

std::string fmt(double v) { return format_double(v); }

} // namespace

int main() {
    int failures = 0;

    // shared m = 2 sweep over two decades, used by criteria 1, 5 and 6
    SweepConfig cfg2;
    cfg2.m = 2;
    cfg2.delta_min = 1e-5;
    cfg2.delta_max = 1e-2;
    cfg2.steps = 10;
    const auto sweep2 = run_sweep(cfg2);

    // m = 3 Kobayashi sweep for criterion 5
    SweepConfig cfg3 = cfg2;
    cfg3.m = 3;
    cfg3.steps = 8;
    cfg3.metrics = {Metric::kobayashi};
    const auto sweep3 = run_sweep(cfg3);

    const EggRingDomain ring2{}; // m = 2

    failures += run_criterion(1, "Caratheodory is the exact ball value and stays flat", [&](Checker& c) {
        for (double delta : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const double p = 0.5 + delta;
            const double expect = 1.0 / (1.0 - p * p);
            const double got = caratheodory_ring(ring2, BasePoint::at(delta), kNu).value;
            c.require(std::abs(got - expect) <= 1e-12 * expect,
                      "value at delta=" + fmt(delta) + " is " + fmt(got) + ", want " + fmt(expect));
        }
        const auto fit = fit_exponent(sweep2, Metric::caratheodory, BoundKind::exact, 2);
        c.require(std::abs(fit.slope) < 0.01, "slope " + fmt(fit.slope) + " not below 0.01");
        c.note("slope " + fmt(fit.slope));
    });

    failures += run_criterion(2, "Sibony lower bound blows up at rate -(1-1/m)", [&](Checker& c) {
        for (int m : {2, 3, 4}) {
            std::vector<double> lx, ly;
            for (double d : test_helpers::log_grid(1e-5, 1e-2, 32)) {
                lx.push_back(std::log(d));
                ly.push_back(std::log(sibony_lower(BasePoint::at(d), m, kNu).value));
            }
            const double slope = test_helpers::ols_slope(lx, ly);
            c.require(std::abs(slope + (1.0 - 1.0 / m)) < 1e-9,
                      "m=" + std::to_string(m) + " slope " + fmt(slope));
        }
        const double spot = sibony_lower(BasePoint::at(1e-2), 2, kNu).value;
        const double closed = std::sqrt(1.0 / (800.0 * std::pow(1e-2, 2.0 - 2.0 / 2)));
        c.require(std::abs(spot - closed) <= 1e-12 * closed, "spot value " + fmt(spot));
        c.require(std::abs(spot - 0.3535534) < 1e-6, "spot value " + fmt(spot) + " != 0.3535534");
        c.note("spot " + fmt(spot));
    });

    failures += run_criterion(3, "witness candidates certify as admissible", [&](Checker& c) {
        struct Combo { int m; double delta; };
        std::vector<Combo> combos;
        for (int m : {2, 3, 4})
            for (double d : {1e-2, 1e-3, 1e-4}) combos.push_back({m, d});
        std::vector<std::string> issues(combos.size());
        parallel_for(static_cast<long>(combos.size()), [&](long i) {
            const auto [m, delta] = combos[i];
            EggRingDomain domain;
            domain.m = m;
            const auto w = SibonyWitness::make(delta, m);
            std::ostringstream bad;
            const auto cert = certify_admissible(w.candidate(), domain, 10000, 1);
            if (!cert.passed())
                bad << "certificate failed (min eig " << cert.min_eigenvalue_seen << ") ";
            // the Mobius factor stays below 5 delta^{2/m} on the annulus slice
            double worst_f = 0.0;
            HaltonSampler halton(5);
            int kept = 0;
            while (kept < 10000) {
                double u[4];
                halton.next(u);
                const Complex z{2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0};
                const double r2 = std::norm(z);
                if (!(r2 > 0.25 - w.c * w.c * delta && r2 < 1.0)) continue;
                ++kept;
                worst_f = std::max(worst_f, w.f(z));
            }
            if (worst_f > 5.0 * std::pow(delta, 2.0 / m))
                bad << "max f " << worst_f << " exceeds 5 delta^{2/m} ";
            // on the patch ring the L|w|^{2+eps} branch must serve the max
            const double wlo = std::pow(delta / 16.0, 1.0 / m);
            const double whi = std::pow(delta / 9.0, 1.0 / m);
            HaltonSampler ring_samples(6);
            kept = 0;
            while (kept < 10000) {
                double u[4];
                ring_samples.next(u);
                const Complex z{2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0};
                const double aw = wlo + (whi - wlo) * u[2];
                const double ph = 2.0 * std::acos(-1.0) * u[3];
                const ComplexPoint2 q{z, aw * Complex{std::cos(ph), std::sin(ph)}};
                if (!contains(domain, q, 0.0)) continue;
                ++kept;
                if (w.branch(q) != 1) {
                    bad << "patch ring left the |w|^{2+eps} branch ";
                    break;
                }
            }
            issues[i] = bad.str();
        });
        for (std::size_t i = 0; i < combos.size(); ++i)
            c.require(issues[i].empty(), "m=" + std::to_string(combos[i].m) + " delta=" +
                                             fmt(combos[i].delta) + ": " + issues[i]);
        c.note("9 (m, delta) combinations, 10^4 samples each");
    });

    failures += run_criterion(4, "Sibony upper bound via the beta decomposition", [&](Checker& c) {
        const double beta = beta_threshold(1e-2, 2);
        c.require(std::abs(beta - 5.0) <= 1e-12 * 5.0, "beta(1e-2, 2) = " + fmt(beta));
        const double geo =
            test_helpers::geometric_threshold(ring2, BasePoint::at(1e-2), beta);
        c.require(beta >= geo - 1e-9,
                  "beta " + fmt(beta) + " below geometric threshold " + fmt(geo));
        for (int m : {2, 3, 4}) {
            std::vector<double> lx, ly;
            double worst_ratio = 0.0;
            for (double d : test_helpers::log_grid(1e-5, 1e-2, 16)) {
                const auto base = BasePoint::at(d);
                const double up = sibony_upper(base, m).value;
                const double lo = sibony_lower(base, m, kNu).value;
                c.require(up >= lo, "upper below lower at m=" + std::to_string(m) +
                                        " delta=" + fmt(d));
                worst_ratio = std::max(worst_ratio, up / lo);
                lx.push_back(std::log(d));
                ly.push_back(std::log(up));
            }
            const double slope = test_helpers::ols_slope(lx, ly);
            c.require(std::abs(slope + (1.0 - 1.0 / m)) <= 0.02,
                      "m=" + std::to_string(m) + " upper slope " + fmt(slope));
            c.require(worst_ratio < 100.0,
                      "m=" + std::to_string(m) + " upper/lower ratio " + fmt(worst_ratio));
        }
    });

    failures += run_criterion(5, "Kobayashi disc-search rate -(1-1/(2m))", [&](Checker& c) {
        const auto fit2 = fit_exponent(sweep2, Metric::kobayashi, BoundKind::upper, 2);
        c.require(fit2.slope >= -0.80 && fit2.slope <= -0.70,
                  "m=2 slope " + fmt(fit2.slope) + " outside [-0.80, -0.70]");
        const auto fit3 = fit_exponent(sweep3, Metric::kobayashi, BoundKind::upper, 3);
        c.require(fit3.slope >= -0.89 && fit3.slope <= -0.78,
                  "m=3 slope " + fmt(fit3.slope) + " outside [-0.89, -0.78]");
        for (double delta : {1e-2, 1e-3}) {
            DiscSearchOptions opt;
            opt.restrict_mu_zero = true;
            const auto r = kobayashi_upper_disc(ring2, BasePoint::at(delta), opt);
            c.require(r.best.lambda >= 0.999 * delta && r.best.lambda <= delta,
                      "restricted lambda* " + fmt(r.best.lambda) + " at delta=" + fmt(delta));
        }
        c.note("slopes " + fmt(fit2.slope) + " (m=2), " + fmt(fit3.slope) + " (m=3)");
    });

    failures += run_criterion(6, "metric ordering holds and the bounds cross over", [&](Checker& c) {
        for (const auto* sweep : {&sweep2, &sweep3}) {
            for (const auto& v : ordering_violations(*sweep)) c.require(false, v);
            for (const auto& r : *sweep) c.require(r.error.empty(), "record error: " + r.error);
        }
        // Theorem-1-style separation: Sibony grows past the bounded
        // Caratheodory value somewhere inside the swept range
        bool sibony_below = false, sibony_above = false;
        double crossover = 0.0;
        for (double d : cfg2.delta_grid()) {
            const double cara = caratheodory_ring(ring2, BasePoint::at(d), kNu).value;
            const double slo = sibony_lower(BasePoint::at(d), 2, kNu).value;
            if (slo < cara) sibony_below = true;
            if (slo > cara && !sibony_above) {
                sibony_above = true;
            }
            if (slo > cara) crossover = std::max(crossover, d);
        }
        c.require(sibony_below && sibony_above, "no crossover inside [1e-5, 1e-2]");
        c.note("sibony lower overtakes caratheodory below delta ~ " + fmt(crossover));
    });

    failures += run_criterion(7, "sqrt-Hessian subadditivity", [&](Checker& c) {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            // Gram matrix of two random vectors is PSD by construction
            const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)};
            const Complex e{u(rng), u(rng)}, f{u(rng), u(rng)};
            const HermitianForm2 H{std::norm(a) + std::norm(b), std::norm(e) + std::norm(f),
                                   a * std::conj(e) + b * std::conj(f)};
            const TangentVector2 x1{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
            const TangentVector2 x2{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
            if (!subadditive_bound(H, x1, x2)) {
                c.require(false, "violation at trial " + std::to_string(i));
                break;
            }
        }
        const auto w = SibonyWitness::make(1e-2, 2);
        const double v = beta_threshold(1e-2, 2) + 1.0;
        const TangentVector2 up{Complex{0.5, 0}, Complex{v, 0}};
        const TangentVector2 dn{Complex{0.5, 0}, Complex{-v, 0}};
        c.require(subadditive_bound(w.hessian_at_base(), up, dn),
                  "witness decomposition (1/2, v) + (1/2, -v) fails");
        c.note("10^3 random PSD forms plus the witness split");
    });

    failures += run_criterion(8, "localization keeps e^{-L} of the Hessian", [&](Checker& c) {
        const auto w = SibonyWitness::make(1e-2, 2);
        const ComplexPoint2 q = w.candidate().base;
        const double r = 0.05, eps_loc = 1e-3, l_loc = 16.0;
        const auto loc = localize_admissible(w.candidate(), q, r, eps_loc, l_loc);
        const auto cert = certify_admissible(loc, ring2, 10000, 1);
        c.require(cert.passed(), "localized candidate failed certification (min eig " +
                                     fmt(cert.min_eigenvalue_seen) + ")");
        c.require(loc.hessian_at_base.has_value(), "localized Hessian missing");
        if (loc.hessian_at_base) {
            const double scale = std::exp(-l_loc);
            const double orig = w.hessian_at_base().eval(kNu);
            const double got = loc.hessian_at_base->eval(kNu);
            c.require(got >= scale * orig * (1.0 - 1e-6),
                      "Hessian " + fmt(got) + " below e^{-L} * " + fmt(orig));
            const double expect = scale * (orig + eps_loc);
            c.require(std::abs(got - expect) <= 1e-6 * expect,
                      "Hessian " + fmt(got) + ", closed form " + fmt(expect));
        }
    });

    failures += run_criterion(9, "tangential disc search matches the closed ball value", [&](Checker& c) {
        for (double delta : {1e-1, 1e-2}) {
            const auto rep = tangential_crosscheck(ring2, BasePoint::at(delta));
            c.require(rep.rel_deviation < 0.05,
                      "deviation " + fmt(rep.rel_deviation) + " at delta=" + fmt(delta));
        }
        const auto base = BasePoint::at(1e-1);
        const auto lv = lemma4_value(ring2, base, kTau);
        c.require(lv.value == pushforward_norm(base.p, kTau),
                  "line value differs from the pushforward norm");
    });

    std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
