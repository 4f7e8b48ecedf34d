#include "metrics/sweep.hpp"

#include "metrics/caratheodory.hpp"
#include "metrics/errors.hpp"
#include "metrics/parallel.hpp"
#include "metrics/sibony.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace metrics {

void SweepConfig::validate() const {
    if (m < 2) throw std::invalid_argument("sweep: m must be >= 2");
    if (!(delta_min >= 1e-6 && delta_min < delta_max && delta_max <= 0.2))
        throw std::invalid_argument("sweep: need 1e-6 <= delta_min < delta_max <= 0.2");
    if (steps != 0 && steps < 4) throw std::invalid_argument("sweep: need at least 4 steps");
    if (metrics.empty()) throw std::invalid_argument("sweep: no metrics requested");
    if (directions.empty()) throw std::invalid_argument("sweep: no directions requested");
    for (const auto& d : directions)
        if (d.is_zero() || !d.finite())
            throw std::invalid_argument("sweep: directions must be finite and nonzero");
}

int SweepConfig::effective_steps() const {
    if (steps > 0) return steps;
    const double decades = std::log10(delta_max / delta_min);
    return std::max(4, static_cast<int>(std::lround(16.0 * decades)));
}

std::vector<double> SweepConfig::delta_grid() const {
    const int n = effective_steps();
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = delta_min;
        return grid;
    }
    const double lmin = std::log(delta_min);
    const double lmax = std::log(delta_max);
    for (int i = 0; i < n; ++i) grid[i] = std::exp(lmin + (lmax - lmin) * i / (n - 1));
    grid.front() = delta_min; // keep the endpoints free of exp/log roundoff
    grid.back() = delta_max;
    return grid;
}

namespace {

bool is_normal_direction(const TangentVector2& xi) { return xi.w == Complex{0.0, 0.0}; }

void append_point_records(const SweepConfig& cfg, const EggRingDomain& domain, double delta,
                          const TangentVector2& xi, std::vector<SweepRecord>& out) {
    const BasePoint base = BasePoint::at(delta);
    auto push = [&](Metric metric, BoundKind kind, double value, std::string method,
                    std::string error = {}) {
        SweepRecord r;
        r.m = cfg.m;
        r.delta = delta;
        r.metric = metric;
        r.kind = kind;
        r.method = std::move(method);
        r.value = value;
        r.direction = xi;
        r.error = std::move(error);
        out.push_back(std::move(r));
    };
    auto guarded = [&](Metric metric, BoundKind kind, auto&& fn) {
        try {
            const MetricBound b = fn();
            push(metric, kind, b.value, b.method);
        } catch (const std::exception& e) {
            push(metric, kind, 0.0, "error", e.what());
        }
    };

    const bool want_c = cfg.metrics.count(Metric::caratheodory) > 0;
    const bool want_s = cfg.metrics.count(Metric::sibony) > 0;
    const bool want_k = cfg.metrics.count(Metric::kobayashi) > 0;

    if (want_c)
        guarded(Metric::caratheodory, BoundKind::exact,
                [&] { return caratheodory_ring(domain, base, xi); });

    // lines with a w-component can clear the inner egg entirely, in which
    // case all three metrics take the exact ball value
    bool exact_line = false;
    if (!is_normal_direction(xi) && (want_s || want_k)) {
        try {
            const MetricBound b = lemma4_value(domain, base, xi);
            exact_line = true;
            if (want_s) push(Metric::sibony, BoundKind::exact, b.value, b.method);
            if (want_k) push(Metric::kobayashi, BoundKind::exact, b.value, b.method);
        } catch (const NotApplicableError&) {
            exact_line = false;
        }
    }

    if (want_s && !exact_line) {
        guarded(Metric::sibony, BoundKind::lower, [&] { return sibony_lower(base, cfg.m, xi); });
        if (is_normal_direction(xi)) {
            guarded(Metric::sibony, BoundKind::upper, [&] {
                MetricBound b = sibony_upper(base, cfg.m);
                b.value *= std::abs(xi.z); // homogeneity; upper is derived at nu = (1, 0)
                b.direction = xi;
                return b;
            });
        }
        // no closed-form Sibony upper bound for mixed directions; the lower
        // bound's method tag records the one-sided coverage
    }

    if (want_k && !exact_line) {
        guarded(Metric::kobayashi, BoundKind::lower,
                [&] { return kobayashi_lower(domain, base, xi); });
        if (is_normal_direction(xi)) {
            guarded(Metric::kobayashi, BoundKind::upper, [&] {
                DiscSearchOptions opt;
                opt.search_budget = cfg.disc_budget;
                MetricBound b = kobayashi_upper_disc(domain, base, opt).bound;
                b.value *= std::abs(xi.z);
                b.direction = xi;
                return b;
            });
        }
    }
}

} // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    config.validate();
    EggRingDomain domain;
    domain.m = config.m;
    domain.validate();

    const std::vector<double> grid = config.delta_grid();
    std::vector<std::vector<SweepRecord>> buckets(grid.size());
    parallel_for(static_cast<long>(grid.size()), [&](long i) {
        for (const auto& xi : config.directions)
            append_point_records(config, domain, grid[i], xi, buckets[i]);
    });

    std::vector<SweepRecord> records;
    for (auto& b : buckets)
        for (auto& r : b) records.push_back(std::move(r));
    std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        if (a.delta != b.delta) return a.delta < b.delta;
        const int ma = std::string_view(to_string(a.metric)).compare(to_string(b.metric));
        if (ma != 0) return ma < 0;
        return std::string_view(to_string(a.kind)).compare(to_string(b.kind)) < 0;
    });
    return records;
}

double theoretical_slope(Metric metric, BoundKind kind, int m) {
    switch (metric) {
        case Metric::caratheodory: return 0.0;
        case Metric::sibony: return -(1.0 - 1.0 / m);
        case Metric::kobayashi:
            return kind == BoundKind::upper ? -(1.0 - 1.0 / (2.0 * m)) : -(1.0 - 1.0 / m);
    }
    return 0.0;
}

ExponentFit fit_exponent(const std::vector<SweepRecord>& records, Metric metric,
                         BoundKind kind, int m) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        if (r.metric != metric || r.kind != kind || !r.error.empty()) continue;
        if (!(r.value > 0.0))
            throw std::invalid_argument("fit_exponent: non-positive value in fit family");
        xs.push_back(std::log(r.delta));
        ys.push_back(std::log(r.value));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("fit_exponent: fewer than 4 usable records");

    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.metric = metric;
    fit.kind = kind;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.theoretical_slope = theoretical_slope(metric, kind, m);
    const double tol = (metric == Metric::kobayashi && kind == BoundKind::upper) ? 0.05 : 0.01;
    fit.within_tolerance = std::abs(fit.slope - fit.theoretical_slope) <= tol;
    return fit;
}

std::vector<std::string> ordering_violations(const std::vector<SweepRecord>& records) {
    constexpr double slack = 1e-9;
    std::vector<std::string> out;
    // group by delta; records of one sweep share m and direction set
    std::vector<double> deltas;
    for (const auto& r : records)
        if (deltas.empty() || deltas.back() != r.delta) deltas.push_back(r.delta);
    for (double d : deltas) {
        double cara = -1, s_lo = -1, s_up = -1, k_lo = -1, k_up = -1;
        for (const auto& r : records) {
            if (r.delta != d || !r.error.empty()) continue;
            if (r.metric == Metric::caratheodory && r.kind == BoundKind::exact) cara = r.value;
            if (r.metric == Metric::sibony && r.kind == BoundKind::lower) s_lo = r.value;
            if (r.metric == Metric::sibony && r.kind == BoundKind::upper) s_up = r.value;
            if (r.metric == Metric::kobayashi && r.kind == BoundKind::lower) k_lo = r.value;
            if (r.metric == Metric::kobayashi && r.kind == BoundKind::upper) k_up = r.value;
        }
        auto complain = [&](const char* what) {
            std::ostringstream os;
            os << "delta=" << d << ": " << what;
            out.push_back(os.str());
        };
        if (cara >= 0 && s_up >= 0 && cara > s_up + slack)
            complain("caratheodory exceeds sibony upper");
        if (s_lo >= 0 && s_up >= 0 && s_lo > s_up + slack)
            complain("sibony lower exceeds sibony upper");
        if (k_up >= 0 && cara >= 0 && cara > k_up + slack)
            complain("caratheodory exceeds kobayashi upper");
        if (k_up >= 0 && s_lo >= 0 && s_lo > k_up + slack)
            complain("sibony lower exceeds kobayashi upper");
        if (k_up >= 0 && k_lo >= 0 && k_lo > k_up + slack)
            complain("kobayashi lower exceeds kobayashi upper");
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string emit_csv(const std::vector<SweepRecord>& records) {
    std::string out = "m,delta,metric,kind,method,value,dir_z_re,dir_z_im,dir_w_re,dir_w_im\n";
    for (const auto& r : records) {
        out += std::to_string(r.m);
        out += ',';
        out += format_double(r.delta);
        out += ',';
        out += to_string(r.metric);
        out += ',';
        out += to_string(r.kind);
        out += ',';
        out += r.error.empty() ? r.method : "error";
        out += ',';
        out += format_double(r.error.empty() ? r.value : 0.0);
        out += ',';
        out += format_double(r.direction.z.real());
        out += ',';
        out += format_double(r.direction.z.imag());
        out += ',';
        out += format_double(r.direction.w.real());
        out += ',';
        out += format_double(r.direction.w.imag());
        out += '\n';
    }
    return out;
}

std::string emit_json(const std::vector<SweepRecord>& records,
                      const std::vector<ExponentFit>& fits) {
    nlohmann::json doc;
    doc["records"] = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["m"] = r.m;
        j["delta"] = r.delta;
        j["metric"] = to_string(r.metric);
        j["kind"] = to_string(r.kind);
        j["method"] = r.method;
        j["value"] = r.value;
        j["direction"] = {{r.direction.z.real(), r.direction.z.imag()},
                          {r.direction.w.real(), r.direction.w.imag()}};
        j["error"] = r.error;
        doc["records"].push_back(std::move(j));
    }
    doc["fits"] = nlohmann::json::array();
    for (const auto& f : fits) {
        nlohmann::json j;
        j["metric"] = to_string(f.metric);
        j["kind"] = to_string(f.kind);
        j["slope"] = f.slope;
        j["intercept"] = f.intercept;
        j["r_squared"] = f.r_squared;
        j["theoretical_slope"] = f.theoretical_slope;
        j["within_tolerance"] = f.within_tolerance;
        doc["fits"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::vector<SweepRecord> records_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    std::vector<SweepRecord> out;
    for (const auto& j : doc.at("records")) {
        SweepRecord r;
        r.m = j.at("m").get<int>();
        r.delta = j.at("delta").get<double>();
        r.metric = metric_from_string(j.at("metric").get<std::string>());
        const std::string kind = j.at("kind").get<std::string>();
        r.kind = kind == "lower"   ? BoundKind::lower
                 : kind == "upper" ? BoundKind::upper
                                   : BoundKind::exact;
        r.method = j.at("method").get<std::string>();
        r.value = j.at("value").get<double>();
        const auto& d = j.at("direction");
        r.direction.z = Complex{d[0][0].get<double>(), d[0][1].get<double>()};
        r.direction.w = Complex{d[1][0].get<double>(), d[1][1].get<double>()};
        r.error = j.at("error").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace metrics
