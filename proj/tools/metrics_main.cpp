#include "metrics/caratheodory.hpp"
#include "metrics/errors.hpp"
#include "metrics/kobayashi.hpp"
#include "metrics/psh_verify.hpp"
#include "metrics/sibony.hpp"
#include "metrics/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

// flat key=value file mirroring the long flags; values already given on the
// command line win (the vendored CLI11 only reads config files on the root
// app, so subcommand configs are loaded by hand)
void apply_config(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || opt->get_name() == "--config")
            throw std::invalid_argument("unknown config key: " + key);
        if (opt->count() > 0) continue; // flag given explicitly, keep it
        opt->add_result(value);
        opt->run_callback();
    }
}

metrics::TangentVector2 parse_direction(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stod(tok));
    if (parts.size() != 4)
        throw CLI::ValidationError("--direction", "expected re,im,re,im");
    return {metrics::Complex{parts[0], parts[1]}, metrics::Complex{parts[2], parts[3]}};
}

int run_sweep_cmd(int m, double delta_min, double delta_max, int steps,
                  const std::string& metric_list, const std::string& direction,
                  const std::string& format, const std::string& out_path, unsigned seed,
                  int budget) {
    metrics::SweepConfig cfg;
    cfg.m = m;
    cfg.delta_min = delta_min;
    cfg.delta_max = delta_max;
    cfg.steps = steps;
    cfg.disc_budget = budget;
    cfg.seed = seed;
    cfg.directions = {parse_direction(direction)};
    if (metric_list != "all") {
        cfg.metrics.clear();
        std::stringstream ss(metric_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.metrics.insert(metrics::metric_from_string(tok));
    }

    const auto records = metrics::run_sweep(cfg);

    std::vector<metrics::ExponentFit> fits;
    for (auto metric : cfg.metrics) {
        for (auto kind :
             {metrics::BoundKind::lower, metrics::BoundKind::upper, metrics::BoundKind::exact}) {
            try {
                fits.push_back(metrics::fit_exponent(records, metric, kind, cfg.m));
            } catch (const std::invalid_argument&) {
                // family absent or too small; nothing to fit
            }
        }
    }

    std::string doc =
        format == "json" ? metrics::emit_json(records, fits) : metrics::emit_csv(records);
    if (out_path.empty() || out_path == "-") {
        std::cout << doc;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f || !(f << doc)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitIo;
        }
    }

    const auto violations = metrics::ordering_violations(records);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "ordering violation: " << v << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int run_certify_cmd(int m, double delta, long samples, unsigned seed) {
    metrics::EggRingDomain domain;
    domain.m = m;
    const auto witness = metrics::SibonyWitness::make(delta, m);
    const auto cert = metrics::certify_admissible(witness.candidate(), domain, samples, seed);
    std::cout << "witness admissibility certificate (m=" << m << ", delta=" << delta << ")\n"
              << "  points checked:       " << cert.points_checked << "\n"
              << "  seam points skipped:  " << cert.seam_points_skipped << "\n"
              << "  range in [0,1]:       " << (cert.range_ok ? "ok" : "FAILED") << "\n"
              << "  value 0 at base:      " << (cert.base_value_ok ? "ok" : "FAILED") << "\n"
              << "  sub-mean-value @seam: " << (cert.submean_ok ? "ok" : "FAILED") << "\n"
              << "  min FD eigenvalue:    " << cert.min_eigenvalue_seen << "\n"
              << "  verdict:              " << (cert.passed() ? "PASS" : "FAIL") << "\n";
    return cert.passed() ? kExitOk : kExitInvariant;
}

int run_point_cmd(int m, double delta, const std::string& direction) {
    metrics::EggRingDomain domain;
    domain.m = m;
    const auto base = metrics::BasePoint::at(delta);
    const auto xi = parse_direction(direction);

    std::cout << "bounds at P_delta = (" << base.p << ", 0), m=" << m << ", delta=" << delta
              << ", xi=(" << xi.z << ", " << xi.w << ")\n";
    auto row = [](const metrics::MetricBound& b) {
        std::cout << "  " << metrics::to_string(b.metric) << " " << metrics::to_string(b.kind)
                  << " \t" << b.value << " \t[" << b.method << "]\n";
    };
    row(metrics::caratheodory_ring(domain, base, xi));
    try {
        auto b = metrics::lemma4_value(domain, base, xi);
        std::cout << "  line clears the inner egg: all three metrics take the ball value\n";
        for (auto metric : {metrics::Metric::kobayashi, metrics::Metric::sibony}) {
            b.metric = metric;
            row(b);
        }
        return kExitOk;
    } catch (const metrics::NotApplicableError&) {
    }
    row(metrics::sibony_lower(base, m, xi));
    if (xi.w == metrics::Complex{0.0, 0.0}) {
        auto up = metrics::sibony_upper(base, m);
        up.value *= std::abs(xi.z);
        row(up);
    } else {
        std::cout << "  sibony upper \t(not available for mixed directions)\n";
    }
    row(metrics::kobayashi_lower(domain, base, xi));
    if (xi.w == metrics::Complex{0.0, 0.0}) {
        auto up = metrics::kobayashi_upper_disc(domain, base).bound;
        up.value *= std::abs(xi.z);
        row(up);
    } else {
        std::cout << "  kobayashi upper \t(disc family covers nu = (1,0) only)\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant-metric bounds on the egg-ring domain"};
    app.require_subcommand(1);

    int m = 2;
    double delta_min = 1e-4, delta_max = 1e-2, delta = 1e-2;
    int steps = 0, budget = 2000;
    long samples = 10000;
    unsigned seed = 0;
    std::string metric_list = "all", direction = "1,0,0,0", format = "csv", out_path, config_path;

    auto* sweep = app.add_subcommand("sweep", "delta sweep over the requested metrics");
    sweep->add_option("--config", config_path, "flat key=value config file; flags override");
    sweep->add_option("--m", m, "inner egg exponent (>= 2)")->check(CLI::Range(2, 64));
    sweep->add_option("--delta-min", delta_min, "smallest boundary distance");
    sweep->add_option("--delta-max", delta_max, "largest boundary distance");
    sweep->add_option("--steps", steps, "log-spaced points (0: 16 per decade)");
    sweep->add_option("--metrics", metric_list, "comma list or 'all'");
    sweep->add_option("--direction", direction, "tangent vector as re,im,re,im");
    sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "output path ('-' or empty: stdout)");
    sweep->add_option("--seed", seed);
    sweep->add_option("--budget", budget, "disc-search feasibility budget");

    auto* certify = app.add_subcommand("certify", "certify the Sibony witness function");
    certify->add_option("--config", config_path, "flat key=value config file; flags override");
    certify->add_option("--m", m)->check(CLI::Range(2, 64));
    certify->add_option("--delta", delta);
    certify->add_option("--samples", samples);
    certify->add_option("--seed", seed);

    auto* point = app.add_subcommand("point", "all bounds at one (m, delta, direction)");
    point->add_option("--config", config_path, "flat key=value config file; flags override");
    point->add_option("--m", m)->check(CLI::Range(2, 64));
    point->add_option("--delta", delta);
    point->add_option("--direction", direction);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    try {
        if (!config_path.empty()) {
            for (auto* sub : {sweep, certify, point})
                if (sub->parsed()) apply_config(sub, config_path);
        }
        if (sweep->parsed())
            return run_sweep_cmd(m, delta_min, delta_max, steps, metric_list, direction, format,
                                 out_path, seed, budget);
        if (certify->parsed()) return run_certify_cmd(m, delta, samples, seed);
        if (point->parsed()) return run_point_cmd(m, delta, direction);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
