#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metrics/geometry.hpp"
#include "test_helpers.hpp"

#include <random>

using namespace metrics;

namespace {
EggRingDomain domain_m(int m) {
    EggRingDomain d;
    d.m = m;
    return d;
}
} // namespace

TEST_CASE("egg_level evaluates |z|^2 + |w|^m") {
    CHECK(egg_level(domain_m(2), {Complex{0.5, 0}, Complex{0, 0}}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(egg_level(domain_m(2), {Complex{0.51, 0}, Complex{0, 0}}) == doctest::Approx(0.2601).epsilon(1e-14));
    CHECK(egg_level(domain_m(4), {Complex{0, 0}, Complex{0.5, 0}}) == doctest::Approx(0.0625).epsilon(1e-14));
}

TEST_CASE("contains checks both defining functions") {
    const auto d = domain_m(2);
    CHECK(contains(d, {Complex{0.6, 0}, Complex{0, 0}}, 0.0));
    CHECK_FALSE(contains(d, {Complex{0.5, 0}, Complex{0, 0}}, 0.0));
    CHECK_FALSE(contains(d, {Complex{0.9, 0}, Complex{0.5, 0}}, 0.0)); // outside the ball
    CHECK_THROWS_AS(contains(d, {Complex{0.6, 0}, Complex{0, 0}}, -1.0), std::invalid_argument);
}

TEST_CASE("contains with margin 0 agrees with defining-function signs") {
    const auto d = domain_m(3);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.1, 1.1);
    for (int i = 0; i < 1000000; ++i) {
        const ComplexPoint2 q{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
        const bool expect = egg_level(d, q) > 0.25 && std::norm(q.z) + std::norm(q.w) < 1.0;
        REQUIRE(contains(d, q, 0.0) == expect);
    }
}

TEST_CASE("pushforward_norm matches the ball Mobius derivative") {
    const TangentVector2 nu{Complex{1, 0}, Complex{0, 0}};
    const TangentVector2 tau{Complex{0, 0}, Complex{1, 0}};
    CHECK(pushforward_norm(0.6, nu) == doctest::Approx(1.5625).epsilon(1e-14));
    CHECK(pushforward_norm(0.6, tau) == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(pushforward_norm(0.5 + 1e-9, TangentVector2{}) == 0.0);
    CHECK_THROWS_AS(pushforward_norm(1.0, nu), std::domain_error);
    CHECK_THROWS_AS(pushforward_norm(-0.1, nu), std::domain_error);

    // finite-difference the explicit Mobius map of the ball at (p, 0)
    const double p = 0.6;
    auto mobius = [p](Complex z, Complex w) {
        return std::make_pair((z - p) / (1.0 - p * z), std::sqrt(1.0 - p * p) * w / (1.0 - p * z));
    };
    const double h = 1e-7;
    const auto [z1, w1] = mobius(Complex{p, 0}, Complex{h, 0});
    const auto [z0, w0] = mobius(Complex{p, 0}, Complex{0, 0});
    const double dw = std::abs(w1 - w0) / h;
    CHECK(dw == doctest::Approx(pushforward_norm(p, tau)).epsilon(1e-6));
    const auto [z2, w2] = mobius(Complex{p + h, 0}, Complex{0, 0});
    CHECK(std::abs(z2 - z0) / h == doctest::Approx(pushforward_norm(p, nu)).epsilon(1e-6));
}

TEST_CASE("pushforward_norm is absolutely homogeneous and tends to |xi| at the center") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const TangentVector2 xi{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
        const double t = 3.0 * u(rng);
        const double p = 0.05 + 0.45 * (u(rng) + 1.0);
        CHECK(pushforward_norm(p, t * xi) ==
              doctest::Approx(std::abs(t) * pushforward_norm(p, xi)).epsilon(1e-12));
        CHECK(pushforward_norm(1e-9, xi) == doctest::Approx(xi.norm()).epsilon(1e-7));
    }
}

TEST_CASE("line_misses_inner examples") {
    const auto d = domain_m(2);
    const ComplexPoint2 p06{Complex{0.6, 0}, Complex{0, 0}};
    const ComplexPoint2 p051{Complex{0.51, 0}, Complex{0, 0}};
    CHECK(line_misses_inner(d, p06, {Complex{0, 0}, Complex{1, 0}}));
    CHECK_FALSE(line_misses_inner(d, p051, {Complex{1, 0}, Complex{0, 0}}));
    CHECK(line_misses_inner(d, p051, {Complex{1, 0}, Complex{10, 0}}));
    CHECK_THROWS_AS(line_misses_inner(d, p051, TangentVector2{}), std::invalid_argument);
}

TEST_CASE("line_min_level matches the m=2 closed form") {
    // for m = 2 the level along P + zeta (1, v) is a real quadratic with
    // minimum p^2 v^2 / (1 + v^2)
    const auto d = domain_m(2);
    for (double v : {0.5, 1.0, 3.0, 10.0}) {
        for (double p : {0.51, 0.6, 0.7}) {
            const ComplexPoint2 P{Complex{p, 0}, Complex{0, 0}};
            const double expect = p * p * v * v / (1.0 + v * v);
            CHECK(line_min_level(d, P, {Complex{1, 0}, Complex{v, 0}}) ==
                  doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("line_misses_inner is monotone in |v| for (1, v) directions") {
    const auto d = domain_m(3);
    const auto base = BasePoint::at(0.02);
    const double v0 = test_helpers::geometric_threshold(d, base, 50.0) * 1.05;
    for (double f : {1.0, 1.5, 2.0, 4.0, 10.0}) {
        CHECK(line_misses_inner(d, base.point, {Complex{1, 0}, Complex{f * v0, 0}}));
    }
}

TEST_CASE("domain and base-point validation") {
    EggRingDomain bad;
    bad.m = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(BasePoint::at(0.0), std::invalid_argument);
    CHECK_THROWS_AS(BasePoint::at(0.3), std::invalid_argument);
    const auto b = BasePoint::at(0.1);
    CHECK(b.p == doctest::Approx(0.6));
    CHECK(contains(domain_m(2), b.point, 0.0));
}
