#include <catch2/catch_amalgamated.hpp>

#include "igauge/errors.hpp"
#include "igauge/gauge.hpp"
#include "oracles.hpp"

using namespace igauge;
using Catch::Approx;

namespace {

std::vector<GaugeField> sample_fields() {
    return {
        GaugeField::constant(0.7, 2.0),
        GaugeField::sinusoidal(0.4, 1.3),
        GaugeField::square_wave(0.5, 2.0),
        GaugeField::piecewise_two_level(1.0, 0.3, 0.8, 3.0),
        GaugeField::sampled({0.0, 0.5, 1.2}, {0.1, -0.4, 0.6}, 2.0),
    };
}

}  // namespace

TEST_CASE("value_at examples", "[gauge]") {
    CHECK(GaugeField::constant(1.0).value_at(17.3) == 1.0);

    const auto sq = GaugeField::square_wave(0.4, 1.7);
    const double T = 2 * oracle::pi / 1.7;
    CHECK(sq.value_at(0.25 * T) == 0.4);
    CHECK(sq.value_at(0.75 * T) == -0.4);
    CHECK(sq.value_at(0.5 * T) == -0.4);  // right limit at the jump

    const auto pw = GaugeField::piecewise_two_level(1.0, 0.5, 0.7, 2.0);
    CHECK(pw.value_at(0.7 + 1e-9) == -0.5);
    CHECK(pw.value_at(0.3) == 1.0);

    const auto s = GaugeField::sinusoidal(0.4, 2.0);
    CHECK(s.value_at(0.3) == Approx(0.4 * std::sin(0.6)));
}

TEST_CASE("sampled fields interpolate linearly and wrap", "[gauge]") {
    const auto f = GaugeField::sampled({0.0, 1.0}, {0.0, 1.0}, 2.0);
    CHECK(f.value_at(0.5) == Approx(0.5));
    CHECK(f.value_at(1.5) == Approx(0.5));  // from 1 at t=1 back to 0 at t=2
    CHECK(f.value_at(2.25) == Approx(0.25));
}

TEST_CASE("every variant is periodic", "[gauge][property]") {
    for (const auto& f : sample_fields()) {
        const double T = *f.period();
        for (double t : {0.013, 0.4, 1.1, 1.77, 2.9, -0.6}) {
            // Skip points within rounding of a jump, where t + T may land on the other side.
            CHECK(f.value_at(t + T) == Approx(f.value_at(t)).margin(1e-12));
            CHECK(f.value_at(t + 5 * T) == Approx(f.value_at(t)).margin(1e-12));
        }
    }
}

TEST_CASE("constructors validate their arguments", "[gauge]") {
    CHECK_THROWS_AS(GaugeField::sinusoidal(0.4, 0.0), DomainError);
    CHECK_THROWS_AS(GaugeField::square_wave(0.4, -1.0), DomainError);
    CHECK_THROWS_AS(GaugeField::piecewise_two_level(1.0, 0.5, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(GaugeField::piecewise_two_level(-1.0, 0.5, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(GaugeField::sampled({0.0, 0.0}, {1.0, 2.0}, 1.0), DomainError);
    CHECK_THROWS_AS(GaugeField::sampled({0.0}, {1.0, 2.0}, 1.0), DomainError);
    CHECK_THROWS_AS(GaugeField::constant(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(GaugeField::constant(1.0).require_period("test"), DomainError);
}

TEST_CASE("sinh_average examples", "[gauge]") {
    CHECK(sinh_average(GaugeField::sinusoidal(0.9, 1.4)) == Approx(0.0).margin(1e-13));
    CHECK(sinh_average(GaugeField::constant(0.6)) == Approx(std::sinh(0.6)).epsilon(1e-15));

    const double T = 2.5, t1 = 0.3 * T;
    const double h2 = balancing_h2(1.0, t1, T);
    const auto pw = GaugeField::piecewise_two_level(1.0, h2, t1, T);
    CHECK(sinh_average(pw) == Approx(0.0).margin(1e-13));
    CHECK(t1 * std::sinh(1.0) == Approx((T - t1) * std::sinh(h2)).epsilon(1e-14));
}

TEST_CASE("cosh_average examples", "[gauge]") {
    CHECK(cosh_average(GaugeField::constant(0.0)) == 1.0);
    const auto s = GaugeField::sinusoidal(0.4, 1.0);
    const double oracle_value = oracle::average([](double t) { return std::cosh(0.4 * std::sin(t)); }, 2 * oracle::pi);
    CHECK(cosh_average(s) == Approx(oracle_value).epsilon(1e-10));
    CHECK(cosh_average(s) == Approx(1.0405).margin(5e-4));
    CHECK(cosh_average(GaugeField::square_wave(0.55, 3.0)) == Approx(std::cosh(0.55)).epsilon(1e-14));
}

TEST_CASE("averages agree with Riemann-sum oracles for every variant", "[gauge][property]") {
    for (const auto& f : sample_fields()) {
        const double T = *f.period();
        auto sh = [&](double t) { return std::sinh(f.value_at(t)); };
        auto ch = [&](double t) { return std::cosh(f.value_at(t)); };
        // A jump that falls inside a Riemann cell costs O(jump * T / samples).
        CHECK(sinh_average(f) == Approx(oracle::average(sh, T, 400000)).margin(1e-5));
        CHECK(cosh_average(f) == Approx(oracle::average(ch, T, 400000)).margin(1e-5));
        CHECK(cosh_average(f) >= 1.0);
    }
}

TEST_CASE("piecewise averages match the closed form", "[gauge]") {
    const auto f = GaugeField::piecewise_two_level(1.0, 0.3, 0.8, 3.0);
    CHECK(sinh_average(f) == Approx((0.8 * std::sinh(1.0) - 2.2 * std::sinh(0.3)) / 3.0).epsilon(1e-13));
    CHECK(cosh_average(f) == Approx((0.8 * std::cosh(1.0) + 2.2 * std::cosh(0.3)) / 3.0).epsilon(1e-13));
}

TEST_CASE("sinh_average is odd under a sign flip", "[gauge][property]") {
    for (const auto& f : sample_fields()) {
        CHECK(sinh_average(f.negated()) == Approx(-sinh_average(f)).margin(1e-13));
        CHECK(cosh_average(f.negated()) == Approx(cosh_average(f)).epsilon(1e-13));
    }
}

TEST_CASE("pseudo-Hermiticity condition", "[gauge]") {
    CHECK(is_pseudo_hermitian_condition(GaugeField::sinusoidal(0.4, 1.0)));
    CHECK_FALSE(is_pseudo_hermitian_condition(GaugeField::constant(1.0, 1.0)));
    CHECK(is_pseudo_hermitian_condition(GaugeField::square_wave(0.8, 1.0)));

    const double T = 1.0, t1 = 0.3;
    // Root of t1 sinh(1) = (T - t1) sinh(h2) found by bisection, independently of balancing_h2.
    double lo = 0.0, hi = 2.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (((T - t1) * std::sinh(mid) < t1 * std::sinh(1.0)) ? lo : hi) = mid;
    }
    CHECK(balancing_h2(1.0, t1, T) == Approx(lo).epsilon(1e-13));
    CHECK(is_pseudo_hermitian_condition(GaugeField::piecewise_two_level(1.0, lo, t1, T)));
    CHECK_FALSE(is_pseudo_hermitian_condition(GaugeField::piecewise_two_level(1.0, 0.5, t1, T)));
}

TEST_CASE("field_integral over whole and partial periods", "[gauge]") {
    const auto f = GaugeField::square_wave(0.3, 2.0);
    const double T = oracle::pi;
    // Over 2.25 periods: two full periods average to cosh, the last quarter is at +h1.
    CHECK(field_integral(f, std::cosh, 2.25 * T) == Approx(2.25 * T * std::cosh(0.3)).epsilon(1e-13));
    CHECK(field_integral(f, std::sinh, 2.25 * T) == Approx(0.25 * T * std::sinh(0.3)).epsilon(1e-12));
    const auto c = GaugeField::constant(0.2);
    CHECK(field_integral(c, std::sinh, 3.0) == Approx(3.0 * std::sinh(0.2)));
}

TEST_CASE("breakpoints and metadata", "[gauge]") {
    const auto sq = GaugeField::square_wave(0.4, 2.0);
    REQUIRE(sq.breakpoints().size() == 2);
    CHECK(sq.breakpoints()[1] == Approx(oracle::pi / 2));
    CHECK(sq.piecewise_constant());
    CHECK_FALSE(GaugeField::sinusoidal(0.4, 2.0).piecewise_constant());
    CHECK(*GaugeField::sinusoidal(0.4, 2.0).omega() == 2.0);
    CHECK(GaugeField::piecewise_two_level(1.0, 0.5, 0.7, 2.0).mean() == Approx((0.7 - 0.5 * 1.3) / 2.0));
    CHECK_FALSE(GaugeField::constant(0.3).period());
}
