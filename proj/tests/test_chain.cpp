#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "igauge/chain.hpp"
#include "igauge/dynamics.hpp"
#include "igauge/errors.hpp"
#include "oracles.hpp"

using namespace igauge;
using Catch::Approx;

namespace {

double unitarity_defect(const ComplexMatrix& U) {
    return (U.adjoint() * U - ComplexMatrix::Identity(U.rows(), U.cols())).norm();
}

double max_quasi_energy_change(const chain::MonodromyResult& a, const chain::MonodromyResult& b) {
    double worst = 0.0;
    for (std::size_t l = 0; l < a.quasi_energies.values.size(); ++l)
        worst = std::max(worst, std::abs(a.quasi_energies.values[l] - b.quasi_energies.values[l]));
    return worst;
}

}  // namespace

TEST_CASE("chain stationary spectrum", "[chain]") {
    const auto two = chain::stationary_spectrum(ChainSpec(2));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Approx(1.0));
    CHECK(two[1] == Approx(-1.0));

    const auto three = chain::stationary_spectrum(ChainSpec(3));
    CHECK(three[0] == Approx(std::sqrt(2.0)));
    CHECK(three[1] == Approx(0.0).margin(1e-15));
    CHECK(three[2] == Approx(-std::sqrt(2.0)));

    const auto fifty = chain::stationary_spectrum(ChainSpec(50));
    const std::vector<Complex> ours(fifty.begin(), fifty.end());
    CHECK(oracle::set_distance(ours, oracle::eigenvalues(oracle::hamiltonian(50, 0.3, false))) <= 1e-9);
}

TEST_CASE("gauge transform", "[chain]") {
    std::mt19937 rng(1);
    std::normal_distribution<double> g;
    ComplexVector c(6);
    for (int i = 0; i < 6; ++i) c(i) = Complex(g(rng), g(rng));

    CHECK((chain::gauge_transform(c, 0.0, chain::GaugeDirection::to_hermitian) - c).norm() == 0.0);
    for (double h0 : {-1.3, 0.2, 2.0}) {
        const auto a = chain::gauge_transform(c, h0, chain::GaugeDirection::to_hermitian);
        CHECK(std::abs(a(2) - c(2) * std::exp(3 * h0)) < 1e-12 * std::abs(a(2)));
        const auto back = chain::gauge_transform(a, h0, chain::GaugeDirection::from_hermitian);
        CHECK((back - c).cwiseAbs().maxCoeff() <= 1e-14 * c.cwiseAbs().maxCoeff() * 10);
    }
    CHECK_THROWS_AS(chain::gauge_transform(c, 60.0, chain::GaugeDirection::to_hermitian), RangeError);
}

TEST_CASE("gauge transform maps static dynamics onto the Hermitian chain", "[chain]") {
    const int n = 4;
    const double h0 = 0.7, t = 1.9;
    const ChainSpec spec(n);
    const auto traj = simulate(spec, GaugeField::constant(h0), site_state(n, 1), t, 50);
    const ComplexVector a = chain::gauge_transform(traj.amplitudes.back(), h0, chain::GaugeDirection::to_hermitian);
    const ComplexVector a0 = chain::gauge_transform(site_state(n, 1), h0, chain::GaugeDirection::to_hermitian);
    const ComplexVector expected = oracle::expm(Complex(0.0, -t) * oracle::hamiltonian(n, 0.0, false)) * a0;
    CHECK((a - expected).norm() < 1e-12);
}

TEST_CASE("chain stationary propagator", "[chain]") {
    const ChainSpec spec(5);
    CHECK((chain::propagator_stationary(spec, 0.8, 0.0) - ComplexMatrix::Identity(5, 5)).norm() < 1e-13);
    CHECK(unitarity_defect(chain::propagator_stationary(spec, 0.0, 4.2)) < 1e-12);

    const auto U = chain::propagator_stationary(ChainSpec(3), 0.4, 0.9);
    const auto ref = oracle::stepped_propagator(3, false, [](double) { return 0.4; }, 0.0, 0.9, 10000);
    CHECK((U - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(chain::propagator_stationary(ChainSpec(10), 40.0, 1.0), RangeError);
}

TEST_CASE("static monodromy reproduces the real spectrum for any h0", "[chain][property]") {
    for (int n : {3, 6, 11})
        for (double h0 : {0.0, 0.3, 1.0}) {
            const double omega = 1.7, T = 2 * oracle::pi / omega;
            const auto m = chain::monodromy(ChainSpec(n), GaugeField::constant(h0, T));
            CHECK(m.exact);
            CHECK(m.quasi_energies.max_im <= 1e-9);
            for (double e : chain::stationary_spectrum(ChainSpec(n))) {
                double best = INFINITY;
                for (auto q : m.quasi_energies.values) best = std::min(best, oracle::circular_distance(e, q.real(), omega));
                CHECK(best <= 1e-9);
            }
        }
}

TEST_CASE("monodromy examples", "[chain]") {
    const auto inside = chain::monodromy(ChainSpec(3), GaugeField::square_wave(0.4, std::sqrt(2.0)));
    CHECK(inside.exact);
    CHECK(inside.quasi_energies.max_im > 1e-3);

    const auto stable = chain::monodromy(ChainSpec(3), GaugeField::sinusoidal(0.4, 1.0));
    CHECK_FALSE(stable.exact);
    CHECK(stable.quasi_energies.max_im <= 1e-8);
}

TEST_CASE("monodromy conventions", "[chain]") {
    const double omega = 1.3, T = 2 * oracle::pi / omega;
    const auto m = chain::monodromy(ChainSpec(6), GaugeField::square_wave(0.5, omega));
    CHECK(m.period == Approx(T));
    const auto& v = m.quasi_energies.values;
    for (std::size_t l = 0; l < v.size(); ++l) {
        CHECK(v[l].real() > -omega / 2 - 1e-12);
        CHECK(v[l].real() <= omega / 2 + 1e-12);
        // mu = exp(-i E T)
        CHECK(std::abs(std::exp(Complex(0.0, -T) * v[l]) - m.multipliers[l]) < 1e-10);
        if (l > 0) CHECK(v[l - 1].real() <= v[l].real() + 1e-9 * omega);
    }
    double max_im = 0.0;
    for (auto e : v) max_im = std::max(max_im, std::abs(e.imag()));
    CHECK(m.quasi_energies.max_im == max_im);
}

TEST_CASE("midpoint monodromy matches the stepping oracle", "[chain]") {
    const auto f = GaugeField::sinusoidal(0.6, 1.1);
    const double T = 2 * oracle::pi / 1.1;
    const auto U = chain::period_propagator(ChainSpec(4), f, 64);
    const auto ref = oracle::stepped_propagator(4, false, [&](double t) { return f.value_at(t); }, 0.0, T, 64);
    CHECK((U - ref).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("square wave exact product agrees with midpoint stepping", "[chain]") {
    for (int n : {3, 8}) {
        const auto f = GaugeField::square_wave(0.3, 1.6);
        const auto exact = chain::period_propagator(ChainSpec(n), f, 1);
        const auto stepped = chain::period_propagator(ChainSpec(n), f, 4096, chain::MonodromyRoute::midpoint);
        CHECK((exact - stepped).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("square wave Floquet spectrum is symmetric under E -> -E", "[chain][property]") {
    for (int n : {2, 3, 4, 7, 10})
        for (double h1 : {0.2, 0.5}) {
            const double omega = 1.37;
            const auto m = chain::monodromy(ChainSpec(n), GaugeField::square_wave(h1, omega));
            const auto& v = m.quasi_energies.values;
            for (auto e : v) {
                double best = INFINITY;
                for (auto w : v)
                    best = std::min(best, std::hypot(oracle::circular_distance(-e.real(), w.real(), omega),
                                                     -e.imag() - w.imag()));
                CHECK(best < 1e-8);
            }
        }
}

TEST_CASE("imaginary parts of the chain quasi energies sum to zero", "[chain][property]") {
    for (int n : {2, 3, 5, 8})
        for (auto f : {GaugeField::square_wave(0.4, std::sqrt(2.0)), GaugeField::sinusoidal(0.5, 1.4),
                       GaugeField::piecewise_two_level(0.7, 0.2, 1.0, 3.0)}) {
            const auto m = chain::monodromy(ChainSpec(n), f, 512);
            double sum = 0.0;
            for (auto e : m.quasi_energies.values) sum += e.imag();
            CHECK(std::abs(sum) <= 1e-8);
            CHECK(std::abs(m.propagator.determinant()) == Approx(1.0).margin(1e-8));
        }
}

TEST_CASE("midpoint stepping converges at second order", "[chain][property]") {
    const ChainSpec spec(5);
    const auto f = GaugeField::sinusoidal(0.4, 1.0);
    chain::MonodromyOptions opts;
    opts.route = chain::MonodromyRoute::midpoint;
    std::vector<chain::MonodromyResult> runs;
    for (int s : {16, 32, 64, 128}) {
        opts.steps = s;
        runs.push_back(chain::monodromy(spec, f, opts));
    }
    for (std::size_t k = 0; k + 2 < runs.size(); ++k) {
        const double coarse = max_quasi_energy_change(runs[k], runs[k + 1]);
        const double fine = max_quasi_energy_change(runs[k + 1], runs[k + 2]);
        CHECK(std::log2(coarse / fine) >= 1.9);
    }
}

TEST_CASE("monodromy self check reports an error estimate", "[chain]") {
    chain::MonodromyOptions opts;
    opts.steps = 256;
    opts.self_check = true;
    const auto m = chain::monodromy(ChainSpec(4), GaugeField::sinusoidal(0.3, 1.2), opts);
    REQUIRE(m.estimated_error);
    CHECK(*m.estimated_error > 0.0);
    CHECK(*m.estimated_error < 1e-4);
}

TEST_CASE("monodromy needs a period", "[chain]") {
    CHECK_THROWS_AS(chain::monodromy(ChainSpec(3), GaugeField::constant(0.2)), DomainError);
}

TEST_CASE("chain simulation", "[chain][dynamics]") {
    const ChainSpec spec(3);
    const auto c0 = site_state(3, 0);

    const auto bounded = simulate(spec, GaugeField::sinusoidal(0.4, 1.0), c0, 50.0, 512);
    CHECK((bounded.amplitudes.front() - c0).norm() == 0.0);
    CHECK(bounded.times.back() == Approx(50.0));
    double peak = 0.0;
    for (const auto& a : bounded.amplitudes) peak = std::max(peak, a.cwiseAbs().maxCoeff());
    CHECK(peak <= 3.0);

    const auto growing = simulate(spec, GaugeField::sinusoidal(0.4, std::sqrt(2.0)), c0, 50.0, 512);
    double late = 0.0;
    for (const auto& a : growing.amplitudes) late = std::max(late, a.cwiseAbs().maxCoeff());
    CHECK(late >= 5.0);

    // Hermitian limit conserves the norm.
    const auto flat = simulate(ChainSpec(6), GaugeField::sinusoidal(0.0, 1.0), site_state(6, 2), 30.0, 64);
    for (const auto& a : flat.amplitudes) CHECK(a.norm() == Approx(1.0).margin(1e-12));
}

TEST_CASE("simulation and propagate agree with the stepping oracle", "[chain][dynamics]") {
    const auto f = GaugeField::sinusoidal(0.5, 1.2);
    const double T = 2 * oracle::pi / 1.2;
    const auto U = propagate(ChainSpec(3), f, 0.0, T, 40);
    const auto ref = oracle::stepped_propagator(3, false, [&](double t) { return f.value_at(t); }, 0.0, T, 40);
    CHECK((U - ref).cwiseAbs().maxCoeff() < 1e-11);

    const auto traj = simulate(ChainSpec(3), f, site_state(3, 0), T, 40);
    CHECK((traj.amplitudes.back() - ref.col(0)).norm() < 1e-11);
}
