#include <catch2/catch_amalgamated.hpp>

#include "igauge/chain.hpp"
#include "igauge/perturbation.hpp"
#include "oracles.hpp"

using namespace igauge;
using namespace igauge::perturbation;
using Catch::Approx;

TEST_CASE("three-site coupling matrix", "[perturbation]") {
    const auto s = build_setup(ChainSpec(3));
    ComplexMatrix expected(3, 3);
    expected << 0, -1, 0, 1, 0, -1, 0, 1, 0;
    CHECK((s.coupling - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((s.coupling - oracle::coupling(3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coupling matches the explicit product for many sizes", "[perturbation][property]") {
    for (int n = 2; n <= 24; ++n) {
        const auto s = build_setup(ChainSpec(n));
        CHECK((s.coupling - oracle::coupling(n)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((s.coupling + s.coupling.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                if ((a + b) % 2 == 0) CHECK(s.coupling(a - 1, b - 1) == Complex(0.0, 0.0));
    }
}

TEST_CASE("mode matrix is an involution that diagonalises the chain", "[perturbation][property]") {
    for (int n : {2, 3, 7, 20, 41, 60}) {
        const auto s = build_setup(ChainSpec(n));
        const auto& T = s.modes;
        CHECK((T * T - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((T - oracle::sine_modes(n)).cwiseAbs().maxCoeff() <= 1e-14);
        ComplexMatrix E = ComplexMatrix::Zero(n, n);
        for (int k = 0; k < n; ++k) E(k, k) = s.energies[k];
        CHECK((T * E * T - oracle::hamiltonian(n, 0.0, false)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    const auto two = build_setup(ChainSpec(2));
    CHECK(two.energies[0] == Approx(1.0));
    CHECK(two.energies[1] == Approx(-1.0));
}

TEST_CASE("Fourier coefficients of the drives", "[perturbation]") {
    const double h1 = 0.3, omega = 1.7, T = 2 * oracle::pi / omega;
    const auto sq = GaugeField::square_wave(h1, omega);
    auto sq_oracle = oracle::average(
        [&](double t) { return sq.value_at(t) * std::exp(Complex(0.0, omega * t)); }, T, 400000);
    const Complex c1 = fourier_coefficient(sq, omega);
    CHECK(std::abs(c1) == Approx(2 * h1 / oracle::pi).epsilon(1e-12));
    CHECK(std::abs(c1 - sq_oracle) < 1e-6);
    CHECK(std::abs(fourier_coefficient(sq, 2 * omega)) < 1e-14);
    CHECK(std::abs(fourier_coefficient(sq, 3 * omega)) == Approx(2 * h1 / (3 * oracle::pi)).epsilon(1e-12));
    CHECK(std::abs(fourier_coefficient(sq, 0.5 * omega)) == 0.0);  // not a harmonic: averages out

    const auto sn = GaugeField::sinusoidal(h1, omega);
    const auto sn_oracle = oracle::average(
        [&](double t) { return sn.value_at(t) * std::exp(Complex(0.0, omega * t)); }, T, 100000);
    CHECK(std::abs(fourier_coefficient(sn, omega) - sn_oracle) < 1e-10);
    CHECK(std::abs(fourier_coefficient(sn, omega) - h1 / Complex(0.0, -2.0)) < 1e-12);
    CHECK(std::abs(fourier_coefficient(sn, 2 * omega)) < 1e-13);

    // Within the detuning window the on-resonance value is used.
    CHECK(std::abs(fourier_coefficient(sq, omega + 0.01, 0.02) - c1) < 1e-14);
    CHECK(std::abs(fourier_coefficient(sq, omega + 0.03, 0.02)) == 0.0);
}

TEST_CASE("a static offset does not enter the Fourier coefficient", "[perturbation]") {
    const auto pw = GaugeField::piecewise_two_level(0.5, 0.1, 0.4, 2.0);
    const double mean = pw.mean();
    const auto ref = oracle::average(
        [&](double t) { return (pw.value_at(t) - mean) * std::exp(Complex(0.0, oracle::pi * t)); }, 2.0, 400000);
    CHECK(std::abs(harmonic_amplitude(pw, 1) - ref) < 1e-6);
}

TEST_CASE("slow-flow matrix off resonance vanishes", "[perturbation]") {
    const auto s = build_setup(ChainSpec(3));
    // Level gaps are sqrt(2) and 2 sqrt(2); 5.3 and its submultiples avoid them.
    const auto R = build_R(s, GaugeField::square_wave(0.1, 5.3));
    CHECK(R.R.cwiseAbs().maxCoeff() == 0.0);
    CHECK(R.harmonics_used.empty());
    CHECK(predicted_growth_rate(R) == 0.0);
}

TEST_CASE("slow-flow matrix at the first resonance", "[perturbation]") {
    const auto s = build_setup(ChainSpec(3));
    const auto R = build_R(s, GaugeField::square_wave(0.1, std::sqrt(2.0)));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const bool neighbours = std::abs(a - b) == 1;
            CHECK((std::abs(R.R(a, b)) > 1e-6) == neighbours);
        }
    CHECK((R.R + R.R.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(predicted_growth_rate(R) > 0.0);
    // Growth rates come in +/- pairs.
    double re_sum = 0.0;
    for (auto g : R.growth_rates) re_sum += g.real();
    CHECK(std::abs(re_sum) < 1e-12);
}

TEST_CASE("selection rule removes the outer-level family", "[perturbation]") {
    const auto s = build_setup(ChainSpec(3));
    const auto R = build_R(s, GaugeField::square_wave(0.1, 2 * std::sqrt(2.0)));
    CHECK(R.R.cwiseAbs().maxCoeff() == 0.0);
    CHECK(predicted_growth_rate(R) == 0.0);
}

TEST_CASE("slow-flow spectrum is purely imaginary and conjugation closed", "[perturbation][property]") {
    for (int n : {3, 4, 5, 8, 12})
        for (double omega : {0.4, 0.7, 1.0, std::sqrt(2.0), 1.9}) {
            const auto s = build_setup(ChainSpec(n));
            const auto R = build_R(s, GaugeField::square_wave(0.2, omega), 0.05);
            CHECK((R.R + R.R.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
            const auto lambda = oracle::eigenvalues(R.R);
            for (auto l : lambda) CHECK(std::abs(l.real()) <= 1e-10);
            std::vector<Complex> conj;
            for (auto l : lambda) conj.push_back(std::conj(l));
            CHECK(oracle::set_distance(lambda, conj) <= 1e-10);
        }
}

TEST_CASE("predicted growth matches the monodromy at small amplitude", "[perturbation]") {
    const auto s = build_setup(ChainSpec(3));
    const double omega = std::sqrt(2.0);
    for (double h1 : {0.02, 0.05}) {
        const auto f = GaugeField::square_wave(h1, omega);
        const double predicted = predicted_growth_rate(build_R(s, f));
        const double measured = chain::monodromy(ChainSpec(3), f).quasi_energies.max_im;
        CHECK(predicted == Approx(measured).epsilon(0.2));
    }
    const double a = predicted_growth_rate(build_R(s, GaugeField::square_wave(0.02, omega)));
    const double b = predicted_growth_rate(build_R(s, GaugeField::square_wave(0.04, omega)));
    CHECK(b / a == Approx(2.0).margin(0.1));
    // h_scale rescales an R built at unit amplitude.
    const double unit = predicted_growth_rate(build_R(s, GaugeField::square_wave(1.0, omega)), 0.02);
    CHECK(unit == Approx(a).epsilon(1e-12));
}
