#include "igauge/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igauge/chain.hpp"
#include "igauge/errors.hpp"

namespace igauge::perturbation {

namespace {

// Relative size below which a Fourier amplitude counts as zero.
constexpr double kNegligible = 1e-10;

double cot(double x) {
    return std::cos(x) / std::sin(x);
}

// Root-mean-square of the zero-mean part of h over one period.
double rms_amplitude(const GaugeField& f) {
    const auto period = f.period();
    if (!period) return 0.0;
    const double mean = f.mean();
    const auto cuts = f.breakpoints();
    const double ms = integrate_periodic(
        [&](double t) {
            const double d = f.value_at(t) - mean;
            return d * d;
        },
        *period, kQuadratureTolerance, cuts);
    return std::sqrt(std::max(ms, 0.0));
}

}  // namespace

PerturbationSetup build_setup(const ChainSpec& spec) {
    const int n = spec.sites();
    const double k = spec.kappa();
    const double pi = std::numbers::pi;

    PerturbationSetup setup;
    setup.sites = n;
    setup.kappa = k;
    setup.energies = chain::stationary_spectrum(spec);
    setup.modes = ComplexMatrix(n, n);
    setup.coupling = ComplexMatrix::Zero(n, n);

    const double norm = std::sqrt(2.0 / (n + 1));
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) setup.modes(r - 1, c - 1) = norm * std::sin(r * c * pi / (n + 1));

    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            if ((r + c) % 2 == 0) continue;
            const double value = k * 2.0 / (n + 1) * std::sin(c * pi / (n + 1)) *
                                 (cot(pi * (r + c) / (2.0 * (n + 1))) + cot(pi * (r - c) / (2.0 * (n + 1))));
            setup.coupling(r - 1, c - 1) = value;
        }
    }

    const ComplexMatrix hopping = hamiltonian(ChainSpec(n, k), 0.0);
    Eigen::VectorXcd diag(n);
    for (int i = 0; i < n; ++i) diag(i) = setup.energies[static_cast<std::size_t>(i)];
    const double mismatch = (hopping * setup.modes - setup.modes * diag.asDiagonal()).cwiseAbs().maxCoeff();
    if (mismatch > 1e-10 * k) throw Error("build_setup: modes do not diagonalise the chain");
    return setup;
}

Complex harmonic_amplitude(const GaugeField& f, int l) {
    const auto period = f.period();
    if (!period || f.kind() == FieldKind::constant) return 0.0;
    const double omega = 2.0 * std::numbers::pi / *period;
    const double mean = f.mean();
    const auto cuts = f.breakpoints();
    const double re = integrate_periodic([&](double t) { return (f.value_at(t) - mean) * std::cos(l * omega * t); },
                                         *period, kQuadratureTolerance, cuts);
    const double im = integrate_periodic([&](double t) { return (f.value_at(t) - mean) * std::sin(l * omega * t); },
                                         *period, kQuadratureTolerance, cuts);
    return {re, im};
}

Complex fourier_coefficient(const GaugeField& f, double delta, double detuning_tol) {
    const auto omega = f.omega();
    if (!omega || f.kind() == FieldKind::constant) return 0.0;
    const double order = std::round(delta / *omega);
    if (order == 0.0 || std::abs(delta - order * *omega) > detuning_tol) return 0.0;
    return harmonic_amplitude(f, static_cast<int>(order));
}

SlowFlowMatrix build_R(const PerturbationSetup& setup, const GaugeField& f, double detuning_tol) {
    const int n = setup.sites;
    SlowFlowMatrix out;
    out.R = ComplexMatrix::Zero(n, n);
    out.omega = f.omega().value_or(0.0);
    const double floor = kNegligible * rms_amplitude(f);

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (r == c) continue;
            const Complex p = setup.coupling(r, c);
            if (p == 0.0) continue;
            const double delta = setup.energies[static_cast<std::size_t>(r)] - setup.energies[static_cast<std::size_t>(c)];
            const Complex coeff = fourier_coefficient(f, delta, detuning_tol);
            if (std::abs(coeff) <= floor) continue;
            out.R(r, c) = p * coeff;
            out.harmonics_used.push_back({r + 1, c + 1, static_cast<int>(std::round(delta / out.omega))});
        }
    }
    out.growth_rates = eig_general(Complex(0.0, -1.0) * out.R).eigenvalues;
    return out;
}

double predicted_growth_rate(const SlowFlowMatrix& R, double h_scale) {
    double rate = 0.0;
    for (const Complex g : R.growth_rates) rate = std::max(rate, std::abs(g.real()));
    return h_scale * rate;
}

}  // namespace igauge::perturbation
