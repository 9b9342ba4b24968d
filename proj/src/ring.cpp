#include "igauge/ring.hpp"

#include <cmath>
#include <numbers>

#include "igauge/errors.hpp"

namespace igauge::ring {

namespace {

constexpr Complex kI{0.0, 1.0};

double wavenumber(int l, int n) {
    return 2.0 * std::numbers::pi * l / n;
}

// Circulant matrix whose (n, m) entry is (1/N) sum_s exp(i q_s (n - m) - i phase_s).
ComplexMatrix circulant_propagator(int n, const std::vector<Complex>& phase) {
    std::vector<Complex> column(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        Complex sum = 0.0;
        for (int s = 0; s < n; ++s) sum += std::exp(kI * (wavenumber(s, n) * d) - kI * phase[static_cast<std::size_t>(s)]);
        column[static_cast<std::size_t>(d)] = sum / static_cast<double>(n);
    }
    ComplexMatrix U(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) U(r, c) = column[static_cast<std::size_t>(((r - c) % n + n) % n)];
    return U;
}

}  // namespace

QuasiEnergySpectrum stationary_spectrum(const RingSpec& spec, double h0) {
    const int n = spec.sites();
    const double k = spec.kappa();
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        const double q = wavenumber(l, n);
        values.emplace_back(2.0 * k * std::cosh(h0) * std::cos(q), 2.0 * k * std::sinh(h0) * std::sin(q));
    }
    return QuasiEnergySpectrum::from(std::move(values), "exact: l = 0..N-1, q_l = 2 pi l / N");
}

double ellipse_residual(Complex energy, double h0, double kappa) {
    if (h0 == 0.0) throw DegenerateEllipseError("ellipse_residual: h0 = 0, test Im E = 0 instead");
    const double x = energy.real() / std::cosh(h0);
    const double y = energy.imag() / std::sinh(h0);
    return std::abs(x * x + y * y - 4.0 * kappa * kappa);
}

double ellipse_residual(Complex energy, const GaugeField& f, double kappa) {
    const double c = cosh_average(f);
    const double s = sinh_average(f);
    if (s == 0.0) throw DegenerateEllipseError("ellipse_residual: zero sinh average, test Im E = 0 instead");
    const double x = energy.real() / c;
    const double y = energy.imag() / s;
    return std::abs(x * x + y * y - 4.0 * kappa * kappa);
}

ComplexMatrix propagator_stationary(const RingSpec& spec, double h0, double t) {
    if (!(t >= 0.0)) throw DomainError("ring propagator: t must be non-negative");
    const auto energies = stationary_spectrum(spec, h0).values;
    std::vector<Complex> phase(energies.size());
    for (std::size_t s = 0; s < energies.size(); ++s) phase[s] = energies[s] * t;
    return circulant_propagator(spec.sites(), phase);
}

ComplexMatrix propagator_periodic(const RingSpec& spec, const GaugeField& f, double t) {
    if (!(t >= 0.0)) throw DomainError("ring propagator: t must be non-negative");
    const int n = spec.sites();
    const double k = spec.kappa();
    const double cosh_integral = field_integral(f, [](double h) { return std::cosh(h); }, t);
    const double sinh_integral = field_integral(f, [](double h) { return std::sinh(h); }, t);
    std::vector<Complex> phase(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        const double q = wavenumber(s, n);
        phase[static_cast<std::size_t>(s)] = Complex(2.0 * k * std::cos(q) * cosh_integral,
                                                     2.0 * k * std::sin(q) * sinh_integral);
    }
    return circulant_propagator(n, phase);
}

QuasiEnergySpectrum quasienergies(const RingSpec& spec, const GaugeField& f) {
    const int n = spec.sites();
    const double k = spec.kappa();
    const double c = cosh_average(f);
    const double s = sinh_average(f);
    std::vector<Complex> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        const double q = wavenumber(l, n);
        values.emplace_back(2.0 * k * std::cos(q) * c, 2.0 * k * std::sin(q) * s);
    }
    return QuasiEnergySpectrum::from(std::move(values), "exact period average: l = 0..N-1, no folding");
}

double effective_hopping(const RingSpec& spec, const GaugeField& f) {
    return spec.kappa() * cosh_average(f);
}

ComplexMatrix effective_hamiltonian(const RingSpec& spec, const GaugeField& f, double tol) {
    const double s = sinh_average(f);
    if (std::abs(s) > tol)
        throw ConditionNotMetError("effective_hamiltonian: sinh average " + std::to_string(s) + " is not zero");
    return hamiltonian(RingSpec(spec.sites(), effective_hopping(spec, f)), 0.0);
}

}  // namespace igauge::ring
