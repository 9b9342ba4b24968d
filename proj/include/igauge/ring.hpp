#pragma once

#include "igauge/gauge.hpp"
#include "igauge/lattice.hpp"

/// Closed-form analytics of the ring lattice.
namespace igauge::ring {

/// E_l = 2 kappa cosh(h0) cos(q_l) + 2i kappa sinh(h0) sin(q_l), q_l = 2 pi l / N, l = 0..N-1.
QuasiEnergySpectrum stationary_spectrum(const RingSpec& spec, double h0);

/// | [Re E / cosh h0]^2 + [Im E / sinh h0]^2 - 4 kappa^2 |.
/// Throws DegenerateEllipseError for h0 = 0.
double ellipse_residual(Complex energy, double h0, double kappa);

/// Ellipse residual with the period-averaged semi-axes of a periodic field.
double ellipse_residual(Complex energy, const GaugeField& f, double kappa);

/// Circulant propagator (1/N) sum_s exp(i q_s (n - m) - i E_s t). Requires t >= 0.
ComplexMatrix propagator_stationary(const RingSpec& spec, double h0, double t);

/// Exact propagator of a time-dependent field: E_s t is replaced by int_0^t E_s(t') dt'.
ComplexMatrix propagator_periodic(const RingSpec& spec, const GaugeField& f, double t);

/// Quasi energies from the cosh and sinh averages of the field; exact, no modular folding.
QuasiEnergySpectrum quasienergies(const RingSpec& spec, const GaugeField& f);

/// Hermitian ring with hopping kappa * cosh_average(f).
/// Throws ConditionNotMetError when |sinh_average(f)| > tol.
ComplexMatrix effective_hamiltonian(const RingSpec& spec, const GaugeField& f, double tol = 1e-10);

double effective_hopping(const RingSpec& spec, const GaugeField& f);

}  // namespace igauge::ring
