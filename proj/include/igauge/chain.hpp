#pragma once

#include <optional>

#include "igauge/gauge.hpp"
#include "igauge/lattice.hpp"

namespace igauge::chain {

/// Default midpoint steps per drive period.
inline constexpr int kDefaultSteps = 2048;
/// Largest |h0 * N| accepted before exp(h0 n) risks overflow.
inline constexpr double kMaxGaugeExponent = 300.0;

enum class GaugeDirection { to_hermitian, from_hermitian };

/// Static spectrum 2 kappa cos(l pi / (N+1)), l = 1..N; real for every h0.
std::vector<double> stationary_spectrum(const ChainSpec& spec);

/// a_n = c_n e^{+h0 n} (to_hermitian) or its inverse, n = 1..N.
ComplexVector gauge_transform(const ComplexVector& c, double h0, GaugeDirection direction);

/// Closed-form static propagator via the imaginary gauge transformation. Requires t >= 0.
ComplexMatrix propagator_stationary(const ChainSpec& spec, double h0, double t);

enum class MonodromyRoute {
    /// Exact product for piecewise-constant fields, midpoint stepping otherwise.
    automatic,
    /// Midpoint stepping for every field.
    midpoint,
};

struct MonodromyOptions {
    int steps = kDefaultSteps;
    MonodromyRoute route = MonodromyRoute::automatic;
    /// Repeat with steps/2 and report the spread in the quasi energies.
    bool self_check = false;
    double eig_tol = kEigTolerance;
};

struct MonodromyResult {
    ComplexMatrix propagator;
    /// E_l = (i/T) ln mu_l, Re E folded into (-omega/2, omega/2], sorted by Re then Im.
    QuasiEnergySpectrum quasi_energies;
    /// mu_l, aligned with quasi_energies.values.
    std::vector<Complex> multipliers;
    double period = 0.0;
    bool exact = false;
    std::optional<double> estimated_error;
};

/// U(T) over one period. The rightmost factor acts first.
ComplexMatrix period_propagator(const ChainSpec& spec, const GaugeField& f, int steps,
                                MonodromyRoute route = MonodromyRoute::automatic);

MonodromyResult monodromy(const ChainSpec& spec, const GaugeField& f, const MonodromyOptions& options);
MonodromyResult monodromy(const ChainSpec& spec, const GaugeField& f, int steps = kDefaultSteps);

/// Floquet quasi energies from a period propagator, folded and sorted.
MonodromyResult floquet_spectrum(ComplexMatrix propagator, double period, double eig_tol = kEigTolerance);

}  // namespace igauge::chain
