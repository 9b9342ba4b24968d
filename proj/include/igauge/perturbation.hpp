#pragma once

#include <vector>

#include "igauge/gauge.hpp"
#include "igauge/lattice.hpp"

/// First-order secular (multiple-scale) theory of the weakly driven open chain.
namespace igauge::perturbation {

/// Default half-width of the resonance window |E_n - E_m - l omega|, in units of kappa.
inline constexpr double kDetuningTolerance = 0.02;

struct PerturbationSetup {
    int sites = 0;
    double kappa = 1.0;
    /// Eigenvector matrix of the undriven chain, T_nm = sqrt(2/(N+1)) sin(n m pi/(N+1)).
    ComplexMatrix modes;
    /// E_n = 2 kappa cos(n pi/(N+1)), n = 1..N.
    std::vector<double> energies;
    /// Coupling matrix of the drive in the mode basis; real antisymmetric,
    /// zero wherever n + m is even.
    ComplexMatrix coupling;
};

/// (n, m, l): E_n - E_m = l * omega within the detuning window. n, m are 1-based.
struct Harmonic {
    int n = 0;
    int m = 0;
    int l = 0;
};

struct SlowFlowMatrix {
    /// i dA/dT1 = R A on the slow time scale.
    ComplexMatrix R;
    std::vector<Harmonic> harmonics_used;
    /// Eigenvalues of -iR: exponents of the slow amplitudes.
    std::vector<Complex> growth_rates;
    double omega = 0.0;
};

/// Builds modes, energies and the closed-form coupling matrix. Throws Error
/// when the modes fail to diagonalise the hopping matrix to 1e-10.
PerturbationSetup build_setup(const ChainSpec& spec);

/// Long-time average <(h(t) - mean) exp(i delta t)>.
///
/// Nonzero only when delta lies within `detuning_tol` of a nonzero harmonic
/// l*omega; the coefficient is then evaluated exactly on resonance as
/// (1/T) int_0^T (h - mean) exp(i l omega t) dt.
Complex fourier_coefficient(const GaugeField& f, double delta, double detuning_tol = kDetuningTolerance);

/// Fourier coefficient of harmonic l, (1/T) int_0^T (h - mean) exp(i l omega t) dt.
Complex harmonic_amplitude(const GaugeField& f, int l);

/// R_nm = P_nm <h exp(i (E_n - E_m) t)>.
SlowFlowMatrix build_R(const PerturbationSetup& setup, const GaugeField& f,
                       double detuning_tol = kDetuningTolerance);

/// h_scale * max |Im lambda(R)|: the leading-order |Im E| of the Floquet spectrum.
/// h_scale rescales the drive amplitude R was built with (1 when R used the actual field).
double predicted_growth_rate(const SlowFlowMatrix& R, double h_scale = 1.0);

}  // namespace igauge::perturbation
