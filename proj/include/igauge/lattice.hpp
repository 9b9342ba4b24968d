#pragma once

#include <string>
#include <variant>
#include <vector>

#include "igauge/numerics.hpp"

namespace igauge {

/// N-site ring with Born-von Karman boundary conditions; sites 0..N-1.
class RingSpec {
public:
    /// Throws DomainError unless sites >= 3 and kappa > 0.
    explicit RingSpec(int sites, double kappa = 1.0);

    int sites() const noexcept { return sites_; }
    double kappa() const noexcept { return kappa_; }

private:
    int sites_;
    double kappa_;
};

/// Open chain c_0 = c_{N+1} = 0; physical sites 1..N stored at indices 0..N-1.
class ChainSpec {
public:
    /// Throws DomainError unless sites >= 2 and kappa > 0.
    explicit ChainSpec(int sites, double kappa = 1.0);

    int sites() const noexcept { return sites_; }
    double kappa() const noexcept { return kappa_; }

private:
    int sites_;
    double kappa_;
};

using LatticeSpec = std::variant<RingSpec, ChainSpec>;

int sites(const LatticeSpec& spec);
double kappa(const LatticeSpec& spec);

struct QuasiEnergySpectrum {
    std::vector<Complex> values;
    std::string branch;
    /// max_l |Im E_l|
    double max_im = 0.0;

    static QuasiEnergySpectrum from(std::vector<Complex> values, std::string branch);
};

/// Instantaneous Hamiltonian for gauge value h, built entry by entry:
/// H[n][n+1] = kappa e^h, H[n+1][n] = kappa e^-h (indices mod N on the ring).
ComplexMatrix hamiltonian(const LatticeSpec& spec, double h);

/// Exact propagator exp(-i H(h) t) for a static field, by the lattice's closed form.
ComplexMatrix stationary_propagator(const LatticeSpec& spec, double h, double t);

}  // namespace igauge
