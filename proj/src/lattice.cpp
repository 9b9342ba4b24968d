#include "igauge/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "igauge/chain.hpp"
#include "igauge/errors.hpp"
#include "igauge/ring.hpp"

namespace igauge {

RingSpec::RingSpec(int sites, double kappa) : sites_(sites), kappa_(kappa) {
    if (sites < 3) throw DomainError("ring needs at least 3 sites, got " + std::to_string(sites));
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("hopping rate kappa must be positive");
}

ChainSpec::ChainSpec(int sites, double kappa) : sites_(sites), kappa_(kappa) {
    if (sites < 2) throw DomainError("chain needs at least 2 sites, got " + std::to_string(sites));
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("hopping rate kappa must be positive");
}

int sites(const LatticeSpec& spec) {
    return std::visit([](const auto& s) { return s.sites(); }, spec);
}

double kappa(const LatticeSpec& spec) {
    return std::visit([](const auto& s) { return s.kappa(); }, spec);
}

QuasiEnergySpectrum QuasiEnergySpectrum::from(std::vector<Complex> values, std::string branch) {
    QuasiEnergySpectrum out;
    for (const auto& e : values) out.max_im = std::max(out.max_im, std::abs(e.imag()));
    out.values = std::move(values);
    out.branch = std::move(branch);
    return out;
}

ComplexMatrix hamiltonian(const LatticeSpec& spec, double h) {
    const int n = sites(spec);
    const double k = kappa(spec);
    const bool ring = std::holds_alternative<RingSpec>(spec);
    ComplexMatrix H = ComplexMatrix::Zero(n, n);
    const int bonds = ring ? n : n - 1;
    for (int i = 0; i < bonds; ++i) {
        const int j = (i + 1) % n;
        H(i, j) += k * std::exp(h);
        H(j, i) += k * std::exp(-h);
    }
    return H;
}

ComplexMatrix stationary_propagator(const LatticeSpec& spec, double h, double t) {
    if (const auto* r = std::get_if<RingSpec>(&spec)) return ring::propagator_stationary(*r, h, t);
    return chain::propagator_stationary(std::get<ChainSpec>(spec), h, t);
}

}  // namespace igauge
