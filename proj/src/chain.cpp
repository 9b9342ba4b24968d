#include "igauge/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igauge/errors.hpp"

namespace igauge::chain {

namespace {

constexpr Complex kI{0.0, 1.0};

void guard_gauge_exponent(double h0, int n, const char* what) {
    if (std::abs(h0 * n) > kMaxGaugeExponent)
        throw RangeError(std::string(what) + ": |h0 * N| = " + std::to_string(std::abs(h0 * n)) + " exceeds " +
                         std::to_string(kMaxGaugeExponent));
}

// Orthogonal sine transform sqrt(2/(N+1)) sin(pi n s / (N+1)); symmetric and involutory.
Eigen::MatrixXd sine_modes(int n) {
    Eigen::MatrixXd S(n, n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s) S(r - 1, s - 1) = norm * std::sin(std::numbers::pi * r * s / (n + 1));
    return S;
}

}  // namespace

std::vector<double> stationary_spectrum(const ChainSpec& spec) {
    const int n = spec.sites();
    std::vector<double> energies(static_cast<std::size_t>(n));
    for (int l = 1; l <= n; ++l)
        energies[static_cast<std::size_t>(l - 1)] = 2.0 * spec.kappa() * std::cos(l * std::numbers::pi / (n + 1));
    return energies;
}

ComplexVector gauge_transform(const ComplexVector& c, double h0, GaugeDirection direction) {
    const auto n = static_cast<int>(c.size());
    guard_gauge_exponent(h0, n, "gauge_transform");
    const double sign = direction == GaugeDirection::to_hermitian ? 1.0 : -1.0;
    ComplexVector out(c.size());
    for (int i = 0; i < n; ++i) out(i) = c(i) * std::exp(sign * h0 * (i + 1));
    return out;
}

ComplexMatrix propagator_stationary(const ChainSpec& spec, double h0, double t) {
    if (!(t >= 0.0)) throw DomainError("chain propagator: t must be non-negative");
    const int n = spec.sites();
    guard_gauge_exponent(h0, n, "chain propagator");

    const Eigen::MatrixXd S = sine_modes(n);
    ComplexVector phases(n);
    for (int s = 1; s <= n; ++s)
        phases(s - 1) = std::exp(-2.0 * kI * spec.kappa() * t * std::cos(std::numbers::pi * s / (n + 1)));
    const ComplexMatrix Sc = S.cast<Complex>();
    ComplexMatrix U = Sc * phases.asDiagonal() * Sc;

    if (h0 != 0.0) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) U(r, c) *= std::exp(h0 * (c - r));
    }
    return U;
}

ComplexMatrix period_propagator(const ChainSpec& spec, const GaugeField& f, int steps, MonodromyRoute route) {
    const double period = f.require_period("monodromy");
    if (steps < 1) throw DomainError("monodromy: steps must be >= 1");

    if (route == MonodromyRoute::automatic) {
        if (const auto* c = std::get_if<ConstantField>(&f.shape())) return propagator_stationary(spec, c->h0, period);
        if (const auto* s = std::get_if<SquareWaveField>(&f.shape()))
            return propagator_stationary(spec, -s->h1, 0.5 * period) * propagator_stationary(spec, s->h1, 0.5 * period);
        if (const auto* p = std::get_if<PiecewiseTwoLevelField>(&f.shape()))
            return propagator_stationary(spec, -p->h2, period - p->t1) * propagator_stationary(spec, p->h1, p->t1);
    }

    const double dt = period / steps;
    ComplexMatrix U = ComplexMatrix::Identity(spec.sites(), spec.sites());
    ComplexMatrix factor;
    double last_h = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double h = f.value_at((k - 0.5) * dt);
        if (k == 1 || h != last_h) {
            factor = propagator_stationary(spec, h, dt);
            last_h = h;
        }
        U = factor * U;
    }
    return U;
}

MonodromyResult floquet_spectrum(ComplexMatrix propagator, double period, double eig_tol) {
    const double omega = 2.0 * std::numbers::pi / period;
    const auto eig = eig_general(propagator, eig_tol);

    struct Entry {
        Complex energy;
        Complex multiplier;
    };
    std::vector<Entry> entries;
    entries.reserve(eig.eigenvalues.size());
    for (const Complex mu : eig.eigenvalues) {
        Complex e = kI * principal_log(mu) / period;
        if (e.real() <= -0.5 * omega) e += omega;
        entries.push_back({e, mu});
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.energy.real() < b.energy.real(); });
    // Real parts equal to within rounding count as ties and are ordered by Im.
    const double tie = 1e-9 * omega;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].energy.real() - entries[j - 1].energy.real() <= tie) ++j;
        std::sort(entries.begin() + static_cast<std::ptrdiff_t>(i), entries.begin() + static_cast<std::ptrdiff_t>(j),
                  [](const Entry& a, const Entry& b) { return a.energy.imag() < b.energy.imag(); });
        i = j;
    }

    MonodromyResult out;
    std::vector<Complex> energies;
    for (const auto& e : entries) {
        energies.push_back(e.energy);
        out.multipliers.push_back(e.multiplier);
    }
    out.quasi_energies = QuasiEnergySpectrum::from(std::move(energies),
                                                   "principal log: E = (i/T) ln mu, Re E in (-omega/2, omega/2]");
    out.propagator = std::move(propagator);
    out.period = period;
    return out;
}

MonodromyResult monodromy(const ChainSpec& spec, const GaugeField& f, const MonodromyOptions& options) {
    const double period = f.require_period("monodromy");
    const bool exact = options.route == MonodromyRoute::automatic && f.piecewise_constant();

    auto result = floquet_spectrum(period_propagator(spec, f, options.steps, options.route), period, options.eig_tol);
    result.exact = exact;

    if (options.self_check && !exact && options.steps >= 2) {
        const auto coarse = floquet_spectrum(period_propagator(spec, f, options.steps / 2, options.route), period,
                                             options.eig_tol);
        double worst = 0.0;
        for (const Complex mu : result.multipliers) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Complex nu : coarse.multipliers) nearest = std::min(nearest, std::abs(mu - nu));
            worst = std::max(worst, nearest / (std::abs(mu) * period));
        }
        result.estimated_error = worst;
    }
    return result;
}

MonodromyResult monodromy(const ChainSpec& spec, const GaugeField& f, int steps) {
    MonodromyOptions options;
    options.steps = steps;
    return monodromy(spec, f, options);
}

}  // namespace igauge::chain
