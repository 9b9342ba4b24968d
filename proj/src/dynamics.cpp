#include "igauge/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "igauge/errors.hpp"

namespace igauge {

namespace {

double step_length(const GaugeField& f, double span, int steps_per_period) {
    if (steps_per_period < 1) throw DomainError("simulate: steps per period must be >= 1");
    if (const auto period = f.period()) return *period / steps_per_period;
    return span / steps_per_period;
}

// Breakpoints of f inside (a, b), in absolute time.
std::vector<double> cuts_between(const GaugeField& f, double a, double b) {
    std::vector<double> cuts;
    const auto period = f.period();
    const auto base = f.breakpoints();
    if (!period || base.empty()) return cuts;
    const double first = std::floor(a / *period);
    for (double cycle = first; cycle * *period < b; cycle += 1.0)
        for (double x : base) {
            const double t = cycle * *period + x;
            if (t > a && t < b) cuts.push_back(t);
        }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

// Midpoint-field exact propagator over [a, b], split at the field's breakpoints.
ComplexMatrix substep(const LatticeSpec& spec, const GaugeField& f, double a, double b) {
    const auto cuts = cuts_between(f, a, b);
    double lo = a;
    ComplexMatrix U;
    bool first = true;
    auto apply = [&](double hi) {
        const ComplexMatrix factor = stationary_propagator(spec, f.value_at(0.5 * (lo + hi)), hi - lo);
        U = first ? factor : ComplexMatrix(factor * U);
        first = false;
        lo = hi;
    };
    for (double c : cuts) apply(c);
    apply(b);
    return U;
}

}  // namespace

ComplexVector site_state(int sites, int site) {
    if (site < 0 || site >= sites) throw DomainError("site index out of range");
    ComplexVector c = ComplexVector::Zero(sites);
    c(site) = 1.0;
    return c;
}

Trajectory simulate(const LatticeSpec& spec, const GaugeField& f, const ComplexVector& c0, double t_end,
                    int steps_per_period) {
    const int n = sites(spec);
    if (c0.size() != n) throw DimensionError("simulate: initial state has wrong length");
    if (!(c0.norm() > 0.0)) throw DomainError("simulate: initial state must be non-zero");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("simulate: t_end must be non-negative");

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.amplitudes.push_back(c0);
    if (t_end == 0.0) return traj;

    const double dt = step_length(f, t_end, steps_per_period);
    ComplexVector c = c0;
    for (long k = 1;; ++k) {
        const double a = (k - 1) * dt;
        double b = k * dt;
        const bool last = b >= t_end * (1.0 - 1e-13);
        if (last) b = t_end;
        c = substep(spec, f, a, b) * c;
        traj.times.push_back(b);
        traj.amplitudes.push_back(c);
        if (last) break;
    }
    return traj;
}

ComplexMatrix propagate(const LatticeSpec& spec, const GaugeField& f, double t0, double t1, int steps_per_period) {
    if (!(t1 >= t0)) throw DomainError("propagate: need t1 >= t0");
    const int n = sites(spec);
    ComplexMatrix U = ComplexMatrix::Identity(n, n);
    if (t1 == t0) return U;
    const double dt = step_length(f, t1 - t0, steps_per_period);
    const long first = static_cast<long>(std::floor(t0 / dt));
    for (long k = first;; ++k) {
        const double a = std::max(t0, k * dt);
        double b = (k + 1) * dt;
        const bool last = b >= t1 * (1.0 - 1e-13);
        if (last) b = t1;
        if (b > a) U = substep(spec, f, a, b) * U;
        if (last) break;
    }
    return U;
}

}  // namespace igauge
