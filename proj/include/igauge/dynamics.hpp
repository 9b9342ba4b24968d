#pragma once

#include <vector>

#include "igauge/gauge.hpp"
#include "igauge/lattice.hpp"

namespace igauge {

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexVector> amplitudes;

    /// |c_n(t_k)| for sample k.
    Eigen::VectorXd norms(std::size_t k) const { return amplitudes[k].cwiseAbs(); }
};

/// Exact static propagators over substeps of length T/steps_per_period, each
/// using the field at the substep midpoint. Substeps are further split at the
/// field's breakpoints, so piecewise-constant drives are propagated exactly.
/// Fields without a period use t_end / steps_per_period as the step.
///
/// Samples are taken at every substep boundary and at t_end.
Trajectory simulate(const LatticeSpec& spec, const GaugeField& f, const ComplexVector& c0, double t_end,
                    int steps_per_period);

/// Propagator from t0 to t1 with the same stepping as simulate().
ComplexMatrix propagate(const LatticeSpec& spec, const GaugeField& f, double t0, double t1, int steps_per_period);

/// Kronecker delta at index `site` (0-based storage index).
ComplexVector site_state(int sites, int site);

}  // namespace igauge
