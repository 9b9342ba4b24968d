#pragma once

#include <cstddef>
#include <vector>

#include "igauge/chain.hpp"
#include "igauge/lattice.hpp"
#include "igauge/perturbation.hpp"

namespace igauge::scan {

/// Default instability threshold on max |Im E| / kappa.
inline constexpr double kDefaultThreshold = 1e-6;

enum class DriveShape { square_wave, sinusoidal };

/// Unit-amplitude-per-h1 drive of the given shape.
GaugeField make_drive(DriveShape shape, double h1, double omega);

struct ResonanceSource {
    int n = 0;
    int m = 0;
    int l = 0;
};

struct ResonanceLine {
    double omega = 0.0;
    /// Level pairs (n < m) and harmonic orders producing this frequency.
    std::vector<ResonanceSource> sources;
};

struct ResonancePrediction {
    /// Ascending, distinct to 1e-12, all in (0, 4 kappa].
    std::vector<ResonanceLine> lines;

    std::vector<double> frequencies() const;
};

/// omega = |E_n - E_m| / l for n != m and l = 1..l_max. With selection rules on,
/// pairs with a vanishing coupling and harmonics absent from the drive are dropped.
ResonancePrediction predicted_resonances(const ChainSpec& spec, int l_max, bool selection_rules,
                                         DriveShape shape = DriveShape::square_wave);

/// Stability map over (omega, h1). Stored row-major in (omega, h1): cell (i, j)
/// at index i * h1_axis.size() + j.
struct TongueGrid {
    std::vector<double> omega_axis;
    std::vector<double> h1_axis;
    std::vector<double> measure;
    double threshold = kDefaultThreshold;
    std::vector<bool> flags;
    std::size_t warnings = 0;

    std::size_t index(std::size_t i, std::size_t j) const { return i * h1_axis.size() + j; }
    double at(std::size_t i, std::size_t j) const { return measure[index(i, j)]; }
    bool flagged(std::size_t i, std::size_t j) const { return flags[index(i, j)]; }
};

struct ScanOptions {
    int steps = chain::kDefaultSteps;
    double threshold = kDefaultThreshold;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Evaluates max |Im E| from the monodromy at every (omega_i, h1_j). Cells whose
/// eigen-reduction fails hold NaN and are counted in `warnings`.
TongueGrid tongue_scan(const ChainSpec& spec, DriveShape shape, const std::vector<double>& omega_grid,
                       const std::vector<double>& h1_grid, const ScanOptions& options = {});

/// Roots of the flagged regions: sweeping upward in h1, a flagged run of cells
/// starts a tongue unless a cell within one omega column of it was flagged in
/// some lower row; its tip is the centroid omega of that run. Unstable regions
/// only grow with h1, so the lookback just bridges rows that miss a tongue
/// narrower than the grid spacing.
std::vector<double> tongue_tips(const TongueGrid& grid);

/// n evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace igauge::scan
