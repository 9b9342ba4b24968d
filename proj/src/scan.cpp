#include "igauge/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "igauge/errors.hpp"

namespace igauge::scan {

GaugeField make_drive(DriveShape shape, double h1, double omega) {
    return shape == DriveShape::square_wave ? GaugeField::square_wave(h1, omega) : GaugeField::sinusoidal(h1, omega);
}

std::vector<double> ResonancePrediction::frequencies() const {
    std::vector<double> out;
    out.reserve(lines.size());
    for (const auto& line : lines) out.push_back(line.omega);
    return out;
}

ResonancePrediction predicted_resonances(const ChainSpec& spec, int l_max, bool selection_rules, DriveShape shape) {
    if (l_max < 1) throw DomainError("predicted_resonances: l_max must be >= 1");
    const auto setup = perturbation::build_setup(spec);
    const int n = spec.sites();
    const double cutoff = 4.0 * spec.kappa();

    std::vector<bool> harmonic_present(static_cast<std::size_t>(l_max) + 1, true);
    if (selection_rules) {
        const auto unit = make_drive(shape, 1.0, 1.0);
        for (int l = 1; l <= l_max; ++l)
            harmonic_present[static_cast<std::size_t>(l)] = std::abs(perturbation::harmonic_amplitude(unit, l)) > 1e-10;
    }

    std::vector<std::pair<double, ResonanceSource>> raw;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            if (selection_rules && std::abs(setup.coupling(a - 1, b - 1)) <= 1e-12 * spec.kappa()) continue;
            const double gap = std::abs(setup.energies[static_cast<std::size_t>(a - 1)] -
                                        setup.energies[static_cast<std::size_t>(b - 1)]);
            for (int l = 1; l <= l_max; ++l) {
                if (!harmonic_present[static_cast<std::size_t>(l)]) continue;
                const double omega = gap / l;
                if (omega > 0.0 && omega <= cutoff + 1e-12) raw.push_back({omega, {a, b, l}});
            }
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    ResonancePrediction out;
    for (const auto& [omega, source] : raw) {
        if (!out.lines.empty() && omega - out.lines.back().omega <= 1e-12) {
            out.lines.back().sources.push_back(source);
        } else {
            out.lines.push_back({omega, {source}});
        }
    }
    return out;
}

TongueGrid tongue_scan(const ChainSpec& spec, DriveShape shape, const std::vector<double>& omega_grid,
                       const std::vector<double>& h1_grid, const ScanOptions& options) {
    if (omega_grid.empty() || h1_grid.empty()) throw DomainError("tongue_scan: empty grid");
    if (!std::is_sorted(omega_grid.begin(), omega_grid.end()) || !std::is_sorted(h1_grid.begin(), h1_grid.end()))
        throw DomainError("tongue_scan: grids must be ascending");
    for (double w : omega_grid)
        if (!(w > 0.0)) throw DomainError("tongue_scan: frequencies must be positive");

    TongueGrid grid;
    grid.omega_axis = omega_grid;
    grid.h1_axis = h1_grid;
    grid.threshold = options.threshold;
    const std::size_t cells = omega_grid.size() * h1_grid.size();
    grid.measure.assign(cells, 0.0);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < cells; idx = next++) {
            const double omega = omega_grid[idx / h1_grid.size()];
            const double h1 = h1_grid[idx % h1_grid.size()];
            try {
                const auto result = chain::monodromy(spec, make_drive(shape, h1, omega), options.steps);
                grid.measure[idx] = result.quasi_energies.max_im / spec.kappa();
            } catch (const Error&) {
                grid.measure[idx] = std::numeric_limits<double>::quiet_NaN();
                ++failures;
            }
        }
    };

    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    grid.warnings = failures.load();
    grid.flags.resize(cells);
    for (std::size_t k = 0; k < cells; ++k) grid.flags[k] = grid.measure[k] > grid.threshold;
    return grid;
}

std::vector<double> tongue_tips(const TongueGrid& grid) {
    std::vector<double> tips;
    const std::size_t nw = grid.omega_axis.size();
    const std::size_t nh = grid.h1_axis.size();
    if (nw == 0 || nh == 0) return tips;

    // Columns flagged in any lower row. Narrow tongues are sampled
    // intermittently, so looking only at the row below would split them.
    std::vector<bool> seen(nw, false);
    for (std::size_t j = 0; j < nh; ++j) {
        for (std::size_t i = 0; i < nw;) {
            if (!grid.flagged(i, j)) {
                ++i;
                continue;
            }
            std::size_t end = i;
            while (end + 1 < nw && grid.flagged(end + 1, j)) ++end;

            bool connected = false;
            const std::size_t lo = i > 0 ? i - 1 : 0;
            const std::size_t hi = std::min(end + 1, nw - 1);
            for (std::size_t k = lo; k <= hi && !connected; ++k) connected = seen[k];
            if (!connected) {
                double sum = 0.0;
                for (std::size_t k = i; k <= end; ++k) sum += grid.omega_axis[k];
                tips.push_back(sum / static_cast<double>(end - i + 1));
            }
            i = end + 1;
        }
        for (std::size_t i = 0; i < nw; ++i)
            if (grid.flagged(i, j)) seen[i] = true;
    }
    std::sort(tips.begin(), tips.end());
    return tips;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

}  // namespace igauge::scan
