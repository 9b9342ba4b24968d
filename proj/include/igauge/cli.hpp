#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "igauge/gauge.hpp"
#include "igauge/lattice.hpp"

namespace igauge::cli {

enum class Command { spectrum, dynamics, quasienergy, tongues, perturb, check_condition };
enum class Topology { ring, chain };
enum class Format { csv, json };

/// Field as written in a config: {type, h0|h1|h2, omega|period, t1}, plus
/// times/values for sampled fields. Scan families (square, sin) may omit h1 and omega.
struct FieldConfig {
    std::string type = "constant";
    std::optional<double> h0, h1, h2, omega, period, t1;
    std::vector<double> times, values;

    bool operator==(const FieldConfig&) const = default;
};

/// lo:hi:count, count points inclusive of both ends.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    bool operator==(const GridSpec&) const = default;
};

/// Everything a run depends on. All physical quantities in kappa-normalised
/// units (kappa = 1): energies and frequencies in kappa, times in 1/kappa.
struct RunConfig {
    Command command = Command::spectrum;
    Topology topology = Topology::chain;
    int sites = 3;
    FieldConfig field;

    int steps = 2048;
    double tol = 1e-12;
    double threshold = 1e-6;
    int l_max = 7;
    double detuning_tol = 0.02;

    double t_end = 0.0;
    std::string init = "site:1";

    std::optional<GridSpec> omega_grid;
    std::optional<GridSpec> h1_grid;

    std::string output_path;  // empty: standard output
    Format format = Format::csv;

    /// Worker threads for scans; 0 = IGAUGE_WORKERS or hardware concurrency. Not part of the config hash.
    unsigned workers = 0;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON config. Throws ConfigError listing every violation.
RunConfig config_from_json(const nlohmann::json& j);

/// Canonical JSON form; config_from_json(to_json(c)) == c (workers excluded).
nlohmann::json to_json(const RunConfig& c);

/// "sin:h1=0.4,omega=1.4142" -> {"type":"sin","h1":0.4,"omega":1.4142}.
nlohmann::json parse_field_flag(const std::string& text, std::vector<std::string>& violations);

/// "0.2:4.5:400" -> {"lo":0.2,"hi":4.5,"count":400}.
nlohmann::json parse_grid_flag(const std::string& text, const std::string& name, std::vector<std::string>& violations);

GaugeField make_field(const FieldConfig& fc);

/// 64-bit FNV-1a of the canonical config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& c);

/// Executes the run and writes the artifact to `out` (or the configured path).
/// Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point: parses argv, runs, reports errors as JSON on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace igauge::cli
