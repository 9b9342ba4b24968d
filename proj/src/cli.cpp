#include "igauge/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "igauge/chain.hpp"
#include "igauge/dynamics.hpp"
#include "igauge/errors.hpp"
#include "igauge/perturbation.hpp"
#include "igauge/ring.hpp"
#include "igauge/scan.hpp"

#ifndef IGAUGE_VERSION
#define IGAUGE_VERSION "0.0.0"
#endif

namespace igauge::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Command> kCommands = {
    {"spectrum", Command::spectrum}, {"dynamics", Command::dynamics}, {"quasienergy", Command::quasienergy},
    {"tongues", Command::tongues},   {"perturb", Command::perturb},   {"check-condition", Command::check_condition},
};

// Canonical field type names and accepted aliases.
const std::map<std::string, std::string> kFieldTypes = {
    {"constant", "constant"}, {"sin", "sin"},           {"sinusoidal", "sin"},   {"square", "square"},
    {"square_wave", "square"}, {"piecewise", "piecewise"}, {"piecewise_two_level", "piecewise"},
    {"sampled", "sampled"},
};

std::string command_name(Command c) {
    for (const auto& [name, value] : kCommands)
        if (value == c) return name;
    return "?";
}

std::optional<double> parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long> parse_long(const std::string& text) {
    long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

// Reads an optional number at j[key]; records a violation on type mismatch.
std::optional<double> number_at(const json& j, const std::string& key, const std::string& where,
                                std::vector<std::string>& violations) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_number()) {
        violations.push_back(where + "." + key + " must be a number");
        return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        violations.push_back(where + "." + key + " must be finite");
        return std::nullopt;
    }
    return d;
}

std::optional<long> integer_at(const json& j, const std::string& key, const std::string& where,
                               std::vector<std::string>& violations) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) {
        violations.push_back(where + "." + key + " must be an integer");
        return std::nullopt;
    }
    return v.get<long>();
}

std::optional<std::string> string_at(const json& j, const std::string& key, const std::string& where,
                                     std::vector<std::string>& violations) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_string()) {
        violations.push_back(where + "." + key + " must be a string");
        return std::nullopt;
    }
    return v.get<std::string>();
}

std::vector<double> numbers_at(const json& j, const std::string& key, const std::string& where,
                               std::vector<std::string>& violations) {
    std::vector<double> out;
    if (!j.is_object() || !j.contains(key)) return out;
    const auto& v = j.at(key);
    if (!v.is_array()) {
        violations.push_back(where + "." + key + " must be an array of numbers");
        return out;
    }
    for (const auto& x : v) {
        if (!x.is_number()) {
            violations.push_back(where + "." + key + " must be an array of numbers");
            return {};
        }
        out.push_back(x.get<double>());
    }
    return out;
}

std::optional<GridSpec> grid_at(const json& j, const std::string& key, std::vector<std::string>& violations) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    json g = j.at(key);
    const std::string where = "scan." + key;
    if (g.is_string()) g = parse_grid_flag(g.get<std::string>(), where, violations);
    if (!g.is_object()) {
        if (!g.is_null()) violations.push_back(where + " must be \"lo:hi:count\" or {lo, hi, count}");
        return std::nullopt;
    }
    const auto lo = number_at(g, "lo", where, violations);
    const auto hi = number_at(g, "hi", where, violations);
    const auto count = integer_at(g, "count", where, violations);
    if (!lo || !hi || !count) {
        violations.push_back(where + " needs lo, hi and count");
        return std::nullopt;
    }
    if (*count < 1) violations.push_back(where + ".count must be >= 1");
    if (*hi < *lo) violations.push_back(where + ": hi must be >= lo");
    return GridSpec{*lo, *hi, static_cast<std::size_t>(std::max(*count, 1L))};
}

FieldConfig field_from_json(const json& j, std::vector<std::string>& violations) {
    FieldConfig fc;
    if (!j.is_object()) {
        violations.push_back("field must be an object");
        return fc;
    }
    if (const auto type = string_at(j, "type", "field", violations)) {
        const auto it = kFieldTypes.find(*type);
        if (it == kFieldTypes.end())
            violations.push_back("field.type \"" + *type + "\" is not one of constant, sin, square, piecewise, sampled");
        else
            fc.type = it->second;
    } else {
        violations.push_back("field.type is required");
    }
    fc.h0 = number_at(j, "h0", "field", violations);
    fc.h1 = number_at(j, "h1", "field", violations);
    fc.h2 = number_at(j, "h2", "field", violations);
    fc.omega = number_at(j, "omega", "field", violations);
    fc.period = number_at(j, "period", "field", violations);
    fc.t1 = number_at(j, "t1", "field", violations);
    fc.times = numbers_at(j, "times", "field", violations);
    fc.values = numbers_at(j, "values", "field", violations);
    return fc;
}

json field_to_json(const FieldConfig& fc) {
    json j;
    j["type"] = fc.type;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("h0", fc.h0);
    put("h1", fc.h1);
    put("h2", fc.h2);
    put("omega", fc.omega);
    put("period", fc.period);
    put("t1", fc.t1);
    if (fc.type == "sampled") {
        j["times"] = fc.times;
        j["values"] = fc.values;
    }
    return j;
}

bool field_is_periodic(const FieldConfig& fc) {
    return fc.type != "constant" || fc.period || fc.omega;
}

// Checks that the field config describes a complete, valid field. `scan_family`
// relaxes the sin/square requirements (amplitude and frequency come from the grids).
void validate_field(const FieldConfig& fc, bool scan_family, std::vector<std::string>& v) {
    auto positive = [&](const std::optional<double>& x, const char* name) {
        if (!x)
            v.push_back(std::string("field.") + name + " is required for a " + fc.type + " field");
        else if (!(*x > 0.0))
            v.push_back(std::string("field.") + name + " must be positive");
    };
    if (fc.type == "constant") {
        if (!fc.h0) v.push_back("field.h0 is required for a constant field");
        if (fc.period && fc.omega) v.push_back("field: give either period or omega, not both");
        if (fc.period && !(*fc.period > 0.0)) v.push_back("field.period must be positive");
        if (fc.omega && !(*fc.omega > 0.0)) v.push_back("field.omega must be positive");
    } else if (fc.type == "sin" || fc.type == "square") {
        if (!scan_family) {
            if (!fc.h1) v.push_back("field.h1 is required for a " + fc.type + " field");
            if (fc.period && fc.omega) v.push_back("field: give either period or omega, not both");
            if (!fc.period) positive(fc.omega, "omega");
            else positive(fc.period, "period");
        }
    } else if (fc.type == "piecewise") {
        positive(fc.h1, "h1");
        positive(fc.h2, "h2");
        positive(fc.period, "period");
        positive(fc.t1, "t1");
        if (fc.t1 && fc.period && !(*fc.t1 < *fc.period)) v.push_back("field.t1 must be less than field.period");
    } else if (fc.type == "sampled") {
        positive(fc.period, "period");
        if (fc.times.empty()) v.push_back("field.times must hold at least one sample");
        if (fc.times.size() != fc.values.size()) v.push_back("field.times and field.values differ in length");
        for (std::size_t k = 0; k < fc.times.size(); ++k) {
            if (fc.times[k] < 0.0 || (fc.period && fc.times[k] >= *fc.period)) {
                v.push_back("field.times must lie in [0, period)");
                break;
            }
            if (k > 0 && !(fc.times[k] > fc.times[k - 1])) {
                v.push_back("field.times must be strictly increasing");
                break;
            }
        }
    }
}

void validate_init(const RunConfig& c, std::vector<std::string>& v) {
    if (c.init.rfind("site:", 0) == 0) {
        const auto site = parse_long(c.init.substr(5));
        const long first = c.topology == Topology::ring ? 0 : 1;
        if (!site)
            v.push_back("dynamics.init: \"" + c.init + "\" has no site number");
        else if (*site < first || *site >= first + c.sites)
            v.push_back("dynamics.init: site " + std::to_string(*site) + " outside " + std::to_string(first) + ".." +
                        std::to_string(first + c.sites - 1));
    } else if (c.init.rfind("vector:", 0) == 0) {
        if (c.init.size() == 7) v.push_back("dynamics.init: vector: needs a path");
    } else {
        v.push_back("dynamics.init must be site:<n> or vector:<path>");
    }
}

void validate(const RunConfig& c, std::vector<std::string>& v) {
    if (c.topology == Topology::ring && c.sites < 3) v.push_back("lattice.n must be >= 3 for a ring");
    if (c.topology == Topology::chain && c.sites < 2) v.push_back("lattice.n must be >= 2 for a chain");
    if (c.steps < 1) v.push_back("numeric.steps must be >= 1");
    if (!(c.tol > 0.0)) v.push_back("numeric.tol must be positive");
    if (!(c.threshold > 0.0)) v.push_back("numeric.threshold must be positive");
    if (c.l_max < 1) v.push_back("numeric.l_max must be >= 1");
    if (!(c.detuning_tol > 0.0)) v.push_back("numeric.detuning_tol must be positive");

    switch (c.command) {
        case Command::spectrum:
            if (c.topology == Topology::ring) {
                if (c.field.type != "constant")
                    v.push_back("spectrum on a ring needs a constant field");
                else
                    validate_field(c.field, false, v);
            }
            break;
        case Command::dynamics:
            validate_field(c.field, false, v);
            if (!(c.t_end > 0.0)) v.push_back("dynamics.t_end must be positive");
            validate_init(c, v);
            break;
        case Command::quasienergy:
            validate_field(c.field, false, v);
            if (c.topology == Topology::chain && !field_is_periodic(c.field))
                v.push_back("quasienergy on a chain needs a period (set field.period or field.omega)");
            break;
        case Command::tongues:
            if (c.topology != Topology::chain) v.push_back("tongues requires lattice.topology = chain");
            if (c.field.type != "square" && c.field.type != "sin") v.push_back("tongues needs a square or sin field family");
            if (!c.omega_grid) v.push_back("scan.omega grid is required");
            else if (!(c.omega_grid->lo > 0.0)) v.push_back("scan.omega.lo must be positive");
            if (!c.h1_grid) v.push_back("scan.h1 grid is required");
            break;
        case Command::perturb:
            if (c.topology != Topology::chain) v.push_back("perturb requires lattice.topology = chain");
            validate_field(c.field, false, v);
            if (!field_is_periodic(c.field)) v.push_back("perturb needs a periodic field");
            break;
        case Command::check_condition:
            validate_field(c.field, false, v);
            if (!field_is_periodic(c.field)) v.push_back("check-condition needs a periodic field");
            break;
    }
}

// ---------------------------------------------------------------------------
// Artifact writing

using Cell = std::variant<double, long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Artifact {
    std::vector<std::pair<std::string, json>> metadata;
    json extras = json::object();
    std::string data_key = "data";
    Table table;
};

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(x);
            else if constexpr (std::is_same_v<T, long>)
                return std::to_string(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "1" : "0";
            else
                return x;
        },
        c);
}

json cell_json(const Cell& c) {
    return std::visit([](const auto& x) { return json(x); }, c);
}

void write_artifact(const Artifact& a, Format format, std::ostream& os) {
    if (format == Format::csv) {
        for (const auto& [key, value] : a.metadata)
            os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        for (const auto& [key, value] : a.extras.items())
            os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        for (std::size_t k = 0; k < a.table.columns.size(); ++k) os << (k ? "," : "") << a.table.columns[k];
        os << "\n";
        for (const auto& row : a.table.rows) {
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
            os << "\n";
        }
        return;
    }
    json doc = a.extras;
    json meta = json::object();
    for (const auto& [key, value] : a.metadata) meta[key] = value;
    doc["metadata"] = meta;
    json rows = json::array();
    for (const auto& row : a.table.rows) {
        json obj = json::object();
        for (std::size_t k = 0; k < row.size(); ++k) obj[a.table.columns[k]] = cell_json(row[k]);
        rows.push_back(std::move(obj));
    }
    doc[a.data_key] = std::move(rows);
    os << doc.dump(2) << "\n";
}

LatticeSpec lattice_of(const RunConfig& c) {
    if (c.topology == Topology::ring) return RingSpec(c.sites);
    return ChainSpec(c.sites);
}

int first_site(const RunConfig& c) {
    return c.topology == Topology::ring ? 0 : 1;
}

ComplexVector initial_state(const RunConfig& c) {
    if (c.init.rfind("site:", 0) == 0)
        return site_state(c.sites, static_cast<int>(*parse_long(c.init.substr(5))) - first_site(c));
    const std::string path = c.init.substr(7);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open initial vector file " + path);
    // One amplitude per line: "re im" or "re".
    std::vector<Complex> amps;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double re = 0.0, im = 0.0;
        if (!(ls >> re)) continue;
        ls >> im;
        amps.emplace_back(re, im);
    }
    if (static_cast<int>(amps.size()) != c.sites)
        throw ConfigError({"dynamics.init: vector file has " + std::to_string(amps.size()) + " entries, lattice has " +
                           std::to_string(c.sites)});
    ComplexVector v(c.sites);
    for (int i = 0; i < c.sites; ++i) v(i) = amps[static_cast<std::size_t>(i)];
    return v;
}

unsigned resolve_workers(unsigned requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("IGAUGE_WORKERS")) {
        if (const auto n = parse_long(env); n && *n > 0) return static_cast<unsigned>(*n);
    }
    return 0;
}

std::vector<double> grid_values(const GridSpec& g) {
    return scan::linspace(g.lo, g.hi, g.count);
}

Artifact run_spectrum(const RunConfig& c) {
    Artifact a;
    a.table.columns = {"l", "re_E", "im_E"};
    if (c.topology == Topology::ring) {
        const auto spec = ring::stationary_spectrum(RingSpec(c.sites), *c.field.h0);
        for (std::size_t l = 0; l < spec.values.size(); ++l)
            a.table.rows.push_back({static_cast<long>(l), spec.values[l].real(), spec.values[l].imag()});
        a.extras["max_im"] = spec.max_im;
    } else {
        const auto energies = chain::stationary_spectrum(ChainSpec(c.sites));
        for (std::size_t l = 0; l < energies.size(); ++l)
            a.table.rows.push_back({static_cast<long>(l + 1), energies[l], 0.0});
        a.extras["max_im"] = 0.0;
    }
    return a;
}

Artifact run_dynamics(const RunConfig& c) {
    const auto field = make_field(c.field);
    const auto traj = simulate(lattice_of(c), field, initial_state(c), c.t_end, c.steps);
    Artifact a;
    a.table.columns = {"t"};
    for (int n = 0; n < c.sites; ++n) {
        const std::string label = std::to_string(n + first_site(c));
        a.table.columns.push_back("re_c" + label);
        a.table.columns.push_back("im_c" + label);
    }
    for (int n = 0; n < c.sites; ++n) a.table.columns.push_back("abs_c" + std::to_string(n + first_site(c)));

    double peak = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<Cell> row{traj.times[k]};
        const auto& amp = traj.amplitudes[k];
        for (int n = 0; n < c.sites; ++n) {
            row.emplace_back(amp(n).real());
            row.emplace_back(amp(n).imag());
        }
        for (int n = 0; n < c.sites; ++n) {
            row.emplace_back(std::abs(amp(n)));
            peak = std::max(peak, std::abs(amp(n)));
        }
        a.table.rows.push_back(std::move(row));
    }
    a.extras["max_amplitude"] = peak;
    return a;
}

Artifact run_quasienergy(const RunConfig& c) {
    const auto field = make_field(c.field);
    Artifact a;
    if (c.topology == Topology::ring) {
        const auto q = ring::quasienergies(RingSpec(c.sites), field);
        a.table.columns = {"l", "re_E", "im_E"};
        for (std::size_t l = 0; l < q.values.size(); ++l)
            a.table.rows.push_back({static_cast<long>(l), q.values[l].real(), q.values[l].imag()});
        a.extras["max_im"] = q.max_im;
        a.extras["sinh_average"] = sinh_average(field, c.tol);
        a.extras["cosh_average"] = cosh_average(field, c.tol);
        a.extras["branch"] = q.branch;
        return a;
    }
    chain::MonodromyOptions opts;
    opts.steps = c.steps;
    opts.self_check = true;
    const auto m = chain::monodromy(ChainSpec(c.sites), field, opts);
    a.table.columns = {"l", "re_E", "im_E", "re_mu", "im_mu"};
    for (std::size_t l = 0; l < m.multipliers.size(); ++l) {
        const Complex e = m.quasi_energies.values[l];
        a.table.rows.push_back({static_cast<long>(l + 1), e.real(), e.imag(), m.multipliers[l].real(),
                                m.multipliers[l].imag()});
    }
    a.extras["max_im"] = m.quasi_energies.max_im;
    a.extras["exact_product"] = m.exact;
    a.extras["estimated_error"] = m.estimated_error ? json(*m.estimated_error) : json(nullptr);
    a.extras["branch"] = m.quasi_energies.branch;
    return a;
}

Artifact run_tongues(const RunConfig& c, std::size_t& warnings) {
    const auto shape = c.field.type == "square" ? scan::DriveShape::square_wave : scan::DriveShape::sinusoidal;
    scan::ScanOptions opts;
    opts.steps = c.steps;
    opts.threshold = c.threshold;
    opts.workers = resolve_workers(c.workers);
    const ChainSpec spec(c.sites);
    const auto grid = scan::tongue_scan(spec, shape, grid_values(*c.omega_grid), grid_values(*c.h1_grid), opts);
    warnings = grid.warnings;

    Artifact a;
    a.table.columns = {"omega_over_kappa", "h1", "max_im_quasienergy_over_kappa", "unstable"};
    for (std::size_t i = 0; i < grid.omega_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.h1_axis.size(); ++j)
            a.table.rows.push_back({grid.omega_axis[i], grid.h1_axis[j], grid.at(i, j), grid.flagged(i, j)});

    a.extras["tongue_tips"] = scan::tongue_tips(grid);
    std::vector<double> predicted;
    for (double w : scan::predicted_resonances(spec, c.l_max, true, shape).frequencies())
        if (w >= grid.omega_axis.front() && w <= grid.omega_axis.back()) predicted.push_back(w);
    a.extras["predicted_resonances"] = predicted;
    return a;
}

Artifact run_perturb(const RunConfig& c) {
    const auto field = make_field(c.field);
    const auto setup = perturbation::build_setup(ChainSpec(c.sites));
    const auto R = perturbation::build_R(setup, field, c.detuning_tol);

    Artifact a;
    a.data_key = "resonances";
    a.table.columns = {"n", "m", "l", "omega"};
    for (const auto& h : R.harmonics_used) {
        const double gap = setup.energies[static_cast<std::size_t>(h.n - 1)] -
                           setup.energies[static_cast<std::size_t>(h.m - 1)];
        a.table.rows.push_back({static_cast<long>(h.n), static_cast<long>(h.m), static_cast<long>(h.l),
                                std::abs(gap) / std::abs(h.l)});
    }
    a.extras["N"] = c.sites;
    a.extras["field"] = field_to_json(c.field);
    a.extras["growth_rate"] = perturbation::predicted_growth_rate(R);
    return a;
}

Artifact run_check_condition(const RunConfig& c) {
    const auto field = make_field(c.field);
    const double s = sinh_average(field, c.tol);
    const double ch = cosh_average(field, c.tol);
    Artifact a;
    a.table.columns = {"sinh_average", "cosh_average", "pseudo_hermitian", "kappa_eff"};
    a.table.rows.push_back({s, ch, std::abs(s) <= 1e-10, ch});
    return a;
}

void write_error(std::ostream& err, const std::string& kind, const std::vector<std::string>& messages) {
    json e;
    e["error"] = kind;
    e["violations"] = messages;
    err << e.dump() << std::endl;
}

}  // namespace

std::string version() {
    return IGAUGE_VERSION;
}

json parse_field_flag(const std::string& text, std::vector<std::string>& violations) {
    json j;
    const auto colon = text.find(':');
    j["type"] = text.substr(0, colon);
    if (colon == std::string::npos) return j;
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            violations.push_back("--field: \"" + item + "\" is not key=value");
            continue;
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "path" || key == "file") {
            std::ifstream in(value);
            json sampled;
            if (!in || !(in >> sampled) || !sampled.is_object()) {
                violations.push_back("--field: cannot read sampled field JSON from " + value);
                continue;
            }
            for (const auto& [k, v] : sampled.items()) j[k] = v;
            continue;
        }
        if (const auto d = parse_double(value))
            j[key] = *d;
        else
            violations.push_back("--field: " + key + "=\"" + value + "\" is not a number");
    }
    return j;
}

json parse_grid_flag(const std::string& text, const std::string& name, std::vector<std::string>& violations) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
        violations.push_back(name + ": \"" + text + "\" is not lo:hi:count");
        return nullptr;
    }
    const auto lo = parse_double(parts[0]);
    const auto hi = parse_double(parts[1]);
    const auto count = parse_long(parts[2]);
    if (!lo || !hi || !count) {
        violations.push_back(name + ": \"" + text + "\" is not lo:hi:count");
        return nullptr;
    }
    return json{{"lo", *lo}, {"hi", *hi}, {"count", *count}};
}

RunConfig config_from_json(const json& j) {
    std::vector<std::string> v;
    RunConfig c;
    if (!j.is_object()) throw ConfigError({"config must be a JSON object"});

    if (const auto cmd = string_at(j, "command", "config", v)) {
        const auto it = kCommands.find(*cmd);
        if (it == kCommands.end())
            v.push_back("command \"" + *cmd + "\" is unknown");
        else
            c.command = it->second;
    } else {
        v.push_back("command is required");
    }

    const json lattice = j.value("lattice", json::object());
    if (const auto topo = string_at(lattice, "topology", "lattice", v)) {
        if (*topo == "ring")
            c.topology = Topology::ring;
        else if (*topo == "chain")
            c.topology = Topology::chain;
        else
            v.push_back("lattice.topology must be ring or chain");
    }
    if (const auto n = integer_at(lattice, "n", "lattice", v)) c.sites = static_cast<int>(*n);

    if (j.contains("field"))
        c.field = field_from_json(j.at("field"), v);
    else
        c.field = FieldConfig{};

    const json numeric = j.value("numeric", json::object());
    if (const auto s = integer_at(numeric, "steps", "numeric", v)) c.steps = static_cast<int>(*s);
    if (const auto x = number_at(numeric, "tol", "numeric", v)) c.tol = *x;
    if (const auto x = number_at(numeric, "threshold", "numeric", v)) c.threshold = *x;
    if (const auto x = integer_at(numeric, "l_max", "numeric", v)) c.l_max = static_cast<int>(*x);
    if (const auto x = number_at(numeric, "detuning_tol", "numeric", v)) c.detuning_tol = *x;

    const json dyn = j.value("dynamics", json::object());
    if (const auto x = number_at(dyn, "t_end", "dynamics", v)) c.t_end = *x;
    if (const auto x = string_at(dyn, "init", "dynamics", v))
        c.init = *x;
    else
        c.init = c.topology == Topology::ring ? "site:0" : "site:1";

    const json sc = j.value("scan", json::object());
    c.omega_grid = grid_at(sc, "omega", v);
    c.h1_grid = grid_at(sc, "h1", v);

    const json output = j.value("output", json::object());
    if (const auto p = string_at(output, "path", "output", v)) c.output_path = *p;
    const bool json_default = c.command == Command::perturb || c.command == Command::check_condition;
    c.format = json_default ? Format::json : Format::csv;
    if (const auto f = string_at(output, "format", "output", v)) {
        if (*f == "csv")
            c.format = Format::csv;
        else if (*f == "json")
            c.format = Format::json;
        else
            v.push_back("output.format must be csv or json");
    }

    if (v.empty()) validate(c, v);
    if (!v.empty()) throw ConfigError(std::move(v));
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = command_name(c.command);
    j["lattice"] = {{"topology", c.topology == Topology::ring ? "ring" : "chain"}, {"n", c.sites}};
    j["field"] = field_to_json(c.field);
    j["numeric"] = {{"steps", c.steps},
                    {"tol", c.tol},
                    {"threshold", c.threshold},
                    {"l_max", c.l_max},
                    {"detuning_tol", c.detuning_tol}};
    j["dynamics"] = {{"t_end", c.t_end}, {"init", c.init}};
    json sc = json::object();
    if (c.omega_grid) sc["omega"] = {{"lo", c.omega_grid->lo}, {"hi", c.omega_grid->hi}, {"count", c.omega_grid->count}};
    if (c.h1_grid) sc["h1"] = {{"lo", c.h1_grid->lo}, {"hi", c.h1_grid->hi}, {"count", c.h1_grid->count}};
    j["scan"] = sc;
    j["output"] = {{"path", c.output_path}, {"format", c.format == Format::csv ? "csv" : "json"}};
    return j;
}

GaugeField make_field(const FieldConfig& fc) {
    auto omega_of = [&]() {
        if (fc.omega) return *fc.omega;
        return 2.0 * std::numbers::pi / fc.period.value_or(0.0);
    };
    if (fc.type == "constant") {
        std::optional<double> period = fc.period;
        if (!period && fc.omega) period = 2.0 * std::numbers::pi / *fc.omega;
        return GaugeField::constant(fc.h0.value_or(0.0), period);
    }
    if (fc.type == "sin") return GaugeField::sinusoidal(fc.h1.value_or(0.0), omega_of());
    if (fc.type == "square") return GaugeField::square_wave(fc.h1.value_or(0.0), omega_of());
    if (fc.type == "piecewise")
        return GaugeField::piecewise_two_level(fc.h1.value_or(0.0), fc.h2.value_or(0.0), fc.t1.value_or(0.0),
                                               fc.period.value_or(0.0));
    if (fc.type == "sampled") return GaugeField::sampled(fc.times, fc.values, fc.period.value_or(0.0));
    throw ConfigError({"field.type \"" + fc.type + "\" is unknown"});
}

std::string config_hash(const RunConfig& c) {
    const std::string text = to_json(c).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::size_t warnings = 0;
        Artifact a;
        switch (config.command) {
            case Command::spectrum: a = run_spectrum(config); break;
            case Command::dynamics: a = run_dynamics(config); break;
            case Command::quasienergy: a = run_quasienergy(config); break;
            case Command::tongues: a = run_tongues(config, warnings); break;
            case Command::perturb: a = run_perturb(config); break;
            case Command::check_condition: a = run_check_condition(config); break;
        }
        a.metadata = {
            {"version", "igauge " + version()},
            {"command", command_name(config.command)},
            {"config_hash", config_hash(config)},
            {"kappa", 1.0},
            {"steps", config.steps},
            {"tol", config.tol},
            {"threshold", config.threshold},
            {"detuning_tol", config.detuning_tol},
            {"warnings", warnings},
            {"config", to_json(config)},
        };

        if (config.output_path.empty()) {
            write_artifact(a, config.format, out);
        } else {
            std::ofstream file(config.output_path);
            if (!file) throw std::runtime_error("cannot open output file " + config.output_path);
            write_artifact(a, config.format, file);
        }
        return 0;
    } catch (const ConfigError& e) {
        write_error(err, "invalid_config", e.violations());
        return 2;
    } catch (const Error& e) {
        write_error(err, "numerical", {e.what()});
        return 3;
    } catch (const std::exception& e) {
        write_error(err, "io", {e.what()});
        return 4;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tight-binding lattices driven by an oscillating imaginary gauge field"};
    app.set_version_flag("--version", "igauge " + version());
    app.require_subcommand(0, 1);

    struct Flags {
        std::string config, topology, n, field, t_end, init, omega, h1, steps, tol, threshold, l_max, detuning_tol,
            output, format, workers;
    } flags;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config, "JSON config file; flags override its entries");
        sub->add_option("--topology", flags.topology, "ring | chain");
        sub->add_option("--n", flags.n, "number of sites");
        sub->add_option("--field", flags.field, "e.g. constant:h0=1, sin:h1=0.4,omega=1, square, piecewise:...");
        sub->add_option("--t-end", flags.t_end, "end time in units of 1/kappa");
        sub->add_option("--init", flags.init, "site:<n> | vector:<path>");
        sub->add_option("--omega", flags.omega, "frequency grid lo:hi:count (tongues)");
        sub->add_option("--h1", flags.h1, "amplitude grid lo:hi:count (tongues)");
        sub->add_option("--steps", flags.steps, "midpoint steps per period");
        sub->add_option("--tol", flags.tol, "quadrature tolerance");
        sub->add_option("--threshold", flags.threshold, "instability threshold on max |Im E| / kappa");
        sub->add_option("--l-max", flags.l_max, "highest harmonic for predicted resonances");
        sub->add_option("--detuning-tol", flags.detuning_tol, "resonance window for perturbation theory");
        sub->add_option("--output", flags.output, "output file (default: standard output)");
        sub->add_option("--format", flags.format, "csv | json");
        sub->add_option("--workers", flags.workers, "scan worker threads (overrides IGAUGE_WORKERS)");
    };
    add_common(&app);
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& [name, cmd] : kCommands) {
        (void)cmd;
        auto* sub = app.add_subcommand(name, "run the " + name + " analysis");
        add_common(sub);
        subs.emplace_back(name, sub);
    }

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::Success&) {
        out << "igauge " << version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        write_error(err, "invalid_config", {e.what()});
        return 2;
    }

    std::vector<std::string> v;
    json j = json::object();
    if (!flags.config.empty()) {
        std::ifstream in(flags.config);
        if (!in) {
            write_error(err, "invalid_config", {"cannot open config file " + flags.config});
            return 2;
        }
        try {
            in >> j;
        } catch (const json::exception& e) {
            write_error(err, "invalid_config", {std::string("config file is not valid JSON: ") + e.what()});
            return 2;
        }
        if (!j.is_object()) {
            write_error(err, "invalid_config", {"config file must hold a JSON object"});
            return 2;
        }
    }
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) j["command"] = name;

    auto set_number = [&](const std::string& text, const char* section, const char* key, const char* flag,
                          bool integer) {
        if (text.empty()) return;
        if (integer) {
            if (const auto x = parse_long(text))
                j[section][key] = *x;
            else
                v.push_back(std::string(flag) + ": \"" + text + "\" is not an integer");
        } else {
            if (const auto x = parse_double(text))
                j[section][key] = *x;
            else
                v.push_back(std::string(flag) + ": \"" + text + "\" is not a number");
        }
    };
    if (!flags.topology.empty()) j["lattice"]["topology"] = flags.topology;
    set_number(flags.n, "lattice", "n", "--n", true);
    if (!flags.field.empty()) j["field"] = parse_field_flag(flags.field, v);
    set_number(flags.t_end, "dynamics", "t_end", "--t-end", false);
    if (!flags.init.empty()) j["dynamics"]["init"] = flags.init;
    if (!flags.omega.empty()) j["scan"]["omega"] = parse_grid_flag(flags.omega, "--omega", v);
    if (!flags.h1.empty()) j["scan"]["h1"] = parse_grid_flag(flags.h1, "--h1", v);
    set_number(flags.steps, "numeric", "steps", "--steps", true);
    set_number(flags.tol, "numeric", "tol", "--tol", false);
    set_number(flags.threshold, "numeric", "threshold", "--threshold", false);
    set_number(flags.l_max, "numeric", "l_max", "--l-max", true);
    set_number(flags.detuning_tol, "numeric", "detuning_tol", "--detuning-tol", false);
    if (!flags.output.empty()) j["output"]["path"] = flags.output;
    if (!flags.format.empty()) j["output"]["format"] = flags.format;

    unsigned workers = 0;
    if (!flags.workers.empty()) {
        const auto w = parse_long(flags.workers);
        if (!w || *w < 1)
            v.push_back("--workers must be a positive integer");
        else
            workers = static_cast<unsigned>(*w);
    }

    RunConfig config;
    try {
        config = config_from_json(j);
    } catch (const ConfigError& e) {
        v.insert(v.end(), e.violations().begin(), e.violations().end());
    }
    if (!v.empty()) {
        write_error(err, "invalid_config", v);
        return 2;
    }
    config.workers = workers;
    return run(config, out, err);
}

}  // namespace igauge::cli
