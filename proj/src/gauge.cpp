#include "igauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "igauge/errors.hpp"

namespace igauge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

bool finite_positive(double x) {
    return std::isfinite(x) && x > 0.0;
}

// t reduced into [0, T).
double reduce(double t, double period) {
    double r = t - period * std::floor(t / period);
    if (r >= period) r -= period;
    if (r < 0.0) r = 0.0;
    return r;
}

}  // namespace

GaugeField GaugeField::constant(double h0, std::optional<double> period) {
    require(std::isfinite(h0), "constant field: h0 must be finite");
    if (period) require(finite_positive(*period), "constant field: period must be positive");
    return GaugeField(ConstantField{h0, period});
}

GaugeField GaugeField::sinusoidal(double h1, double omega) {
    require(std::isfinite(h1), "sinusoidal field: h1 must be finite");
    require(finite_positive(omega), "sinusoidal field: omega must be positive");
    return GaugeField(SinusoidalField{h1, omega});
}

GaugeField GaugeField::square_wave(double h1, double omega) {
    require(std::isfinite(h1), "square-wave field: h1 must be finite");
    require(finite_positive(omega), "square-wave field: omega must be positive");
    return GaugeField(SquareWaveField{h1, omega});
}

GaugeField GaugeField::piecewise_two_level(double h1, double h2, double t1, double period) {
    require(finite_positive(h1) && finite_positive(h2), "piecewise field: h1 and h2 must be positive");
    require(finite_positive(period), "piecewise field: period must be positive");
    require(std::isfinite(t1) && t1 > 0.0 && t1 < period, "piecewise field: need 0 < t1 < period");
    return GaugeField(PiecewiseTwoLevelField{h1, h2, t1, period});
}

GaugeField GaugeField::sampled(std::vector<double> times, std::vector<double> values, double period) {
    require(finite_positive(period), "sampled field: period must be positive");
    require(!times.empty(), "sampled field: need at least one sample");
    require(times.size() == values.size(), "sampled field: times and values differ in length");
    for (std::size_t k = 0; k < times.size(); ++k) {
        require(std::isfinite(times[k]) && std::isfinite(values[k]), "sampled field: non-finite sample");
        require(times[k] >= 0.0 && times[k] < period, "sampled field: sample time outside [0, period)");
        if (k > 0) require(times[k] > times[k - 1], "sampled field: times must be strictly increasing");
    }
    return GaugeField(SampledField{std::move(times), std::move(values), period});
}

std::optional<double> GaugeField::period() const {
    return std::visit(overloaded{
                          [](const ConstantField& c) { return c.period; },
                          [](const SinusoidalField& s) { return std::optional<double>(kTwoPi / s.omega); },
                          [](const SquareWaveField& s) { return std::optional<double>(kTwoPi / s.omega); },
                          [](const PiecewiseTwoLevelField& p) { return std::optional<double>(p.period); },
                          [](const SampledField& s) { return std::optional<double>(s.period); },
                      },
                      shape_);
}

double GaugeField::require_period(const char* what) const {
    const auto p = period();
    if (!p) throw DomainError(std::string(what) + ": field has no period");
    return *p;
}

std::optional<double> GaugeField::omega() const {
    const auto p = period();
    if (!p) return std::nullopt;
    return kTwoPi / *p;
}

std::vector<double> GaugeField::breakpoints() const {
    return std::visit(overloaded{
                          [](const ConstantField&) { return std::vector<double>{}; },
                          [](const SinusoidalField&) { return std::vector<double>{}; },
                          [](const SquareWaveField& s) { return std::vector<double>{0.0, std::numbers::pi / s.omega}; },
                          [](const PiecewiseTwoLevelField& p) { return std::vector<double>{0.0, p.t1}; },
                          [](const SampledField& s) { return s.times; },
                      },
                      shape_);
}

bool GaugeField::piecewise_constant() const {
    const auto k = kind();
    return k == FieldKind::constant || k == FieldKind::square_wave || k == FieldKind::piecewise_two_level;
}

double GaugeField::value_at(double t) const {
    return std::visit(overloaded{
                          [](const ConstantField& c) { return c.h0; },
                          [t](const SinusoidalField& s) {
                              const double period = kTwoPi / s.omega;
                              return s.h1 * std::sin(s.omega * reduce(t, period));
                          },
                          [t](const SquareWaveField& s) {
                              const double period = kTwoPi / s.omega;
                              return reduce(t, period) < 0.5 * period ? s.h1 : -s.h1;
                          },
                          [t](const PiecewiseTwoLevelField& p) {
                              return reduce(t, p.period) < p.t1 ? p.h1 : -p.h2;
                          },
                          [t](const SampledField& s) {
                              const double r = reduce(t, s.period);
                              const auto& ts = s.times;
                              const std::size_t n = ts.size();
                              if (n == 1) return s.values[0];
                              // Index of the last sample at or before r, wrapping below times[0].
                              auto it = std::upper_bound(ts.begin(), ts.end(), r);
                              std::size_t lo;
                              double t_lo;
                              if (it == ts.begin()) {
                                  lo = n - 1;
                                  t_lo = ts[lo] - s.period;
                              } else {
                                  lo = static_cast<std::size_t>(it - ts.begin()) - 1;
                                  t_lo = ts[lo];
                              }
                              const std::size_t hi = (lo + 1) % n;
                              const double t_hi = hi == 0 ? ts[0] + s.period : ts[hi];
                              const double w = (r - t_lo) / (t_hi - t_lo);
                              return (1.0 - w) * s.values[lo] + w * s.values[hi];
                          },
                      },
                      shape_);
}

double GaugeField::mean() const {
    if (const auto* c = std::get_if<ConstantField>(&shape_)) return c->h0;
    const double period = *this->period();
    const auto cuts = breakpoints();
    return integrate_periodic([this](double t) { return value_at(t); }, period, kQuadratureTolerance, cuts);
}

GaugeField GaugeField::negated() const {
    return std::visit(overloaded{
                          [](const ConstantField& c) { return GaugeField(ConstantField{-c.h0, c.period}); },
                          [](const SinusoidalField& s) { return GaugeField(SinusoidalField{-s.h1, s.omega}); },
                          [](const SquareWaveField& s) { return GaugeField(SquareWaveField{-s.h1, s.omega}); },
                          [](const PiecewiseTwoLevelField& p) {
                              return GaugeField(PiecewiseTwoLevelField{p.h2, p.h1, p.period - p.t1, p.period});
                          },
                          [](const SampledField& s) {
                              SampledField out = s;
                              for (double& v : out.values) v = -v;
                              return GaugeField(std::move(out));
                          },
                      },
                      shape_);
}

std::string GaugeField::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const ConstantField& c) {
                       os << "constant(h0=" << c.h0;
                       if (c.period) os << ", period=" << *c.period;
                       os << ")";
                   },
                   [&](const SinusoidalField& s) { os << "sin(h1=" << s.h1 << ", omega=" << s.omega << ")"; },
                   [&](const SquareWaveField& s) { os << "square(h1=" << s.h1 << ", omega=" << s.omega << ")"; },
                   [&](const PiecewiseTwoLevelField& p) {
                       os << "piecewise(h1=" << p.h1 << ", h2=" << p.h2 << ", t1=" << p.t1 << ", period=" << p.period
                          << ")";
                   },
                   [&](const SampledField& s) {
                       os << "sampled(" << s.times.size() << " samples, period=" << s.period << ")";
                   },
               },
               shape_);
    return os.str();
}

double field_average(const GaugeField& f, double (*fn)(double), double tol) {
    if (const auto* c = std::get_if<ConstantField>(&f.shape())) return fn(c->h0);
    const double period = *f.period();
    const auto cuts = f.breakpoints();
    return integrate_periodic([&](double t) { return fn(f.value_at(t)); }, period, tol, cuts);
}

double field_integral(const GaugeField& f, double (*fn)(double), double t, double tol) {
    if (const auto* c = std::get_if<ConstantField>(&f.shape())) return fn(c->h0) * t;
    if (t < 0.0) throw DomainError("field_integral: t must be non-negative");
    const double period = *f.period();
    const double whole = std::floor(t / period);
    const double rest = t - whole * period;
    double total = whole > 0.0 ? whole * period * field_average(f, fn, tol) : 0.0;
    if (rest > 0.0) {
        const auto cuts = f.breakpoints();
        total += integrate([&](double s) { return fn(f.value_at(s)); }, 0.0, rest, cuts, tol * rest);
    }
    return total;
}

double sinh_average(const GaugeField& f, double tol) {
    return field_average(f, [](double h) { return std::sinh(h); }, tol);
}

double cosh_average(const GaugeField& f, double tol) {
    return field_average(f, [](double h) { return std::cosh(h); }, tol);
}

bool is_pseudo_hermitian_condition(const GaugeField& f, double tol) {
    return std::abs(sinh_average(f)) <= tol;
}

double balancing_h2(double h1, double t1, double period) {
    if (!(t1 > 0.0 && t1 < period)) throw DomainError("balancing_h2: need 0 < t1 < period");
    return std::asinh(t1 / (period - t1) * std::sinh(h1));
}

}  // namespace igauge
