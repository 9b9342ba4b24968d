#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "igauge/numerics.hpp"

namespace igauge {

// Field shapes. All amplitudes are dimensionless, frequencies in units of
// kappa, times in units of 1/kappa.

struct ConstantField {
    double h0 = 0.0;
    /// A static field is periodic with any period; Floquet analysis needs one.
    std::optional<double> period;
};

/// h(t) = h1 sin(omega t)
struct SinusoidalField {
    double h1 = 0.0;
    double omega = 1.0;
};

/// +h1 on [0, T/2), -h1 on [T/2, T)
struct SquareWaveField {
    double h1 = 0.0;
    double omega = 1.0;
};

/// +h1 on [0, T1), -h2 on [T1, T), with h1, h2 > 0 and 0 < T1 < T.
struct PiecewiseTwoLevelField {
    double h1 = 0.0;
    double h2 = 0.0;
    double t1 = 0.0;
    double period = 1.0;
};

/// Periodic linear interpolation through (times[k], values[k]); times in [0, T),
/// strictly increasing. The last sample joins the first one at times[0] + T.
struct SampledField {
    std::vector<double> times;
    std::vector<double> values;
    double period = 1.0;
};

enum class FieldKind { constant, sinusoidal, square_wave, piecewise_two_level, sampled };

/// Time-dependent imaginary gauge field h(t).
///
/// Immutable once constructed; the named constructors validate their
/// arguments and throw DomainError on violations. At a jump the field takes
/// its right-limit value.
class GaugeField {
public:
    using Shape = std::variant<ConstantField, SinusoidalField, SquareWaveField, PiecewiseTwoLevelField, SampledField>;

    static GaugeField constant(double h0, std::optional<double> period = std::nullopt);
    static GaugeField sinusoidal(double h1, double omega);
    static GaugeField square_wave(double h1, double omega);
    static GaugeField piecewise_two_level(double h1, double h2, double t1, double period);
    static GaugeField sampled(std::vector<double> times, std::vector<double> values, double period);

    const Shape& shape() const noexcept { return shape_; }
    FieldKind kind() const noexcept { return static_cast<FieldKind>(shape_.index()); }

    /// Period T; empty for a constant field constructed without one.
    std::optional<double> period() const;
    /// Period or a DomainError naming `what`.
    double require_period(const char* what) const;
    std::optional<double> omega() const;

    /// Points of discontinuity (or kinks, for sampled fields) in [0, T), ascending.
    std::vector<double> breakpoints() const;

    /// True when the field is piecewise constant over a period.
    bool piecewise_constant() const;

    double value_at(double t) const;

    /// Mean value over one period.
    double mean() const;

    /// A field with the same period-averaged functionals of opposite sign.
    /// For piecewise two-level fields this is -h(t + T1), which keeps h1, h2 > 0.
    GaugeField negated() const;

    std::string describe() const;

private:
    explicit GaugeField(Shape s) : shape_(std::move(s)) {}
    Shape shape_;
};

/// (1/T) int_0^T fn(h(t)) dt. Exact for constant fields.
double field_average(const GaugeField& f, double (*fn)(double), double tol = kQuadratureTolerance);

/// int_0^t fn(h(t')) dt' using whole periods plus a partial-interval quadrature.
double field_integral(const GaugeField& f, double (*fn)(double), double t, double tol = kQuadratureTolerance);

double sinh_average(const GaugeField& f, double tol = kQuadratureTolerance);
double cosh_average(const GaugeField& f, double tol = kQuadratureTolerance);

/// |sinh_average(f)| <= tol.
bool is_pseudo_hermitian_condition(const GaugeField& f, double tol = 1e-10);

/// h2 such that T1 sinh h1 = (T - T1) sinh h2.
double balancing_h2(double h1, double t1, double period);

}  // namespace igauge
