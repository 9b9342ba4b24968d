#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace igauge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealFunction = std::function<double(double)>;

/// Residual tolerance used by eig_general when the caller does not pass one.
inline constexpr double kEigTolerance = 1e-9;
/// Absolute tolerance of the periodic quadrature.
inline constexpr double kQuadratureTolerance = 1e-12;

struct EigenResult {
    std::vector<Complex> eigenvalues;
    /// Column l pairs with eigenvalues[l]; unit 2-norm. Only filled on request.
    std::optional<ComplexMatrix> eigenvectors;
};

/// Eigenvalues of a general complex square matrix.
///
/// LAPACK zgeev: balancing by a permutation and a power-of-two diagonal
/// similarity, Hessenberg reduction, shifted QR. Every returned pair satisfies
/// ||M v - lambda v|| <= tol * ||M||_F, which is checked before returning.
/// Eigenvalue order is unspecified.
///
/// Throws DimensionError for non-square input, DomainError for non-finite
/// entries, NoConvergenceError when QR fails or the residual check does.
EigenResult eig_general(const ComplexMatrix& m, double tol = kEigTolerance, bool with_vectors = false);

/// Integral of f over [a, b], split at every breakpoint that falls inside.
/// Adaptive composite Gauss-Legendre; `tol` is an absolute tolerance on the result.
double integrate(const RealFunction& f, double a, double b, std::span<const double> breakpoints = {},
                 double tol = kQuadratureTolerance);

/// (1/T) * integral of f over one period [0, T]. Throws DomainError when T <= 0.
double integrate_periodic(const RealFunction& f, double period, double tol = kQuadratureTolerance,
                          std::span<const double> breakpoints = {});

/// Product factors[0] * factors[1] * ... ; the rightmost factor acts first.
ComplexMatrix matmul_chain(std::span<const ComplexMatrix> factors);

/// exp(M) for a general complex square matrix (scaling and squaring with Pade).
ComplexMatrix matrix_exp(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Principal branch of the complex logarithm, imaginary part in (-pi, pi].
Complex principal_log(Complex z);

}  // namespace igauge
