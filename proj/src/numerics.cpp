#include "igauge/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <lapacke.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "igauge/errors.hpp"

namespace igauge {

namespace {

constexpr int kMaxQuadratureDepth = 40;

using Gauss = boost::math::quadrature::gauss<double, 20>;

double adaptive_gauss(const RealFunction& f, double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = Gauss::integrate(f, a, mid);
    const double right = Gauss::integrate(f, mid, b);
    const double refined = left + right;
    if (std::abs(refined - whole) <= tol || depth >= kMaxQuadratureDepth) return refined;
    return adaptive_gauss(f, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_gauss(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

EigenResult eig_general(const ComplexMatrix& m, double tol, bool with_vectors) {
    if (m.rows() != m.cols())
        throw DimensionError("eig_general: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!m.allFinite()) throw DomainError("eig_general: non-finite matrix entry");

    const auto n = static_cast<lapack_int>(m.rows());
    EigenResult out;
    if (n == 0) return out;

    // zgeev balances (permutation and power-of-two scaling), reduces to
    // Hessenberg form and runs shifted QR; it overwrites its input.
    ComplexMatrix work = m;
    ComplexMatrix vectors(n, n);
    std::vector<Complex> values(static_cast<std::size_t>(n));
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
                      reinterpret_cast<lapack_complex_double*>(values.data()), nullptr, 1,
                      reinterpret_cast<lapack_complex_double*>(vectors.data()), n);
    // LAPACK's QR budget is 30 iterations per eigenvalue.
    const long budget = 30L * static_cast<long>(n);
    if (info < 0) throw DomainError("eig_general: invalid argument " + std::to_string(-info) + " to zgeev");
    if (info > 0) throw NoConvergenceError("eig_general: shifted QR did not converge", budget);

    const double norm = m.norm();
    for (lapack_int l = 0; l < n; ++l) {
        const Complex lambda = values[static_cast<std::size_t>(l)];
        const double residual = (m * vectors.col(l) - lambda * vectors.col(l)).norm() / vectors.col(l).norm();
        if (!(residual <= tol * std::max(norm, 1e-300)))
            throw NoConvergenceError("eig_general: residual " + std::to_string(residual) + " exceeds tolerance",
                                     budget);
    }
    out.eigenvalues = std::move(values);
    if (with_vectors) out.eigenvectors = std::move(vectors);
    return out;
}

double integrate(const RealFunction& f, double a, double b, std::span<const double> breakpoints, double tol) {
    if (!(b > a)) {
        if (a == b) return 0.0;
        return -integrate(f, b, a, breakpoints, tol);
    }
    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    const double length = b - a;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        if (hi <= lo) continue;
        const double share = tol * (hi - lo) / length;
        total += adaptive_gauss(f, lo, hi, Gauss::integrate(f, lo, hi), share, 0);
    }
    return total;
}

double integrate_periodic(const RealFunction& f, double period, double tol, std::span<const double> breakpoints) {
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("integrate_periodic: period must be positive");
    return integrate(f, 0.0, period, breakpoints, tol * period) / period;
}

ComplexMatrix matmul_chain(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) throw DimensionError("matmul_chain: empty factor list");
    ComplexMatrix product = factors.back();
    for (std::size_t k = factors.size() - 1; k-- > 0;) {
        if (factors[k].cols() != product.rows())
            throw DimensionError("matmul_chain: factor " + std::to_string(k) + " is not conformable");
        product = factors[k] * product;
    }
    return product;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("matrix_exp: matrix must be square");
    return m.exp();
}

Complex principal_log(Complex z) {
    double phase = std::arg(z);
    if (phase <= -std::numbers::pi) phase = std::numbers::pi;
    return {std::log(std::abs(z)), phase};
}

}  // namespace igauge
