#include "imaginarity/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "imaginarity/errors.hpp"

namespace imaginarity {

namespace {

constexpr double kOffDiagonalTarget = 1e-12; // Frobenius mass of the off-diagonal part
constexpr int kMaxSweeps = 100;
constexpr std::size_t kMaxDimension = 64;

double off_diagonal_frobenius(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p, q). Updates a in place and
// accumulates the rotation into v.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const Complex phase = apq / r;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    double t = 1.0;
    if (theta != 0.0) {
        t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) {
            t = -t;
        }
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = phase * (t * c);

    const std::size_t n = a.rows();
    // Column update: new(:,p) = c*(:,p) - conj(s)*(:,q); new(:,q) = s*(:,p) + c*(:,q).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - std::conj(s) * akq;
        a(k, q) = s * akp + c * akq;
    }
    // Row update: new(p,:) = c*(p,:) - s*(q,:); new(q,:) = conj(s)*(p,:) + c*(q,:).
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = std::conj(s) * apk + c * aqk;
    }
    // The rotation zeroes the pivot pair and keeps the diagonal real; pin
    // both exactly so rounding noise cannot accumulate across sweeps.
    a(p, q) = Complex(0.0, 0.0);
    a(q, p) = Complex(0.0, 0.0);
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);

    for (std::size_t k = 0; k < v.rows(); ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - std::conj(s) * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

ComplexMatrix EigenSystem::reconstruct() const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                sum += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
            }
            out(i, j) = sum;
        }
    }
    return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double hermitian_tol) {
    if (m.rows() != m.cols()) {
        throw ShapeMismatchError("eigensystem of a non-square matrix");
    }
    const std::size_t n = m.rows();
    if (n > kMaxDimension) {
        throw DimensionTooLargeError("dimension " + std::to_string(n) +
                                     " exceeds the supported limit of " +
                                     std::to_string(kMaxDimension));
    }
    if (!m.all_finite()) {
        throw DomainError("matrix has non-finite entries");
    }
    const double defect = m.hermiticity_defect();
    if (defect > hermitian_tol) {
        throw NotHermitianError("hermiticity defect " + std::to_string(defect) +
                                " exceeds tolerance");
    }

    // Work on the Hermitian average so input noise below tolerance is gone.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    bool converged = off_diagonal_frobenius(a) <= kOffDiagonalTarget;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        converged = off_diagonal_frobenius(a) <= kOffDiagonalTarget;
    }
    if (!converged) {
        throw NoConvergenceError("Jacobi iteration did not reach the off-diagonal target in " +
                                 std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

} // namespace imaginarity
