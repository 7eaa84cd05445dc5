#include "imaginarity/entropy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "imaginarity/eigen.hpp"
#include "imaginarity/errors.hpp"

namespace imaginarity {

namespace {

constexpr double kEigenvalueFloor = -1e-8;  // clamp window for spectra of valid states
constexpr double kSupportCutoff = 1e-12;    // eigenvalues below this count as zero
constexpr double kSupportWeightTol = 1e-8;  // admissible weight outside the support
constexpr double kResultClamp = -1e-9;      // negative results this small round to zero

// x log2 x with the continuous extension 0 at x = 0; eigenvalues inside the
// clamp window are treated as exact zeros.
double xlog2x(double x) {
    if (x <= 0.0) {
        if (x < kEigenvalueFloor) {
            throw NegativeEigenvalueError("eigenvalue " + std::to_string(x) +
                                          " below the clamp window");
        }
        return 0.0;
    }
    return x * std::log2(x);
}

} // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("binary entropy argument " + std::to_string(x) + " outside [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log2(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log2(1.0 - x);
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    double s = 0.0;
    for (double lambda : es.eigenvalues) {
        s -= xlog2x(lambda);
    }
    return std::max(s, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ShapeMismatchError("relative entropy of states with different dimensions");
    }
    const std::size_t d = rho.dim();

    double tr_rho_log_rho = 0.0;
    for (double lambda : hermitian_eigensystem(rho.matrix()).eigenvalues) {
        tr_rho_log_rho += xlog2x(lambda);
    }

    const EigenSystem sig = hermitian_eigensystem(sigma.matrix());
    double tr_rho_log_sigma = 0.0;
    double weight_outside = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        // <v_k| rho |v_k>, the weight of rho on sigma's k-th eigenvector.
        Complex rv(0.0, 0.0);
        double weight = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            Complex row(0.0, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                row += rho.matrix()(i, j) * sig.eigenvectors(j, k);
            }
            rv += std::conj(sig.eigenvectors(i, k)) * row;
        }
        weight = std::max(rv.real(), 0.0);
        const double mu = sig.eigenvalues[k];
        if (mu <= kSupportCutoff) {
            weight_outside += weight;
        } else {
            tr_rho_log_sigma += weight * std::log2(mu);
        }
    }
    if (weight_outside > kSupportWeightTol) {
        return std::numeric_limits<double>::infinity();
    }

    double s = tr_rho_log_rho - tr_rho_log_sigma;
    if (s < 0.0 && s >= kResultClamp) {
        s = 0.0;
    }
    return s;
}

} // namespace imaginarity
