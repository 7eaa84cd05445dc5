#include "imaginarity/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "imaginarity/eigen.hpp"
#include "imaginarity/entropy.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/norms.hpp"
#include "imaginarity/rng.hpp"

namespace imaginarity {

namespace {

constexpr double kGolden = 0.61803398874989484820458683436564;

// Scalar minimization by golden-section search; f must be unimodal on
// [lo, hi]. Returns the argmin.
double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 80) {
    double a = lo;
    double b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 80) {
    return golden_min([&f](double x) { return -f(x); }, lo, hi, iters);
}

double sum_abs_imag_offdiag(const ComplexMatrix& m, double p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) {
                const double v = std::abs(m(i, j).imag());
                sum += (p == 1.0) ? v : std::pow(v, p);
            }
        }
    }
    return sum;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form:
            return "closed_form";
        case Method::optimization:
            return "optimization";
        case Method::bisection:
            return "bisection";
    }
    return "unknown";
}

MeasureResult m_l1(const DensityMatrix& rho) {
    MeasureResult out;
    out.value = sum_abs_imag_offdiag(rho.matrix(), 1.0);
    out.method = Method::closed_form;
    out.witness_state = delta(rho).matrix();
    return out;
}

MeasureResult m_trace(const DensityMatrix& rho) {
    MeasureResult out;
    out.value = 0.5 * trace_norm(rho.matrix() - rho.matrix().transpose());
    out.method = Method::closed_form;
    return out;
}

MeasureResult m_lp(const DensityMatrix& rho, double p) {
    if (!(p >= 1.0)) {
        throw DomainError("lp measure requires p >= 1, got " + std::to_string(p));
    }
    MeasureResult out;
    out.value = std::pow(sum_abs_imag_offdiag(rho.matrix(), p), 1.0 / p);
    out.method = Method::closed_form;
    out.witness_state = delta(rho).matrix();
    return out;
}

MeasureResult m_relative_entropy(const DensityMatrix& rho) {
    MeasureResult out;
    const DensityMatrix closest = delta(rho);
    out.value = std::max(von_neumann_entropy(closest) - von_neumann_entropy(rho), 0.0);
    out.method = Method::closed_form;
    out.witness_state = closest.matrix();
    return out;
}

MeasureResult m_geometric_pure(const PureState& psi) {
    const DensityMatrix proj = psi.projector();
    const EigenSystem es = hermitian_eigensystem(delta(proj).matrix());
    MeasureResult out;
    out.value = std::max(1.0 - es.eigenvalues.front(), 0.0);
    out.method = Method::closed_form;
    // The optimal real vector is the top eigenvector of the symmetrized
    // projector; strip the residual imaginary noise and renormalize.
    const std::size_t d = psi.dim();
    std::vector<Complex> witness(d);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        witness[i] = Complex(es.eigenvectors(i, 0).real(), 0.0);
        norm2 += std::norm(witness[i]);
    }
    if (norm2 > 1e-12) {
        const double norm = std::sqrt(norm2);
        for (auto& w : witness) {
            w /= norm;
        }
        out.witness_vector = std::move(witness);
    }
    return out;
}

DensityMatrix closest_real_state(const DensityMatrix& rho) {
    return delta(rho);
}

// --- Schatten-p optimizer ----------------------------------------------

namespace {

// Real lower-triangular parametrization sigma = L L^T / Tr(L L^T). Every
// real state is reachable and every parameter vector yields a real state.
ComplexMatrix sigma_from_params(const std::vector<double>& params, std::size_t d) {
    ComplexMatrix l(d, d);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            l(i, j) = Complex(params[idx++], 0.0);
        }
    }
    ComplexMatrix sigma = l * l.transpose();
    const double tr = sigma.trace().real();
    if (!(tr > 1e-12)) {
        return ComplexMatrix(); // signals an infeasible point to the caller
    }
    sigma *= Complex(1.0 / tr, 0.0);
    return sigma;
}

// Cholesky-like factor of a PSD matrix, clamping tiny negative pivots.
std::vector<double> cholesky_params(const ComplexMatrix& m) {
    const std::size_t d = m.rows();
    std::vector<std::vector<double>> l(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = m(i, j).real();
            for (std::size_t k = 0; k < j; ++k) {
                sum -= l[i][k] * l[j][k];
            }
            if (i == j) {
                l[i][j] = std::sqrt(std::max(sum, 0.0));
            } else {
                l[i][j] = (l[j][j] > 1e-14) ? sum / l[j][j] : 0.0;
            }
        }
    }
    std::vector<double> params;
    params.reserve(d * (d + 1) / 2);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            params.push_back(l[i][j]);
        }
    }
    return params;
}

struct CoordinateDescentResult {
    std::vector<double> params;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Coordinate descent with a golden-section line search per coordinate and a
// shrinking search window. Converged once a full sweep improves by less
// than tol at the smallest window.
CoordinateDescentResult coordinate_descent(const std::function<double(const std::vector<double>&)>& f,
                                           std::vector<double> start, int max_sweeps, double tol) {
    CoordinateDescentResult res;
    res.params = std::move(start);
    res.value = f(res.params);
    double window = 1.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double before = res.value;
        for (std::size_t i = 0; i < res.params.size(); ++i) {
            const double xi = res.params[i];
            const double best_xi = golden_min(
                [&](double x) {
                    res.params[i] = x;
                    const double v = f(res.params);
                    return v;
                },
                xi - window, xi + window);
            res.params[i] = best_xi;
            const double v = f(res.params);
            if (v <= res.value) {
                res.value = v;
            } else {
                res.params[i] = xi; // line search landed on a worse point
            }
        }
        if (before - res.value < tol) {
            window *= 0.25;
            if (window < 1e-7) {
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

} // namespace

MeasureResult m_schatten_p(const DensityMatrix& rho, double p, const OptimizerConfig& cfg) {
    if (!(p >= 1.0)) {
        throw DomainError("Schatten measure requires p >= 1, got " + std::to_string(p));
    }
    const std::size_t d = rho.dim();
    if (d > 4) {
        throw DimensionTooLargeError("Schatten measure optimizer supports dim <= 4, got " +
                                     std::to_string(d));
    }

    const auto objective = [&rho, p, d](const std::vector<double>& params) {
        const ComplexMatrix sigma = sigma_from_params(params, d);
        if (sigma.empty()) {
            return std::numeric_limits<double>::infinity();
        }
        return schatten_p_norm(rho.matrix() - sigma, p);
    };

    Rng rng(cfg.seed);
    CoordinateDescentResult best;
    bool any_converged = false;
    for (int restart = 0; restart < std::max(cfg.restarts, 1); ++restart) {
        std::vector<double> start;
        if (restart == 0) {
            // Deterministic start at the symmetrized state, which is also a
            // feasibility certificate for the reported minimum.
            start = cholesky_params(delta(rho).matrix());
        } else {
            start.resize(d * (d + 1) / 2);
            for (auto& x : start) {
                x = rng.gaussian();
            }
        }
        CoordinateDescentResult res = coordinate_descent(objective, std::move(start),
                                                         cfg.max_sweeps, cfg.tol);
        any_converged = any_converged || res.converged;
        if (res.value < best.value) {
            best = std::move(res);
        }
    }
    if (!any_converged) {
        throw NoConvergenceError("Schatten optimizer exhausted " +
                                 std::to_string(cfg.max_sweeps) + " sweeps in every restart");
    }

    MeasureResult out;
    out.value = best.value;
    out.method = Method::optimization;
    out.witness_state = sigma_from_params(best.params, d);
    return out;
}

// --- Robustness ---------------------------------------------------------

namespace {

// det[(1+s) tau(x, z) - rho] for the real qubit state tau with Bloch
// coordinates (x, z); concave in each variable, which golden-section
// maximization relies on.
double robustness_det(const DensityMatrix& rho, double s, double x, double z) {
    const ComplexMatrix& m = rho.matrix();
    const double a00 = 0.5 * (1.0 + s) * (1.0 + z) - m(0, 0).real();
    const double a11 = 0.5 * (1.0 + s) * (1.0 - z) - m(1, 1).real();
    const Complex a01 = Complex(0.5 * (1.0 + s) * x, 0.0) - m(0, 1);
    return a00 * a11 - std::norm(a01);
}

} // namespace

bool robustness_feasible(const DensityMatrix& rho, double s) {
    if (rho.dim() != 2) {
        throw DimensionError("robustness is implemented for qubits only, got dimension " +
                             std::to_string(rho.dim()));
    }
    if (s < 0.0) {
        return false;
    }
    // (1+s) tau - rho has trace s >= 0, so positivity reduces to a
    // non-negative determinant for the best real tau on the Bloch disk.
    const auto best_over_z = [&rho, s](double x) {
        const double zmax = std::sqrt(std::max(0.0, 1.0 - x * x));
        if (zmax == 0.0) {
            return robustness_det(rho, s, x, 0.0);
        }
        const double z = golden_max(
            [&rho, s, x](double zz) { return robustness_det(rho, s, x, zz); }, -zmax, zmax);
        return robustness_det(rho, s, x, z);
    };
    const double x = golden_max(best_over_z, -1.0, 1.0);
    return best_over_z(x) >= 0.0;
}

MeasureResult robustness(const DensityMatrix& rho, const BisectionConfig& cfg) {
    if (rho.dim() != 2) {
        throw DimensionError("robustness is implemented for qubits only, got dimension " +
                             std::to_string(rho.dim()));
    }
    MeasureResult out;
    out.method = Method::bisection;

    if (robustness_feasible(rho, 0.0)) {
        out.value = 0.0;
        out.witness_state = delta(rho).matrix();
        return out;
    }
    // s = 1 is always feasible: tau mirroring the imaginary part makes the
    // mixture real. Kept as a guarded expansion in case rounding bites at
    // the boundary.
    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (!robustness_feasible(rho, hi)) {
        hi *= 2.0;
        if (++expansions > 8) {
            throw NoConvergenceError("robustness bracket failed to close");
        }
    }
    int iters = 0;
    while (hi - lo > cfg.tol) {
        if (++iters > cfg.max_iters) {
            throw NoConvergenceError("robustness bisection exceeded " +
                                     std::to_string(cfg.max_iters) + " iterations");
        }
        const double mid = 0.5 * (lo + hi);
        if (robustness_feasible(rho, mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    out.value = hi;

    // Witness tau at the accepted s: the maximizing point of the
    // determinant surface.
    const double s = hi;
    const auto det_at = [&rho, s](double x, double z) { return robustness_det(rho, s, x, z); };
    const auto best_z = [&det_at](double x) {
        const double zmax = std::sqrt(std::max(0.0, 1.0 - x * x));
        if (zmax == 0.0) {
            return 0.0;
        }
        return golden_max([&det_at, x](double z) { return det_at(x, z); }, -zmax, zmax);
    };
    const double x = golden_max([&](double xx) { return det_at(xx, best_z(xx)); }, -1.0, 1.0);
    const double z = best_z(x);
    ComplexMatrix tau(2, 2);
    tau(0, 0) = Complex(0.5 * (1.0 + z), 0.0);
    tau(1, 1) = Complex(0.5 * (1.0 - z), 0.0);
    tau(0, 1) = Complex(0.5 * x, 0.0);
    tau(1, 0) = Complex(0.5 * x, 0.0);
    out.witness_state = tau;
    return out;
}

} // namespace imaginarity
