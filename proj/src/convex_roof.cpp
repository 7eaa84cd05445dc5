#include "imaginarity/convex_roof.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "imaginarity/eigen.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/rng.hpp"

namespace imaginarity {

namespace {

constexpr double kRankCutoff = 1e-12;   // eigenvalues below this do not count as support
constexpr double kWeightCutoff = 1e-14; // ensemble members below this are dropped
constexpr double kInitialStep = 0.3;

struct EigenEnsemble {
    std::vector<double> weights;    // q_j > kRankCutoff
    ComplexMatrix vectors;          // d x r, column j scaled by sqrt(q_j)
};

EigenEnsemble eigen_ensemble(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    EigenEnsemble out;
    std::size_t r = 0;
    for (double q : es.eigenvalues) {
        if (q > kRankCutoff) {
            ++r;
        }
    }
    out.weights.reserve(r);
    out.vectors = ComplexMatrix(rho.dim(), r);
    std::size_t col = 0;
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
        const double q = es.eigenvalues[k];
        if (q <= kRankCutoff) {
            continue;
        }
        out.weights.push_back(q);
        const double sq = std::sqrt(q);
        for (std::size_t i = 0; i < rho.dim(); ++i) {
            out.vectors(i, col) = sq * es.eigenvectors(i, k);
        }
        ++col;
    }
    return out;
}

// Raw ensemble build shared by the public op and the optimizer loop; w is
// assumed to have orthonormal columns already.
Decomposition build_ensemble(const EigenEnsemble& eig, const ComplexMatrix& w) {
    const std::size_t d = eig.vectors.rows();
    const std::size_t r = eig.vectors.cols();
    const std::size_t m = w.rows();
    Decomposition out;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Complex> unnormalized(d, Complex(0.0, 0.0));
        for (std::size_t j = 0; j < r; ++j) {
            const Complex wij = w(i, j);
            if (wij == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t a = 0; a < d; ++a) {
                unnormalized[a] += wij * eig.vectors(a, j);
            }
        }
        double weight = 0.0;
        for (const Complex& c : unnormalized) {
            weight += std::norm(c);
        }
        if (weight < kWeightCutoff) {
            continue;
        }
        const double norm = std::sqrt(weight);
        for (auto& c : unnormalized) {
            c /= norm;
        }
        out.weights.push_back(weight);
        out.states.push_back(PureState::validate(std::move(unnormalized)));
    }
    return out;
}

double ensemble_average(const Decomposition& dec, const PureMeasureFn& measure) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dec.weights.size(); ++i) {
        sum += dec.weights[i] * measure(dec.states[i]);
    }
    return sum;
}

ComplexMatrix isometry_from_params(const std::vector<double>& params, std::size_t m,
                                   std::size_t r) {
    ComplexMatrix w(m, r);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const double re = params[idx];
            const double im = params[idx + 1];
            w(i, j) = Complex(re, im);
            idx += 2;
        }
    }
    return orthonormalize_columns(std::move(w));
}

} // namespace

ComplexMatrix Decomposition::mixture() const {
    if (states.empty()) {
        throw ShapeMismatchError("empty decomposition");
    }
    const std::size_t d = states.front().dim();
    ComplexMatrix out(d, d);
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& amps = states[k].amplitudes();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                out(i, j) += weights[k] * amps[i] * std::conj(amps[j]);
            }
        }
    }
    return out;
}

Decomposition ensemble_from_isometry(const DensityMatrix& rho, const ComplexMatrix& w) {
    const EigenEnsemble eig = eigen_ensemble(rho);
    const std::size_t r = eig.weights.size();
    if (w.rows() < r) {
        throw RankDeficientError("ensemble size " + std::to_string(w.rows()) +
                                 " is below rank " + std::to_string(r));
    }
    if (w.cols() != r) {
        throw ShapeMismatchError("isometry must have rank(rho) = " + std::to_string(r) +
                                 " columns, got " + std::to_string(w.cols()));
    }
    // Orthonormality check: W^dagger W = I.
    const ComplexMatrix gram = w.adjoint() * w;
    if (gram.max_abs_diff(ComplexMatrix::identity(r)) > 1e-8) {
        throw DomainError("isometry columns are not orthonormal");
    }
    return build_ensemble(eig, w);
}

namespace {

// Re(|psi><psi|), the average of the projector and its conjugate; positive
// semidefinite with trace 1.
ComplexMatrix real_projector(const PureState& psi) {
    const auto& a = psi.amplitudes();
    const std::size_t d = a.size();
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out(i, j) = Complex((a[i] * std::conj(a[j])).real(), 0.0);
        }
    }
    return out;
}

} // namespace

double pure_m_l1(const PureState& psi) {
    const auto& a = psi.amplitudes();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            sum += 2.0 * std::abs((a[i] * std::conj(a[j])).imag());
        }
    }
    return sum;
}

double pure_m_geometric(const PureState& psi) {
    const EigenSystem es = hermitian_eigensystem(real_projector(psi));
    return std::max(1.0 - es.eigenvalues.front(), 0.0);
}

double pure_m_relative_entropy(const PureState& psi) {
    // S(|psi><psi|) = 0, so only the entropy of the symmetrized projector
    // remains.
    const EigenSystem es = hermitian_eigensystem(real_projector(psi));
    double s = 0.0;
    for (double lambda : es.eigenvalues) {
        if (lambda > 0.0) {
            s -= lambda * std::log2(lambda);
        }
    }
    return std::max(s, 0.0);
}

RoofResult convex_roof(const DensityMatrix& rho, const PureMeasureFn& measure,
                       const RoofConfig& cfg) {
    if (rho.dim() > 4) {
        throw DimensionTooLargeError("convex roof optimizer supports dim <= 4, got " +
                                     std::to_string(rho.dim()));
    }
    const EigenEnsemble eig = eigen_ensemble(rho);
    const std::size_t r = eig.weights.size();
    const std::size_t d = rho.dim();
    std::size_t m = cfg.ensemble_size;
    if (m == 0) {
        m = std::min(d * d, 2 * r);
    }
    if (m < r) {
        throw RankDeficientError("ensemble size " + std::to_string(m) + " is below rank " +
                                 std::to_string(r));
    }

    const auto objective = [&](const std::vector<double>& params) {
        ComplexMatrix w;
        try {
            w = isometry_from_params(params, m, r);
        } catch (const RankDeficientError&) {
            return std::numeric_limits<double>::infinity();
        }
        return ensemble_average(build_ensemble(eig, w), measure);
    };

    const std::size_t n_params = 2 * m * r;
    Rng rng(cfg.seed);
    std::vector<double> best_params;
    double best_value = std::numeric_limits<double>::infinity();
    bool any_converged = false;

    for (int restart = 0; restart < std::max(cfg.restarts, 1); ++restart) {
        std::vector<double> params(n_params, 0.0);
        if (restart == 0) {
            // Identity embedding: the eigendecomposition itself, which pins
            // the roof at or below the eigenensemble average.
            for (std::size_t j = 0; j < r; ++j) {
                params[2 * (j * r + j)] = 1.0;
            }
        } else {
            for (auto& x : params) {
                x = rng.gaussian();
            }
        }
        double value = objective(params);
        double step = kInitialStep;
        for (int iter = 0; iter < cfg.max_iters && step >= cfg.step_tol; ++iter) {
            bool improved = false;
            for (std::size_t i = 0; i < n_params; ++i) {
                const double original = params[i];
                params[i] = original + step;
                double candidate = objective(params);
                if (candidate < value) {
                    value = candidate;
                    improved = true;
                    continue;
                }
                params[i] = original - step;
                candidate = objective(params);
                if (candidate < value) {
                    value = candidate;
                    improved = true;
                    continue;
                }
                params[i] = original;
            }
            if (!improved) {
                step *= 0.5;
            }
        }
        if (step < cfg.step_tol) {
            any_converged = true;
        }
        if (value < best_value) {
            best_value = value;
            best_params = params;
        }
    }
    if (!any_converged) {
        throw NoConvergenceError("roof search exhausted " + std::to_string(cfg.max_iters) +
                                 " sweeps in every restart");
    }

    RoofResult out;
    out.value = best_value;
    out.decomposition = ensemble_from_isometry(rho, isometry_from_params(best_params, m, r));
    return out;
}

} // namespace imaginarity
