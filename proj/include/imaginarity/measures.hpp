#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/states.hpp"

namespace imaginarity {

enum class Method {
    closed_form,
    optimization,
    bisection,
};

const char* method_name(Method m);

// Value of a measure together with how it was obtained and, when available,
// the optimizer/certificate it came with: witness_state is the closest or
// optimal real density matrix, witness_vector the optimal real unit vector.
struct MeasureResult {
    double value = 0.0;
    Method method = Method::closed_form;
    std::optional<ComplexMatrix> witness_state;
    std::optional<std::vector<Complex>> witness_vector;
};

// Controls for the coordinate-descent optimizers.
struct OptimizerConfig {
    int restarts = 8;
    int max_sweeps = 200;
    double tol = 1e-9; // stop once a sweep improves the objective by less
    std::uint64_t seed = 0;
};

// Controls for bisection solvers.
struct BisectionConfig {
    double tol = 1e-9;
    int max_iters = 200;
};

// Sum of |Im rho_ij| over off-diagonal entries; equals the minimal
// entrywise-l1 distance to the real states, attained at delta(rho).
MeasureResult m_l1(const DensityMatrix& rho);

// ||rho - rho^T||_1 / 2 in the trace norm.
MeasureResult m_trace(const DensityMatrix& rho);

// (sum_{i != j} |Im rho_ij|^p)^(1/p), the entrywise-lp distance to the real
// states; p >= 1.
MeasureResult m_lp(const DensityMatrix& rho, double p);

// Minimal Schatten-p distance min over real states sigma of ||rho - sigma||_p,
// by coordinate descent over Cholesky-like parametrizations of sigma.
// Supported for dim <= 4.
MeasureResult m_schatten_p(const DensityMatrix& rho, double p, const OptimizerConfig& cfg = {});

// S(delta(rho)) - S(rho) in bits.
MeasureResult m_relative_entropy(const DensityMatrix& rho);

// 1 - max over real unit vectors |<phi|psi>|^2; equals 1 minus the largest
// eigenvalue of the symmetrized projector. Range [0, 1/2].
MeasureResult m_geometric_pure(const PureState& psi);

// Smallest s >= 0 such that (rho + s tau) / (1 + s) is a real state for
// some state tau. Qubit only; bisection over s with an exact feasibility
// test on the Bloch disk.
MeasureResult robustness(const DensityMatrix& rho, const BisectionConfig& cfg = {});

// Feasibility oracle behind `robustness`: true when some real qubit state
// tau makes (1 + s) tau - rho positive semidefinite.
bool robustness_feasible(const DensityMatrix& rho, double s);

// delta(rho), the minimizer behind m_l1 / m_lp.
DensityMatrix closest_real_state(const DensityMatrix& rho);

} // namespace imaginarity
