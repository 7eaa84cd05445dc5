#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/states.hpp"

namespace imaginarity {

// Pure-state ensemble realizing a mixed state.
struct Decomposition {
    std::vector<double> weights;
    std::vector<PureState> states;

    // sum_i w_i |psi_i><psi_i|.
    ComplexMatrix mixture() const;
};

struct RoofConfig {
    std::size_t ensemble_size = 0; // 0 = min(d^2, 2 * rank)
    int restarts = 16;
    int max_iters = 400;
    double step_tol = 1e-6;       // perturbation floor ending a restart
    std::uint64_t seed = 0;
};

// Ensemble obtained from an m x r isometry W applied to the eigenensemble
// of rho: |psi_i~> = sum_j W_ij sqrt(q_j) |e_j>. Every decomposition of rho
// into at most m pure states arises this way. W must have r = rank(rho)
// orthonormal columns.
Decomposition ensemble_from_isometry(const DensityMatrix& rho, const ComplexMatrix& w);

double pure_m_l1(const PureState& psi);
double pure_m_geometric(const PureState& psi);
double pure_m_relative_entropy(const PureState& psi);

using PureMeasureFn = std::function<double(const PureState&)>;

struct RoofResult {
    double value = 0.0;
    Decomposition decomposition;
};

// Convex roof min over decompositions of sum_i w_i measure(psi_i), searched
// over isometries by coordinate perturbation with halving steps. The
// eigendecomposition is always one of the candidates, so the result never
// exceeds the eigenensemble average. Supported for dim <= 4.
RoofResult convex_roof(const DensityMatrix& rho, const PureMeasureFn& measure,
                       const RoofConfig& cfg = {});

} // namespace imaginarity
