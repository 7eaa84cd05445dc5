#pragma once

#include "imaginarity/states.hpp"

namespace imaginarity {

// H(x) = -x log2 x - (1-x) log2 (1-x) on [0, 1], with H(0) = H(1) = 0.
double binary_entropy(double x);

// Von Neumann entropy in bits. Eigenvalues in [-1e-8, 0] are clamped to 0;
// anything lower throws NegativeEigenvalueError.
double von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma) = Tr(rho log2 rho) - Tr(rho log2 sigma). Returns +infinity
// when rho has weight above 1e-8 outside the support of sigma (eigenvalues
// of sigma at or below 1e-12 count as outside), so callers minimizing over
// sigma can treat the mismatch as an ordinary large value. Results in
// [-1e-9, 0] are clamped to 0.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

} // namespace imaginarity
