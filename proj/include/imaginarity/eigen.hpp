#pragma once

#include <vector>

#include "imaginarity/complex_matrix.hpp"

namespace imaginarity {

// Spectral decomposition of a Hermitian matrix. Eigenvalues are real and
// sorted descending; eigenvector k is the k-th column of `eigenvectors` and
// the columns are orthonormal.
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    // V diag(eigenvalues) V^dagger.
    ComplexMatrix reconstruct() const;
};

// Full eigensystem of a Hermitian matrix via cyclic Jacobi rotations.
// `hermitian_tol` bounds the accepted input defect max|m_ij - conj(m_ji)|;
// the iteration stops once the off-diagonal Frobenius mass is below 1e-12
// and throws NoConvergenceError after 100 sweeps. Supported up to d = 64.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double hermitian_tol = 1e-10);

} // namespace imaginarity
