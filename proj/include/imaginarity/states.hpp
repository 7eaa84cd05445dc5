#pragma once

#include <cstdint>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/rng.hpp"

namespace imaginarity {

// Acceptance windows for density-matrix validation.
struct ValidationTolerances {
    double hermitian = 1e-10; // max|m_ij - conj(m_ji)|
    double trace = 1e-10;     // |Tr(m) - 1|
    double psd = 1e-8;        // eigenvalues admitted down to -psd
};

// A validated density matrix: Hermitian, unit trace, positive semidefinite
// within the tolerances it was checked against. Construction goes through
// validate_density (or the DensityMatrix::validate alias), so holding one
// is proof the checks ran.
class DensityMatrix {
public:
    static DensityMatrix validate(const ComplexMatrix& m, const ValidationTolerances& tol = {});

    const ComplexMatrix& matrix() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }

private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

DensityMatrix validate_density(const ComplexMatrix& m, const ValidationTolerances& tol = {});

// A normalized state vector.
class PureState {
public:
    static PureState validate(std::vector<Complex> amplitudes, double norm_tol = 1e-10);

    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::size_t dim() const { return amps_.size(); }

    DensityMatrix projector() const;

private:
    explicit PureState(std::vector<Complex> amps) : amps_(std::move(amps)) {}
    std::vector<Complex> amps_;
};

// Qubit in Bloch form rho = (I + t n.sigma) / 2 with 0 <= t <= 1 and |n| = 1.
struct BlochQubit {
    double t;
    double nx;
    double ny;
    double nz;

    BlochQubit(double t, double nx, double ny, double nz);
};

// Symmetrization rho -> (rho + rho^T) / 2, the closest-real-state map.
DensityMatrix delta(const DensityMatrix& rho);

// rho = real_part + i * imag_part with real_part = delta(rho) (same
// arithmetic, equal to the last bit) and imag_part real antisymmetric up to
// the validation tolerance of rho.
struct RealImagSplit {
    DensityMatrix real_part;
    ComplexMatrix imag_part;
};

RealImagSplit real_imag_split(const DensityMatrix& rho);

// True when every entry's imaginary part is within tol of zero.
bool is_real_state(const DensityMatrix& rho, double tol = 1e-10);

DensityMatrix bloch_to_density(const BlochQubit& b);

// Inverse of bloch_to_density. Degenerate direction at t < 1e-15 is pinned
// to n = (0, 0, 1).
BlochQubit density_to_bloch(const DensityMatrix& rho);

// Haar-distributed pure state: normalized vector of iid complex Gaussians.
PureState sample_haar_pure(std::size_t d, Rng& rng);
PureState sample_haar_pure(std::size_t d, std::uint64_t seed);

// Full-rank mixed state G G^dagger / Tr(G G^dagger) with G a d x d complex
// Ginibre matrix. For d = 2 this is the Hilbert-Schmidt ensemble.
DensityMatrix sample_mixed(std::size_t d, Rng& rng);
DensityMatrix sample_mixed(std::size_t d, std::uint64_t seed);

// Same construction from a real Ginibre matrix; lands on real states.
DensityMatrix sample_real_mixed(std::size_t d, Rng& rng);
DensityMatrix sample_real_mixed(std::size_t d, std::uint64_t seed);

// Uniform over the solid Bloch ball: direction uniform on the sphere,
// radius t = cbrt(u).
BlochQubit sample_bloch_uniform(Rng& rng);

// Same, restricted to the lower hemisphere nz <= 0.
BlochQubit sample_bloch_lower(Rng& rng);

} // namespace imaginarity
