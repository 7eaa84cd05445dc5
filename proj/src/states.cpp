#include "imaginarity/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "imaginarity/eigen.hpp"
#include "imaginarity/errors.hpp"

namespace imaginarity {

namespace {

// Entry (i, j) of (m + m^T) / 2. Shared by delta and real_imag_split so the
// two produce bitwise identical real parts.
Complex symmetric_part(const ComplexMatrix& m, std::size_t i, std::size_t j) {
    return 0.5 * (m(i, j) + m(j, i));
}

ComplexMatrix symmetrize(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = symmetric_part(m, i, j);
        }
    }
    return out;
}

} // namespace

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m, const ValidationTolerances& tol) {
    if (m.rows() != m.cols() || m.empty()) {
        throw ShapeMismatchError("density matrix must be square and non-empty");
    }
    if (!m.all_finite()) {
        throw DomainError("density matrix has non-finite entries");
    }
    const double defect = m.hermiticity_defect();
    if (defect > tol.hermitian) {
        throw NotHermitianError("hermiticity defect " + std::to_string(defect) +
                                " exceeds tolerance " + std::to_string(tol.hermitian));
    }
    const Complex tr = m.trace();
    const double trace_err = std::abs(tr - Complex(1.0, 0.0));
    if (trace_err > tol.trace) {
        throw TraceNotOneError("trace deviates from one by " + std::to_string(trace_err));
    }
    EigenSystem es = hermitian_eigensystem(m, tol.hermitian);
    const double min_eig = es.eigenvalues.back();
    if (min_eig < -tol.psd) {
        throw NotPsdError("minimum eigenvalue " + std::to_string(min_eig) +
                          " is below -" + std::to_string(tol.psd));
    }
    return DensityMatrix(m);
}

DensityMatrix validate_density(const ComplexMatrix& m, const ValidationTolerances& tol) {
    return DensityMatrix::validate(m, tol);
}

PureState PureState::validate(std::vector<Complex> amplitudes, double norm_tol) {
    if (amplitudes.empty()) {
        throw ShapeMismatchError("state vector must be non-empty");
    }
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DomainError("state vector has non-finite entries");
        }
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > norm_tol) {
        throw DomainError("state vector norm^2 deviates from one by " +
                          std::to_string(std::abs(norm2 - 1.0)));
    }
    return PureState(std::move(amplitudes));
}

DensityMatrix PureState::projector() const {
    const std::size_t d = amps_.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = amps_[i] * std::conj(amps_[j]);
        }
    }
    return DensityMatrix::validate(m);
}

BlochQubit::BlochQubit(double t_, double nx_, double ny_, double nz_)
    : t(t_), nx(nx_), ny(ny_), nz(nz_) {
    if (!std::isfinite(t) || !std::isfinite(nx) || !std::isfinite(ny) || !std::isfinite(nz)) {
        throw DomainError("Bloch parameters must be finite");
    }
    if (t < -1e-12 || t > 1.0 + 1e-12) {
        throw DomainError("Bloch radius t = " + std::to_string(t) + " outside [0, 1]");
    }
    t = std::min(std::max(t, 0.0), 1.0);
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(n - 1.0) > 1e-10) {
        throw DomainError("Bloch direction norm " + std::to_string(n) + " is not 1");
    }
}

DensityMatrix delta(const DensityMatrix& rho) {
    return DensityMatrix::validate(symmetrize(rho.matrix()));
}

RealImagSplit real_imag_split(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix imag(m.rows(), m.cols());
    const Complex minus_i(0.0, -1.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            // (m - m^T) / (2i), real antisymmetric up to the input's
            // hermiticity defect.
            imag(i, j) = minus_i * 0.5 * (m(i, j) - m(j, i));
        }
    }
    return RealImagSplit{DensityMatrix::validate(symmetrize(m)), std::move(imag)};
}

bool is_real_state(const DensityMatrix& rho, double tol) {
    return rho.matrix().max_abs_imag() <= tol;
}

DensityMatrix bloch_to_density(const BlochQubit& b) {
    const double rx = b.t * b.nx;
    const double ry = b.t * b.ny;
    const double rz = b.t * b.nz;
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(0.5 * (1.0 + rz), 0.0);
    m(1, 1) = Complex(0.5 * (1.0 - rz), 0.0);
    m(0, 1) = Complex(0.5 * rx, -0.5 * ry);
    m(1, 0) = Complex(0.5 * rx, 0.5 * ry);
    return DensityMatrix::validate(m);
}

BlochQubit density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw DimensionError("Bloch form requires a qubit, got dimension " +
                             std::to_string(rho.dim()));
    }
    const ComplexMatrix& m = rho.matrix();
    const double rx = 2.0 * m(1, 0).real();
    const double ry = 2.0 * m(1, 0).imag();
    const double rz = (m(0, 0) - m(1, 1)).real();
    double t = std::sqrt(rx * rx + ry * ry + rz * rz);
    if (t < 1e-15) {
        return BlochQubit(t, 0.0, 0.0, 1.0);
    }
    // States valid within the PSD window can overshoot t = 1 by O(1e-8).
    const double clamped = std::min(t, 1.0);
    double nx = rx / t;
    double ny = ry / t;
    double nz = rz / t;
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    return BlochQubit(clamped, nx / n, ny / n, nz / n);
}

PureState sample_haar_pure(std::size_t d, Rng& rng) {
    if (d < 2) {
        throw DimensionError("sampling requires dimension >= 2");
    }
    std::vector<Complex> amps(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            amps[i] = Complex(re, im);
            norm2 += std::norm(amps[i]);
        }
    } while (norm2 < 1e-12);
    const double norm = std::sqrt(norm2);
    for (auto& a : amps) {
        a /= norm;
    }
    return PureState::validate(std::move(amps));
}

PureState sample_haar_pure(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return sample_haar_pure(d, rng);
}

namespace {

DensityMatrix ginibre_state(std::size_t d, Rng& rng, bool real_entries) {
    if (d < 2) {
        throw DimensionError("sampling requires dimension >= 2");
    }
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double re = rng.gaussian();
            const double im = real_entries ? 0.0 : rng.gaussian();
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    w *= Complex(1.0 / tr, 0.0);
    // Enforce exact Hermitian symmetry; the product is symmetric only up to
    // summation order.
    for (std::size_t i = 0; i < d; ++i) {
        w(i, i) = Complex(w(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < d; ++j) {
            const Complex avg = 0.5 * (w(i, j) + std::conj(w(j, i)));
            w(i, j) = avg;
            w(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix::validate(w);
}

} // namespace

DensityMatrix sample_mixed(std::size_t d, Rng& rng) {
    return ginibre_state(d, rng, false);
}

DensityMatrix sample_mixed(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return sample_mixed(d, rng);
}

DensityMatrix sample_real_mixed(std::size_t d, Rng& rng) {
    return ginibre_state(d, rng, true);
}

DensityMatrix sample_real_mixed(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return sample_real_mixed(d, rng);
}

BlochQubit sample_bloch_uniform(Rng& rng) {
    // Direction uniform on the sphere, radius with density ~ t^2.
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 6.283185307179586476925286766559);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double t = std::cbrt(rng.uniform01());
    return BlochQubit(t, s * std::cos(phi), s * std::sin(phi), z);
}

BlochQubit sample_bloch_lower(Rng& rng) {
    BlochQubit b = sample_bloch_uniform(rng);
    return BlochQubit(b.t, b.nx, b.ny, b.nz > 0.0 ? -b.nz : b.nz);
}

} // namespace imaginarity
