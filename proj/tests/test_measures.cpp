#include <doctest.h>

#include <cmath>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/eigen.hpp"
#include "imaginarity/entropy.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/measures.hpp"
#include "imaginarity/norms.hpp"
#include "imaginarity/rng.hpp"
#include "imaginarity/states.hpp"

using namespace imaginarity;

namespace {

DensityMatrix y_plus() {
    return validate_density(
        ComplexMatrix{{Complex(0.5, 0), Complex(0, -0.5)}, {Complex(0, 0.5), Complex(0.5, 0)}});
}

// Largest eigenvalue of a real symmetric matrix by power iteration with a
// shift that makes it positive definite. Independent of the Jacobi kernel.
double power_lambda_max(const ComplexMatrix& s) {
    const std::size_t d = s.rows();
    const double shift = 1.0 + s.max_abs() * static_cast<double>(d);
    std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double lambda = 0.0;
    for (int it = 0; it < 2000; ++it) {
        std::vector<double> w(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            double acc = shift * v[i];
            for (std::size_t j = 0; j < d; ++j) {
                acc += s(i, j).real() * v[j];
            }
            w[i] = acc;
        }
        double norm = 0.0;
        for (double x : w) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        lambda = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            v[i] = w[i] / norm;
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                lambda += v[i] * s(i, j).real() * v[j];
            }
        }
    }
    return lambda;
}

double sum_offdiag_abs_imag(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) {
                s += std::abs(m(i, j).imag());
            }
        }
    }
    return s;
}

} // namespace

TEST_CASE("l1 measure closed form and faithfulness") {
    CHECK(m_l1(y_plus()).value == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const DensityMatrix rho = sample_mixed(3, rng);
        const MeasureResult res = m_l1(rho);
        CHECK(res.value == doctest::Approx(sum_offdiag_abs_imag(rho.matrix())).epsilon(1e-14));
        CHECK(res.value > 0.0);

        // Witness is the real part and sits at distance exactly the measure.
        REQUIRE(res.witness_state.has_value());
        CHECK(res.witness_state->max_abs_imag() == 0.0);
        CHECK(lp_entrywise_norm(rho.matrix() - *res.witness_state, 1.0) ==
              doctest::Approx(res.value).epsilon(1e-12));
    }
    for (int rep = 0; rep < 20; ++rep) {
        CHECK(m_l1(sample_real_mixed(3, rng)).value == 0.0);
    }

    // Bloch closed form t*|ny|.
    for (int rep = 0; rep < 50; ++rep) {
        const BlochQubit q = sample_bloch_uniform(rng);
        const double expected = q.t * std::abs(q.ny);
        CHECK(m_l1(bloch_to_density(q)).value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("l1 measure is convex") {
    Rng rng(22);
    for (int rep = 0; rep < 30; ++rep) {
        const DensityMatrix a = sample_mixed(3, rng);
        const DensityMatrix b = sample_mixed(3, rng);
        const double lam = rng.uniform01();
        const DensityMatrix mix =
            validate_density(a.matrix() * Complex(lam, 0) + b.matrix() * Complex(1 - lam, 0));
        CHECK(m_l1(mix).value <= lam * m_l1(a).value + (1 - lam) * m_l1(b).value + 1e-12);
    }
}

TEST_CASE("trace-norm measure") {
    Rng rng(23);

    // Eigenvalue route: rho - rho^T = 2i Im(rho) is Hermitian, so the trace
    // norm is the sum of |eigenvalues|.
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            const DensityMatrix rho = sample_mixed(d, rng);
            const ComplexMatrix a = rho.matrix() - rho.matrix().transpose();
            const EigenSystem es = hermitian_eigensystem(a);
            double sum_abs = 0.0;
            for (double lam : es.eigenvalues) {
                sum_abs += std::abs(lam);
            }
            const double expected = 0.5 * sum_abs;
            CHECK(m_trace(rho).value == doctest::Approx(expected).epsilon(1e-10));

            // Never exceeds the entrywise measure.
            CHECK(m_trace(rho).value <= m_l1(rho).value + 1e-12);
        }
    }

    // Coincides with the l1 measure on qubits.
    for (int rep = 0; rep < 50; ++rep) {
        const DensityMatrix rho = sample_mixed(2, rng);
        CHECK(m_trace(rho).value == doctest::Approx(m_l1(rho).value).epsilon(1e-12));
    }

    CHECK(m_trace(y_plus()).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entrywise p-measures") {
    Rng rng(24);
    for (int rep = 0; rep < 20; ++rep) {
        const DensityMatrix rho = sample_mixed(3, rng);
        CHECK(m_lp(rho, 1.0).value == doctest::Approx(m_l1(rho).value).epsilon(1e-14));

        double sq = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (i != j) {
                    const double im = rho.matrix()(i, j).imag();
                    sq += im * im;
                }
            }
        }
        CHECK(m_lp(rho, 2.0).value == doctest::Approx(std::sqrt(sq)).epsilon(1e-12));

        // p-norms of a fixed list decrease in p.
        CHECK(m_lp(rho, 1.0).value >= m_lp(rho, 2.0).value - 1e-14);
        CHECK(m_lp(rho, 2.0).value >= m_lp(rho, 4.0).value - 1e-14);
    }
    CHECK_THROWS_AS(m_lp(y_plus(), 0.5), DomainError);
}

TEST_CASE("Schatten p-measure optimizer against closed forms") {
    Rng rng(25);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityMatrix rho = sample_mixed(2, rng);

        // p = 1: the minimum over real states equals the trace-norm measure,
        // achieved at the symmetrized state.
        const MeasureResult s1 = m_schatten_p(rho, 1.0);
        CHECK(s1.value == doctest::Approx(m_trace(rho).value).epsilon(5e-6));

        // p = 2: Frobenius projection onto real symmetric matrices.
        double sq = 0.0;
        for (const Complex& z : rho.matrix().entries()) {
            sq += z.imag() * z.imag();
        }
        const MeasureResult s2 = m_schatten_p(rho, 2.0);
        CHECK(s2.value == doctest::Approx(std::sqrt(sq)).epsilon(5e-6));

        // Witness is a real state at the reported distance.
        REQUIRE(s2.witness_state.has_value());
        CHECK(s2.witness_state->max_abs_imag() == 0.0);
        CHECK_NOTHROW(validate_density(*s2.witness_state));
        CHECK(schatten_p_norm(rho.matrix() - *s2.witness_state, 2.0) ==
              doctest::Approx(s2.value).epsilon(1e-10));
    }

    // One d = 3 spot check at p = 2 (closed form still valid).
    const DensityMatrix rho3 = sample_mixed(3, rng);
    double sq3 = 0.0;
    for (const Complex& z : rho3.matrix().entries()) {
        sq3 += z.imag() * z.imag();
    }
    CHECK(m_schatten_p(rho3, 2.0).value == doctest::Approx(std::sqrt(sq3)).epsilon(1e-5));

    CHECK_THROWS_AS(m_schatten_p(y_plus(), 0.5), DomainError);
    CHECK_THROWS_AS(m_schatten_p(sample_mixed(5, rng), 2.0), DimensionTooLargeError);
}

TEST_CASE("relative-entropy measure") {
    CHECK(m_relative_entropy(y_plus()).value == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng(26);
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            const DensityMatrix rho = sample_mixed(d, rng);
            const double mr = m_relative_entropy(rho).value;

            // Entropy-difference definition.
            CHECK(mr == doctest::Approx(von_neumann_entropy(delta(rho)) -
                                        von_neumann_entropy(rho))
                            .epsilon(1e-10));

            // Divergence to the symmetrized state reproduces it exactly.
            CHECK(relative_entropy(rho, delta(rho)) == doctest::Approx(mr).epsilon(1e-9));
            CHECK(mr >= 0.0);
        }
    }
    for (int rep = 0; rep < 10; ++rep) {
        CHECK(m_relative_entropy(sample_real_mixed(3, rng)).value == doctest::Approx(0.0));
    }

    // Bloch closed form.
    for (int rep = 0; rep < 30; ++rep) {
        const BlochQubit q = sample_bloch_uniform(rng);
        const double rperp = q.t * std::sqrt(std::max(0.0, 1.0 - q.ny * q.ny));
        const double expected =
            binary_entropy(0.5 * (1.0 + rperp)) - binary_entropy(0.5 * (1.0 + q.t));
        CHECK(m_relative_entropy(bloch_to_density(q)).value ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("relative-entropy measure beats a real-state grid") {
    Rng rng(27);
    for (int rep = 0; rep < 2; ++rep) {
        const DensityMatrix rho = sample_mixed(2, rng);
        const double mr = m_relative_entropy(rho).value;

        double grid_min = std::numeric_limits<double>::infinity();
        const int n = 101;
        for (int ix = 0; ix < n; ++ix) {
            const double x = -1.0 + 2.0 * ix / (n - 1);
            for (int iz = 0; iz < n; ++iz) {
                const double z = -1.0 + 2.0 * iz / (n - 1);
                const double r = std::sqrt(x * x + z * z);
                if (r > 1.0 - 1e-9) {
                    continue;
                }
                const ComplexMatrix sigma{
                    {Complex(0.5 * (1 + z), 0), Complex(0.5 * x, 0)},
                    {Complex(0.5 * x, 0), Complex(0.5 * (1 - z), 0)}};
                grid_min = std::min(grid_min, relative_entropy(rho, validate_density(sigma)));
            }
        }
        // The grid can only sit above the true minimum, and a 101-point mesh
        // should land within coarse resolution of it.
        CHECK(grid_min >= mr - 1e-9);
        CHECK(grid_min <= mr + 5e-3);
    }
}

TEST_CASE("geometric measure of pure states") {
    const PureState yp = PureState::validate({Complex(M_SQRT1_2, 0), Complex(0, M_SQRT1_2)});
    CHECK(m_geometric_pure(yp).value == doctest::Approx(0.5).epsilon(1e-12));

    const PureState real_pure = PureState::validate({Complex(0.6, 0), Complex(0.8, 0)});
    CHECK(m_geometric_pure(real_pure).value == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(28);
    // Qubit closed form through the l1 value of the projector.
    for (int rep = 0; rep < 50; ++rep) {
        const PureState psi = sample_haar_pure(2, rng);
        const double l1 = m_l1(psi.projector()).value;
        const double expected = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - l1 * l1)));
        CHECK(m_geometric_pure(psi).value == doctest::Approx(expected).epsilon(1e-10));
    }

    // Power-iteration oracle for the overlap maximum, d = 3 and 4.
    for (std::size_t d = 3; d <= 4; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            const PureState psi = sample_haar_pure(d, rng);
            const ComplexMatrix sym = delta(psi.projector()).matrix();
            const double lam = power_lambda_max(sym);
            CHECK(m_geometric_pure(psi).value == doctest::Approx(1.0 - lam).epsilon(1e-9));
        }
    }

    // Range: always within [0, 1/2].
    for (int rep = 0; rep < 20; ++rep) {
        const double v = m_geometric_pure(sample_haar_pure(3, rng)).value;
        CHECK(v >= -1e-12);
        CHECK(v <= 0.5 + 1e-12);
    }

    // Witness vector: real unit vector achieving the overlap.
    const PureState probe = sample_haar_pure(3, rng);
    const MeasureResult res = m_geometric_pure(probe);
    REQUIRE(res.witness_vector.has_value());
    double overlap_re = 0.0;
    double overlap_im = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const Complex v = (*res.witness_vector)[i];
        CHECK(v.imag() == 0.0);
        overlap_re += v.real() * probe.amplitudes()[i].real();
        overlap_im += v.real() * probe.amplitudes()[i].imag();
        norm2 += v.real() * v.real();
    }
    CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));
    const double overlap2 = overlap_re * overlap_re + overlap_im * overlap_im;
    CHECK(overlap2 == doctest::Approx(1.0 - res.value).epsilon(1e-9));
}

TEST_CASE("robustness of qubits") {
    CHECK(robustness(y_plus()).value == doctest::Approx(1.0).epsilon(1e-6));

    Rng rng(29);
    CHECK(robustness(sample_real_mixed(2, rng)).value <= 1e-6);

    // Closed form: mixing with tau must cancel the y-component, so the
    // optimal s is exactly t*|ny|.
    for (int rep = 0; rep < 25; ++rep) {
        const BlochQubit q = sample_bloch_uniform(rng);
        const DensityMatrix rho = bloch_to_density(q);
        const double expected = q.t * std::abs(q.ny);
        const MeasureResult res = robustness(rho);
        CHECK(res.value == doctest::Approx(expected).epsilon(2e-6));

        // Witness is the real state the mixture lands on; the state mixed
        // in to get there, tau = ((1+s) sigma - rho) / s, must be valid.
        if (expected > 1e-3) {
            REQUIRE(res.witness_state.has_value());
            CHECK(res.witness_state->max_abs_imag() == 0.0);
            CHECK_NOTHROW(validate_density(*res.witness_state, {1e-8, 1e-8, 1e-6}));
            const double s = res.value;
            const ComplexMatrix tau = (*res.witness_state * Complex(1.0 + s, 0) - rho.matrix()) *
                                      Complex(1.0 / s, 0);
            CHECK_NOTHROW(validate_density(tau, {1e-8, 1e-8, 1e-5}));
        }
    }

    // Feasibility oracle brackets the value.
    const BlochQubit q(0.9, 0.1, 0.7, std::sqrt(1.0 - 0.01 - 0.49));
    const DensityMatrix rho = bloch_to_density(q);
    const double r = robustness(rho).value;
    CHECK_FALSE(robustness_feasible(rho, r - 1e-4));
    CHECK(robustness_feasible(rho, r + 1e-4));

    CHECK_THROWS_AS(robustness(sample_mixed(3, rng)), DimensionError);
}

TEST_CASE("closest real state is the symmetrization") {
    Rng rng(30);
    const DensityMatrix rho = sample_mixed(3, rng);
    const DensityMatrix sigma = closest_real_state(rho);
    CHECK(sigma.matrix().max_abs_diff(delta(rho).matrix()) == 0.0);
    CHECK(is_real_state(sigma));
}
