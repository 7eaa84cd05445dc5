#pragma once

// Independent cross-checks used only by tests. These deliberately avoid the
// library's Jacobi eigensolver and optimizers so that agreement between the
// two routes means something.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/rng.hpp"

namespace oracles {

using imaginarity::Complex;
using imaginarity::ComplexMatrix;

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion.
// Returns c so that det(lambda I - A) = lambda^d - c[0] lambda^(d-1)
// - c[1] lambda^(d-2) - ... - c[d-1]. Coefficients of a Hermitian matrix are
// real; imaginary parts are rounding noise and dropped.
inline std::vector<double> char_poly_coefficients(const ComplexMatrix& a) {
    const std::size_t d = a.rows();
    std::vector<double> c(d, 0.0);
    ComplexMatrix m = a;
    for (std::size_t k = 0; k < d; ++k) {
        c[k] = (m.trace() / static_cast<double>(k + 1)).real();
        if (k + 1 == d) {
            break;
        }
        ComplexMatrix shifted = m;
        for (std::size_t i = 0; i < d; ++i) {
            shifted(i, i) -= Complex(c[k], 0.0);
        }
        m = a * shifted;
    }
    return c;
}

inline double char_poly_eval(const std::vector<double>& c, double lambda) {
    // det(lambda I - A) via Horner in long double.
    long double acc = 1.0L;
    for (double ck : c) {
        acc = acc * lambda - static_cast<long double>(ck);
    }
    return static_cast<double>(acc);
}

// Eigenvalues of a (generic) Hermitian matrix as bisected roots of the
// characteristic polynomial, descending. Assumes distinct roots, which holds
// almost surely for the random matrices the tests feed it.
inline std::vector<double> char_poly_eigenvalues(const ComplexMatrix& a) {
    const std::size_t d = a.rows();
    const std::vector<double> c = char_poly_coefficients(a);

    double radius = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            row += std::abs(a(i, j));
        }
        radius = std::max(radius, row);
    }
    const double lo = -radius - 1.0;
    const double hi = radius + 1.0;

    const std::size_t grid = 20000;
    std::vector<double> roots;
    double prev_x = lo;
    double prev_f = char_poly_eval(c, lo);
    for (std::size_t g = 1; g <= grid && roots.size() < d; ++g) {
        const double x = lo + (hi - lo) * static_cast<double>(g) / grid;
        const double f = char_poly_eval(c, x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (f * prev_f < 0.0) {
            double a0 = prev_x;
            double b0 = x;
            double fa = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a0 + b0);
                const double fm = char_poly_eval(c, mid);
                if (fm == 0.0) {
                    a0 = b0 = mid;
                    break;
                }
                if (fa * fm < 0.0) {
                    b0 = mid;
                } else {
                    a0 = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a0 + b0));
        }
        prev_x = x;
        prev_f = f;
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

// Random Hermitian matrix with entries of scale ~1 (not a state).
inline ComplexMatrix random_hermitian(std::size_t d, imaginarity::Rng& rng) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = Complex(rng.gaussian(), 0.0);
        for (std::size_t j = i + 1; j < d; ++j) {
            const Complex z(rng.gaussian(), rng.gaussian());
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

} // namespace oracles
