#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace imaginarity {

using Complex = std::complex<double>;

// Dense complex matrix in row-major order. Carrier type for states, Kraus
// operators, and everything the eigen/norm kernels consume. Shapes are
// checked on every operation; value-level invariants (Hermiticity, trace,
// positivity) are enforced by the state types, not here.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;
    Complex trace() const;

    double max_abs() const;
    double max_abs_imag() const;
    // Largest entrywise |a_ij - b_ij|.
    double max_abs_diff(const ComplexMatrix& other) const;
    // Largest entrywise |a_ij - conj(a_ji)|; zero for exactly Hermitian input.
    double hermiticity_defect() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Modified Gram-Schmidt. Returns a matrix whose columns are an orthonormal
// basis of the column span; throws RankDeficientError when a column is
// (numerically) dependent on the previous ones.
ComplexMatrix orthonormalize_columns(ComplexMatrix m);

} // namespace imaginarity
