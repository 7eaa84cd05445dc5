#include "imaginarity/complex_matrix.hpp"

#include <cmath>
#include <utility>

#include "imaginarity/errors.hpp"

namespace imaginarity {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                 "x" + std::to_string(b.cols()) + " differ");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw ShapeMismatchError("matrix dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw ShapeMismatchError("matrix dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw ShapeMismatchError("entry count " + std::to_string(entries_.size()) +
                                 " does not fill a " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) {
        throw ShapeMismatchError("matrix dimensions must be positive");
    }
    cols_ = rows.begin()->size();
    if (cols_ == 0) {
        throw ShapeMismatchError("matrix dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeMismatchError("ragged initializer rows");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = Complex(1.0, 0.0);
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& e : out.entries_) {
        e = std::conj(e);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) {
        throw ShapeMismatchError("trace of a non-square matrix");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        sum += (*this)(i, i);
    }
    return sum;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

double ComplexMatrix::max_abs_imag() const {
    double m = 0.0;
    for (const auto& e : entries_) {
        m = std::max(m, std::abs(e.imag()));
    }
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    require_same_shape(*this, other, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
    }
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (rows_ != cols_) {
        throw ShapeMismatchError("hermiticity defect of a non-square matrix");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            return false;
        }
    }
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& e : entries_) {
        e *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, Complex scale) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatchError("multiply: inner dimensions " + std::to_string(a.cols()) +
                                 " and " + std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix orthonormalize_columns(ComplexMatrix m) {
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    if (n < k) {
        throw RankDeficientError("cannot orthonormalize " + std::to_string(k) +
                                 " columns in dimension " + std::to_string(n));
    }
    for (std::size_t j = 0; j < k; ++j) {
        // Two projection passes keep orthogonality near machine precision.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t prev = 0; prev < j; ++prev) {
                Complex overlap(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    overlap += std::conj(m(i, prev)) * m(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    m(i, j) -= overlap * m(i, prev);
                }
            }
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm2 += std::norm(m(i, j));
        }
        const double norm = std::sqrt(norm2);
        if (norm < 1e-12) {
            throw RankDeficientError("column " + std::to_string(j) +
                                     " is linearly dependent on the previous columns");
        }
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) /= norm;
        }
    }
    return m;
}

} // namespace imaginarity
