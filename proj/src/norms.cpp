#include "imaginarity/norms.hpp"

#include <algorithm>
#include <cmath>

#include "imaginarity/eigen.hpp"
#include "imaginarity/errors.hpp"

namespace imaginarity {

namespace {

void require_valid_order(double p) {
    if (!(p >= 1.0)) {
        throw DomainError("norm order p = " + std::to_string(p) + " is below 1");
    }
}

} // namespace

std::vector<double> singular_values(const ComplexMatrix& a) {
    // Hermitian case first: singular values are |eigenvalues|, and skipping
    // the Gram square keeps tiny values at full precision (sqrt of the
    // squared spectrum would turn eigensolver noise eps into sqrt(eps)).
    if (a.rows() == a.cols() &&
        a.hermiticity_defect() <= 1e-12 * std::max(1.0, a.max_abs())) {
        EigenSystem es = hermitian_eigensystem(a, 1e-11 * std::max(1.0, a.max_abs()));
        std::vector<double> sigma(es.eigenvalues.size());
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            sigma[i] = std::abs(es.eigenvalues[i]);
        }
        std::sort(sigma.begin(), sigma.end(), std::greater<double>());
        return sigma;
    }
    // General case: eigenvalues of the smaller Gram matrix; sigma_i = sqrt(lambda_i).
    const bool wide = a.cols() > a.rows();
    const ComplexMatrix gram = wide ? a * a.adjoint() : a.adjoint() * a;
    EigenSystem es = hermitian_eigensystem(gram, 1e-8 * std::max(1.0, gram.max_abs()));
    std::vector<double> sigma(es.eigenvalues.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        sigma[i] = std::sqrt(std::max(es.eigenvalues[i], 0.0));
    }
    return sigma; // already descending
}

double trace_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (double s : singular_values(a)) {
        sum += s;
    }
    return sum;
}

double schatten_p_norm(const ComplexMatrix& a, double p) {
    require_valid_order(p);
    double sum = 0.0;
    for (double s : singular_values(a)) {
        sum += std::pow(s, p);
    }
    return std::pow(sum, 1.0 / p);
}

double lp_entrywise_norm(const ComplexMatrix& a, double p) {
    require_valid_order(p);
    double sum = 0.0;
    for (const Complex& e : a.entries()) {
        sum += std::pow(std::abs(e), p);
    }
    return std::pow(sum, 1.0 / p);
}

} // namespace imaginarity
