#pragma once

#include <vector>

#include "imaginarity/complex_matrix.hpp"

namespace imaginarity {

// Singular values of an arbitrary complex matrix, sorted descending.
std::vector<double> singular_values(const ComplexMatrix& a);

// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

// (sum_i sigma_i^p)^(1/p) over singular values; p >= 1.
double schatten_p_norm(const ComplexMatrix& a, double p);

// (sum_ij |a_ij|^p)^(1/p) over all entries; p >= 1.
double lp_entrywise_norm(const ComplexMatrix& a, double p);

} // namespace imaginarity
