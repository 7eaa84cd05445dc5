#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/measures.hpp"
#include "imaginarity/states.hpp"

namespace imaginarity {

// Quantum channel in Kraus form. Operators map dimension d_in to d_out.
struct KrausChannel {
    std::size_t d_in = 0;
    std::size_t d_out = 0;
    std::vector<ComplexMatrix> kraus_ops;
    std::string label;
};

// True when sum_k K_k^dagger K_k = I within tol (entrywise).
bool validate_cptp(const KrausChannel& ch, double tol = 1e-10);

// True when every Kraus entry has |Im| <= tol; such channels map real
// states to real states.
bool is_real_operation(const KrausChannel& ch, double tol = 1e-10);

// sum_k K_k rho K_k^dagger, validated as a density matrix on the way out.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Qubit bit flip: {sqrt(p) I, sqrt(1-p) X}.
KrausChannel bit_flip(double p);

// Qubit phase flip: {sqrt(p) I, sqrt(1-p) |0><0|, sqrt(1-p) |1><1|}.
KrausChannel phase_flip(double p);

// Qubit amplitude damping: {|0><0| + sqrt(1-p) |1><1|, sqrt(p) |0><1|}.
KrausChannel amplitude_damping(double p);

// {|0><i|, i = 0..d-1}: sends every d-dimensional state to |0><0|.
KrausChannel collapse_channel(std::size_t d);

// Tensor the identity on a d_left-dimensional factor to the left of every
// Kraus operator.
KrausChannel lift_with_identity(const KrausChannel& ch, std::size_t d_left);

// Random channel with k real Kraus operators (k = 0 picks d^2), built by
// orthonormalizing real Gaussian columns of the stacked (k d) x d matrix so
// completeness holds exactly up to rounding.
KrausChannel random_real_channel(std::size_t d, std::size_t k, std::uint64_t seed);

// max-abs deviation of apply(ch, delta(rho)) from delta(apply(ch, rho)):
// zero for channels that commute with transposition, in particular every
// real-Kraus channel.
double transpose_covariance_defect(const KrausChannel& ch, const DensityMatrix& rho);

// Parses "bitflip:p", "phaseflip:p", "ampdamp:p", "collapse:d".
KrausChannel channel_from_spec(const std::string& spec);

enum class NormKind {
    entrywise,
    schatten,
};

// Outcome of the order-p measure before and after the identity-lifted
// collapse acts on rho (x) I/d.
struct ViolationReport {
    double before = 0.0;
    double after = 0.0;
    bool violated = false;
};

// Evaluates the order-p measure (entrywise lp or Schatten-p distance) on
// rho (x) I_d/d, pushes that state through the lifted collapse channel, and
// measures again. For p > 1 and non-real rho the measure increases, so the
// channel is not free for these measures. Throws DomainError for p <= 1.
ViolationReport demonstrate_lp_violation(const DensityMatrix& rho, double p, NormKind kind,
                                         std::size_t d = 2, const OptimizerConfig& cfg = {});

} // namespace imaginarity
