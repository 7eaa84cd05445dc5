#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/states.hpp"

namespace imaginarity {

// Closed forms on the Bloch ball, rho = (I + t n.sigma) / 2.

// m_l1 = t |ny|.
double m_l1_bloch(double t, double ny);

// m_relative_entropy = H((1 + t sqrt(1 - ny^2)) / 2) - H((1 + t) / 2).
double m_r_bloch(double t, double ny);

enum class ChannelKind {
    bit_flip,
    phase_flip,
    amplitude_damping,
};

enum class MeasureKind {
    l1,
    relative_entropy,
};

const char* channel_kind_name(ChannelKind c);
const char* measure_kind_name(MeasureKind m);

// Measure of the named channel's output, in closed form on Bloch
// parameters. Agrees with the Kraus route through apply() to 1e-10.
double channel_measure_bloch(ChannelKind channel, MeasureKind measure, double t, double nx,
                             double ny, double nz, double p);

// --- Monte-Carlo scans ----------------------------------------------------

enum class Sampler {
    haar_pure,      // projectors of Haar-random qubit vectors
    mixed,          // Ginibre mixed qubits
    bloch_uniform,  // uniform over the solid Bloch ball
    bloch_lower,    // Bloch ball restricted to nz <= 0
};

const char* sampler_name(Sampler s);
Sampler sampler_from_name(const std::string& name);

// A measure under scan: evaluator plus the name reports carry.
struct NamedMeasure {
    std::string name;
    std::function<double(const DensityMatrix&)> fn;
};

// Builds the scan handle for "l1", "trace", "r", "lp:<p>", or "pnorm:<p>".
NamedMeasure measure_from_spec(const std::string& spec);

struct OrderScanConfig {
    Sampler sampler = Sampler::bloch_uniform;
    std::size_t trials = 10000;
    double tie_epsilon = 1e-9;
    std::vector<double> p_grid; // empty = 0, 0.05, ..., 0.95, 1
    std::uint64_t seed = 0;
};

std::vector<double> default_p_grid();

// The offending pair for the worst violation found.
struct ScanWitness {
    ComplexMatrix rho1;
    ComplexMatrix rho2;
    double p = 0.0;        // channel parameter; 0 when no channel is involved
    std::size_t trial = 0; // index of the offending trial
};

struct ScanReport {
    std::string scan_kind;
    std::string measure_a;
    std::string measure_b;
    std::string channel;
    std::string sampler;
    std::size_t trials_run = 0;
    std::size_t ties_skipped = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0; // largest wrong-direction excursion; <= 0 when clean
    std::uint64_t seed = 0;
    std::optional<ScanWitness> witness;
};

// Draws random pairs and checks that measure a and measure b order them the
// same way. Pairs within tie_epsilon of equal under either measure are
// skipped as ties.
ScanReport same_order_scan(const NamedMeasure& a, const NamedMeasure& b,
                           const OrderScanConfig& cfg);

// Draws random pairs, pushes both through the channel family at every p in
// the grid, and checks the measure orders outputs as it ordered inputs.
// Pre-channel ties are skipped; post-channel differences within tie_epsilon
// (for example when the output measure is identically zero at some p) are
// ties as well, not violations.
ScanReport channel_order_scan(const NamedMeasure& measure, const std::string& channel_family,
                              const OrderScanConfig& cfg);

// Checks measure(apply(channel, rho)) <= measure(rho) + slack over random
// real channels with k = d^2 Kraus operators per dimension in dims.
ScanReport monotonicity_scan(const NamedMeasure& measure, const std::vector<std::size_t>& dims,
                             std::size_t trials_per_dim, std::uint64_t seed,
                             double slack = 1e-9);

// --- Derivative sign scans -------------------------------------------------

// One claimed partial-derivative sign on a closed form, checked by central
// finite differences on a grid over the claim's region.
struct DerivativeTarget {
    std::string name;        // e.g. "mr:t" or "bitflip_r:nx"
    int expected_sign = 0;   // +1 for >= 0, -1 for <= 0
    bool exploratory = false; // reported, never asserted
};

// Every built-in claim, in a fixed order; exploratory probes last.
std::vector<DerivativeTarget> derivative_targets();

// Runs the finite-difference scan for one named target. Grid size is per
// axis; the full grid is the cross product over the target's free
// parameters, at least 10^4 points after region filtering for the default.
ScanReport derivative_sign_scan(const std::string& target, std::size_t points_per_axis = 0,
                                double step = 1e-5, double slack = 1e-7);

} // namespace imaginarity
