#include "imaginarity/bloch_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "imaginarity/channels.hpp"
#include "imaginarity/entropy.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/measures.hpp"
#include "imaginarity/rng.hpp"

namespace imaginarity {

namespace {

// H((1 + x) / 2) with the argument clamped against rounding overshoot.
double entropy_half(double x) {
    const double arg = std::min(1.0, std::max(0.0, 0.5 * (1.0 + x)));
    return binary_entropy(arg);
}

// Measure of the qubit with Bloch vector r: l1 reads the y-component,
// relative entropy compares the in-plane (x, z) radius with the full one.
double measure_from_bloch_vector(MeasureKind measure, double rx, double ry, double rz) {
    if (measure == MeasureKind::l1) {
        return std::abs(ry);
    }
    const double in_plane = std::sqrt(rx * rx + rz * rz);
    const double full = std::sqrt(rx * rx + ry * ry + rz * rz);
    return std::max(entropy_half(in_plane) - entropy_half(full), 0.0);
}

struct BlochVector {
    double x;
    double y;
    double z;
};

BlochVector channel_output_bloch(ChannelKind channel, double rx, double ry, double rz, double p) {
    switch (channel) {
        case ChannelKind::bit_flip: {
            const double k = 2.0 * p - 1.0;
            return {rx, k * ry, k * rz};
        }
        case ChannelKind::phase_flip:
            return {p * rx, p * ry, rz};
        case ChannelKind::amplitude_damping: {
            const double s = std::sqrt(1.0 - p);
            return {s * rx, s * ry, p + (1.0 - p) * rz};
        }
    }
    throw DomainError("unknown channel kind");
}

} // namespace

double m_l1_bloch(double t, double ny) {
    return measure_from_bloch_vector(MeasureKind::l1, 0.0, t * ny, 0.0);
}

double m_r_bloch(double t, double ny) {
    const double s = std::sqrt(std::max(0.0, 1.0 - ny * ny));
    return measure_from_bloch_vector(MeasureKind::relative_entropy, t * s, t * ny, 0.0);
}

const char* channel_kind_name(ChannelKind c) {
    switch (c) {
        case ChannelKind::bit_flip:
            return "bitflip";
        case ChannelKind::phase_flip:
            return "phaseflip";
        case ChannelKind::amplitude_damping:
            return "ampdamp";
    }
    return "unknown";
}

const char* measure_kind_name(MeasureKind m) {
    return m == MeasureKind::l1 ? "l1" : "r";
}

double channel_measure_bloch(ChannelKind channel, MeasureKind measure, double t, double nx,
                             double ny, double nz, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("channel parameter " + std::to_string(p) + " outside [0, 1]");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("Bloch radius " + std::to_string(t) + " outside [0, 1]");
    }
    const BlochVector r = channel_output_bloch(channel, t * nx, t * ny, t * nz, p);
    return measure_from_bloch_vector(measure, r.x, r.y, r.z);
}

// --- Scan plumbing ----------------------------------------------------------

const char* sampler_name(Sampler s) {
    switch (s) {
        case Sampler::haar_pure:
            return "haar-pure";
        case Sampler::mixed:
            return "mixed";
        case Sampler::bloch_uniform:
            return "bloch";
        case Sampler::bloch_lower:
            return "bloch-lower";
    }
    return "unknown";
}

Sampler sampler_from_name(const std::string& name) {
    if (name == "haar-pure") {
        return Sampler::haar_pure;
    }
    if (name == "mixed") {
        return Sampler::mixed;
    }
    if (name == "bloch") {
        return Sampler::bloch_uniform;
    }
    if (name == "bloch-lower") {
        return Sampler::bloch_lower;
    }
    throw DomainError("unknown sampler '" + name + "'");
}

namespace {

DensityMatrix draw_state(Sampler sampler, Rng& rng) {
    switch (sampler) {
        case Sampler::haar_pure:
            return sample_haar_pure(2, rng).projector();
        case Sampler::mixed:
            return sample_mixed(2, rng);
        case Sampler::bloch_uniform:
            return bloch_to_density(sample_bloch_uniform(rng));
        case Sampler::bloch_lower:
            return bloch_to_density(sample_bloch_lower(rng));
    }
    throw DomainError("unknown sampler");
}

} // namespace

NamedMeasure measure_from_spec(const std::string& spec) {
    if (spec == "l1") {
        return {"l1", [](const DensityMatrix& rho) { return m_l1(rho).value; }};
    }
    if (spec == "trace") {
        return {"trace", [](const DensityMatrix& rho) { return m_trace(rho).value; }};
    }
    if (spec == "r") {
        return {"r", [](const DensityMatrix& rho) { return m_relative_entropy(rho).value; }};
    }
    const std::size_t colon = spec.find(':');
    if (colon != std::string::npos && colon + 1 < spec.size()) {
        const std::string name = spec.substr(0, colon);
        double p = 0.0;
        std::size_t pos = 0;
        try {
            p = std::stod(spec.substr(colon + 1), &pos);
        } catch (const std::exception&) {
            throw DomainError("measure spec '" + spec + "' has a malformed order");
        }
        if (pos != spec.size() - colon - 1) {
            throw DomainError("measure spec '" + spec + "' has a malformed order");
        }
        if (name == "lp") {
            return {spec, [p](const DensityMatrix& rho) { return m_lp(rho, p).value; }};
        }
        if (name == "pnorm") {
            return {spec, [p](const DensityMatrix& rho) { return m_schatten_p(rho, p).value; }};
        }
    }
    throw UnsupportedError("unknown measure spec '" + spec + "'");
}

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int i = 1; i <= 19; ++i) {
        grid.push_back(0.05 * i);
    }
    grid.push_back(1.0);
    return grid;
}

ScanReport same_order_scan(const NamedMeasure& a, const NamedMeasure& b,
                           const OrderScanConfig& cfg) {
    ScanReport rep;
    rep.scan_kind = "same-order";
    rep.measure_a = a.name;
    rep.measure_b = b.name;
    rep.sampler = sampler_name(cfg.sampler);
    rep.seed = cfg.seed;

    Rng rng(cfg.seed);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const DensityMatrix rho1 = draw_state(cfg.sampler, rng);
        const DensityMatrix rho2 = draw_state(cfg.sampler, rng);
        ++rep.trials_run;
        const double da = a.fn(rho1) - a.fn(rho2);
        const double db = b.fn(rho1) - b.fn(rho2);
        if (std::abs(da) <= cfg.tie_epsilon || std::abs(db) <= cfg.tie_epsilon) {
            ++rep.ties_skipped;
            continue;
        }
        if (da * db < 0.0) {
            ++rep.violations;
            const double margin = std::min(std::abs(da), std::abs(db));
            if (margin > rep.worst_margin) {
                rep.worst_margin = margin;
                rep.witness = ScanWitness{rho1.matrix(), rho2.matrix(), 0.0, trial};
            }
        }
    }
    return rep;
}

ScanReport channel_order_scan(const NamedMeasure& measure, const std::string& channel_family,
                              const OrderScanConfig& cfg) {
    // A bare family name scans the whole p grid; "family:p" pins one value.
    std::string family = channel_family;
    std::vector<double> grid = cfg.p_grid.empty() ? default_p_grid() : cfg.p_grid;
    const std::size_t colon = channel_family.find(':');
    if (colon != std::string::npos) {
        channel_from_spec(channel_family); // validates family and parameter
        family = channel_family.substr(0, colon);
        grid = {std::stod(channel_family.substr(colon + 1))};
    }
    std::vector<KrausChannel> channels;
    channels.reserve(grid.size());
    for (double p : grid) {
        channels.push_back(channel_from_spec(family + ":" + std::to_string(p)));
    }

    ScanReport rep;
    rep.scan_kind = "channel-order";
    rep.measure_a = measure.name;
    rep.measure_b = measure.name;
    rep.channel = family;
    rep.sampler = sampler_name(cfg.sampler);
    rep.seed = cfg.seed;

    Rng rng(cfg.seed);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const DensityMatrix rho1 = draw_state(cfg.sampler, rng);
        const DensityMatrix rho2 = draw_state(cfg.sampler, rng);
        const double pre = measure.fn(rho1) - measure.fn(rho2);
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            ++rep.trials_run;
            if (std::abs(pre) <= cfg.tie_epsilon) {
                ++rep.ties_skipped;
                continue;
            }
            const DensityMatrix out1 = apply(channels[gi], rho1);
            const DensityMatrix out2 = apply(channels[gi], rho2);
            const double post = measure.fn(out1) - measure.fn(out2);
            if (std::abs(post) <= cfg.tie_epsilon) {
                // The family can null the measure entirely (for example at
                // the parameter where its scaling factor vanishes); equal
                // outputs are ties, not order flips.
                ++rep.ties_skipped;
                continue;
            }
            if (pre * post < 0.0) {
                ++rep.violations;
                const double margin = std::min(std::abs(pre), std::abs(post));
                if (margin > rep.worst_margin) {
                    rep.worst_margin = margin;
                    rep.witness = ScanWitness{rho1.matrix(), rho2.matrix(), grid[gi], trial};
                }
            }
        }
    }
    return rep;
}

ScanReport monotonicity_scan(const NamedMeasure& measure, const std::vector<std::size_t>& dims,
                             std::size_t trials_per_dim, std::uint64_t seed, double slack) {
    ScanReport rep;
    rep.scan_kind = "monotonicity";
    rep.measure_a = measure.name;
    rep.measure_b = measure.name;
    rep.channel = "random-real";
    rep.sampler = "mixed";
    rep.seed = seed;
    rep.worst_margin = -std::numeric_limits<double>::infinity();

    Rng rng(seed);
    for (std::size_t d : dims) {
        for (std::size_t trial = 0; trial < trials_per_dim; ++trial) {
            const KrausChannel ch = random_real_channel(d, d * d, rng.raw());
            const DensityMatrix rho = sample_mixed(d, rng);
            const DensityMatrix out = apply(ch, rho);
            ++rep.trials_run;
            const double diff = measure.fn(out) - measure.fn(rho);
            if (diff > rep.worst_margin) {
                rep.worst_margin = diff;
                if (diff > slack) {
                    rep.witness = ScanWitness{rho.matrix(), out.matrix(), 0.0, rep.trials_run - 1};
                }
            }
            if (diff > slack) {
                ++rep.violations;
            }
        }
    }
    return rep;
}

// --- Derivative sign scans ---------------------------------------------------

namespace {

double linear_step(double lo, double hi, std::size_t i, std::size_t n) {
    if (n == 1) {
        return 0.5 * (lo + hi);
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double channel_r_closed_form(ChannelKind kind, double t, double nx, double nz, double p) {
    const double ny2 = std::max(0.0, 1.0 - nx * nx - nz * nz);
    return channel_measure_bloch(kind, MeasureKind::relative_entropy, t, nx, std::sqrt(ny2), nz,
                                 p);
}

struct SignScanAccumulator {
    ScanReport* rep;
    double slack;
    int expected_sign;

    // diff is the centered finite difference; excursion is how far it went
    // against the claimed sign.
    void add(double diff) {
        ++rep->trials_run;
        const double excursion = -static_cast<double>(expected_sign) * diff;
        if (excursion > rep->worst_margin) {
            rep->worst_margin = excursion;
        }
        if (excursion > slack) {
            ++rep->violations;
        }
    }
};

} // namespace

std::vector<DerivativeTarget> derivative_targets() {
    return {
        {"mr:ny", +1, false},          {"mr:t", +1, false},
        {"bitflip_r:t", +1, false},    {"bitflip_r:nx", -1, false},
        {"bitflip_r:nz", -1, false},   {"phaseflip_r:t", +1, false},
        {"phaseflip_r:nx", -1, false}, {"phaseflip_r:nz", -1, false},
        {"ampdamp_r:t", +1, false},    {"ampdamp_r:nx", -1, false},
        {"ampdamp_r:nz", +1, false},   {"ampdamp_r:nz+", +1, true},
    };
}

ScanReport derivative_sign_scan(const std::string& target, std::size_t points_per_axis,
                                double step, double slack) {
    if (!(step > 0.0)) {
        throw DomainError("finite-difference step must be positive");
    }
    const auto targets = derivative_targets();
    const DerivativeTarget* found = nullptr;
    for (const auto& t : targets) {
        if (t.name == target) {
            found = &t;
            break;
        }
    }
    if (found == nullptr) {
        throw DomainError("unknown derivative target '" + target + "'");
    }

    const double h = step;
    constexpr double kMaxRadius = 0.999; // Bloch radius cap keeping entropies regular

    ScanReport rep;
    rep.scan_kind = found->exploratory ? "derivative-signs-exploratory" : "derivative-signs";
    rep.measure_a = target;
    rep.measure_b = found->expected_sign > 0 ? ">=0" : "<=0";
    rep.sampler = "grid";
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    SignScanAccumulator acc{&rep, slack, found->expected_sign};

    const std::string base = target.substr(0, target.find(':'));
    const std::string var = target.substr(target.find(':') + 1);

    if (base == "mr") {
        const std::size_t n = points_per_axis == 0 ? 105 : points_per_axis;
        if (var == "ny") {
            // d m_r / d|ny| >= 0 across the ball.
            for (std::size_t i = 0; i < n; ++i) {
                const double t = linear_step(0.0, kMaxRadius, i, n);
                for (std::size_t j = 0; j < n; ++j) {
                    const double u = linear_step(h, 1.0 - h, j, n);
                    acc.add((m_r_bloch(t, u + h) - m_r_bloch(t, u - h)) / (2.0 * h));
                }
            }
        } else if (var == "t") {
            // d m_r / dt >= 0 across the ball.
            for (std::size_t i = 0; i < n; ++i) {
                const double t = linear_step(h, kMaxRadius - h, i, n);
                for (std::size_t j = 0; j < n; ++j) {
                    const double u = linear_step(0.0, 1.0, j, n);
                    acc.add((m_r_bloch(t + h, u) - m_r_bloch(t - h, u)) / (2.0 * h));
                }
            }
        } else {
            throw DomainError("unknown derivative target '" + target + "'");
        }
        return rep;
    }

    ChannelKind kind;
    if (base == "bitflip_r") {
        kind = ChannelKind::bit_flip;
    } else if (base == "phaseflip_r") {
        kind = ChannelKind::phase_flip;
    } else if (base == "ampdamp_r") {
        kind = ChannelKind::amplitude_damping;
    } else {
        throw DomainError("unknown derivative target '" + target + "'");
    }

    const std::size_t n = points_per_axis == 0 ? 12 : points_per_axis;

    if (var == "t") {
        // d M_r(channel output) / dt >= 0 over the whole ball and p range.
        for (std::size_t it = 0; it < n; ++it) {
            const double t = linear_step(h, kMaxRadius - h, it, n);
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double nx = linear_step(-1.0, 1.0, ix, n);
                for (std::size_t iz = 0; iz < n; ++iz) {
                    const double nz = linear_step(-1.0, 1.0, iz, n);
                    if (nx * nx + nz * nz > 1.0) {
                        continue;
                    }
                    for (std::size_t ip = 0; ip < n; ++ip) {
                        const double p = linear_step(0.0, 1.0, ip, n);
                        acc.add((channel_r_closed_form(kind, t + h, nx, nz, p) -
                                 channel_r_closed_form(kind, t - h, nx, nz, p)) /
                                (2.0 * h));
                    }
                }
            }
        }
        return rep;
    }

    if (var == "nx") {
        // d M_r(channel output) / d|nx| <= 0; |nx| varies with nz held
        // fixed, ny absorbing the unit-norm constraint.
        for (std::size_t iz = 0; iz < n; ++iz) {
            const double nz = linear_step(-0.99, 0.99, iz, n);
            const double umax = std::sqrt(1.0 - nz * nz) - h;
            if (umax <= h) {
                continue;
            }
            for (std::size_t iu = 0; iu < n; ++iu) {
                const double u = linear_step(h, umax, iu, n);
                for (std::size_t it = 0; it < n; ++it) {
                    const double t = linear_step(0.01, kMaxRadius, it, n);
                    for (std::size_t ip = 0; ip < n; ++ip) {
                        const double p = linear_step(0.0, 1.0, ip, n);
                        acc.add((channel_r_closed_form(kind, t, u + h, nz, p) -
                                 channel_r_closed_form(kind, t, u - h, nz, p)) /
                                (2.0 * h));
                    }
                }
            }
        }
        return rep;
    }

    if (var == "nz" && (kind == ChannelKind::bit_flip || kind == ChannelKind::phase_flip)) {
        // d M_r(channel output) / d|nz| <= 0, mirror of the nx scan.
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double nx = linear_step(-0.99, 0.99, ix, n);
            const double umax = std::sqrt(1.0 - nx * nx) - h;
            if (umax <= h) {
                continue;
            }
            for (std::size_t iu = 0; iu < n; ++iu) {
                const double u = linear_step(h, umax, iu, n);
                for (std::size_t it = 0; it < n; ++it) {
                    const double t = linear_step(0.01, kMaxRadius, it, n);
                    for (std::size_t ip = 0; ip < n; ++ip) {
                        const double p = linear_step(0.0, 1.0, ip, n);
                        acc.add((channel_r_closed_form(kind, t, nx, u + h, p) -
                                 channel_r_closed_form(kind, t, nx, u - h, p)) /
                                (2.0 * h));
                    }
                }
            }
        }
        return rep;
    }

    if (kind == ChannelKind::amplitude_damping && (var == "nz" || var == "nz+")) {
        // d M_r(damped output) / d nz >= 0 on the claimed lower hemisphere;
        // the "+" probe walks the upper hemisphere and is only reported.
        const double zlo = (var == "nz") ? -1.0 + h : h;
        const double zhi = (var == "nz") ? -h : 1.0 - h;
        for (std::size_t iz = 0; iz < n; ++iz) {
            const double nz = linear_step(zlo, zhi, iz, n);
            // Keep |nx| off the axis so the kink of |p + t nz (1-p)| at
            // nx = 0 is not sampled exactly.
            const double umax = std::sqrt(1.0 - std::pow(std::abs(nz) + h, 2.0));
            if (umax <= 0.02) {
                continue;
            }
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double nx = linear_step(0.01, umax - 0.01, ix, n);
                for (std::size_t it = 0; it < n; ++it) {
                    const double t = linear_step(0.01, kMaxRadius, it, n);
                    for (std::size_t ip = 0; ip < n; ++ip) {
                        const double p = linear_step(0.0, 1.0, ip, n);
                        acc.add((channel_r_closed_form(kind, t, nx, nz + h, p) -
                                 channel_r_closed_form(kind, t, nx, nz - h, p)) /
                                (2.0 * h));
                    }
                }
            }
        }
        return rep;
    }

    throw DomainError("unknown derivative target '" + target + "'");
}

} // namespace imaginarity
