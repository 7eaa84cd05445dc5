#include "imaginarity/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "imaginarity/errors.hpp"
#include "imaginarity/norms.hpp"
#include "imaginarity/rng.hpp"

namespace imaginarity {

namespace {

void require_channel_shapes(const KrausChannel& ch) {
    if (ch.kraus_ops.empty()) {
        throw ShapeMismatchError("channel has no Kraus operators");
    }
    for (const ComplexMatrix& k : ch.kraus_ops) {
        if (k.rows() != ch.d_out || k.cols() != ch.d_in) {
            throw ShapeMismatchError("Kraus operator shape " + std::to_string(k.rows()) + "x" +
                                     std::to_string(k.cols()) + " does not match channel " +
                                     std::to_string(ch.d_out) + "x" + std::to_string(ch.d_in));
        }
        if (!k.all_finite()) {
            throw DomainError("Kraus operator has non-finite entries");
        }
    }
}

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(what) + " parameter " + std::to_string(p) +
                          " outside [0, 1]");
    }
}

} // namespace

bool validate_cptp(const KrausChannel& ch, double tol) {
    require_channel_shapes(ch);
    ComplexMatrix sum(ch.d_in, ch.d_in);
    for (const ComplexMatrix& k : ch.kraus_ops) {
        sum += k.adjoint() * k;
    }
    return sum.max_abs_diff(ComplexMatrix::identity(ch.d_in)) <= tol;
}

bool is_real_operation(const KrausChannel& ch, double tol) {
    require_channel_shapes(ch);
    for (const ComplexMatrix& k : ch.kraus_ops) {
        if (k.max_abs_imag() > tol) {
            return false;
        }
    }
    return true;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
    require_channel_shapes(ch);
    if (rho.dim() != ch.d_in) {
        throw ShapeMismatchError("state dimension " + std::to_string(rho.dim()) +
                                 " does not match channel input " + std::to_string(ch.d_in));
    }
    ComplexMatrix out(ch.d_out, ch.d_out);
    for (const ComplexMatrix& k : ch.kraus_ops) {
        out += k * rho.matrix() * k.adjoint();
    }
    try {
        return DensityMatrix::validate(out);
    } catch (const Error& e) {
        throw OutputInvalidError("channel output failed state validation: " +
                                 std::string(e.what()));
    }
}

KrausChannel bit_flip(double p) {
    require_probability(p, "bit flip");
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    KrausChannel ch;
    ch.d_in = 2;
    ch.d_out = 2;
    ch.kraus_ops = {
        ComplexMatrix{{Complex(sp, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(sp, 0.0)}},
        ComplexMatrix{{Complex(0.0, 0.0), Complex(sq, 0.0)}, {Complex(sq, 0.0), Complex(0.0, 0.0)}},
    };
    ch.label = "bitflip:" + std::to_string(p);
    return ch;
}

KrausChannel phase_flip(double p) {
    require_probability(p, "phase flip");
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    KrausChannel ch;
    ch.d_in = 2;
    ch.d_out = 2;
    ch.kraus_ops = {
        ComplexMatrix{{Complex(sp, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(sp, 0.0)}},
        ComplexMatrix{{Complex(sq, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(0.0, 0.0)}},
        ComplexMatrix{{Complex(0.0, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(sq, 0.0)}},
    };
    ch.label = "phaseflip:" + std::to_string(p);
    return ch;
}

KrausChannel amplitude_damping(double p) {
    require_probability(p, "amplitude damping");
    const double sq = std::sqrt(1.0 - p);
    const double sp = std::sqrt(p);
    KrausChannel ch;
    ch.d_in = 2;
    ch.d_out = 2;
    ch.kraus_ops = {
        ComplexMatrix{{Complex(1.0, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(sq, 0.0)}},
        ComplexMatrix{{Complex(0.0, 0.0), Complex(sp, 0.0)}, {Complex(0.0, 0.0), Complex(0.0, 0.0)}},
    };
    ch.label = "ampdamp:" + std::to_string(p);
    return ch;
}

KrausChannel collapse_channel(std::size_t d) {
    if (d < 2) {
        throw DimensionError("collapse channel requires dimension >= 2");
    }
    KrausChannel ch;
    ch.d_in = d;
    ch.d_out = d;
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix k(d, d);
        k(0, i) = Complex(1.0, 0.0);
        ch.kraus_ops.push_back(std::move(k));
    }
    ch.label = "collapse:" + std::to_string(d);
    return ch;
}

KrausChannel lift_with_identity(const KrausChannel& ch, std::size_t d_left) {
    require_channel_shapes(ch);
    if (d_left < 1) {
        throw DimensionError("identity factor must have dimension >= 1");
    }
    const ComplexMatrix eye = ComplexMatrix::identity(d_left);
    KrausChannel out;
    out.d_in = d_left * ch.d_in;
    out.d_out = d_left * ch.d_out;
    for (const ComplexMatrix& k : ch.kraus_ops) {
        out.kraus_ops.push_back(tensor(eye, k));
    }
    out.label = "id" + std::to_string(d_left) + "(x)" + ch.label;
    return out;
}

KrausChannel random_real_channel(std::size_t d, std::size_t k, std::uint64_t seed) {
    if (d < 2) {
        throw DimensionError("random channel requires dimension >= 2");
    }
    if (k == 0) {
        k = d * d;
    }
    // Columns of the stacked (k d) x d block matrix [K_1; ...; K_k] are
    // orthonormalized, which is exactly the completeness condition.
    Rng rng(seed);
    ComplexMatrix stacked(k * d, d);
    for (std::size_t i = 0; i < k * d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            stacked(i, j) = Complex(rng.gaussian(), 0.0);
        }
    }
    stacked = orthonormalize_columns(std::move(stacked));
    KrausChannel ch;
    ch.d_in = d;
    ch.d_out = d;
    for (std::size_t block = 0; block < k; ++block) {
        ComplexMatrix op(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                op(i, j) = stacked(block * d + i, j);
            }
        }
        ch.kraus_ops.push_back(std::move(op));
    }
    ch.label = "random-real:" + std::to_string(d) + ":" + std::to_string(k);
    return ch;
}

double transpose_covariance_defect(const KrausChannel& ch, const DensityMatrix& rho) {
    const DensityMatrix lhs = apply(ch, delta(rho));
    const DensityMatrix rhs = delta(apply(ch, rho));
    return lhs.matrix().max_abs_diff(rhs.matrix());
}

KrausChannel channel_from_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos || colon + 1 >= spec.size()) {
        throw DomainError("channel spec '" + spec + "' is not of the form name:parameter");
    }
    const std::string name = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (name == "collapse") {
        std::size_t pos = 0;
        unsigned long d = 0;
        try {
            d = std::stoul(arg, &pos);
        } catch (const std::exception&) {
            throw DomainError("channel spec '" + spec + "' has a malformed dimension");
        }
        if (pos != arg.size()) {
            throw DomainError("channel spec '" + spec + "' has a malformed dimension");
        }
        return collapse_channel(d);
    }
    double p = 0.0;
    std::size_t pos = 0;
    try {
        p = std::stod(arg, &pos);
    } catch (const std::exception&) {
        throw DomainError("channel spec '" + spec + "' has a malformed parameter");
    }
    if (pos != arg.size()) {
        throw DomainError("channel spec '" + spec + "' has a malformed parameter");
    }
    if (name == "bitflip") {
        return bit_flip(p);
    }
    if (name == "phaseflip") {
        return phase_flip(p);
    }
    if (name == "ampdamp") {
        return amplitude_damping(p);
    }
    throw DomainError("unknown channel family '" + name + "'");
}

ViolationReport demonstrate_lp_violation(const DensityMatrix& rho, double p, NormKind kind,
                                         std::size_t d, const OptimizerConfig& cfg) {
    if (!(p > 1.0)) {
        throw DomainError("order-p violation requires p > 1; at p = 1 the measure is monotone");
    }
    if (d < 2) {
        throw DimensionError("ancilla dimension must be >= 2");
    }
    ComplexMatrix eye = ComplexMatrix::identity(d);
    eye *= Complex(1.0 / static_cast<double>(d), 0.0);
    const DensityMatrix big = DensityMatrix::validate(tensor(rho.matrix(), eye));
    const KrausChannel lifted = lift_with_identity(collapse_channel(d), rho.dim());
    const DensityMatrix after_state = apply(lifted, big);

    const auto measure = [&](const DensityMatrix& state) {
        if (kind == NormKind::entrywise) {
            return m_lp(state, p).value;
        }
        return m_schatten_p(state, p, cfg).value;
    };

    ViolationReport rep;
    rep.before = measure(big);
    rep.after = measure(after_state);
    rep.violated = rep.after > rep.before + 1e-12;
    return rep;
}

} // namespace imaginarity
