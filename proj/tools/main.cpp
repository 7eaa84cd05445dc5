#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imaginarity/bloch_order.hpp"
#include "imaginarity/channels.hpp"
#include "imaginarity/convex_roof.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/io.hpp"
#include "imaginarity/measures.hpp"
#include "imaginarity/states.hpp"
#include "imaginarity/version.hpp"

namespace {

using namespace imaginarity;

// Exit codes: 0 success (scans: no violations), 1 scan found violations,
// 2 invalid state or configuration, 3 unsupported measure or dimension,
// 4 map is not a channel (or produced an invalid state).
int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const DimensionTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OutputInvalidError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

double parse_double_strict(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError(what + " '" + s + "' is not a number");
    }
    if (pos != s.size()) {
        throw DomainError(what + " '" + s + "' has trailing characters");
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string item =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) {
            throw DomainError(what + " has an empty entry");
        }
        out.push_back(parse_double_strict(item, what));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::vector<std::size_t> parse_dim_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(s, "dimension list")) {
        const auto d = static_cast<std::size_t>(v);
        if (static_cast<double>(d) != v || d == 0) {
            throw DomainError("dimension list entries must be positive integers");
        }
        out.push_back(d);
    }
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
    } else {
        write_text(output_path, text);
    }
}

struct MeasureArgs {
    std::string state_path;
    std::string spec;
    std::string output_path;
    std::string witness_path;
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
};

int run_measure(const MeasureArgs& args) {
    MeasureResult res;
    if (args.spec == "geometric") {
        res = m_geometric_pure(read_pure_state(args.state_path));
    } else if (args.spec == "robustness") {
        res = robustness(read_state(args.state_path));
    } else if (args.spec == "l1") {
        res = m_l1(read_state(args.state_path));
    } else if (args.spec == "trace") {
        res = m_trace(read_state(args.state_path));
    } else if (args.spec == "r") {
        res = m_relative_entropy(read_state(args.state_path));
    } else {
        const std::size_t colon = args.spec.find(':');
        if (colon == std::string::npos || colon + 1 >= args.spec.size()) {
            throw UnsupportedError("unknown measure spec '" + args.spec + "'");
        }
        const std::string name = args.spec.substr(0, colon);
        const double p = parse_double_strict(args.spec.substr(colon + 1), "measure order");
        if (name == "lp") {
            res = m_lp(read_state(args.state_path), p);
        } else if (name == "pnorm") {
            OptimizerConfig cfg;
            cfg.restarts = args.restarts;
            cfg.seed = args.seed;
            res = m_schatten_p(read_state(args.state_path), p, cfg);
        } else {
            throw UnsupportedError("unknown measure spec '" + args.spec + "'");
        }
    }

    std::string out = "{\"measure\": \"" + args.spec + "\", \"value\": " +
                      format_double(res.value) + ", \"method\": \"" + method_name(res.method) +
                      "\"}\n";
    emit(out, args.output_path);

    if (!args.witness_path.empty()) {
        if (res.witness_state) {
            write_state(args.witness_path, *res.witness_state);
        } else if (res.witness_vector) {
            write_text(args.witness_path, pure_to_json(*res.witness_vector));
        } else {
            throw DomainError("measure '" + args.spec + "' provides no witness");
        }
    }
    return 0;
}

struct ChannelArgs {
    std::string channel_spec;
    std::string state_path;
    std::string output_path;
};

int run_channel(const ChannelArgs& args) {
    KrausChannel ch;
    if (std::ifstream probe(args.channel_spec); probe.good()) {
        ch = read_channel(args.channel_spec);
    } else {
        ch = channel_from_spec(args.channel_spec);
    }
    if (!validate_cptp(ch)) {
        std::cerr << "error: '" << ch.label << "' is not trace preserving\n";
        return 4;
    }
    const DensityMatrix rho = read_state(args.state_path);
    const DensityMatrix out = apply(ch, rho);
    emit(state_to_json(out.matrix()), args.output_path);
    return 0;
}

struct ScanArgs {
    std::string kind;
    std::string measure_a;
    std::string measure_b;
    std::string measure;
    std::string channel;
    std::string target = "all";
    std::string sampler = "bloch";
    std::string dims = "2,3,4";
    std::string p_grid;
    std::size_t trials = 10000;
    std::size_t points = 0;
    double tie_epsilon = 1e-9;
    double slack = 1e-9;
    double fd_step = 1e-5;
    double fd_slack = 1e-7;
    std::uint64_t seed = 0;
    std::string csv_path;
    std::string json_path;
};

int run_scan(const ScanArgs& args) {
    OrderScanConfig cfg;
    cfg.sampler = sampler_from_name(args.sampler);
    cfg.trials = args.trials;
    cfg.tie_epsilon = args.tie_epsilon;
    cfg.seed = args.seed;
    if (!args.p_grid.empty()) {
        cfg.p_grid = parse_double_list(args.p_grid, "p grid");
    }

    std::vector<ScanReport> reports;
    double threshold = args.tie_epsilon;

    if (args.kind == "same-order") {
        if (args.measure_a.empty() || args.measure_b.empty()) {
            throw DomainError("same-order scans need --measure-a and --measure-b");
        }
        reports.push_back(
            same_order_scan(measure_from_spec(args.measure_a), measure_from_spec(args.measure_b),
                            cfg));
    } else if (args.kind == "channel-order") {
        if (args.measure.empty() || args.channel.empty()) {
            throw DomainError("channel-order scans need --measure and --channel");
        }
        reports.push_back(channel_order_scan(measure_from_spec(args.measure), args.channel, cfg));
    } else if (args.kind == "monotonicity") {
        if (args.measure.empty()) {
            throw DomainError("monotonicity scans need --measure");
        }
        threshold = args.slack;
        reports.push_back(monotonicity_scan(measure_from_spec(args.measure),
                                            parse_dim_list(args.dims), args.trials, args.seed,
                                            args.slack));
    } else if (args.kind == "derivative-signs") {
        threshold = args.fd_slack;
        if (args.target == "all") {
            for (const auto& t : derivative_targets()) {
                reports.push_back(
                    derivative_sign_scan(t.name, args.points, args.fd_step, args.fd_slack));
            }
        } else {
            reports.push_back(
                derivative_sign_scan(args.target, args.points, args.fd_step, args.fd_slack));
        }
    } else {
        throw UnsupportedError("unknown scan kind '" + args.kind + "'");
    }

    std::string csv = report_csv_header(args.seed, threshold);
    std::string json;
    std::size_t counted_violations = 0;
    for (const auto& rep : reports) {
        csv += report_csv_row(rep);
        json += report_to_json(rep, threshold);
        // Exploratory probes chart unclaimed territory; they are reported
        // but do not drive the exit status under --target all.
        const bool exploratory = rep.scan_kind == "derivative-signs-exploratory";
        if (!(exploratory && args.target == "all")) {
            counted_violations += rep.violations;
        }
    }
    std::cout << csv;
    if (!args.csv_path.empty()) {
        write_text(args.csv_path, csv);
    }
    if (!args.json_path.empty()) {
        write_text(args.json_path, json);
    }
    return counted_violations > 0 ? 1 : 0;
}

struct CounterexampleArgs {
    double p = 2.0;
    std::string norm = "entrywise";
    std::size_t dim = 2;
    std::string state_path;
    std::string output_path;
};

int run_counterexample(const CounterexampleArgs& args) {
    NormKind kind;
    if (args.norm == "entrywise") {
        kind = NormKind::entrywise;
    } else if (args.norm == "schatten") {
        kind = NormKind::schatten;
    } else {
        throw UnsupportedError("unknown norm kind '" + args.norm + "'");
    }

    DensityMatrix rho = [&] {
        if (!args.state_path.empty()) {
            return read_state(args.state_path);
        }
        // Default probe state: the +i eigenstate of Y, the most imaginary qubit.
        return validate_density(ComplexMatrix{{Complex(0.5, 0.0), Complex(0.0, -0.5)},
                                              {Complex(0.0, 0.5), Complex(0.5, 0.0)}});
    }();
    if (is_real_state(rho)) {
        throw DomainError("the probe state is real; the measures vanish and nothing can grow");
    }

    const ViolationReport rep = demonstrate_lp_violation(rho, args.p, kind, args.dim);
    std::string out = "{\"p\": " + format_double(args.p) + ", \"norm\": \"" + args.norm +
                      "\", \"ancilla_dim\": " + std::to_string(args.dim) +
                      ", \"before\": " + format_double(rep.before) +
                      ", \"after\": " + format_double(rep.after) +
                      ", \"violated\": " + (rep.violated ? "true" : "false") + "}\n";
    emit(out, args.output_path);
    return rep.violated ? 0 : 1;
}

struct RoofArgs {
    std::string state_path;
    std::string measure = "l1";
    std::string output_path;
    std::size_t restarts = 16;
    std::size_t ensemble_size = 0;
    std::uint64_t seed = 0;
};

int run_convex_roof(const RoofArgs& args) {
    PureMeasureFn fn;
    if (args.measure == "l1") {
        fn = pure_m_l1;
    } else if (args.measure == "geometric") {
        fn = pure_m_geometric;
    } else if (args.measure == "r") {
        fn = pure_m_relative_entropy;
    } else {
        throw UnsupportedError("unknown pure-state measure '" + args.measure + "'");
    }

    RoofConfig cfg;
    cfg.restarts = args.restarts;
    cfg.ensemble_size = args.ensemble_size;
    cfg.seed = args.seed;
    const RoofResult res = convex_roof(read_state(args.state_path), fn, cfg);

    std::string out = "{\"measure\": \"" + args.measure +
                      "\", \"value\": " + format_double(res.value) + ", \"weights\": [";
    for (std::size_t i = 0; i < res.decomposition.weights.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += format_double(res.decomposition.weights[i]);
    }
    out += "], \"states\": [";
    for (std::size_t i = 0; i < res.decomposition.states.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        std::string member = pure_to_json(res.decomposition.states[i].amplitudes());
        member.pop_back(); // strip trailing newline
        out += member;
    }
    out += "]}\n";
    emit(out, args.output_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Imaginarity measures, real channels, and ordering scans for small "
                 "quantum states"};
    app.set_version_flag("--version", imaginarity::kToolVersion);
    app.require_subcommand(1);

    MeasureArgs margs;
    CLI::App* measure = app.add_subcommand("measure", "Evaluate a measure on a state file");
    measure->add_option("--state", margs.state_path, "State JSON file")->required();
    measure
        ->add_option("--measure", margs.spec,
                     "l1 | trace | r | lp:<p> | pnorm:<p> | geometric | robustness")
        ->required();
    measure->add_option("--output", margs.output_path, "Write the result JSON here");
    measure->add_option("--witness", margs.witness_path, "Write the optimal real state here");
    measure->add_option("--restarts", margs.restarts, "Optimizer restarts (pnorm)");
    measure->add_option("--seed", margs.seed, "Optimizer seed (pnorm)");

    ChannelArgs cargs;
    CLI::App* channel = app.add_subcommand("channel", "Apply a channel to a state");
    channel
        ->add_option("--channel", cargs.channel_spec,
                     "Channel JSON file, or bitflip:<p> | phaseflip:<p> | ampdamp:<p> | "
                     "collapse:<d>")
        ->required();
    channel->add_option("--state", cargs.state_path, "State JSON file")->required();
    channel->add_option("--output", cargs.output_path, "Write the output state here");

    ScanArgs sargs;
    CLI::App* scan = app.add_subcommand("scan", "Monte Carlo and grid scans of ordering claims");
    scan->add_option("--kind", sargs.kind,
                     "same-order | channel-order | monotonicity | derivative-signs")
        ->required();
    scan->add_option("--measure-a", sargs.measure_a, "First measure (same-order)");
    scan->add_option("--measure-b", sargs.measure_b, "Second measure (same-order)");
    scan->add_option("--measure", sargs.measure, "Measure (channel-order, monotonicity)");
    scan->add_option("--channel", sargs.channel,
                     "Channel family, optionally pinned: bitflip | phaseflip:0.3 | ...");
    scan->add_option("--target", sargs.target,
                     "Derivative target name, or 'all' (exploratory rows are reported but do "
                     "not affect the exit status)");
    scan->add_option("--sampler", sargs.sampler, "haar-pure | mixed | bloch | bloch-lower");
    scan->add_option("--trials", sargs.trials, "Sample pairs (per dimension for monotonicity)");
    scan->add_option("--dims", sargs.dims, "Dimensions for monotonicity scans");
    scan->add_option("--p-grid", sargs.p_grid, "Comma-separated channel parameters");
    scan->add_option("--points", sargs.points, "Grid points per axis (derivative scans)");
    scan->add_option("--tie-epsilon", sargs.tie_epsilon, "Differences below this are ties");
    scan->add_option("--slack", sargs.slack, "Allowed measure increase (monotonicity)");
    scan->add_option("--step", sargs.fd_step, "Finite-difference step");
    scan->add_option("--fd-slack", sargs.fd_slack, "Allowed wrong-sign excursion");
    scan->add_option("--seed", sargs.seed, "Sampler seed");
    scan->add_option("--csv", sargs.csv_path, "Write the CSV report here");
    scan->add_option("--json", sargs.json_path, "Write the JSON report here");

    CounterexampleArgs xargs;
    CLI::App* cx = app.add_subcommand(
        "counterexample", "Show a real channel increasing an entrywise p-measure (p > 1)");
    cx->add_option("--p", xargs.p, "Measure order, must be > 1")->required();
    cx->add_option("--norm", xargs.norm, "entrywise | schatten");
    cx->add_option("--dim", xargs.dim, "Ancilla dimension");
    cx->add_option("--state", xargs.state_path, "Probe state (default: +i eigenstate of Y)");
    cx->add_option("--output", xargs.output_path, "Write the report JSON here");

    RoofArgs rargs;
    CLI::App* roof = app.add_subcommand("convex-roof", "Convex-roof extension of a pure measure");
    roof->add_option("--state", rargs.state_path, "State JSON file")->required();
    roof->add_option("--measure", rargs.measure, "l1 | geometric | r");
    roof->add_option("--output", rargs.output_path, "Write the result JSON here");
    roof->add_option("--restarts", rargs.restarts, "Optimizer restarts");
    roof->add_option("--ensemble-size", rargs.ensemble_size,
                     "Decomposition size (0 picks a default)");
    roof->add_option("--seed", rargs.seed, "Optimizer seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*measure) {
        return run_guarded([&] { return run_measure(margs); });
    }
    if (*channel) {
        return run_guarded([&] { return run_channel(cargs); });
    }
    if (*scan) {
        return run_guarded([&] { return run_scan(sargs); });
    }
    if (*cx) {
        return run_guarded([&] { return run_counterexample(xargs); });
    }
    if (*roof) {
        return run_guarded([&] { return run_convex_roof(rargs); });
    }
    return 2;
}
