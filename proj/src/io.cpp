#include "imaginarity/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "imaginarity/eigen.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/version.hpp"

namespace imaginarity {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Complex entry_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw DomainError(what + " entries must be [re, im] pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                               const std::string& what) {
    if (!j.is_array() || j.size() != rows * cols) {
        throw DomainError(what + " must hold " + std::to_string(rows * cols) +
                          " row-major [re, im] pairs");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& e : j) {
        entries.push_back(entry_from_json(e, what));
    }
    return ComplexMatrix(rows, cols, entries);
}

std::size_t dim_from_json(const json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw DomainError("state file needs an unsigned \"dim\" field");
    }
    const std::size_t d = j["dim"].get<std::size_t>();
    if (d == 0) {
        throw DomainError("\"dim\" must be positive");
    }
    return d;
}

double number_field(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw DomainError(what + " needs a numeric \"" + key + "\" field");
    }
    return j[key].get<double>();
}

PureState pure_from_json(const json& j) {
    const std::size_t d = dim_from_json(j);
    const json& amps = j["amplitudes"];
    if (!amps.is_array() || amps.size() != d) {
        throw DomainError("\"amplitudes\" must hold dim [re, im] pairs");
    }
    std::vector<Complex> a;
    a.reserve(d);
    for (const auto& e : amps) {
        a.push_back(entry_from_json(e, "amplitude"));
    }
    return PureState::validate(a);
}

void append_complex(std::string& out, Complex z) {
    out += '[';
    out += format_double(z.real());
    out += ", ";
    out += format_double(z.imag());
    out += ']';
}

void append_matrix(std::string& out, const ComplexMatrix& m) {
    out += '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            if (i != 0 || k != 0) {
                out += ", ";
            }
            append_complex(out, m(i, k));
        }
    }
    out += ']';
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

} // namespace

std::string format_double(double x) {
    if (x == 0.0) {
        return "0"; // avoid the "-0" spelling
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

DensityMatrix read_state(const std::string& path) {
    const json j = parse_file(path);
    if (j.contains("bloch")) {
        const json& b = j["bloch"];
        BlochQubit q(number_field(b, "t", "\"bloch\""), number_field(b, "nx", "\"bloch\""),
                     number_field(b, "ny", "\"bloch\""), number_field(b, "nz", "\"bloch\""));
        return bloch_to_density(q);
    }
    if (j.contains("amplitudes")) {
        return pure_from_json(j).projector();
    }
    if (j.contains("matrix")) {
        const std::size_t d = dim_from_json(j);
        return validate_density(matrix_from_json(j["matrix"], d, d, "\"matrix\""));
    }
    throw DomainError("'" + path + "' has none of \"matrix\", \"amplitudes\", \"bloch\"");
}

PureState read_pure_state(const std::string& path) {
    const json j = parse_file(path);
    if (j.contains("amplitudes")) {
        return pure_from_json(j);
    }
    // Density-matrix input is accepted when it is (numerically) rank one;
    // the top eigenvector then recovers the amplitudes.
    const DensityMatrix rho = read_state(path);
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    if (es.eigenvalues.front() < 1.0 - 1e-8) {
        throw DomainError("state is mixed (top eigenvalue " +
                          format_double(es.eigenvalues.front()) +
                          "); this operation needs a pure state");
    }
    std::vector<Complex> amps(rho.matrix().rows());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = es.eigenvectors(i, 0);
    }
    return PureState::validate(amps);
}

std::string state_to_json(const ComplexMatrix& m) {
    std::string out = "{\"dim\": ";
    out += std::to_string(m.rows());
    out += ", \"matrix\": ";
    append_matrix(out, m);
    out += "}\n";
    return out;
}

std::string pure_to_json(const std::vector<Complex>& amplitudes) {
    std::string out = "{\"dim\": ";
    out += std::to_string(amplitudes.size());
    out += ", \"amplitudes\": [";
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        append_complex(out, amplitudes[i]);
    }
    out += "]}\n";
    return out;
}

void write_state(const std::string& path, const ComplexMatrix& m) {
    write_text(path, state_to_json(m));
}

KrausChannel read_channel(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("d_in") || !j["d_in"].is_number_unsigned() || !j.contains("d_out") ||
        !j["d_out"].is_number_unsigned()) {
        throw DomainError("channel file needs unsigned \"d_in\" and \"d_out\" fields");
    }
    KrausChannel ch;
    ch.d_in = j["d_in"].get<std::size_t>();
    ch.d_out = j["d_out"].get<std::size_t>();
    if (ch.d_in == 0 || ch.d_out == 0) {
        throw DomainError("channel dimensions must be positive");
    }
    ch.label = j.value("label", std::string("channel"));
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
        throw DomainError("channel file needs a nonempty \"kraus\" array");
    }
    for (const auto& op : j["kraus"]) {
        ch.kraus_ops.push_back(matrix_from_json(op, ch.d_out, ch.d_in, "Kraus operator"));
    }
    return ch;
}

std::string channel_to_json(const KrausChannel& ch) {
    std::string out = "{\"d_in\": ";
    out += std::to_string(ch.d_in);
    out += ", \"d_out\": ";
    out += std::to_string(ch.d_out);
    out += ", \"label\": \"";
    out += json_escape(ch.label);
    out += "\", \"kraus\": [";
    for (std::size_t i = 0; i < ch.kraus_ops.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        append_matrix(out, ch.kraus_ops[i]);
    }
    out += "]}\n";
    return out;
}

void write_channel(const std::string& path, const KrausChannel& ch) {
    write_text(path, channel_to_json(ch));
}

std::string report_csv_header(std::uint64_t seed, double tie_epsilon) {
    std::string out;
    out += "# tool_version: ";
    out += kToolVersion;
    out += "\n# seed: ";
    out += std::to_string(seed);
    out += "\n# tie_epsilon: ";
    out += format_double(tie_epsilon);
    out += "\nscan_kind,measure_a,measure_b,channel,sampler,trials,ties,violations,worst_margin,"
           "seed\n";
    return out;
}

std::string report_csv_row(const ScanReport& rep) {
    std::string out;
    out += csv_escape(rep.scan_kind);
    out += ',';
    out += csv_escape(rep.measure_a);
    out += ',';
    out += csv_escape(rep.measure_b);
    out += ',';
    out += csv_escape(rep.channel);
    out += ',';
    out += csv_escape(rep.sampler);
    out += ',';
    out += std::to_string(rep.trials_run);
    out += ',';
    out += std::to_string(rep.ties_skipped);
    out += ',';
    out += std::to_string(rep.violations);
    out += ',';
    out += format_double(rep.worst_margin);
    out += ',';
    out += std::to_string(rep.seed);
    out += '\n';
    return out;
}

std::string report_to_csv(const ScanReport& rep, double tie_epsilon) {
    return report_csv_header(rep.seed, tie_epsilon) + report_csv_row(rep);
}

std::string report_to_json(const ScanReport& rep, double tie_epsilon) {
    std::string out = "{\"tool_version\": \"";
    out += kToolVersion;
    out += "\", \"scan_kind\": \"";
    out += json_escape(rep.scan_kind);
    out += "\", \"measure_a\": \"";
    out += json_escape(rep.measure_a);
    out += "\", \"measure_b\": \"";
    out += json_escape(rep.measure_b);
    out += "\", \"channel\": \"";
    out += json_escape(rep.channel);
    out += "\", \"sampler\": \"";
    out += json_escape(rep.sampler);
    out += "\", \"trials\": ";
    out += std::to_string(rep.trials_run);
    out += ", \"ties\": ";
    out += std::to_string(rep.ties_skipped);
    out += ", \"violations\": ";
    out += std::to_string(rep.violations);
    out += ", \"worst_margin\": ";
    out += format_double(rep.worst_margin);
    out += ", \"tie_epsilon\": ";
    out += format_double(tie_epsilon);
    out += ", \"seed\": ";
    out += std::to_string(rep.seed);
    if (rep.witness) {
        out += ", \"witness\": {\"trial\": ";
        out += std::to_string(rep.witness->trial);
        out += ", \"p\": ";
        out += format_double(rep.witness->p);
        out += ", \"rho1\": ";
        append_matrix(out, rep.witness->rho1);
        out += ", \"rho2\": ";
        append_matrix(out, rep.witness->rho2);
        out += '}';
    }
    out += "}\n";
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp + "' for writing");
        }
        out << text;
        out.flush();
        if (!out) {
            throw IoError("short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

} // namespace imaginarity
