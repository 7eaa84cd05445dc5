#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imaginarity/bloch_order.hpp"
#include "imaginarity/channels.hpp"
#include "imaginarity/complex_matrix.hpp"
#include "imaginarity/states.hpp"

// JSON and CSV serialization. All numeric output is printed with 17
// significant digits so reruns with the same seed produce byte-identical
// files. Writes go through a temporary file plus rename.

namespace imaginarity {

// Shortest-round-trip style decimal rendering of a double (17 significant
// digits, "inf"/"nan" spelled out).
std::string format_double(double x);

// States. Accepted JSON shapes:
//   {"dim": d, "matrix": [[re, im], ...]}        row-major density matrix
//   {"dim": d, "amplitudes": [[re, im], ...]}    pure-state vector
//   {"bloch": {"t": .., "nx": .., "ny": .., "nz": ..}}
// Vectors are turned into projectors; everything is validated on load.
DensityMatrix read_state(const std::string& path);

// As read_state, but a plain matrix is only accepted when rank one; returns
// the amplitudes. Throws DomainError when the file holds a mixed state.
PureState read_pure_state(const std::string& path);

std::string state_to_json(const ComplexMatrix& m);
std::string pure_to_json(const std::vector<Complex>& amplitudes);
void write_state(const std::string& path, const ComplexMatrix& m);

// Channels: {"d_in": .., "d_out": .., "label": .., "kraus": [[[re, im], ...], ...]}
// with each Kraus operator stored row-major. Validated as trace preserving.
KrausChannel read_channel(const std::string& path);
std::string channel_to_json(const KrausChannel& ch);
void write_channel(const std::string& path, const KrausChannel& ch);

// Scan reports, one row per scan. The CSV carries tool version, seed and
// tolerances as leading comment lines so a report is self-describing.
// tie_epsilon is the threshold under which differences were discounted
// (the finite-difference slack, for derivative scans).
std::string report_csv_header(std::uint64_t seed, double tie_epsilon);
std::string report_csv_row(const ScanReport& rep);
std::string report_to_csv(const ScanReport& rep, double tie_epsilon);
std::string report_to_json(const ScanReport& rep, double tie_epsilon);
void write_text(const std::string& path, const std::string& text);

} // namespace imaginarity
