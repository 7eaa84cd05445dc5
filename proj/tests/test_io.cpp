#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "imaginarity/bloch_order.hpp"
#include "imaginarity/channels.hpp"
#include "imaginarity/errors.hpp"
#include "imaginarity/io.hpp"
#include "imaginarity/rng.hpp"
#include "imaginarity/states.hpp"

using namespace imaginarity;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void put_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("decimal rendering round trips doubles") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");

    Rng rng(61);
    for (int rep = 0; rep < 200; ++rep) {
        const double x = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("state files round trip bit-exactly") {
    const std::string path = temp_path("io_state.json");
    FileGuard guard{path};

    Rng rng(62);
    const DensityMatrix rho = sample_mixed(3, rng);
    write_state(path, rho.matrix());
    const DensityMatrix back = read_state(path);
    CHECK(back.matrix().max_abs_diff(rho.matrix()) == 0.0);
}

TEST_CASE("state files accept all three schemas") {
    const std::string path = temp_path("io_schema.json");
    FileGuard guard{path};

    put_file(path, R"({"bloch": {"t": 0.8, "nx": 0, "ny": 1, "nz": 0}})");
    const DensityMatrix from_bloch = read_state(path);
    CHECK(from_bloch.matrix()(0, 1).imag() == doctest::Approx(-0.4).epsilon(1e-15));

    put_file(path, R"({"dim": 2, "amplitudes": [[0.7071067811865476, 0],
                                                [0, 0.7071067811865476]]})");
    const DensityMatrix from_amps = read_state(path);
    CHECK(from_amps.matrix()(0, 1).imag() == doctest::Approx(-0.5).epsilon(1e-12));

    put_file(path, R"({"dim": 2, "matrix": [[0.5, 0], [0, -0.5], [0, 0.5], [0.5, 0]]})");
    CHECK(read_state(path).matrix()(1, 0).imag() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pure-state reads recover amplitudes") {
    const std::string path = temp_path("io_pure.json");
    FileGuard guard{path};

    put_file(path, R"({"dim": 2, "amplitudes": [[0.6, 0], [0, 0.8]]})");
    const PureState direct = read_pure_state(path);
    CHECK(direct.amplitudes()[0] == Complex(0.6, 0.0));
    CHECK(direct.amplitudes()[1] == Complex(0.0, 0.8));

    // A rank-one matrix recovers the same projector.
    Rng rng(63);
    const PureState psi = sample_haar_pure(3, rng);
    write_state(path, psi.projector().matrix());
    const PureState recovered = read_pure_state(path);
    CHECK(recovered.projector().matrix().max_abs_diff(psi.projector().matrix()) <= 1e-9);

    // Mixed input is rejected.
    write_state(path, sample_mixed(2, rng).matrix());
    CHECK_THROWS_AS(read_pure_state(path), DomainError);
}

TEST_CASE("malformed state files are rejected") {
    const std::string path = temp_path("io_bad.json");
    FileGuard guard{path};

    CHECK_THROWS_AS(read_state(temp_path("io_no_such_file.json")), IoError);

    put_file(path, "{not json");
    CHECK_THROWS_AS(read_state(path), DomainError);

    put_file(path, R"({"dim": 2})");
    CHECK_THROWS_AS(read_state(path), DomainError);

    put_file(path, R"({"matrix": [[1, 0]]})");
    CHECK_THROWS_AS(read_state(path), DomainError);

    put_file(path, R"({"dim": 2, "matrix": [[1, 0], [0, 0], [0, 0]]})");
    CHECK_THROWS_AS(read_state(path), DomainError);

    put_file(path, R"({"dim": 2, "matrix": [[0.9, 0], [0, 0], [0, 0], [0.2, 0]]})");
    CHECK_THROWS_AS(read_state(path), TraceNotOneError);

    put_file(path, R"({"bloch": {"t": 1.2, "nx": 0, "ny": 1, "nz": 0}})");
    CHECK_THROWS_AS(read_state(path), DomainError);
}

TEST_CASE("channel files round trip bit-exactly") {
    const std::string path = temp_path("io_channel.json");
    FileGuard guard{path};

    const KrausChannel ch = random_real_channel(3, 4, 9);
    write_channel(path, ch);
    const KrausChannel back = read_channel(path);
    CHECK(back.d_in == ch.d_in);
    CHECK(back.d_out == ch.d_out);
    CHECK(back.label == ch.label);
    REQUIRE(back.kraus_ops.size() == ch.kraus_ops.size());
    for (std::size_t i = 0; i < ch.kraus_ops.size(); ++i) {
        CHECK(back.kraus_ops[i].max_abs_diff(ch.kraus_ops[i]) == 0.0);
    }

    put_file(path, R"({"d_in": 2, "d_out": 2, "kraus": []})");
    CHECK_THROWS_AS(read_channel(path), DomainError);
}

TEST_CASE("report CSV format is pinned") {
    ScanReport rep;
    rep.scan_kind = "same-order";
    rep.measure_a = "l1";
    rep.measure_b = "r";
    rep.channel = "";
    rep.sampler = "bloch";
    rep.trials_run = 100;
    rep.ties_skipped = 3;
    rep.violations = 2;
    rep.worst_margin = 0.015625;
    rep.seed = 7;

    const std::string expected = "# tool_version: 0.1.0\n"
                                 "# seed: 7\n"
                                 "# tie_epsilon: 1.0000000000000001e-09\n"
                                 "scan_kind,measure_a,measure_b,channel,sampler,trials,ties,"
                                 "violations,worst_margin,seed\n"
                                 "same-order,l1,r,,bloch,100,3,2,0.015625,7\n";
    CHECK(report_to_csv(rep, 1e-9) == expected);
}

TEST_CASE("report JSON carries the witness when present") {
    ScanReport rep;
    rep.scan_kind = "channel-order";
    rep.measure_a = "r";
    rep.channel = "bitflip";
    rep.sampler = "bloch";
    rep.trials_run = 10;
    rep.violations = 1;
    rep.worst_margin = 0.25;
    rep.seed = 1;

    const std::string without = report_to_json(rep, 1e-9);
    CHECK(without.find("\"witness\"") == std::string::npos);
    CHECK(without.find("\"violations\": 1") != std::string::npos);

    ScanWitness wit;
    wit.rho1 = ComplexMatrix::identity(2);
    wit.rho2 = ComplexMatrix::identity(2);
    wit.p = 0.5;
    wit.trial = 4;
    rep.witness = wit;
    const std::string with = report_to_json(rep, 1e-9);
    CHECK(with.find("\"witness\"") != std::string::npos);
    CHECK(with.find("\"trial\": 4") != std::string::npos);
    CHECK(with.find("\"p\": 0.5") != std::string::npos);
}

TEST_CASE("text writes are atomic and leave no temporary") {
    const std::string path = temp_path("io_text.txt");
    FileGuard guard{path};

    write_text(path, "first\n");
    write_text(path, "second\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "second");

    bool found_tmp = false;
    for (const auto& entry : std::filesystem::directory_iterator(
             std::filesystem::temp_directory_path())) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("io_text.txt.", 0) == 0) {
            found_tmp = true;
        }
    }
    CHECK_FALSE(found_tmp);

    CHECK_THROWS_AS(write_text("/no/such/dir/file.txt", "x"), IoError);
}

TEST_CASE("identical seeds produce byte-identical reports") {
    OrderScanConfig cfg;
    cfg.trials = 400;
    cfg.seed = 31;
    const ScanReport a = same_order_scan(measure_from_spec("l1"), measure_from_spec("r"), cfg);
    const ScanReport b = same_order_scan(measure_from_spec("l1"), measure_from_spec("r"), cfg);
    CHECK(report_to_csv(a, cfg.tie_epsilon) == report_to_csv(b, cfg.tie_epsilon));
    CHECK(report_to_json(a, cfg.tie_epsilon) == report_to_json(b, cfg.tie_epsilon));
}
