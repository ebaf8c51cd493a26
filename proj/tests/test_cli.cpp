#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = qumulant::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze prints the GHZ signature") {
    auto r = run_cli({"analyze", "ghz:3:1"});
    CHECK(r.status == 0);
    CHECK(r.out.find("nonzero coefficients: 4") != std::string::npos);
    CHECK(r.out.find("C_xxx = +1") != std::string::npos);
    CHECK(r.out.find("C_yyx = -1") != std::string::npos);
}

TEST_CASE("signature emits parseable JSON") {
    auto r = run_cli({"signature", "w:3"});
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["num_particles"] == 3);
    CHECK(j["entries"].size() == 7);
}

TEST_CASE("compare separates families by nonzero counts") {
    auto r = run_cli({"compare", "ghz:3:1", "w:3"});
    CHECK(r.status == 0);
    CHECK(r.out.find("4 nonzero") != std::string::npos);
    CHECK(r.out.find("7 nonzero") != std::string::npos);
    CHECK(r.out.find("different-family") != std::string::npos);
}

TEST_CASE("measures on a Bell state") {
    auto r = run_cli({"measures", "bell:4"});
    CHECK(r.status == 0);
    CHECK(r.out.find("concurrence (signed): -1") != std::string::npos);
}

TEST_CASE("densecode over the proposed channel is angle independent") {
    auto r = run_cli({"densecode", "--channel", "varphi5", "--theta", "0.5", "--interface", "cb"});
    CHECK(r.status == 0);
    CHECK(r.out.find("average bits: 4") != std::string::npos);
    CHECK(r.out.find("verified") != std::string::npos);
}

TEST_CASE("densecode direct interface reports the capacity") {
    auto r = run_cli({"densecode", "--channel", "varphi5", "--interface", "direct", "--json"});
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["capacity_bits"].get<double>() == doctest::Approx(5).epsilon(1e-9));
    CHECK(j["decode_round_trip"] == true);
}

TEST_CASE("teleport summary") {
    auto r = run_cli({"teleport", "--channel", "varphi5:10", "--random", "2", "--seed", "7"});
    CHECK(r.status == 0);
    CHECK(r.out.find("probability sum: 1") != std::string::npos);
    CHECK(r.out.find("minimum fidelity over all messages and outcomes: 1") != std::string::npos);
}

TEST_CASE("sweep emits the CSV header and constant varphi5 rows") {
    auto r = run_cli({"sweep", "--grid", "0:pi/4:5", "--channels", "varphi5", "--out", "-"});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("channel,theta,avg_bits,p_aux0,p_aux1\n", 0) == 0);
    CHECK(r.out.find("varphi5,0,4,1,0") != std::string::npos);
}

TEST_CASE("identical command lines give byte-identical output") {
    const std::vector<std::string> cmd = {"teleport", "--channel", "varphi5:10",
                                          "--random", "3", "--seed", "1"};
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);

    auto c = run_cli({"sweep", "--grid", "0:pi/4:9", "--channels", "psi5,ghz5", "--out", "-"});
    auto d = run_cli({"sweep", "--grid", "0:pi/4:9", "--channels", "psi5,ghz5", "--out", "-"});
    CHECK(c.out == d.out);
}

TEST_CASE("reproduce tables passes its checks") {
    auto r = run_cli({"reproduce", "tables"});
    CHECK(r.status == 0);
    CHECK(r.out.find("ALL CHECKS PASSED") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    // the known reference discrepancies must be reported, not hidden
    CHECK(r.out.find("-16/27") != std::string::npos);
    CHECK(r.out.find("discrepancy reported") != std::string::npos);
}

TEST_CASE("state files round trip through the CLI") {
    const char* path = "cli_test_state.json";
    {
        auto r = run_cli({"signature", "varphi5:10"});
        REQUIRE(r.status == 0);
    }
    {
        // write a state file via the JSON format and analyze it
        std::ofstream f(path);
        f << R"({"num_qubits": 2, "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]})";
    }
    auto r = run_cli({"analyze", path});
    CHECK(r.status == 0);
    CHECK(r.out.find("C_xx = +1") != std::string::npos);
    std::remove(path);
}

TEST_CASE("validation failures exit with status 1") {
    CHECK(run_cli({"analyze", "nosuchfamily:1"}).status == 1);
    CHECK(run_cli({"analyze"}).status == 1);
    CHECK(run_cli({"teleport", "--channel", "ghz:5:1"}).status == 1);
    CHECK(run_cli({"densecode", "--channel", "varphi5", "--interface", "bogus"}).status == 1);
    CHECK(run_cli({"sweep", "--grid", "0:pi:5"}).status == 1);  // outside [0, pi/4]
    CHECK(run_cli({"nosuchverb"}).status == 1);
    CHECK(run_cli({}).status == 1);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).status == 0);
}
