#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "steerkit/glsi.hpp"
#include "steerkit/io.hpp"
#include "steerkit/states.hpp"
#include "test_helpers.hpp"

using namespace steerkit;
using testhelp::kPi;
using testhelp::kSqrt3;
using njson = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string("\"") + CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) r.out += buf;
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

njson parse_output(const RunResult& r) {
    REQUIRE(r.code == 0);
    return njson::parse(r.out);
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

void write_state_file(const std::string& path, const ComplexMatrix& rho) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << matrix_to_json(rho).dump(2) << "\n";
}

}  // namespace

TEST_CASE("version and help run cleanly") {
    RunResult version = run_cli("--version");
    CHECK(version.code == 0);
    CHECK(version.out.find("steerkit 0.1.0") != std::string::npos);

    RunResult help = run_cli("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("paradox") != std::string::npos);
    CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("usage problems exit with the parse code") {
    CHECK(run_cli("paradox --no-such-flag").code == 2);
    CHECK(run_cli("paradox").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("scan --family pure").code == 2);
    // The simulate paradox branch needs alpha even though the flag is shared.
    CHECK(run_cli("simulate --kind paradox").code == 2);
    CHECK(run_cli("prep").code == 2);
    CHECK(run_cli("prep --alpha 0.3 --beta 0.4").code == 2);
}

TEST_CASE("domain problems exit with the precondition code") {
    RunResult zero = run_cli("paradox --alpha 0");
    CHECK(zero.code == 3);
    CHECK(zero.out.find("entangled") != std::string::npos);

    CHECK(run_cli("eval --family raw --state-file /nonexistent.json "
                  "--theta 0.5")
              .code == 3);

    std::ofstream("cli_bad_state.json") << "{\"dim\": 2}\n";
    RunResult bad = run_cli(
        "eval --family raw --state-file cli_bad_state.json --theta 0.5");
    CHECK(bad.code == 3);
    CHECK(bad.out.find("matrix_format") != std::string::npos);

    std::ofstream("cli_not_json.json") << "not json at all\n";
    CHECK(run_cli("eval --family raw --state-file cli_not_json.json "
                  "--theta 0.5")
              .code == 3);

    CHECK(run_cli("curves --alpha-steps 1").code == 3);

    RunResult hot = run_cli(
        "eval --family werner --alpha 30deg --visibility 1.5 --theta 45deg");
    CHECK(hot.code == 3);
    CHECK(hot.out.find("visibility_range") != std::string::npos);
}

TEST_CASE("paradox command reports the exact quantum total") {
    njson doc = parse_output(run_cli("paradox --alpha 0.5"));
    CHECK(doc["metadata"]["tool"] == "steerkit");
    CHECK(doc["metadata"]["version"] == "0.1.0");
    CHECK(doc["metadata"]["command"] == "paradox");
    CHECK(doc["metadata"]["parameters"]["alpha"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(doc["quantum_total"].get<double>() - 2.0) < 1e-10);
    CHECK(doc["lhs_prediction"].get<double>() == 1.0);
    CHECK(doc["settings_count"].get<int>() == 2);
    REQUIRE(doc["per_term"].size() == 4);
    for (const njson& term : doc["per_term"]) {
        CHECK(term.contains("direction"));
        CHECK(term.contains("contribution"));
    }
    // Angles accept degree suffixes anywhere an angle is expected.
    njson deg = parse_output(run_cli("paradox --alpha 30deg"));
    CHECK(std::abs(deg["quantum_total"].get<double>() - 2.0) < 1e-10);
}

TEST_CASE("bound command exposes the enumerated and closed-form bounds") {
    njson doc = parse_output(run_cli("bound --theta 45deg"));
    double c_lhs = doc["c_lhs"].get<double>();
    CHECK(std::abs(c_lhs - (3.0 + kSqrt3) / 2.0) < 1e-12);
    CHECK(std::abs(doc["c_lhs_prime"].get<double>() - kSqrt3) < 1e-12);
    CHECK(std::abs(doc["c_plus"].get<double>() - kSqrt3) < 1e-9);
    CHECK(std::abs(doc["c_minus"].get<double>() - kSqrt3) < 1e-9);
    // Maximal entanglement angle has the full eight-strategy tie.
    CHECK(doc["maximizing_strategies"].size() == 8);

    // Off the canonical axes the closed-form pair is not reported.
    njson other = parse_output(run_cli("bound --theta 0.6 --settings z,x"));
    CHECK_FALSE(other.contains("c_plus"));
    CHECK(other["maximizing_strategies"].size() >= 1);
}

TEST_CASE("eval output is deterministic and internally consistent") {
    std::string args =
        "eval --family werner --alpha 0.6 --visibility 0.9 --theta 0.7 "
        "--phi 0.2";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);

    njson doc = njson::parse(first.out);
    double s3 = doc["s3"].get<double>();
    double s3_prime = doc["s3_prime"].get<double>();
    double c_lhs = doc["c_lhs"].get<double>();
    double c_lhs_prime = doc["c_lhs_prime"].get<double>();
    CHECK(std::abs(s3_prime - (2.0 * s3 - 3.0)) < 1e-12);
    CHECK(std::abs(c_lhs_prime - (2.0 * c_lhs - 3.0)) < 1e-12);
    CHECK(std::abs(doc["violation"].get<double>() - (s3_prime - c_lhs_prime)) <
          1e-12);
    CHECK(doc["correlators"].contains("xx"));
    CHECK(doc["signs"].size() == 3);
}

TEST_CASE("raw state files round-trip through eval") {
    StateFamilySpec spec;
    spec.family = Family::asymmetric;
    spec.alpha = 0.3;
    spec.visibility = 0.25;
    ComplexMatrix rho = make_state(spec);
    write_state_file("cli_state.json", rho);

    njson doc = parse_output(run_cli(
        "eval --family raw --state-file cli_state.json --theta 0.4 --phi 0.3"));
    InequalityReport expect = sprime3_value(rho, 0.4, 0.3);
    CHECK(std::abs(doc["s3"].get<double>() - expect.s3) < 1e-12);
    CHECK(std::abs(doc["s3_prime"].get<double>() - expect.s3_prime) < 1e-12);
    CHECK(std::abs(doc["violation"].get<double>() - expect.violation) < 1e-12);
}

TEST_CASE("optimize reports no violation for the fully mixed state") {
    ComplexMatrix mixed = ComplexMatrix::identity(4).scaled(0.25);
    write_state_file("cli_mixed.json", mixed);
    njson doc = parse_output(
        run_cli("optimize --family raw --state-file cli_mixed.json"));
    CHECK(doc["violation"].get<double>() <= 0.0);
    CHECK(doc.contains("theta_star"));
    CHECK(doc.contains("report"));

    // A detectable Werner state shows a strictly positive violation.
    njson werner = parse_output(
        run_cli("optimize --family werner --alpha 45deg --visibility 0.9"));
    CHECK(std::abs(werner["violation"].get<double>() - (2.7 - kSqrt3)) < 1e-9);
}

TEST_CASE("region scan output matches the golden table") {
    RunResult r = run_cli(
        "scan --family werner --alpha-steps 5 --v-steps 5 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("# tool=steerkit version=0.1.0") != std::string::npos);
    CHECK(r.out.find("# command=scan family=werner") != std::string::npos);

    std::ifstream golden(std::string(GOLDEN_DIR) + "/werner_5x5.csv");
    REQUIRE(golden.good());
    std::stringstream buffer;
    buffer << golden.rdbuf();

    std::vector<std::string> got = data_lines(r.out);
    std::vector<std::string> want = data_lines(buffer.str());
    REQUIRE(got.size() == want.size());
    CHECK(got[0] ==
          "family,alpha,visibility,usual_value,usual_bound,usual_detected,"
          "glsi_theta_star,glsi_violation,glsi_detected");
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(got[i] == want[i]);
    }
}

TEST_CASE("scan and curves render self-contained svg documents") {
    RunResult scan = run_cli(
        "scan --family asymmetric --alpha-steps 6 --v-steps 6 --format svg");
    CHECK(scan.code == 0);
    CHECK(scan.out.rfind("<!-- tool=steerkit", 0) == 0);
    CHECK(scan.out.find("<svg") != std::string::npos);
    CHECK(scan.out.find("</svg>") != std::string::npos);

    RunResult curves = run_cli("curves --alpha-steps 12 --format svg");
    CHECK(curves.code == 0);
    CHECK(curves.out.find("<svg") != std::string::npos);
    CHECK(curves.out.find("polyline") != std::string::npos);
}

TEST_CASE("curves csv shares the frozen header and pure family label") {
    RunResult r = run_cli("curves --alpha-steps 10 --format csv");
    CHECK(r.code == 0);
    std::vector<std::string> lines = data_lines(r.out);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] ==
          "family,alpha,visibility,usual_value,usual_bound,usual_detected,"
          "glsi_theta_star,glsi_violation,glsi_detected");
    CHECK(lines[1].rfind("pure,0.01,1,", 0) == 0);
    // Every pure-state row violates the optimized inequality.
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(lines[i].back() == '1');
    }
}

TEST_CASE("simulate is reproducible and close to its analytic target") {
    std::string args =
        "simulate --kind sprime3 --family werner --alpha 45deg "
        "--visibility 0.8 --theta 45deg --shots 20000 --seed 99";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.out == second.out);
    njson doc = parse_output(first);
    CHECK(doc["generator"] == "splitmix64");
    CHECK(doc["seed"].get<std::uint64_t>() == 99);
    CHECK(std::abs(doc["true_value"].get<double>() - 2.4) < 1e-9);
    double estimate = doc["estimate"].get<double>();
    double se = doc["std_error"].get<double>();
    CHECK(se > 0.0);
    CHECK(std::abs(estimate - 2.4) <= 5.0 * se);

    njson paradox = parse_output(
        run_cli("simulate --kind paradox --alpha 0.4 --shots 5000 --seed 3"));
    CHECK(paradox["true_value"].get<double>() == 2.0);
    REQUIRE(paradox["settings"].size() == 4);
    for (const njson& s : paradox["settings"]) {
        CHECK(s["shots"].get<std::uint64_t>() == 5000);
    }
}

TEST_CASE("prep reports consistent wave-plate angles") {
    njson doc = parse_output(run_cli("prep --alpha 0.35"));
    CHECK(std::abs(doc["alpha"].get<double>() - 0.35) < 1e-10);
    double beta_deg = doc["beta_deg"].get<double>();
    CHECK(std::abs(doc["hwp2_deg"].get<double>() - beta_deg / 2.0) < 1e-12);
    CHECK(doc["hwp1_deg"].get<double>() == 0.0);
    CHECK(doc["hwp3_deg"].get<double>() == 45.0);
    REQUIRE(doc["state"]["amplitudes"].size() == 4);
    // The preparation filters the first leg, so sin(alpha) rides on |00>.
    double a0 = doc["state"]["amplitudes"][0][0].get<double>();
    double a3 = doc["state"]["amplitudes"][3][0].get<double>();
    CHECK(std::abs(a0 - std::sin(0.35)) < 1e-10);
    CHECK(std::abs(a3 - std::cos(0.35)) < 1e-10);

    // Specifying beta directly round-trips to the same alpha.
    double beta = doc["beta"].get<double>();
    njson via_beta =
        parse_output(run_cli("prep --beta " + std::to_string(beta)));
    CHECK(std::abs(via_beta["alpha"].get<double>() - 0.35) < 1e-5);
}

TEST_CASE("the out flag writes exactly what stdout would carry") {
    std::string path = "cli_out_test.json";
    RunResult direct = run_cli("eval --alpha 0.3 --theta 0.5");
    RunResult filed = run_cli("eval --alpha 0.3 --theta 0.5 --out " + path);
    CHECK(filed.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == direct.out);
}
