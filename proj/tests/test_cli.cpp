#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "latspec/io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string base = "latspec_cli_test_" + std::to_string(counter++);
    const std::string out_path = "/tmp/" + base + ".out";
    const std::string err_path = "/tmp/" + base + ".err";
    const std::string cmd =
        std::string(LATSPEC_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("classify json output") {
    const auto r = run_cli("classify --alpha 0 --delta 3 --sigma 2");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["region"]["tag"] == "U1(++)");
    CHECK(j["region"]["case"] == "a");
    CHECK(j["region"]["expected_count"] == 3);
    CHECK(j["normalized"]["c1"] == 1.0);
    CHECK(j["normalized"]["c2"] == 11.0);
}

TEST_CASE("classify accepts physical parameters too") {
    const auto r = run_cli("classify --lambda 1 --lambda1 -1 --mu 6 --mu1 3");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["region"]["tag"] == "alpha=-1");
    CHECK(j["region"]["case"] == "T2-mu-kappa");
}

TEST_CASE("solve json schema is frozen") {
    const auto r = run_cli("solve --lambda 1 --lambda1 0 --mu 4 --mu1 3");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["records"].size() == 3);
    for (const auto& rec : j["records"]) {
        REQUIRE(rec.contains("nu"));
        REQUIRE(rec.contains("gamma"));
        REQUIRE(rec.contains("origin"));
        REQUIRE(rec.contains("parity"));
        REQUIRE(rec.contains("multiplicity"));
        REQUIRE(rec.contains("bracket"));
        REQUIRE(rec.contains("embedded"));
    }
    CHECK(j["records"][1]["nu"].get<double>() == 16.0 / 3.0);
    CHECK(j["records"][1]["origin"] == "ExplicitKappa");
    CHECK(j["records"][1]["parity"] == "odd");
    CHECK(j["records"][1]["bracket"].is_null());
    CHECK(j["records"][0]["bracket"].is_array());
    CHECK(j["records"][0]["embedded"] == false);
}

TEST_CASE("solve csv output") {
    const auto r = run_cli("solve --lambda 1 --lambda1 0 --mu 4 --mu1 3 --format csv");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "nu,gamma,origin,parity,multiplicity,bracket_lo,bracket_hi,embedded");
    CHECK(r.out.find('\r') == std::string::npos);  // LF endings only
}

TEST_CASE("eigvec csv round-trips and keeps the odd zero at the origin") {
    const auto r =
        run_cli("eigvec --lambda 1 --lambda1 0 --mu 4 --mu1 3 --select kappa --window 50");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 102);  // header + 101 sites
    CHECK(lines[0] == "k,f_k");
    std::map<int, double> f;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto comma = lines[i].find(',');
        REQUIRE(comma != std::string::npos);
        const int k = std::stoi(lines[i].substr(0, comma));
        const double val = std::strtod(lines[i].c_str() + comma + 1, nullptr);
        f[k] = val;
    }
    CHECK(f[0] == 0.0);
    for (int k = 1; k <= 50; ++k) CHECK(f[-k] == -f[k]);
}

TEST_CASE("eigvec by index returns the even root vector") {
    const auto r =
        run_cli("eigvec --lambda 1 --lambda1 0 --mu 4 --mu1 3 --select 0 --window 40");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    std::map<int, double> f;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto comma = lines[i].find(',');
        f[std::stoi(lines[i].substr(0, comma))] =
            std::strtod(lines[i].c_str() + comma + 1, nullptr);
    }
    CHECK(f[0] != 0.0);
    for (int k = 1; k <= 40; ++k) CHECK(f[-k] == f[k]);
}

TEST_CASE("verify passes on the worked case and gates on tolerance") {
    const auto ok = run_cli("verify --lambda 1 --lambda1 0 --mu 4 --mu1 3 --window 300");
    REQUIRE(ok.status == 0);
    const json j = json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["count_predicted"] == 3);
    CHECK(j["count_oracle_exact"] == 3);
    REQUIRE(j["pairs"].size() == 3);
    for (const auto& pr : j["pairs"]) CHECK(pr["pass"] == true);

    const auto tight =
        run_cli("verify --lambda 1 --lambda1 0 --mu 4 --mu1 3 --window 300 --tol 1e-18");
    CHECK(tight.status == 2);
    CHECK(json::parse(tight.out)["pass"] == false);
}

TEST_CASE("evolve emits (t, site, prob) rows") {
    const auto r = run_cli(
        "evolve --lambda 1 --lambda1 -1 --mu 2 --mu1 0 --window 20 --time 5 --samples 3");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 1 + 3 * 41);
    CHECK(lines[0] == "t,site,prob");
    // t = 0, site 0 carries all the weight of the initial state
    bool found = false;
    for (const auto& line : lines)
        if (line.rfind("0,0,", 0) == 0) {
            CHECK(std::strtod(line.c_str() + 4, nullptr) == Catch::Approx(1.0).margin(1e-10));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("sweep raster is deterministic and shows all six regions") {
    const std::string args = "sweep --alpha 0 --grid -4:4:-4:4:41";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 1 + 41 * 41);
    CHECK(lines[0] == "delta,sigma,region,case,count");
    std::map<std::string, int> tags;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ss(lines[i]);
        std::string field;
        std::getline(ss, field, ',');
        std::getline(ss, field, ',');
        std::getline(ss, field, ',');
        ++tags[field];
    }
    CHECK(tags.size() == 6);
    CHECK(tags.count("unclassified") == 0);
}

TEST_CASE("domain errors exit nonzero with a machine-readable object") {
    const auto r = run_cli("solve --lambda -1");
    CHECK(r.status == 1);
    const json j = json::parse(r.err);
    CHECK(j.contains("error"));
}

TEST_CASE("mixing parameter styles is rejected") {
    const auto r = run_cli("solve --lambda 1 --alpha 0");
    CHECK(r.status == 1);
    CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("malformed flags produce usage text") {
    const auto r = run_cli("solve --bogus 3");
    CHECK(r.status != 0);
    CHECK(!r.err.empty());
}

TEST_CASE("double formatting round-trips exactly") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        const std::string s = latspec::format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(latspec::format_double(16.0 / 3.0) == "5.333333333333333");
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "/tmp/latspec_cli_out_test.json";
    const auto direct = run_cli("classify --alpha 0 --delta 3 --sigma 2");
    const auto filed = run_cli("classify --alpha 0 --delta 3 --sigma 2 --out " + path);
    REQUIRE(filed.status == 0);
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());
}
