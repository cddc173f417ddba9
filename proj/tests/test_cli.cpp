#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "cliff/io.hpp"

namespace fs = std::filesystem;

namespace {

struct run_result {
    int status;
    std::string output;  // stdout + stderr
};

run_result run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "out.txt";
    const std::string command =
        std::string("cd '") + dir.string() + "' && '" + CLIFF_CLI_PATH + "' " + args + " > out.txt 2>&1";
    int status = std::system(command.c_str());
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {status, buffer.str()};
}

fs::path make_workdir() {
    fs::path dir = fs::temp_directory_path() / ("cliff_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const char* small_filtration_text =
    "filtration v1\nn 4\nedges 6\n1 2\n0 3\n0 1\n2 3\n0 2\n1 3\n";

}  // namespace

TEST_CASE("cli gen er writes a parseable file") {
    fs::path dir = make_workdir();
    run_result r = run_cli("gen --model er --n 2 --seed 0 -o pair.flt", dir);
    REQUIRE(r.status == 0);
    cliff::filtration f = cliff::parse_filtration_file((dir / "pair.flt").string());
    CHECK(f.edges.order.size() == 1);
}

TEST_CASE("cli reduce reports the pinned stats") {
    fs::path dir = make_workdir();
    std::ofstream(dir / "small.flt") << small_filtration_text;
    run_result r = run_cli("reduce small.flt --stats stats.json", dir);
    REQUIRE(r.status == 0);
    nlohmann::json j = nlohmann::json::parse(read_file(dir / "stats.json"));
    CHECK(j["fill_up"] == 10);
    CHECK(j["cost"] == 10);
    CHECK(j["critical_indices"] == nlohmann::json::array({3}));
}

TEST_CASE("cli betti emits the profile csv") {
    fs::path dir = make_workdir();
    std::ofstream(dir / "small.flt") << small_filtration_text;
    run_result r = run_cli("betti small.flt -o profile.csv", dir);
    REQUIRE(r.status == 0);
    std::string csv = read_file(dir / "profile.csv");
    CHECK(csv.rfind("i,beta1\n", 0) == 0);
    CHECK(csv.find("4,1\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);  // header + 7 values
}

TEST_CASE("cli fit prints the exact exponent") {
    fs::path dir = make_workdir();
    std::ofstream(dir / "power.csv") << "n,y\n2,40\n4,320\n8,2560\n";
    run_result r = run_cli("fit power.csv --y y", dir);
    REQUIRE(r.status == 0);
    CHECK(r.output.find("exponent 3.000000") != std::string::npos);
    CHECK(r.output.find("lambda 5.000000") != std::string::npos);
}

TEST_CASE("cli worst with audit") {
    fs::path dir = make_workdir();
    run_result r = run_cli("worst --p 3 --seed 1 -o worst.flt --groups groups.txt --audit", dir);
    REQUIRE(r.status == 0);
    CHECK(r.output.find("audit:") != std::string::npos);
    cliff::filtration f = cliff::parse_filtration_file((dir / "worst.flt").string());
    CHECK(f.edges.n == 16);
    CHECK(read_file(dir / "groups.txt").rfind("rank u v group\n", 0) == 0);
}

TEST_CASE("cli scan and experiment") {
    fs::path dir = make_workdir();
    run_result scan = run_cli("scan --model er --n 8 --trials 5 --seed 3 -o scan.csv", dir);
    REQUIRE(scan.status == 0);
    CHECK(read_file(dir / "scan.csv").rfind("model,n,trials,i,p_hat\n", 0) == 0);

    run_result experiment = run_cli(
        "experiment --model er --ns 8,10,12 --trials 3 --seed 4 -o exp.csv --svg exp", dir);
    REQUIRE(experiment.status == 0);
    CHECK(read_file(dir / "exp.csv").rfind("model,n,trials,", 0) == 0);
    CHECK(fs::exists(dir / "exp_fillup.svg"));
    CHECK(fs::exists(dir / "exp_cost.svg"));
    CHECK(read_file(dir / "exp_fillup.svg").find("<svg") != std::string::npos);
}

TEST_CASE("cli error paths") {
    fs::path dir = make_workdir();
    // unknown flag
    CHECK(run_cli("reduce small.flt --frobnicate", dir).status != 0);
    // missing required seed
    CHECK(run_cli("gen --model er --n 4 -o x.flt", dir).status != 0);
    // missing file carries the path
    run_result missing = run_cli("reduce no_such_file.flt", dir);
    CHECK(missing.status != 0);
    CHECK(missing.output.find("no_such_file.flt") != std::string::npos);
    // malformed model
    CHECK(run_cli("gen --model banana --n 4 --seed 1 -o x.flt", dir).status != 0);
}
