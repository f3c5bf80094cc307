#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crari/cli.hpp"
#include "crari/experiments.hpp"
#include "crari/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "crari");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = crari::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> fields(const std::string& report) {
    std::map<std::string, std::string> kv;
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("crari_cli_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        const auto p = (path / name).string();
        if (!content.empty()) std::ofstream(p) << content;
        return p;
    }
};

}  // namespace

TEST_CASE("icc on a complete 3x3 table") {
    TempDir dir;
    const auto in = dir.file("t.csv", "1,2,3\n4,6,5\n9,7,8\n");
    const auto r = cli({"icc", "--input", in, "--conf", "0.99"});
    REQUIRE(r.code == 0);
    const auto kv = fields(r.out);
    CHECK(kv.at("pmiss") == "0");
    CHECK(kv.at("icc") == kv.at("iccCor"));
    CHECK(kv.at("seed") == "1");
    CHECK(kv.count("version"));
    CHECK(kv.count("conf.0.99"));
}

TEST_CASE("impute then icc recovers the corrected ICC") {
    TempDir dir;
    const auto table = dir.file("s.csv");
    REQUIRE(cli({"synth", "--rows", "300", "--cols", "40", "--zscore", "--degrade", "0.2", "--output", table,
                 "--seed", "3"}).code == 0);
    const auto first = fields(cli({"icc", "--input", table}).out);
    const auto imputed = dir.file("imp.csv");
    const auto imp = cli({"impute", "--input", table, "--output", imputed, "--target", "corrected"});
    REQUIRE(imp.code == 0);
    const auto second = fields(cli({"icc", "--input", imputed}).out);
    CHECK(std::abs(std::stod(second.at("icc")) - std::stod(first.at("iccCor"))) <= 2e-3);
    CHECK(second.at("pmiss") == "0");
}

TEST_CASE("fit report carries the usage transcript fields") {
    TempDir dir;
    const auto table = dir.file("s.csv");
    const auto truth = (dir.path / "truth").string();
    REQUIRE(cli({"synth", "--rows", "200", "--cols", "30", "--degrade", "0.05", "--output", table, "--truth",
                 truth, "--missing-code", "0"}).code == 0);
    const auto r = cli({"fit", "--input", table, "--missing-code", "0", "--conf", "0.99", "--predictors",
                        truth + "_beta.csv"});
    REQUIRE(r.code == 0);
    const auto kv = fields(r.out);
    for (const char* k : {"q", "icc", "conf.0.99", "pmiss", "iccCor", "r2", "r2onICC", "r2Cor"}) {
        CHECK_MESSAGE(kv.count(k), k);
    }
}

TEST_CASE("reports are byte-for-byte reproducible") {
    TempDir dir;
    const auto table = dir.file("s.csv");
    REQUIRE(cli({"synth", "--rows", "100", "--cols", "20", "--output", table}).code == 0);
    const auto a = cli({"ecvt", "--input", table, "--resamples", "20", "--seed", "9"});
    const auto b = cli({"ecvt", "--input", table, "--resamples", "20", "--seed", "9"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(fields(a.out).at("seed") == "9");
}

TEST_CASE("exit codes") {
    TempDir dir;
    const auto bad = dir.file("bad.csv", "1,2\n3,x\n");
    CHECK(cli({"icc", "--input", bad}).code == 2);
    const auto empty_col = dir.file("ec.csv", "1,,3\n4,,6\n");
    const auto r3 = cli({"icc", "--input", empty_col});
    CHECK(r3.code == 3);
    CHECK(r3.err.find("column 2") != std::string::npos);
    const auto flat = dir.file("flat.csv", "1,1\n1,1\n");
    CHECK(cli({"icc", "--input", flat}).code == 4);
    const auto table = dir.file("s.csv");
    REQUIRE(cli({"synth", "--rows", "100", "--cols", "20", "--degrade", "0.2", "--output", table}).code == 0);
    const auto r5 = cli({"impute", "--input", table, "--output", dir.file("o.csv"), "--target", "0.9999"});
    CHECK(r5.code == 5);
    CHECK(r5.err.find("imputation") != std::string::npos);
    CHECK(cli({"icc"}).code == 6);
    CHECK(cli({"impute", "--input", table}).code == 6);
    CHECK(cli({"ecvt", "--input", table}).code == 6);
    CHECK(cli({"impute", "--input", table, "--output", "x.csv", "--target", "high"}).code == 6);
    CHECK(cli({"nonsense"}).code == 6);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("experiment emits a curve csv") {
    TempDir dir;
    const auto out = dir.file("curve.csv");
    const auto r = cli({"experiment", "--name", "fig4", "--rows", "100", "--cols", "20", "--p-grid", "0,0.1",
                        "--replications", "2", "--output", out});
    REQUIRE(r.code == 0);
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    CHECK(header == "p,exact,missing,estimate,imputed,c");
}

TEST_CASE("canned studies produce one row per proportion") {
    crari::ExperimentSpec spec;
    spec.synth.rows = 80;
    spec.synth.cols = 20;
    spec.replications = 2;
    spec.p_grid = {0.0, 0.2};
    for (const auto& name : crari::experiment_names()) {
        spec.name = name;
        const auto curve = crari::run_experiment(spec);
        CHECK(curve.column("p").size() == 2);
    }
}

TEST_CASE("report formatting") {
    crari::Report r;
    r.section("a");
    r.add("x", 0.1);
    r.add("y", true);
    const double v[] = {1.5, 2.0};
    r.add("z", std::span<const double>(v));
    CHECK(r.str() == "[a]\nx = 0.1\ny = true\nz = 1.5,2\n");
    CHECK(crari::format_number(1.0 / 0.0) == "inf");
}
