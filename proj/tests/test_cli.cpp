#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qnl/cli.hpp"
#include "testutil.hpp"

using namespace qnl;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("norm command") {
    auto r = run({"norm", "--space", "weak-lp:2", "--function", "char(0,1)"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.00000000000\n");

    r = run({"norm", "--space", "weak-lp:2", "--function", "powerleft(1,0.5) on (0,1)"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.00000000000\n");

    // divergent strong norm
    r = run({"norm", "--space", "lp:2", "--function", "powerleft(1,0.5) on (0,1)"});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());

    // parse failures
    CHECK(run({"norm", "--space", "nope:2", "--function", "char(0,1)"}).code == 2);
    CHECK(run({"norm", "--space", "lp:2", "--function", "wat"}).code == 2);
    CHECK(run({"norm", "--space", "lp:2"}).code == 2);
    CHECK(run({"bogus-command"}).code == 2);

    auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("norm") != std::string::npos);
}

TEST_CASE("indices command") {
    auto r = run({"indices", "--phi", "power:2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha_bar = 0.707106781187") != std::string::npos);
    CHECK(r.out.find("beta_bar  = 0.707106781187") != std::string::npos);

    r = run({"indices", "--phi", "power:4"});
    CHECK(r.out.find("0.840896415254") != std::string::npos);

    r = run({"indices", "--phi", "expminus"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha_bar = 0.707175800") != std::string::npos);
    CHECK(r.out.find("beta_bar  = 0.952225783") != std::string::npos);

    // table form of phi in a config file
    const std::string path = "/tmp/qnl_test_indices.cfg";
    {
        std::ofstream f(path);
        f << "phi = { family = \"power\", p = 2.5 }\n";
    }
    r = run({"indices", "--config", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha_bar = 0.757858283255") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("estimate command emits a complete record") {
    auto r = run({"estimate", "--constant", "nj", "--space", "lp:4", "--budget", "800",
                  "--seed", "0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["constant"] == "nj");
    CHECK(j["space"] == "lp:4");
    CHECK(j["lambda"] == 1.0);
    CHECK(j["value"].get<double>() >= std::sqrt(2.0) - 0.05);
    CHECK(j["value"].get<double>() <= std::sqrt(2.0) + 1e-9);
    CHECK(j["consistent"] == true);
    CHECK(j["witness"].contains("f"));
    // witness literal reparses
    CHECK_NOTHROW(parse_function(j["witness"]["f"].get<std::string>()));
    CHECK(j["seed"] == 0);
}

TEST_CASE("estimate from a config file") {
    const std::string path = "/tmp/qnl_test_estimate.cfg";
    {
        std::ofstream f(path);
        f << "constant = \"c1\"\n"
          << "space = { kind = \"weak-lp\", p = 2.0 }\n"
          << "lambda = 1.0\n"
          << "mu = 1.0\n"
          << "budget = 300\n"
          << "seed = 3\n";
    }
    auto r = run({"estimate", "--config", path});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["constant"] == "c1");
    CHECK(j["bounds"]["lower"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    // flags override config
    auto r2 = run({"estimate", "--config", path, "--mu", "2.0"});
    const auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["mu"] == 2.0);
    // unknown config keys are rejected
    {
        std::ofstream f(path, std::ios::app);
        f << "surprise = 1\n";
    }
    CHECK(run({"estimate", "--config", path}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("sweep command CSV") {
    auto r = run({"sweep", "--constant", "c1", "--space-kind", "weak-lp", "--p", "2",
                  "--lambda", "1,8", "--mu", "1,8", "--budget", "200", "--seed", "0"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "p,lambda,mu,constant_id,estimate,paper_lower,paper_upper,consistent");
    std::string row1, row2;
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(row1.find("2,1,1,c1,") == 0);
    CHECK(row1.find("1.41421356237,2,true") != std::string::npos);
    CHECK(row2.find("2,8,8,c1,") == 0);
    CHECK(row2.find(",4,2,false") != std::string::npos);

    // identical bytes on rerun with the same seed
    auto r2 = run({"sweep", "--constant", "c1", "--space-kind", "weak-lp", "--p", "2",
                   "--lambda", "1,8", "--mu", "1,8", "--budget", "200", "--seed", "0"});
    CHECK(r2.out == r.out);

    // skew constants report core and both divided variants
    auto r3 = run({"sweep", "--constant", "lyjc", "--space-kind", "weak-lp", "--p", "2",
                   "--lambda", "1", "--mu", "1", "--budget", "150", "--seed", "0",
                   "--family", "witnesses"});
    CHECK(r3.code == 0);
    CHECK(r3.out.find("lyjc-core") != std::string::npos);
    CHECK(r3.out.find("lyjc-div-est") != std::string::npos);
    CHECK(r3.out.find("lyjc-div-upper") != std::string::npos);

    // classical values over a p grid: estimates sit within 0.05 of the target
    auto r4 = run({"sweep", "--constant", "nj", "--space-kind", "lp", "--p",
                   "1.5,2,3,4", "--lambda", "1", "--mu", "1", "--budget", "500",
                   "--seed", "0"});
    CHECK(r4.code == 0);
    std::istringstream rows(r4.out);
    std::string line;
    std::getline(rows, line); // header
    while (std::getline(rows, line)) {
        std::istringstream cells(line);
        std::string pcell, cell;
        std::getline(cells, pcell, ',');
        for (int i = 0; i < 4; ++i) std::getline(cells, cell, ','); // ... -> estimate
        const double p = std::stod(pcell);
        const double est = std::stod(cell);
        const double want =
            std::max(std::pow(2.0, 2.0 / p - 1.0), std::pow(2.0, 1.0 - 2.0 / p));
        CHECK(est >= want - 0.05);
        CHECK(est <= want + 1e-9);
    }
}

TEST_CASE("audit command") {
    auto r = run({"audit", "--p", "2", "--lambda", "1,8", "--mu", "2,8", "--samples", "8",
                  "--format", "csv"});
    CHECK(r.code == 0); // findings only; no violated conclusions
    CHECK(r.out.find("cp1-bounds@p2-l8-m8,consistency,inconsistent") != std::string::npos);
    CHECK(r.out.find("chi-identity@p2,conclusion,confirmed") != std::string::npos);

    auto rt = run({"audit", "--p", "2", "--lambda", "1", "--mu", "1", "--samples", "8",
                   "--format", "table"});
    CHECK(rt.code == 0);
    CHECK(rt.out.find("claim") != std::string::npos);
    CHECK(rt.out.find("wlp-h1-norm@p2-l1-m1") != std::string::npos);

    // extra Young-function rows
    auto rp = run({"audit", "--p", "2", "--phi", "powerlog:2", "--lambda", "1", "--mu",
                   "1", "--samples", "6", "--format", "csv"});
    CHECK(rp.code == 0);
    CHECK(rp.out.find("worlicz-g-sum-chain@powerlog2-l1-m1") != std::string::npos);

    // determinism modulo timestamp: strip the json timestamp field
    auto ra = run({"audit", "--p", "2", "--lambda", "1", "--mu", "2", "--samples", "8"});
    auto rb = run({"audit", "--p", "2", "--lambda", "1", "--mu", "2", "--samples", "8"});
    auto strip = [](std::string s) {
        const auto pos = s.find("\"timestamp\"");
        if (pos != std::string::npos) {
            const auto end = s.find('\n', pos);
            s.erase(pos, end - pos + 1);
        }
        return s;
    };
    CHECK(strip(ra.out) == strip(rb.out));
    CHECK(run({"audit", "--p", "2", "--lambda", "1,2", "--mu", "1", "--samples", "4"}).code ==
          2); // mismatched zip lists
}

TEST_CASE("outputs can be written to files") {
    const std::string path = "/tmp/qnl_test_out.csv";
    auto r = run({"sweep", "--constant", "nj", "--space-kind", "lp", "--p", "2",
                  "--lambda", "1", "--mu", "1", "--budget", "100", "--seed", "1", "--out",
                  path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "p,lambda,mu,constant_id,estimate,paper_lower,paper_upper,consistent");
    std::remove(path.c_str());
}
