#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(HYPTEST_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> split(const std::string& s, char d) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, d)) out.push_back(item);
    return out;
}

// parse a TSV body into rows of column-name -> cell
std::vector<std::map<std::string, std::string>> parse_tsv(const std::string& text) {
    const auto lines = split(text, '\n');
    REQUIRE(!lines.empty());
    const auto header = split(lines[0], '\t');
    std::vector<std::map<std::string, std::string>> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = split(lines[i], '\t');
        REQUIRE(cells.size() == header.size());
        std::map<std::string, std::string> row;
        for (size_t j = 0; j < header.size(); ++j) row[header[j]] = cells[j];
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* kEps1 = "5.808677817566528e-05";

}  // namespace

TEST_CASE("analyze emits one TSV row") {
    const RunResult r = run(std::string("analyze --p bernoulli:0.6 "
                                        "--q bernoulli:0.25 --n 50 --epsilon ") + kEps1);
    CHECK(r.code == 0);
    const auto rows = parse_tsv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0].at("exact_e1")) == doctest::Approx(0.098307).epsilon(1e-4));
    CHECK(std::stod(rows[0].at("new_approx")) == doctest::Approx(0.082957).epsilon(1e-4));
    CHECK(std::stod(rows[0].at("hoeffding")) == doctest::Approx(0.803995).epsilon(1e-4));
    CHECK(std::stod(rows[0].at("strassen")) == doctest::Approx(84.1698).epsilon(1e-4));
    CHECK(rows[0].at("exponent_valid") == "1");
}

TEST_CASE("analyze JSON carries the same values as TSV") {
    const std::string args = std::string("analyze --p bernoulli:0.6 "
                                         "--q bernoulli:0.25 --n 50 --epsilon ") + kEps1;
    const RunResult tsv = run(args);
    const RunResult js = run(args + " --json");
    REQUIRE(tsv.code == 0);
    REQUIRE(js.code == 0);
    const auto row = parse_tsv(tsv.out).at(0);
    const nlohmann::json j = nlohmann::json::parse(js.out);
    for (const char* key : {"epsilon", "delta", "exact_e1", "stein", "strassen",
                            "hoeffding", "new_approx", "C", "C_prime",
                            "alpha_star"}) {
        REQUIRE_MESSAGE(j.contains(key), key);
        CHECK_MESSAGE(j[key].get<double>() == std::stod(row.at(key)), key);
    }
    CHECK(j["exponent_valid"].get<bool>() == (row.at("exponent_valid") == "1"));
}

TEST_CASE("analyze renders the approximation columns NA outside their range") {
    // derived exponent exceeds D(Q||P), so the exponent-regime columns vanish
    const RunResult r = run("analyze --p bernoulli:0.6 --q bernoulli:0.25 "
                            "--n 1 --epsilon 0.0001");
    CHECK(r.code == 0);
    const auto row = parse_tsv(r.out).at(0);
    CHECK(row.at("hoeffding") == "NA");
    CHECK(row.at("new_approx") == "NA");
    CHECK(row.at("C") == "NA");
    CHECK(row.at("exponent_valid") == "0");
    CHECK(std::stod(row.at("stein")) > 0.0);
}

TEST_CASE("exit codes") {
    // degenerate family
    CHECK(run("analyze --p bernoulli:0.5 --q bernoulli:0.5 --n 10 --epsilon 0.1")
              .code == 3);
    // exponent explicitly out of range
    CHECK(run("analyze --p bernoulli:0.6 --q bernoulli:0.25 --n 10 --delta 0.5")
              .code == 3);
    // usage errors
    CHECK(run("analyze --p bernoulli:0.6 --q bernoulli:0.25 --n 10").code == 2);
    CHECK(run("analyze --p nonsense:1 --q bernoulli:0.25 --n 10 --epsilon 0.1")
              .code == 2);
    CHECK(run("analyze --p probs:0.7,0.4 --q bernoulli:0.25 --n 10 --epsilon 0.1")
              .code == 2);
    CHECK(run("bogus-subcommand").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("default table reproduces the reference comparison") {
    const RunResult r = run("table --round-like-paper");
    REQUIRE(r.code == 0);
    const auto rows = parse_tsv(r.out);
    REQUIRE(rows.size() == 7);
    const char* exact[7] = {"0.098", "0.055", "0.029", "0.014",
                            "0.006", "0.003", "0.001"};
    const char* hoeff[7] = {"0.804", "0.639", "0.472", "0.324",
                            "0.208", "0.126", "0.071"};
    const char* fresh[7] = {"0.083", "0.056", "0.035", "0.019",
                            "0.010", "0.005", "0.002"};
    for (int i = 0; i < 7; ++i) {
        CHECK(rows[i].at("exact_e1") == exact[i]);
        CHECK(rows[i].at("hoeffding") == hoeff[i]);
        CHECK(rows[i].at("new_approx") == fresh[i]);
        CHECK(rows[i].at("stein") == "10^-6");
    }
    CHECK(rows[0].at("strassen") == "84.2");
    CHECK(rows[1].at("strassen") == "18.8");
    CHECK(rows[2].at("strassen") == "4.23");
    CHECK(rows[5].at("strassen") == "0.050");
    CHECK(rows[6].at("strassen") == "0.011");
}

TEST_CASE("table with a single budget matches analyze") {
    const RunResult t = run(std::string("table --epsilons ") + kEps1);
    const RunResult a = run(std::string("analyze --p bernoulli:0.6 "
                                        "--q bernoulli:0.25 --n 50 --epsilon ") + kEps1);
    REQUIRE(t.code == 0);
    REQUIRE(a.code == 0);
    CHECK(t.out == a.out);
}

TEST_CASE("sweep over n") {
    const std::string args = "sweep --p bernoulli:0.6 --q bernoulli:0.25 "
                             "--n-from 10 --n-to 100 --n-step 10 --delta 0.15";
    const RunResult r = run(args);
    REQUIRE(r.code == 0);
    const auto rows = parse_tsv(r.out);
    REQUIRE(rows.size() == 10);
    double prev = 1e300;
    for (const auto& row : rows) {
        const double v = std::stod(row.at("new_approx"));
        CHECK(v < prev);
        prev = v;
    }
    // deterministic output despite concurrent evaluation
    CHECK(run(args).out == r.out);
}

TEST_CASE("sweep over the exponent") {
    const RunResult r = run("sweep --p bernoulli:0.6 --q bernoulli:0.25 --n 50 "
                            "--delta-grid 0.03,0.06,0.09,0.12,0.15,0.18,0.21,0.24");
    REQUIRE(r.code == 0);
    const auto rows = parse_tsv(r.out);
    REQUIRE(rows.size() == 8);
    double prev = 2.0;
    for (const auto& row : rows) {
        const double a = std::stod(row.at("alpha_star"));
        CHECK(a < prev);
        prev = a;
    }
    CHECK(run("sweep --p bernoulli:0.6 --q bernoulli:0.25 --n 50 "
              "--delta-grid 0.5").code == 3);
}

TEST_CASE("verification command") {
    const RunResult ok = run("verify");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("PASS quantile-roundtrip") != std::string::npos);

    CHECK(run("verify --seed 7").code == 0);

    const RunResult bad = run("verify --corrupt-phi-inv");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL quantile-roundtrip") != std::string::npos);
}
