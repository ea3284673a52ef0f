#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "delsub/binary_code.hpp"
#include "delsub/bounds.hpp"
#include "delsub/qary_code.hpp"
#include "delsub/rational.hpp"
#include "delsub/word.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DELSUB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

json parse_output(const CliResult& r) { return json::parse(r.out); }

std::string temp_path(const std::string& stem) {
    return "/tmp/delsub_cli_" + std::to_string(getpid()) + "_" + stem;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("ball command lists the ball and checks the closed form") {
    auto r = run_cli("ball --word 0011 --q 2 --s 1 --formula");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["schema"] == "delsub/1");
    CHECK(j["command"] == "ball");
    CHECK(j["word"] == "0011");
    CHECK(j["size"] == 6);
    CHECK(j["formula_size"] == 6);
    CHECK(j["agree"] == true);
    CHECK(j["elements"].size() == 6);
    CHECK(j["elements"] == json({"000", "001", "010", "011", "101", "111"}));
}

TEST_CASE("ball command limits the formula flag to one substitution") {
    CHECK(run_cli("ball --word 0011 --s 2 --formula").status == 2);
    CHECK(run_cli("ball --word 0011 --s 2").status == 0);
    CHECK(run_cli("ball").status == 2);
    CHECK(run_cli("ball --word 0211 --q 2").status == 2);
}

TEST_CASE("bound command reports exact ratios by default and doubles on request") {
    auto r = run_cli("bound --n 6 --exact-sum");
    CHECK(r.status == 0);
    json j = parse_output(r);
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["n"] == 6);
    CHECK(j["rows"][0]["closed_form_bound"] == "42");
    CHECK(j["rows"][0]["weight_sum"] == "901/195");

    auto f = run_cli("--float bound --n 6 --exact-sum");
    json jf = parse_output(f);
    CHECK(jf["rows"][0]["closed_form_bound"] == 42.0);
    CHECK(jf["rows"][0]["weight_sum"].get<double>() == doctest::Approx(901.0 / 195.0));
}

TEST_CASE("bound sweep emits one CSV row per length") {
    auto r = run_cli("bound --sweep 6..8 --csv --exact-sum --greedy");
    CHECK(r.status == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,q,s,closed_form_bound,weight_sum,greedy_size,constructed_size");
    const std::string w7 = delsub::rat_str(delsub::exact_weight_sum(7, 2, 1));
    const std::string w8 = delsub::rat_str(delsub::exact_weight_sum(8, 2, 1));
    CHECK(lines[1] == "6,2,1,42,901/195,2,1");
    CHECK(lines[2] == "7,2,1,34," + w7 + ",3,1");
    CHECK(lines[3] == "8,2,1,178/5," + w8 + ",4,1");
}

TEST_CASE("bound command rejects a reversed sweep") {
    CHECK(run_cli("bound --sweep 8..6").status == 2);
    CHECK(run_cli("bound").status == 2);
}

TEST_CASE("construct reports the searched binary code") {
    auto r = run_cli("construct --kind binary --n 12");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["kind"] == "binary");
    CHECK(j["n"] == 12);
    CHECK(j["params"]["a"] == 0);
    CHECK(j["params"]["b"] == 168);
    CHECK(j["params"]["c"] == 1080);
    CHECK(j["params"]["d"] == 1);
    CHECK(j["moduli"] == json({37, 433, 5185, 5}));
    CHECK(j["size"] == 2);
    CHECK(j["redundancy"].get<double>() == doctest::Approx(11.0));
}

TEST_CASE("construct accepts explicit residues") {
    auto r = run_cli("construct --kind binary --n 8 --params 0,0,0,0");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["size"] == 1);
    CHECK(j["redundancy"].get<double>() == doctest::Approx(8.0));

    CHECK(run_cli("construct --kind binary --n 8 --params 1,2,3").status == 2);
    CHECK(run_cli("construct --kind ternary --n 8").status == 2);
}

TEST_CASE("construct builds the q-ary code around its inner code") {
    auto r = run_cli("construct --kind qary --n 7 --q 3");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["params"]["a"] == 0);
    CHECK(j["params"]["b"] == 23);
    CHECK(j["params"]["c"] == 99);
    CHECK(j["inner_size"] == 3);
    CHECK(j["size"] == 1);
    CHECK(j["redundancy"].get<double>() == doctest::Approx(7.0));
}

TEST_CASE("construct reads an external inner code") {
    const std::string path = temp_path("inner.txt");
    {
        std::ofstream out(path);
        delsub::InnerSignatureCode::greedy_search(7).save(out);
    }
    auto r = run_cli("construct --kind qary --n 7 --q 3 --inner " + path);
    CHECK(r.status == 0);
    CHECK(parse_output(r)["size"] == 1);
    std::remove(path.c_str());

    CHECK(run_cli("construct --kind qary --n 7 --q 3 --inner /nonexistent.txt").status == 2);
}

TEST_CASE("verify passes a constructed code") {
    auto r = run_cli("verify --kind binary --n 10");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["certificate"]["verdict"] == "pass");
    CHECK(j["certificate"]["witness"].is_null());
    CHECK(j["certificate"]["stats"].contains("pairs_checked"));
    CHECK_FALSE(j["certificate"]["stats"].contains("wall_seconds"));

    auto timed = run_cli("--timing verify --kind binary --n 10");
    CHECK(parse_output(timed)["certificate"]["stats"].contains("wall_seconds"));
}

TEST_CASE("verify fails a clashing word list with a replayable witness") {
    const std::string path = temp_path("clash.txt");
    {
        std::ofstream out(path);
        out << "n=4\n0000\n0001\n";
    }
    auto r = run_cli("verify --code-file " + path + " --t 1 --s 1");
    CHECK(r.status == 1);
    json j = parse_output(r);
    CHECK(j["certificate"]["verdict"] == "fail");
    const json& w = j["certificate"]["witness"];
    CHECK(w["x"] == "0000");
    CHECK(w["y"] == "0001");
    CHECK(w["z"] == "000");
    CHECK(w["pattern_x"]["deleted_positions"] == json({1}));
    CHECK(w["pattern_x"]["substitutions"].empty());
    std::remove(path.c_str());
}

TEST_CASE("verify treats the code source options as mutually exclusive") {
    CHECK(run_cli("verify --kind binary --n 8 --code-file /tmp/x.txt").status == 2);
    CHECK(run_cli("verify").status == 2);
}

TEST_CASE("decode recovers a deleted symbol through the command line") {
    auto r = run_cli(
        "decode --kind binary --n 12 --params 0,168,1080,1 --received 01110010110");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["outcome"]["status"] == "decoded");
    CHECK(j["outcome"]["codeword"] == "011100100110");
    CHECK(j["outcome"]["inferred_errors"]["deleted_positions"].size() == 1);
    CHECK_FALSE(j["outcome"].contains("candidates"));
}

TEST_CASE("decode reports unreachable channel outputs") {
    auto r = run_cli(
        "decode --kind binary --n 12 --params 0,168,1080,1 --received 00000000000");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["outcome"]["status"] == "not_a_codeword_channel_output");
    CHECK(j["outcome"]["codeword"].is_null());
}

TEST_CASE("decode handles the q-ary construction") {
    delsub::QaryDelSubCode code(7, 3, {0, 23, 99}, delsub::InnerSignatureCode::greedy_search(7));
    auto codebook = code.enumerate();
    REQUIRE(codebook.size() == 1);
    auto symbols = codebook[0].symbols();
    symbols.erase(symbols.begin() + 2);
    const std::string received = delsub::Word(symbols, 3).str();

    auto r = run_cli("decode --kind qary --n 7 --q 3 --params 0,23,99 --received " + received);
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["outcome"]["status"] == "decoded");
    CHECK(j["outcome"]["codeword"] == codebook[0].str());
}

TEST_CASE("simulate emits a machine-readable summary and is thread-stable") {
    const std::string args =
        "simulate --kind binary --n 12 --params 0,168,1080,1 --trials 500 --seed 9";
    auto base = run_cli(args);
    CHECK(base.status == 0);
    auto lines = lines_of(base.out);
    REQUIRE(lines.size() == 1);
    json summary = json::parse(lines.back());
    CHECK(summary["record"] == "summary");
    CHECK(summary["generator"] == "splitmix64");
    CHECK(summary["trials"] == 500);
    CHECK(summary["successes"] == 500);
    CHECK(summary["failure_count"] == 0);
    CHECK(summary["codebook_size"] == 2);

    for (const std::string threads : {"4", "8"}) {
        auto again = run_cli(args + " --threads " + threads);
        CHECK(again.status == 0);
        CHECK(again.out == base.out);
    }
}

TEST_CASE("simulate rejects configurations its decoders cannot honour") {
    CHECK(run_cli("simulate --kind qary --n 7 --q 3 --params 0,23,99 --trials 10 "
                  "--deletions 0")
              .status == 2);
    CHECK(run_cli("simulate --kind binary --n 12 --trials 0").status == 2);
    CHECK(run_cli("simulate --kind binary --n 12 --trials 10 --substitutions 2").status == 2);
}

TEST_CASE("congruent enumerates a constraint system") {
    auto r = run_cli("congruent --constraint 'gamma=1,2,3;a=0;N=4' --n 3");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["count"] == 2);
    CHECK(j["words"] == json({"000", "101"}));
}

TEST_CASE("congruent tests a single word against every constraint") {
    auto r = run_cli(
        "congruent --constraint 'gamma=1,2,3;a=0;N=4' --constraint 'gamma=1,1,1;a=2;N=3' "
        "--word 101");
    CHECK(r.status == 0);
    json j = parse_output(r);
    CHECK(j["member"] == true);
    REQUIRE(j["results"].size() == 2);
    CHECK(j["results"][0]["residue"] == 0);
    CHECK(j["results"][0]["member"] == true);
    CHECK(j["results"][1]["residue"] == 2);

    auto miss = run_cli("congruent --constraint 'gamma=1,2,3;a=1;N=4' --word 101");
    CHECK(parse_output(miss)["member"] == false);

    CHECK(run_cli("congruent --constraint 'gamma=1,2,3;a=0;N=4'").status == 2);
}

TEST_CASE("global usage errors exit with the usage code") {
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("ball --help").status == 0);
}

TEST_CASE("a tiny budget aborts heavy work with the usage code") {
    CHECK(run_cli("--budget 5 construct --kind binary --n 12 --params 0,168,1080,1").status == 2);
}
