#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "permgrid/cli.hpp"
#include "permgrid/grammars.hpp"
#include "permgrid/perm.hpp"

using namespace permgrid;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("count prints the sequence and the methods agree") {
    const CliResult brute =
        run_cli({"count", "--basis", "4213,2143", "--n", "6", "--method", "brute"});
    CHECK(brute.code == 0);
    CHECK(brute.out == "1 2 6 22 88 366\n");
    CHECK(brute.err.empty());

    const CliResult series = run_cli({"count", "--basis", "4213,2143", "--n", "6"});
    CHECK(series.code == 0);
    CHECK(series.out == brute.out);

    const CliResult sub =
        run_cli({"count", "--basis", "4213,2413,2143", "--n", "8", "--method", "series"});
    CHECK(sub.out == "1 2 6 21 79 311 1265 5275\n");

    // Any basis works exhaustively; only the two named classes have a series.
    const CliResult other = run_cli({"count", "--basis", "4213", "--n", "5", "--method", "brute"});
    CHECK(other.code == 0);
    CHECK(other.out == "1 2 6 23 103\n");
    const CliResult refused =
        run_cli({"count", "--basis", "4213", "--n", "5", "--method", "series"});
    CHECK(refused.code == 1);
    CHECK(refused.err.substr(0, 6) == "error:");

    const CliResult j = run_cli({"count", "--basis", "4213,2143", "--n", "4", "--json"});
    CHECK(j.code == 0);
    const json doc = json::parse(j.out);
    CHECK(doc["basis"] == "2143,4213");  // canonical (sorted) form
    REQUIRE(doc["counts"].size() == 4);
    CHECK(doc["counts"][3]["n"] == 4);
    CHECK(doc["counts"][3]["count"] == "22");
}

TEST_CASE("grid reports the canonical gridding") {
    const CliResult r = run_cli({"grid", "--perm", "2 4 1 3"});
    CHECK(r.code == 0);
    CHECK(r.out == "c=1, r=4, left={2}, top={}\n");

    const CliResult top = run_cli({"grid", "--perm", "3 1 4 2 5"});
    CHECK(top.code == 0);
    CHECK(top.out.find("top={") != std::string::npos);

    const CliResult j = run_cli({"grid", "--perm", "2 4 1 3", "--json"});
    const json doc = json::parse(j.out);
    CHECK(doc["perm"] == "2 4 1 3");
    CHECK(doc["c"] == 1);
    CHECK(doc["r"] == 4);
    CHECK(doc["left"] == json::array({2}));
    CHECK(doc["top"] == json::array());

    // Outside the class: a domain error, not a usage error.
    const CliResult outside = run_cli({"grid", "--perm", "2 1 4 3"});
    CHECK(outside.code == 1);
    CHECK(outside.err.substr(0, 6) == "error:");
    CHECK(outside.out.empty());
}

TEST_CASE("series prints one coefficient per order") {
    const CliResult r = run_cli({"series", "--class", "H", "--order", "3", "--markers", "t"});
    CHECK(r.code == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    const Series g = grammar_H(3, MarkerAtoms::top_only(3));
    CHECK(lines[0] == "0: 0");
    CHECK(lines[3] == "3: " + g.coeff(3).str());

    const CliResult plain = run_cli({"series", "--class", "D", "--order", "5"});
    const std::vector<std::string> pl = lines_of(plain.out);
    REQUIRE(pl.size() == 6);
    CHECK(pl[4] == "4: 22");
    CHECK(pl[5] == "5: 88");

    const CliResult j =
        run_cli({"series", "--class", "D", "--order", "4", "--markers", "t,l", "--json"});
    const json doc = json::parse(j.out);
    CHECK(doc["class"] == "D");
    CHECK(doc["markers"] == "t,l");
    REQUIRE(doc["coefficients"].size() == 5);
    const Series full = grammar_D(4, MarkerAtoms::full(4));
    CHECK(doc["coefficients"][4]["value"] == full.coeff(4).str());
}

TEST_CASE("stats emits the exact distribution as CSV") {
    const CliResult r = run_cli({"stats", "--class", "D", "--n", "4", "--stat", "left"});
    CHECK(r.code == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "n,k,num,den,float");
    // Of the 22 members at n = 4, only 2413 carries a left point.
    CHECK(lines[1].substr(0, 10) == "4,0,21,22,");
    CHECK(lines[2].substr(0, 9) == "4,1,1,22,");

    const CliResult top = run_cli({"stats", "--class", "H", "--n", "5", "--stat", "top"});
    CHECK(top.code == 0);
    CHECK(lines_of(top.out)[0] == "n,k,num,den,float");

    // The smaller class has no left points at all.
    const CliResult hleft = run_cli({"stats", "--class", "H", "--n", "5", "--stat", "left"});
    const std::vector<std::string> hl = lines_of(hleft.out);
    REQUIRE(hl.size() == 2);
    CHECK(hl[1].substr(0, 8) == "5,0,1,1,");

    const CliResult j = run_cli({"stats", "--class", "D", "--n", "4", "--stat", "left", "--json"});
    const json doc = json::parse(j.out);
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["num"] == "21");
    CHECK(doc["rows"][0]["den"] == "22");
}

TEST_CASE("sample is deterministic, valid, and summarisable") {
    const std::vector<std::string> args = {"sample", "--n",    "12", "--count",
                                           "40",     "--seed", "42"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const PatternBasis d_basis = PatternBasis::parse("4213,2143");
    const std::vector<std::string> perms = lines_of(a.out);
    REQUIRE(perms.size() == 40);
    for (const std::string& line : perms) {
        const Permutation p = Permutation::parse(line);
        CHECK(p.size() == 12);
        CHECK(avoids_all(p, d_basis));
    }

    const CliResult other = run_cli(
        {"sample", "--n", "12", "--count", "40", "--seed", "42", "--stream", "1"});
    CHECK(other.out != a.out);

    const PatternBasis h_basis = PatternBasis::parse("4213,2413,2143");
    const CliResult h = run_cli(
        {"sample", "--n", "10", "--count", "25", "--seed", "7", "--class", "H"});
    for (const std::string& line : lines_of(h.out))
        CHECK(avoids_all(Permutation::parse(line), h_basis));

    const CliResult summary = run_cli(
        {"sample", "--n", "30", "--count", "500", "--seed", "9", "--stats"});
    CHECK(summary.code == 0);
    const json doc = json::parse(summary.out);
    CHECK(doc["n"] == 30);
    CHECK(doc["trials"] == 500);
    CHECK(doc["top_mean"].is_number());
    CHECK(doc["fraction_in_H"].is_number());

    const CliResult jlist =
        run_cli({"sample", "--n", "8", "--count", "3", "--seed", "1", "--json"});
    const json jd = json::parse(jlist.out);
    REQUIRE(jd["perms"].size() == 3);
    CHECK(Permutation::parse(jd["perms"][0].get<std::string>()).size() == 8);
}

TEST_CASE("verify runs the fast cross-check suite") {
    const CliResult r = run_cli({"verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("checks passed") != std::string::npos);

    const CliResult j = run_cli({"verify", "--suite", "fast", "--json"});
    CHECK(j.code == 0);
    const json doc = json::parse(j.out);
    CHECK(doc["suite"] == "fast");
    CHECK(doc["passed"] == true);
    for (const json& c : doc["checks"]) CHECK(c["passed"] == true);
}

TEST_CASE("usage errors and help exit distinctly") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"reticulate"}).code == 2);
    CHECK(run_cli({"count", "--n", "5"}).code == 2);                        // missing --basis
    CHECK(run_cli({"count", "--basis", "4213,2143"}).code == 2);            // missing --n
    CHECK(run_cli({"count", "--basis", "4213,2143", "--n", "0"}).code == 2);
    CHECK(run_cli({"count", "--basis", "4213,2143", "--n", "5", "--plot"}).code == 2);
    CHECK(run_cli({"series", "--class", "E", "--order", "5"}).code == 2);
    CHECK(run_cli({"series", "--class", "D", "--order", "5", "--markers", "x"}).code == 2);
    CHECK(run_cli({"stats", "--class", "D", "--n", "4", "--stat", "width"}).code == 2);
    CHECK(run_cli({"sample", "--n", "-3"}).code == 2);
    CHECK(run_cli({"verify", "--suite", "slow"}).code == 2);

    // Malformed flag values are usage errors too.
    const CliResult bad_perm = run_cli({"grid", "--perm", "2 2 3"});
    CHECK(bad_perm.code == 2);
    CHECK(bad_perm.err.find("usage error:") != std::string::npos);
    CHECK(run_cli({"count", "--basis", "", "--n", "3"}).code == 2);

    const CliResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("count") != std::string::npos);
    CHECK(help.out.find("verify") != std::string::npos);
    const CliResult sub_help = run_cli({"sample", "--help"});
    CHECK(sub_help.code == 0);
    CHECK(sub_help.out.find("--seed") != std::string::npos);
}

TEST_CASE("thread count never changes output") {
    const CliResult one = run_cli(
        {"count", "--basis", "4213,2143", "--n", "7", "--method", "brute", "--threads", "1"});
    const CliResult four = run_cli(
        {"count", "--basis", "4213,2143", "--n", "7", "--method", "brute", "--threads", "4"});
    CHECK(one.code == 0);
    CHECK(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(one.out == "1 2 6 22 88 366 1556\n");
}
