#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "symsets/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = symsets::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

int lines(const std::string& s) {
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("shuffle and hook") {
    const auto r = run({"shuffle", "6", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "312456\n132456\n124356\n124536\n124563\n");
    CHECK(run({"hook", "3,2"}).out == "5\n");
}

TEST_CASE("symmetry exit codes") {
    const auto no = run({"symmetric", "-"}, "2413\n");
    CHECK(no.code == 1);
    CHECK(no.out.find("not symmetric") != std::string::npos);
    const auto yes = run({"symmetric", "-"}, "2143\n1324\n");
    CHECK(yes.code == 0);
    CHECK(yes.out == "symmetric\n");
    CHECK(run({"schur", "-"}, "2413\n").code == 1);
    CHECK(run({"schur", "-"}, "2143\n1324\n").out == "s[(2,2)] 1\n");
    CHECK(run({"schur", "-"}, "F[4;{2}] 1\nF[4;{1,3}] 1\n").out == "s[(2,2)] 1\n");
}

TEST_CASE("usage errors") {
    const auto bad = run({"hook", "--bogus", "3,2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--theorem", "T9.9"}).code == 2);
    CHECK(run({"symmetric", "/nonexistent/file"}).code == 2);
    const auto lim = run({"--limit-n", "4", "avoid", "-n", "5", "-"}, "123\n");
    CHECK(lim.code == 2);
    CHECK(lim.err.find("limit") != std::string::npos);
    CHECK(run({"construct", "4", "20"}).code == 2);
}

TEST_CASE("partition errors name the offending part") {
    const auto r = run({"hook", "3,x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("part 2") != std::string::npos);
    const auto inc = run({"hook", "2,3"});
    CHECK(inc.code == 2);
    CHECK(inc.err.find("part 2") != std::string::npos);
}

TEST_CASE("permutation formats") {
    const auto a = run({"qsf", "-"}, "10,2,3,4,5,6,7,8,9,1\n");
    const auto b = run({"qsf", "-"}, "10 2 3 4 5 6 7 8 9 1\n");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == "F[10;{1,9}] 1\n");
    CHECK(run({"qsf", "-"}, "4152673\n").out == "F[7;{1,3,6}] 1\n");
    CHECK(run({"qsf", "-"}, "1123\n").code == 2);
}

TEST_CASE("JSON output parses and reruns are byte-identical") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "qsf", "-"}, {"--json", "schur", "-"}, {"--json", "symmetric", "-"},
             {"--json", "classify-set", "-"}, {"--json", "rsk", "4152673"}}) {
        const auto r1 = run(args, "2143\n1324\n");
        const auto r2 = run(args, "2143\n1324\n");
        CHECK(r1.out == r2.out);
        CHECK_NOTHROW((void)nlohmann::json::parse(r1.out));
    }
    const auto rsk = nlohmann::json::parse(run({"--json", "rsk", "4152673"}).out);
    CHECK(rsk["P"] == nlohmann::json::parse("[[1,2,3,7],[4,5,6]]"));
}

TEST_CASE("harmonic verdicts") {
    const auto no = run({"--json", "harmonic", "-"}, R"({"universe":[1],"sets":[[1],[]]})");
    CHECK(no.code == 1);
    const auto j = nlohmann::json::parse(no.out);
    CHECK(j["harmonic"] == false);
    CHECK(j["witness"]["I"] == nlohmann::json::parse("[1]"));
    CHECK(j["witness"]["J"] == nlohmann::json::parse("[2]"));
    const auto yes = run({"--json", "harmonic", "-"}, R"({"universe":[1,2],"sets":[[1],[2]]})");
    CHECK(yes.code == 0);
    CHECK(nlohmann::json::parse(yes.out)["harmonic"] == true);
    CHECK(run({"harmonic", "-"}, "{\"universe\":").code == 2);
}

TEST_CASE("construct and realizable") {
    const auto c = run({"construct", "5", "10"});
    CHECK(c.code == 0);
    CHECK(lines(c.out) == 11);
    const auto body = c.out.substr(0, c.out.size() - 1);
    const auto cert = nlohmann::json::parse(body.substr(body.rfind('\n') + 1));
    CHECK(cert["size"] == 10);
    CHECK(cert["verified"] == true);
    const auto f = run({"--flip", "construct", "4", "20"});
    CHECK(f.code == 0);
    CHECK(lines(f.out) == 21);
    CHECK(run({"realizable", "6", "5"}).code == 0);
    CHECK(run({"realizable", "6", "1"}).code == 1);
}

TEST_CASE("classification commands") {
    CHECK(run({"classify-set", "-"}, "2143\n1324\n").out == "N4Exception\n");
    CHECK(run({"classify-set", "-"}, "2413\n").code == 1);
    CHECK(run({"classify-set", "-"}, "2134\n1324\n1243\n2143\n").code == 2);
    const auto ps = run({"classify-patterns", "-"}, "312456\n132456\n124356\n124536\n124563\n");
    CHECK(ps.code == 0);
    CHECK(ps.out.find("PartialShuffle") != std::string::npos);
    const auto no = nlohmann::json::parse(run({"--json", "classify-patterns", "-"}, "2413\n").out);
    CHECK(no["verdict"] == "NotSymmetricallyAvoided");
    CHECK(no["witness_n"] == 4);
    CHECK(run({"--horizon", "6", "classify-patterns", "-"}, "3142\n3412\n1234\n").code == 2);
}

TEST_CASE("verify") {
    const auto r = run({"verify", "--theorem", "L5.15", "--k", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    const auto j = run({"--json", "verify", "--theorem", "L4.9", "--n", "5"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["passed"] == true);
}
