#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "prehom/lsa.hpp"
#include "prehom/prehom.hpp"
#include "prehom/instantiate.hpp"
#include "prehom/castling.hpp"

using namespace prehom;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() /
                ("pvtool_out_" + std::to_string(++counter) + ".txt");
    std::string cmd = env_prefix + std::string(PVTOOL_BIN) + " " + args + " > " +
                      path.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    std::filesystem::remove(path);
    return r;
}

Vec vec_of(const json& arr) {
    Vec v;
    for (const auto& x : arr) v.push_back(rat_from_string(x.get<std::string>()));
    return v;
}

}  // namespace

TEST_CASE("check-pv spec examples") {
    auto pv = run("check-pv \"SL(3) x GL(2) : 2L1@L1\"");
    CHECK(pv.code == 0);
    CHECK_THAT(pv.out, ContainsSubstring("status: IsPV"));
    CHECK_THAT(pv.out, ContainsSubstring("cuspidal: yes"));
    CHECK_THAT(pv.out, ContainsSubstring("isotropy dim: 0"));
    CHECK_THAT(pv.out, ContainsSubstring("dim g: 12"));
    CHECK_THAT(pv.out, ContainsSubstring("dim V: 12"));

    auto nopv = run("check-pv \"SL(3) x GL(1) : L1@1 + L1*@1\"");
    CHECK(nopv.code == 1);
    CHECK_THAT(nopv.out, ContainsSubstring("status: ProbablyNotPV"));
    CHECK_THAT(nopv.out, ContainsSubstring("cuspidal: no"));

    auto bad = run("check-pv \"SL(3 x GL(2)\"");
    CHECK(bad.code == 2);
    CHECK_THAT(bad.out, ContainsSubstring("error:"));
}

TEST_CASE("check-pv json certificate replays exactly") {
    auto r = run("--json check-pv \"SL(3) x GL(2) : 2L1@L1\"");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("descriptor") == "SL(3) x GL(2) : 2L1@L1");
    CHECK(j.at("space_dim") == 12);
    CHECK(j.at("algebra_dim") == 12);
    CHECK(j.at("verdict").at("status") == "IsPV");
    const json& cert = j.at("verdict").at("certificate");
    CHECK(cert.at("isotropy_dim") == 0);

    auto rep = try_instantiate(parse_descriptor("SL(3) x GL(2) : 2L1@L1"));
    REQUIRE(rep);
    IsotropyCertificate c = isotropy_at(*rep.rep, vec_of(cert.at("point")));
    CHECK(c.isotropy_dim == 0);
    CHECK(c.orbit_dim == 12);
}

TEST_CASE("lsa spec examples") {
    auto a = run("lsa \"GL(2) : 3L1\"");
    CHECK(a.code == 0);
    CHECK_THAT(a.out, ContainsSubstring("dim: 4"));
    CHECK_THAT(a.out, ContainsSubstring("left-symmetric: yes"));
    CHECK_THAT(a.out, ContainsSubstring("unique right identity: yes"));
    CHECK_THAT(a.out, ContainsSubstring("double is frobenius: yes"));

    auto t = run("lsa \"table1:A3 lambda=2\"");
    CHECK(t.code == 0);
    CHECK_THAT(t.out, ContainsSubstring("source: table1:A3 lambda=2"));
    CHECK_THAT(t.out, ContainsSubstring("left-symmetric: yes"));
    CHECK_THAT(t.out, ContainsSubstring("unique right identity: yes"));

    auto t2 = run("lsa table1:A3 --lambda 2");
    CHECK(t2.code == 0);
    CHECK(t2.out == t.out);

    auto missing = run("lsa table1:A3");
    CHECK(missing.code == 2);
    CHECK_THAT(missing.out, ContainsSubstring("lambda"));

    auto small = run("lsa \"SL(2) : L1\"");
    CHECK(small.code == 2);
    CHECK_THAT(small.out, ContainsSubstring("not cuspidal"));
}

TEST_CASE("lsa json round-trips through lsa_from_json") {
    auto r = run("--json lsa \"GL(2) : 3L1\"");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    Lsa a = lsa_from_json(j.at("lsa"));
    CHECK(a.dim() == 4);
    CHECK(validate_lsa(a).ok);
    auto ids = right_identities(a);
    CHECK(ids.unique());
    CHECK(ids.particular == vec_of(j.at("right_identity").at("particular")));
    CHECK(j.at("double").at("frobenius") == true);
    CHECK(j.at("double").at("agrees_with_right_identity") == true);
}

TEST_CASE("lsa accepts centered descriptors with explicit center json") {
    std::string center = R"('[{"scalars":["1","1"]}]')";
    auto ok = run("lsa 'GL(1)^1 x SL(2) : L1 + L1' --center " + center);
    CHECK(ok.code == 0);
    CHECK_THAT(ok.out, ContainsSubstring("dim: 4"));
    CHECK_THAT(ok.out, ContainsSubstring("unique right identity: yes"));

    auto diag_mismatch = run("lsa 'GL(1)^1 x SL(2) : L1 + L1'");
    CHECK(diag_mismatch.code == 2);
    CHECK_THAT(diag_mismatch.out, ContainsSubstring("diag center"));

    auto bad_json = run("lsa 'GL(1)^1 x SL(2) : L1 + L1' --center not-json");
    CHECK(bad_json.code == 2);
}

TEST_CASE("castle applies and rejects moves") {
    auto to = run("castle \"SL(5) x GL(3) : L2@L1\" --summand 0 --factor 1");
    CHECK(to.code == 0);
    CHECK_THAT(to.out, ContainsSubstring("to: SL(5) x GL(7) : L2*@L1"));

    auto illegal = run("castle \"SL(5) x GL(3) : L2@L1\" --summand 0 --factor 0");
    CHECK(illegal.code == 2);
    CHECK_THAT(illegal.out, ContainsSubstring("error:"));

    auto oob = run("castle \"SL(5) x GL(3) : L2@L1\" --summand 4 --factor 1");
    CHECK(oob.code == 2);
}

TEST_CASE("reduce finds the castling-minimal member") {
    auto r = run("reduce \"SL(5) x GL(7) : L2*@L1\"");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("reduced: SL(5) x GL(3) : L2@L1"));
    CHECK_THAT(r.out, ContainsSubstring("complete: yes"));

    auto j = run("--json reduce \"SL(5) x GL(7) : L2*@L1\"");
    REQUIRE(j.code == 0);
    json parsed = json::parse(j.out);
    CHECK(parsed.at("reduced") == "SL(5) x GL(3) : L2@L1");
    CHECK(parsed.at("space_dim_reduced") == 30);
    CHECK(parsed.at("complete") == true);
    REQUIRE(parsed.at("path").size() == 1);
    CHECK(parsed.at("path")[0].at("summand") == 0);
    CHECK(parsed.at("path")[0].at("factor") == 1);

    auto capped = run("--max-dim 60 reduce \"SL(5) x GL(7) : L2*@L1\"");
    CHECK(capped.code == 0);
    CHECK_THAT(capped.out, ContainsSubstring("reduced: SL(5) x GL(3) : L2@L1"));
}

TEST_CASE("verify-catalog filters and reports") {
    auto main_only = run("verify-catalog --filter main-result");
    CHECK(main_only.code == 0);
    CHECK_THAT(main_only.out, ContainsSubstring("pass  main-result:4"));
    CHECK_THAT(main_only.out, ContainsSubstring("passed 7  failed 0  skipped 0"));

    auto none = run("verify-catalog --filter no-such-entry");
    CHECK(none.code == 0);
    CHECK_THAT(none.out, ContainsSubstring("passed 0  failed 0  skipped 0"));

    auto spin = run("verify-catalog --filter Spin");
    CHECK(spin.code == 0);
    CHECK_THAT(spin.out, ContainsSubstring("skip"));
    CHECK_THAT(spin.out, ContainsSubstring("not instantiable"));
}

TEST_CASE("verify-catalog json output is byte-stable") {
    auto a = run("--json verify-catalog --filter table-1");
    auto b = run("--json verify-catalog --filter table-1 --jobs 3");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j.at("total") == 3);
    CHECK(j.at("passed") == 3);
}

TEST_CASE("out flag writes the same bytes as stdout") {
    auto path = std::filesystem::temp_directory_path() / "pvtool_outflag.json";
    auto direct = run("--json check-pv \"GL(2) : 3L1\"");
    auto filed = run("--json --out " + path.string() + " check-pv \"GL(2) : 3L1\"");
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    std::filesystem::remove(path);
}

TEST_CASE("seed flag and environment override agree") {
    auto base = run("check-pv \"GL(2) : 3L1\"");
    auto flag = run("--seed 7 check-pv \"GL(2) : 3L1\"");
    auto env = run("check-pv \"GL(2) : 3L1\"", "env PREHOM_SEED=7 ");
    REQUIRE(base.code == 0);
    REQUIRE(flag.code == 0);
    REQUIRE(env.code == 0);
    CHECK(flag.out == env.out);
    CHECK(flag.out != base.out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("").code == 2);
    CHECK(run("no-such-command").code == 2);
    CHECK(run("check-pv").code == 2);
    CHECK(run("--help").code == 0);
}
