#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include <json.hpp>

using Json = nlohmann::json;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Result {
  int code;
  std::string out;
};

std::string env_or(const char* name, const char* fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

const std::string bin = env_or("HOPFKIT_BIN", "hopfkit");
const std::string samples = env_or("HOPFKIT_SAMPLES", HOPFKIT_SAMPLES_DIR);

Result run(const std::string& args) {
  const std::string cmd = "'" + bin + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Json run_json(const std::string& args, int expect_code) {
  const auto r = run(args + " --format json");
  CHECK(r.code == expect_code);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("verify") {
  CHECK(run("verify --algebra en:2 --suite hopf-axioms").code == 0);
  const auto j = run_json("verify --algebra double:group:sym:3 --suite pseudotriangular", 1);
  CHECK(j["schema"] == 1);
  CHECK(j["passed"] == false);
  CHECK(j["reports"][0]["witness"]["location"].get<std::string>().find("δe·(23)") != std::string::npos);
  CHECK(run("verify --algebra group:cyclic:2 --suite hopf-axioms,commutative,cocommutative,triangular").code == 0);
  CHECK(run("verify --algebra group:sym:3 --suite commutative").code == 1);
}

TEST_CASE("en rmatrix") {
  const auto j = run_json("en rmatrix --n 2 --matrix \"1,2;3,4\" --check all", 1);
  std::map<std::string, bool> got;
  for (const auto& r : j["reports"]) got[r["check"]] = r["passed"];
  CHECK(got["quasitriangular"]);
  CHECK(got["pseudotriangular"]);
  CHECK_FALSE(got["triangular"]);
  CHECK_FALSE(got["almost-triangular"]);
  CHECK(run("en rmatrix --n 2 --matrix \"1,2;2,4\" --check all").code == 0);
  CHECK(run("en gn --n 2 --field gf:7 --samples 200").code == 0);
  CHECK(run("en modifgen --n 2 --matrix \"1,2;3,4\" --b \"0,1;1,0\" --c \"2,0;5,1\"").code == 0);
}

TEST_CASE("search-qt") {
  const auto j = run_json("search-qt --algebra group:cyclic:3 --field gf:7", 0);
  CHECK(j["data"]["count"] == 3);
  int non_triangular = 0;
  for (const auto& s : j["data"]["structures"]) {
    CHECK(s["pseudotriangular"] == true);
    non_triangular += s["triangular"] == false;
  }
  CHECK(non_triangular == 2);
  CHECK(run("search-qt --algebra group:cyclic:3 --field q").code == 2);
}

TEST_CASE("yd") {
  const auto j = run_json("yd pseudosym --algebra en:1 --triple H1,H2,H1", 1);
  CHECK(j["data"]["proof_witness"] == "1⊗x1⊗1");
  CHECK(run("yd pseudosym --algebra group:cyclic:2 --triple H1,H2,H1").code == 0);
  CHECK(run("yd pseudosym --algebra en:1 --triple H1,H2").code == 2);
  CHECK(run("yd suite --algebra group:cyclic:2 --family double-braiding --axioms str3").code == 0);
  CHECK(run("yd suite --algebra en:1 --family double-braiding --axioms str3").code == 1);
  CHECK(run("yd replay --algebra en:1 --which commutativity").code == 1);
}

TEST_CASE("twist") {
  const auto f = run_json("twist fedosov", 0);
  CHECK(f["data"]["e1∘e2"] == "e1e2 + e3e4e5e6");
  CHECK(run("twist twm").code == 0);
  const auto l = run_json("twist laycle --algebra group:cyclic:2 --param 3 --module parity", 0);
  CHECK(l["data"]["pure"] == l["data"]["neat"]);
  CHECK(run("twist laycle --algebra en:2 --matrix \"1,2;3,5\" --module adjoint").code == 0);
  const std::string dual = samples + "/dual_numbers.json";
  CHECK(run("twist file --algebra-file " + dual + " --operator " + samples + "/identity_2.json").code == 0);
  CHECK(run("twist file --algebra-file " + dual + " --operator " + samples + "/flip.json").code == 1);
  CHECK(run("twist file --algebra-file " + dual + " --operator " + samples + "/identity_2.json --companion1 " + samples +
            "/identity_3.json --companion2 " + samples + "/identity_3.json")
            .code == 0);
}

TEST_CASE("cohomology") {
  const auto j = run_json("cohomology c2 --field gf:5", 0);
  CHECK(j["data"]["quotient_order"] == 4);
  CHECK(j["data"]["quotient_type"] == "C2×C2");
  CHECK(run("cohomology c2 --field q").code == 2);
}

TEST_CASE("file algebras") {
  CHECK(run("verify --algebra file:" + samples + "/k_c3_gf7.json --field gf:7 --suite hopf-axioms").code == 0);
  const auto j = run_json("verify --algebra file:" + samples + "/broken_coassociativity.json --suite hopf-axioms", 1);
  CHECK(j["passed"] == false);
  CHECK(run("verify --algebra file:" + samples + "/missing.json --suite hopf-axioms").code == 2);
}

TEST_CASE("output is deterministic") {
  for (const char* args : {"en gn --n 2 --field gf:7 --samples 30 --seed 5 --format json",
                           "search-qt --algebra group:cyclic:2 --field gf:5 --format json",
                           "yd pseudosym --algebra en:1 --triple H1,H2,H1 --format json"}) {
    const auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  CHECK(run("en gn --n 2 --field gf:7 --samples 30 --seed 5 --format json").out !=
        run("en gn --n 2 --field gf:7 --samples 30 --seed 6 --format json").out);
}

TEST_CASE("usage errors and help") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("verify --algebra nope:1 --suite hopf-axioms").code == 2);
  CHECK(run("verify --algebra en:1").code == 2);
  CHECK(run("verify --algebra en:1 --suite bogus").code == 2);
  CHECK(run("verify --algebra en:1 --suite hopf-axioms --field gf:4").code == 2);
  CHECK(run("frobnicate").code == 2);
  const auto t = run("verify --algebra en:1 --suite hopf-axioms");
  CHECK_THAT(t.out, ContainsSubstring("result: PASS"));
}
