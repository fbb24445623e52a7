#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "stabthresh/cli.hpp"

using namespace stabthresh;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "stabthresh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& stem) { return std::string(STABTHRESH_DATA_DIR) + "/" + stem + ".json"; }

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("stabthresh_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

/// Runs the installed executable; returns its exit status and stdout.
std::pair<int, std::string> run_binary(const std::string& args) {
  std::string cmd = std::string(STABTHRESH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::regex kRational(R"(^-?(0|[1-9]\d*)(/[1-9]\d*)?$)");

/// Every string leaf that looks numeric must be a reduced "p/q" with q > 1.
void check_rationals(const Json& j) {
  if (j.is_object() || j.is_array()) {
    for (const auto& x : j) check_rationals(x);
  } else if (j.is_number_float()) {
    FAIL("float in machine-readable output: " << j.dump());
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || !(std::isdigit(static_cast<unsigned char>(s.back())))) return;
    if (s.find_first_not_of("-0123456789/") != std::string::npos) return;
    REQUIRE(std::regex_match(s, kRational));
    CHECK(to_string(parse_rational(s)) == s);
  }
}

}  // namespace

TEST_CASE("toric reports", "[cli]") {
  auto p2 = run({"toric", "--input", data("p2")});
  REQUIRE(p2.code == 0);
  auto j = Json::parse(p2.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["delta"] == "1");
  CHECK(j["verdict"] == "K-semistable");
  CHECK(j["argmin_ray"]["index"] == 0);
  check_rationals(j);

  auto bl = run({"toric", "--input", data("bl1p2"), "--format", "json"});
  REQUIRE(bl.code == 0);
  j = Json::parse(bl.out);
  CHECK(j["delta"] == "6/7");
  CHECK(j["verdict"] == "K-unstable");
  CHECK(j["barycenter"] == Json::array({"1/12", "1/12"}));
  CHECK(j["rays"][3]["a"] == "7/6");
  CHECK(j["argmin_ray"]["ray"] == Json::array({"1", "1"}));
  CHECK(j["polytope"]["vertices"].size() == 4);
  check_rationals(j);
}

TEST_CASE("non-anticanonical toric data report an equivariant threshold", "[cli]") {
  auto path = write_temp("rect.json", R"({"kind":"toric","dim":2,"rays":[["1","0"],["0","1"],["-1","0"],["0","-1"]],"coeffs":["1","2","1","2"]})");
  auto r = run({"toric", "--input", path});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["threshold"] == "equivariant_threshold");
  CHECK(j["delta"] == "1/2");
  CHECK(j["verdict"] == "inapplicable");
}

TEST_CASE("spherical reports", "[cli]") {
  auto p2 = run({"spherical", "--input", data("p2_spherical")});
  REQUIRE(p2.code == 0);
  CHECK(Json::parse(p2.out)["delta_G"] == "1");

  auto bl = run({"spherical", "--input", data("bl1p2_spherical")});
  REQUIRE(bl.code == 0);
  auto j = Json::parse(bl.out);
  CHECK(j["delta_G"] == "6/7");
  CHECK(j["argmin"] == "X3");
  CHECK(j["DB_coeffs"]["X2"] == "5/6");
  CHECK(j["verdict"] == "K-unstable");
  check_rationals(j);

  auto sl2 = run({"spherical", "--input", data("sl2_segment")});
  REQUIRE(sl2.code == 0);
  j = Json::parse(sl2.out);
  CHECK(j["verdict"] == "inapplicable");
  CHECK(j["lambda_bar"] == Json::array({"4/3"}));

  // toric input runs through its spherical encoding
  auto enc = run({"spherical", "--input", data("bl1p2")});
  REQUIRE(enc.code == 0);
  CHECK(enc.out == bl.out);
}

TEST_CASE("infinite thresholds are rendered as inf", "[cli]") {
  auto path = write_temp("flat.json", R"({"kind":"spherical","rank":1,"anticanonical":true,
    "moment_polytope":{"vertices":[["0"],["2"]]},"base_weight":["4/3"],"lattice_shift":["0"],
    "divisors":[],"density":[{"coroot":["1"],"rho_pairing":"1"}],
    "candidates":[{"name":"v","rho":["1"],"A_X":"1","v_of_D0":"0"}]})");
  auto r = run({"spherical", "--input", path});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["delta_G"] == "inf");
  CHECK(j["argmin"].is_null());
  CHECK(j["candidates"][0]["ratio"] == "inf");
}

TEST_CASE("convergence tables", "[cli]") {
  auto bl = run({"convergence", "--input", data("bl1p2"), "--m", "1..10"});
  REQUIRE(bl.code == 0);
  std::vector<std::string> lines;
  std::istringstream in(bl.out);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "m,bar_0,bar_1,delta_m,delta_limit");
  CHECK(lines[1] == "1,1/9,1/9,9/11,6/7");
  CHECK(lines[11] == "limit,1/12,1/12,6/7,6/7");

  auto p2 = run({"convergence", "--input", data("p2"), "--m", "3..9"});
  REQUIRE(p2.code == 0);
  std::istringstream p2in(p2.out);
  std::string line;
  std::getline(p2in, line);
  int rows = 0;
  while (std::getline(p2in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 5);
    CHECK(cells[3] == "1");
  }
  CHECK(rows == 8);

  auto csv = std::filesystem::temp_directory_path() / "stabthresh_test_conv.csv";
  auto to_file = run({"convergence", "--input", data("sl2_segment"), "--m", "1..4", "--csv", csv.string()});
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream f(csv);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "m,bar_0,delta_m,delta_limit\n1,4/3,3/2,3/2\n2,4/3,3/2,3/2\n3,4/3,3/2,3/2\n4,4/3,3/2,3/2\n"
                    "limit,4/3,3/2,3/2\n");
}

TEST_CASE("level ranges", "[cli]") {
  CHECK(cli::parse_m_range("1..10") == std::pair<unsigned, unsigned>{1, 10});
  CHECK(cli::parse_m_range("7") == std::pair<unsigned, unsigned>{7, 7});
  CHECK(cli::parse_m_range("200..200") == std::pair<unsigned, unsigned>{200, 200});
  for (auto bad : {"0..3", "5..3", "1..201", "", "a..b", "1...3", "-1..2"})
    CHECK_THROWS_AS(cli::parse_m_range(bad), Error);

  CHECK(run({"convergence", "--input", data("bl1p2"), "--m", "5..3"}).code == 2);
  CHECK(run({"convergence", "--input", data("bl1p2")}).code == 2);
  CHECK(run({"convergence", "--input", data("bl1p2"), "--m", "0..2"}).code == 2);
}

TEST_CASE("input errors exit with 2 and a JSON error object", "[cli]") {
  auto missing = run({"toric", "--input", "/nonexistent/datum.json"});
  CHECK(missing.code == 2);
  CHECK(Json::parse(missing.err)["error"] == "IoError");

  auto malformed = run({"toric", "--input", write_temp("bad.json", "{\"kind\": \"toric\", ")});
  CHECK(malformed.code == 2);
  auto e = Json::parse(malformed.err);
  CHECK(e["error"] == "ParseError");
  CHECK(e["field"] == "input");

  auto bad_ray = run({"toric", "--input", write_temp("badray.json", R"({"kind":"toric","dim":2,"rays":[["1","0"],["0","x"],["-1","-1"]],"coeffs":["1","1","1"]})")});
  CHECK(bad_ray.code == 2);
  CHECK(Json::parse(bad_ray.err)["field"] == "rays[1][1]");

  auto no_rays = run({"toric", "--input", write_temp("norays.json", R"({"kind":"toric","dim":2,"coeffs":[]})")});
  CHECK(no_rays.code == 2);
  CHECK(Json::parse(no_rays.err)["field"] == "rays");

  auto floats = run({"toric", "--input", write_temp("float.json", R"({"kind":"toric","dim":1,"rays":[[1],[-1]],"coeffs":[1.5,1]})")});
  CHECK(floats.code == 2);
  CHECK(Json::parse(floats.err)["field"] == "coeffs[0]");

  auto wrong_kind = run({"toric", "--input", data("sl2_segment")});
  CHECK(wrong_kind.code == 2);
  CHECK(Json::parse(wrong_kind.err)["field"] == "kind");

  auto unbounded = run({"toric", "--input", write_temp("unb.json", R"({"kind":"toric","dim":2,"rays":[[1,0],[0,1]],"coeffs":[1,1]})")});
  CHECK(unbounded.code == 2);

  CHECK(run({"toric"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"toric", "--input", data("p2"), "--format", "yaml"}).code == 2);
}

TEST_CASE("unexpected failures exit with 1", "[cli]") {
  std::ostringstream err;
  int code = cli::detail::guarded(err, []() -> int { throw std::logic_error("boom"); });
  CHECK(code == 1);
  CHECK(Json::parse(err.str())["error"] == "InternalError");
}

TEST_CASE("text output and colour", "[cli]") {
  ::unsetenv("STABTHRESH_NO_COLOR");
  auto colored = run({"toric", "--input", data("bl1p2"), "--format", "text"});
  REQUIRE(colored.code == 0);
  CHECK(colored.out.find("\x1b[") != std::string::npos);
  CHECK(colored.out.find("6/7") != std::string::npos);

  ::setenv("STABTHRESH_NO_COLOR", "1", 1);
  auto plain = run({"toric", "--input", data("bl1p2"), "--format", "text"});
  CHECK(plain.out.find('\x1b') == std::string::npos);
  auto sph = run({"spherical", "--input", data("sl3_triangle"), "--format", "text"});
  CHECK(sph.code == 0);
  CHECK(sph.out.find('\x1b') == std::string::npos);
  ::unsetenv("STABTHRESH_NO_COLOR");
}

TEST_CASE("reports are byte-stable", "[cli]") {
  for (const auto& entry : std::filesystem::directory_iterator(STABTHRESH_DATA_DIR)) {
    const auto path = entry.path().string();
    INFO(path);
    const bool toric = Json::parse(std::ifstream(path))["kind"] == "toric";
    for (auto format : {"json", "text"}) {
      auto a = run({toric ? "toric" : "spherical", "--input", path, "--format", format});
      auto b = run({toric ? "toric" : "spherical", "--input", path, "--format", format});
      REQUIRE(a.code == 0);
      CHECK(a.out == b.out);
    }
  }
}

TEST_CASE("check suites", "[cli][slow]") {
  auto def = run({"check"});
  CHECK(def.code == 0);
  auto j = Json::parse(def.out);
  CHECK(j["failed"] == 0);
  CHECK(j["seed"] == cli::kDefaultSeed);
  CHECK(j["runs"].size() == 9);

  auto a = run({"check", "--seed", "42", "--format", "text"});
  auto b = run({"check", "--seed", "42", "--format", "text"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("failed 0") != std::string::npos);
}

TEST_CASE("the executable honours the exit-code contract", "[cli][process]") {
  auto [ok, out] = run_binary("toric --input " + data("bl1p2"));
  CHECK(ok == 0);
  CHECK(Json::parse(out)["delta"] == "6/7");
  CHECK(run_binary("toric --input /nonexistent.json").first == 2);
  CHECK(run_binary("toric --input " + write_temp("proc_bad.json", "not json")).first == 2);
  CHECK(run_binary("convergence --input " + data("p2") + " --m 4..2").first == 2);
  CHECK(run_binary("--help").first == 0);

  auto [c1, o1] = run_binary("spherical --input " + data("bl2p2_spherical"));
  auto [c2, o2] = run_binary("spherical --input " + data("bl2p2_spherical"));
  CHECK(c1 == 0);
  CHECK(o1 == o2);
}
