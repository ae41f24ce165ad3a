#include "stickbound/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace stickbound;
namespace fs = std::filesystem;

namespace {

const std::string kSamples = STICKBOUND_SAMPLES;
const std::string kTrefoil = kSamples + "/trefoil.arc";
const std::string kUnknot = kSamples + "/unknot3.arc";
const std::string kMalformed = kSamples + "/malformed.arc";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("stickbound_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~EnvGuard() { ::unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(CliBuild, TrefoilJson) {
  CliRun r = run({"build", kTrefoil});
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["sticks"], 6);
  EXPECT_EQ(j["bound"], "6");
  EXPECT_EQ(j["bound_num"], 12);
  EXPECT_EQ(j["bound_satisfied"], true);
  EXPECT_EQ(j["top_reduction"], "applied");
  EXPECT_EQ(j["invariants_match"], true);
  EXPECT_EQ(j["determinant"], 3);
  EXPECT_EQ(j["beta"], nlohmann::json::array({2, 1, 2}));
  EXPECT_EQ(j["shift"], 0);
  EXPECT_EQ(j["vertices"].size(), j["edge_roles"].size());
  for (const auto& v : j["vertices"]) {
    ASSERT_EQ(v.size(), 3u);
    for (const auto& x : v) EXPECT_TRUE(x.is_string());
  }
}

TEST(CliBuild, KeyOrderIsFixed) {
  CliRun r = run({"build", kUnknot});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "shift", "beta", "sticks", "bound_num", "bound",
                                            "bound_satisfied", "top_reduction", "vertices",
                                            "edge_roles", "invariants_match", "determinant"}));
  EXPECT_EQ(j["sticks"], 3);
  EXPECT_EQ(j["determinant"], 1);
}

TEST(CliBuild, MalformedInputExitsOne) {
  CliRun r = run({"build", kMalformed});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
  EXPECT_EQ(run({"build", kSamples + "/does_not_exist.arc"}).code, 1);
  EXPECT_EQ(run({"build"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(CliBuild, InvalidPresentationExitsOne) {
  TempDir dir;
  write_file(dir / "bad.arc", "3\n1 1\n2 3\n2 3\n");
  CliRun r = run({"build", dir / "bad.arc"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("degenerate"), std::string::npos) << r.err;
  write_file(dir / "two.arc", "2\n1 2\n1 2\n");
  EXPECT_EQ(run({"build", dir / "two.arc"}).code, 1);
}

TEST(CliBuild, WritesFilesAndObj) {
  TempDir dir;
  CliRun r = run({"build", kTrefoil, "--out", dir / "t.json", "--obj", dir / "t.obj"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto j = nlohmann::json::parse(read_file(dir / "t.json"));
  std::string obj = read_file(dir / "t.obj");
  std::size_t vlines = 0;
  std::istringstream in(obj);
  std::string line, last;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++vlines;
    last = line;
  }
  EXPECT_EQ(vlines, j["vertices"].size());
  std::string expect = "l";
  for (std::size_t k = 1; k <= vlines; ++k) expect += " " + std::to_string(k);
  expect += " 1";
  EXPECT_EQ(last, expect);
}

TEST(CliBuild, NoTopReduction) {
  CliRun r = run({"build", kTrefoil, "--no-top-reduction"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["sticks"], 8);
  EXPECT_EQ(j["bound_satisfied"], false);
  EXPECT_EQ(j["top_reduction"], "skipped:disabled");
}

TEST(CliBuild, ExtensionCapFromEnvironment) {
  {
    EnvGuard env(kMaxExtensionEnv, "2");
    CliRun r = run({"build", kTrefoil});
    EXPECT_EQ(r.code, 2);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["sticks"], 8);
    EXPECT_EQ(j["top_reduction"].get<std::string>().rfind("skipped:", 0), 0u);
  }
  {
    EnvGuard env(kMaxExtensionEnv, "lots");
    EXPECT_EQ(run({"build", kTrefoil}).code, 1);
  }
  {
    EnvGuard env(kMaxExtensionEnv, "65536");
    EXPECT_EQ(run({"build", kTrefoil}).code, 0);
  }
}

TEST(CliBuild, Deterministic) {
  EXPECT_EQ(run({"build", kTrefoil}).out, run({"build", kTrefoil}).out);
}

TEST(CliVerify, RoundTrip) {
  TempDir dir;
  ASSERT_EQ(run({"build", kTrefoil, "--out", dir / "t.json"}).code, 0);
  CliRun r = run({"verify", kTrefoil, dir / "t.json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("invariants: consistent"), std::string::npos);
}

TEST(CliVerify, WrongKnotExitsThree) {
  TempDir dir;
  ASSERT_EQ(run({"build", kUnknot, "--out", dir / "u.json"}).code, 0);
  CliRun r = run({"verify", kTrefoil, dir / "u.json"});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(CliVerify, SelfIntersectionExitsTwo) {
  TempDir dir;
  ASSERT_EQ(run({"build", kTrefoil, "--out", dir / "t.json"}).code, 0);
  auto j = nlohmann::json::parse(read_file(dir / "t.json"));
  // Move vertex 3 onto the midpoint of edge 1 (vertices 1 -> 2).
  Rational mx = (parse_rational(j["vertices"][0][0].get<std::string>()) +
                 parse_rational(j["vertices"][1][0].get<std::string>())) / 2;
  Rational my = (parse_rational(j["vertices"][0][1].get<std::string>()) +
                 parse_rational(j["vertices"][1][1].get<std::string>())) / 2;
  Rational mz = (parse_rational(j["vertices"][0][2].get<std::string>()) +
                 parse_rational(j["vertices"][1][2].get<std::string>())) / 2;
  j["vertices"][3] = {to_string(mx), to_string(my), to_string(mz)};
  write_file(dir / "bad.json", j.dump());
  CliRun r = run({"verify", kTrefoil, dir / "bad.json"});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_NE(r.err.find("not embedded"), std::string::npos) << r.err;
}

TEST(CliVerify, StickCountAndBoundFailuresExitTwo) {
  TempDir dir;
  ASSERT_EQ(run({"build", kTrefoil, "--out", dir / "t.json"}).code, 0);
  auto j = nlohmann::json::parse(read_file(dir / "t.json"));
  j["sticks"] = 5;
  write_file(dir / "count.json", j.dump());
  EXPECT_EQ(run({"verify", kTrefoil, dir / "count.json"}).code, 2);

  ASSERT_EQ(run({"build", kTrefoil, "--no-top-reduction", "--out", dir / "k.json"}).code, 0);
  CliRun r = run({"verify", kTrefoil, dir / "k.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bound"), std::string::npos) << r.err;
}

TEST(CliVerify, MalformedJsonExitsOne) {
  TempDir dir;
  write_file(dir / "x.json", "{ not json");
  EXPECT_EQ(run({"verify", kTrefoil, dir / "x.json"}).code, 1);
  write_file(dir / "y.json", R"({"vertices": [["1", "2"]]})");
  EXPECT_EQ(run({"verify", kTrefoil, dir / "y.json"}).code, 1);
  write_file(dir / "z.json", R"({"vertices": [["1", "2", "1/0"]]})");
  EXPECT_EQ(run({"verify", kTrefoil, dir / "z.json"}).code, 1);
  EXPECT_EQ(run({"verify", kMalformed, dir / "x.json"}).code, 1);
}

TEST(CliSimplify, TriangleCollapses) {
  CliRun r = run({"simplify", kUnknot});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_arc(r.out), (ArcPresentation{{{1, 2}, {2, 1}}}));
  CliRun t = run({"simplify", kTrefoil});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(parse_arc(t.out), parse_arc(read_file(kTrefoil)));
}

TEST(CliSimplify, PreservesInvariantsOnRandomInput) {
  TempDir dir;
  for (std::uint64_t s = 0; s < 20; ++s) {
    ArcPresentation ap = random_presentation(7, s);
    write_file(dir / "in.arc", serialize_arc(ap));
    CliRun r = run({"simplify", dir / "in.arc", "--out", dir / "out.arc"});
    ASSERT_EQ(r.code, 0) << r.err;
    ArcPresentation small = read_arc(dir / "out.arc");
    EXPECT_LE(small.n(), ap.n());
    EXPECT_TRUE(match(diagram(ap), diagram(small)).consistent);
  }
}

TEST(CliRandom, ReproducibleFiles) {
  TempDir a, b;
  ASSERT_EQ(run({"random", "--n", "8", "--seed", "42", "--count", "10", "--out", a.path().string()}).code, 0);
  ASSERT_EQ(run({"random", "--n", "8", "--seed", "42", "--count", "10", "--out", b.path().string()}).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a.path())) {
    ++files;
    std::string name = e.path().filename().string();
    ArcPresentation ap = read_arc(e.path().string());
    EXPECT_EQ(ap.n(), 8u);
    EXPECT_TRUE(validate(ap).ok());
    EXPECT_EQ(read_file(e.path().string()), read_file(b / name));
  }
  EXPECT_EQ(files, 10u);
  EXPECT_EQ(read_file(a / "random_n8_s42.arc"), serialize_arc(random_presentation(8, 42)));
}

TEST(CliRandom, StdoutAndErrors) {
  CliRun r = run({"random", "--n", "6", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_arc(r.out), random_presentation(6, 3));
  EXPECT_EQ(run({"random", "--n", "6", "--count", "3"}).code, 1);
  EXPECT_EQ(run({"random", "--n", "1"}).code, 1);
  EXPECT_EQ(run({"random"}).code, 1);
}

TEST(CliBatch, RandomFilesAllSatisfied) {
  TempDir dir;
  ASSERT_EQ(run({"random", "--n", "8", "--seed", "42", "--count", "10", "--out", dir / "arcs"}).code, 0);
  CliRun r = run({"batch", dir / "arcs", "--csv", dir / "out.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(read_file(dir / "out.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kBatchHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    ASSERT_GE(f.size(), 13u);
    EXPECT_EQ(f[1], "8");
    EXPECT_EQ(f[8], "true") << line;
    EXPECT_EQ(f[10], "true") << line;
    EXPECT_EQ(f[11], "true") << line;
  }
  EXPECT_EQ(rows, 10u);
}

TEST(CliBatch, GeneratedInstancesCarrySeeds) {
  CliRun r = run({"batch", "--n", "6", "--seed", "100", "--count", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("random_n6_s100,6,", 0), 0u) << line;
  EXPECT_EQ(line.substr(line.rfind(',') + 1), "100");
}

TEST(CliBatch, BadFileGetsRowAndExitOne) {
  CliRun r = run({"batch", kTrefoil, kMalformed, kUnknot});
  EXPECT_EQ(r.code, 1);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[1].rfind("trefoil,5,2,1,2,0,6,6,true,applied,true,true,3,", 0), 0u) << lines[1];
  EXPECT_NE(lines[2].find("error:invalid-input"), std::string::npos);
  EXPECT_EQ(lines[3].rfind("unknot3,3,", 0), 0u);
}

TEST(CliBounds, Table) {
  CliRun r = run({"bounds", "--cmin", "3", "--cmax", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  std::istringstream row(lines[1]);
  std::string c, a, lower, approx, ceil, upper, huh;
  row >> c >> a >> lower >> approx >> ceil >> upper >> huh;
  EXPECT_EQ(c, "3");
  EXPECT_EQ(a, "5");
  EXPECT_EQ(lower, "(5+sqrt(33))/2");
  EXPECT_EQ(approx, "5.372");
  EXPECT_EQ(ceil, "6");
  EXPECT_EQ(upper, "6");
  EXPECT_EQ(huh, "6");
}

TEST(CliBounds, CsvAndFlags) {
  TempDir dir;
  ASSERT_EQ(run({"bounds", "--cmin", "3", "--cmax", "4", "--nonalternating-prime", "--csv", dir / "b.csv"}).code, 0);
  EXPECT_EQ(read_file(dir / "b.csv"),
            "c,a_upper,negami_lower,negami_lower_approx,negami_lower_ceil,negami_upper,huh_oh_upper\n"
            "3,4,(5+sqrt(33))/2,5.372,6,6,9/2\n"
            "4,5,(5+sqrt(41))/2,5.702,6,8,6\n");
  EXPECT_EQ(run({"bounds", "--cmin", "2", "--cmax", "4"}).code, 1);
  EXPECT_EQ(run({"bounds", "--cmin", "5", "--cmax", "4"}).code, 1);
}

TEST(CliHelp, ExitsZero) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("build"), std::string::npos);
  EXPECT_EQ(run({"build", "--help"}).code, 0);
}
