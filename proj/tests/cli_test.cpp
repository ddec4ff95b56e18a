#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ceub/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ceub_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  CliResult run(const std::string& args) const {
    const std::string cmd = std::string("CEUB_LOG=quiet ") + CEUB_CLI_PATH + " " + args + " >" +
                            path("stdout").string() + " 2>" + path("stderr").string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(path("stdout")), slurp(path("stderr"))};
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  static std::string fixture(const std::string& name) {
    return (fs::path(CEUB_FIXTURES_DIR) / name).string();
  }

  fs::path dir_;
};

const std::string kToyInstance = "toy.instance.json";
const std::string kToyAllocation = "toy.allocation.json";

TEST_F(CliTest, FixturesAreCanonical) {
  using ceub::io::dump;
  using ceub::io::to_json;
  const std::string inst = slurp(fixture(kToyInstance));
  const std::string alloc = slurp(fixture(kToyAllocation));
  EXPECT_EQ(dump(to_json(ceub::io::parse_instance(ceub::io::json::parse(inst)))), inst);
  EXPECT_EQ(dump(to_json(ceub::io::parse_allocation(ceub::io::json::parse(alloc)))), alloc);
}

TEST_F(CliTest, PriceToyAndVerify) {
  const std::string eq = path("toy.eq.json").string();
  ASSERT_EQ(run("price " + fixture(kToyInstance) + " " + fixture(kToyAllocation) + " -o " + eq).code, 0);
  const auto doc = ceub::io::read_json(eq);
  EXPECT_EQ(doc["prices"], ceub::io::json::array({"1"}));
  EXPECT_EQ(doc["budgets"], ceub::io::json::array({"99/100", "1/100"}));
  EXPECT_EQ(doc["verification"]["pass"], true);

  const CliResult ok = run("verify " + fixture(kToyInstance) + " " + fixture(kToyAllocation) + " " + eq);
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("agent 1"), std::string::npos);

  auto edited = doc;
  edited["budgets"][0] = "1";
  write("edited.json", ceub::io::dump(edited));
  const CliResult bad = run("verify " + fixture(kToyInstance) + " " + fixture(kToyAllocation) + " " +
                      path("edited.json").string());
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("agent 0"), std::string::npos);
}

TEST_F(CliTest, NonParetoInputExitsTwo) {
  write("inst.json", R"({"schema": "ceub/instance/v1", "valuations": [["2", "1"], ["1", "2"]]})");
  write("alloc.json",
        R"({"schema": "ceub/allocation/v1", "allocation": [["1/2", "1/2"], ["1/2", "1/2"]]})");
  const CliResult r = run("price " + path("inst.json").string() + " " + path("alloc.json").string() +
                    " -o " + path("eq.json").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("trading cycle"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("eq.json")));
}

TEST_F(CliTest, InputErrorsExitOne) {
  write("inst.json", R"({"schema": "ceub/instance/v1", "valuations": [["1", "1/0"]]})");
  const CliResult malformed = run("maxmin " + path("inst.json").string() + " -o " + path("o.json").string());
  EXPECT_EQ(malformed.code, 1);
  EXPECT_NE(malformed.err.find("valuations[0][1]"), std::string::npos);

  EXPECT_EQ(run("price missing.json " + fixture(kToyAllocation) + " -o x.json").code, 1);
  EXPECT_EQ(run("bogus").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("gen --seed 1 --agents 0 --items 2 -o " + path("g").string()).code, 1);
  EXPECT_EQ(run("gen --seed 1 --agents 2 --items 2 --mode c -o " + path("g").string()).code, 1);
}

TEST_F(CliTest, MaxMin) {
  const std::string out = path("mm.json").string();
  ASSERT_EQ(run("maxmin " + fixture(kToyInstance) + " -o " + out).code, 0);
  EXPECT_EQ(ceub::io::read_json(out)["lambda"], "99/100");

  write("wide.json", R"({"schema": "ceub/instance/v1",
    "valuations": [["3", "1/2", "7", "2", "5"], ["1", "4", "3/2", "6", "2"]]})");
  ASSERT_EQ(run("maxmin " + path("wide.json").string() + " -o " + out).code, 0);
  const auto slow = ceub::io::read_json(out);
  ASSERT_EQ(run("maxmin --fast " + path("wide.json").string() + " -o " + out).code, 0);
  const auto fast = ceub::io::read_json(out);
  EXPECT_EQ(slow["lambda"], fast["lambda"]);
  EXPECT_EQ(fast["method"], "two_agents");
  EXPECT_TRUE(fast.contains("prices"));

  write("square.json", R"({"schema": "ceub/instance/v1",
    "valuations": [["1", "2", "3"], ["3", "2", "1"], ["2", "2", "2"]]})");
  const CliResult r = run("maxmin --fast " + path("square.json").string() + " -o " + out);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("fast path requires n=2 or m=2"), std::string::npos);
}

TEST_F(CliTest, GenIsByteIdenticalAndVerifies) {
  for (const std::string mode : {"a", "b"}) {
    const std::string first = path("first").string();
    const std::string second = path("second").string();
    const std::string common = "gen --seed 17 --agents 4 --items 5 --mode " + mode + " -o ";
    ASSERT_EQ(run(common + first).code, 0);
    ASSERT_EQ(run(common + second).code, 0);
    EXPECT_EQ(slurp(first + ".instance.json"), slurp(second + ".instance.json"));
    EXPECT_EQ(slurp(first + ".allocation.json"), slurp(second + ".allocation.json"));

    const std::string eq = path("eq.json").string();
    ASSERT_EQ(run("price " + first + ".instance.json " + first + ".allocation.json -o " + eq).code, 0);
    const CliResult v = run("verify " + first + ".instance.json " + first + ".allocation.json " + eq);
    EXPECT_EQ(v.code, 0) << v.err;
  }
}

}  // namespace
