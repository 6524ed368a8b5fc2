#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <regex>

#include "handmenu/config.hpp"
#include "handmenu/framesource.hpp"
#include "support/scenario.hpp"

namespace handmenu {
namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(HANDMENU_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::temp_dir("cli"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, CheckConfigPrintsNormalizedJson) {
  const auto path = write("ok.json", R"({"dwell_ms": 900, "menu": "default"})");
  const Result r = run_cli("check-config " + path);
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dwell_ms"], 900);
  EXPECT_EQ(j, PipelineConfig::parse(R"({"dwell_ms": 900})").to_json());
}

TEST_F(CliTest, CheckConfigRejectsBadFiles) {
  EXPECT_NE(run_cli("check-config " + write("bad.json", R"({"dwell_ms": -1})")).status, 0);
  EXPECT_NE(run_cli("check-config " + write("unknown.json", R"({"speed": 1})")).status, 0);
  EXPECT_NE(run_cli("check-config " + (dir_ / "missing.json").string()).status, 0);
  EXPECT_NE(run_cli("frobnicate").status, 0);
}

TEST_F(CliTest, RunDumpsOneFramePerProcessedFrame) {
  SyntheticScript s;
  s.width = 160;
  s.height = 120;
  s.fps = 30;
  s.duration_ms = 500;
  s.keyframes = {Keyframe{0, {0.5, 0.5}, 12, {0, 255, 0}}};
  const auto script = write("script.json", s.to_json());
  const auto out_dir = dir_ / "frames";
  const Result r = run_cli("run --headless --source synthetic:" + script + " --dump-frames " + out_dir.string());
  ASSERT_EQ(r.status, 0);
  std::size_t count = 0;
  for (const auto& e : std::filesystem::directory_iterator(out_dir)) {
    EXPECT_TRUE(std::regex_match(e.path().filename().string(), std::regex(R"(frame_\d{6}\.ppm)")));
    ++count;
  }
  EXPECT_EQ(count, s.frame_count());
  EXPECT_TRUE(std::filesystem::exists(out_dir / "frame_000014.ppm"));
}

TEST_F(CliTest, RunWithMissingSourceFails) {
  EXPECT_NE(run_cli("run --headless --source dir:" + (dir_ / "nothing").string()).status, 0);
  EXPECT_NE(run_cli("run --headless --source nonsense").status, 0);
}

TEST_F(CliTest, BenchPrintsStageTable) {
  const Result r = run_cli("bench --frames 20 --size 160x120");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("p50_ms"), std::string::npos);
  EXPECT_NE(r.out.find("p95_ms"), std::string::npos);
  for (const char* stage : {"blur", "hsv_threshold", "blobs", "gesture", "total", "render"}) {
    EXPECT_TRUE(std::regex_search(r.out, std::regex(std::string("\\n") + stage + R"(\s+\d+\.\d+\s+\d+\.\d+)")))
        << stage << "\n" << r.out;
  }
  EXPECT_NE(run_cli("bench --size 12").status, 0);
}

}  // namespace
}  // namespace handmenu
