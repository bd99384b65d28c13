// Runs the sqzlab binary end to end on the shipped configs.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(SQZLAB_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string(SQZ_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sqzlab_cli_" + name);
  fs::remove_all(p);
  return p;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

TEST(Cli, ReproduceWritesTableAndSummary) {
  const fs::path out = scratch("reproduce");
  ASSERT_EQ(run("reproduce-paper --config " + config("reproduce.yaml") +
                " --set sampling.n_shots=2000 --out " + out.string()),
            0);
  EXPECT_TRUE(fs::exists(out / "table.csv"));
  const nlohmann::json s = read_json(out / "summary.json");
  EXPECT_EQ(s.at("mode"), "reproduce-paper");
  EXPECT_EQ(s.at("config_hash").get<std::string>().size(), 64u);
  fs::remove_all(out);
}

TEST(Cli, EveryShippedConfigRuns) {
  const std::pair<const char*, const char*> cases[] = {
      {"sweep", "sweep_T.yaml"},       {"sweep", "sweep_gain.yaml"},          {"sweep", "sweep_efficiency.yaml"},
      {"tomography", "tomography.yaml"}, {"trajectory", "trajectory.yaml"}, {"compile", "compile.yaml"},
      {"reproduce-paper", "degraded.yaml"}};
  for (const auto& [mode, file] : cases) {
    const fs::path out = scratch(std::string(mode) + "_" + file);
    EXPECT_EQ(run(std::string(mode) + " --config " + config(file) +
                  " --set sampling.n_shots=2000 --set sampling.samples_per_phase=500 --out " + out.string()),
              0)
        << mode << " " << file;
    EXPECT_TRUE(fs::exists(out / "summary.json")) << file;
    fs::remove_all(out);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("no-such-mode --config " + config("reproduce.yaml")), 2);
  EXPECT_EQ(run("sweep"), 2);
  EXPECT_EQ(run("sweep --config /nonexistent.yaml"), 2);
  EXPECT_EQ(run("compile --config " + config("reproduce.yaml")), 2);  // mode mismatch
  const fs::path out = scratch("singular");
  EXPECT_EQ(run("compile --config " + config("compile.yaml") + " --set 'compile.matrix=[1, 0, 0, 2]' --out " +
                out.string()),
            3);
  fs::remove_all(out);
}

}  // namespace
