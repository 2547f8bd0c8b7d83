#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "swimopt/io.hpp"

using namespace swimopt;

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SWIMOPT_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string config(const std::string& name) { return std::string(SWIMOPT_CONFIGS) + "/" + name; }

fs::path out_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("swimopt_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, OptimizeWritesResult) {
  const fs::path d = out_dir("opt");
  ASSERT_EQ(run("optimize --shape " + config("dumbbell.json") + " --p 8 --out " + d.string() +
                " --alpha 0.15,0.74,0.26,0.53,0.01,0.92 --traj-T 2"),
            0);
  const Json j = read_json_file((d / "result.json").string());
  EXPECT_EQ(j["p"].get<int>(), 8);
  EXPECT_TRUE(j["gait"].contains("W"));
  EXPECT_GT(j["alpha_query"]["power"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(d / "slip.vtk"));
  EXPECT_TRUE(fs::exists(d / "path.csv"));
}

TEST(Cli, CacheReuse) {
  const fs::path d = out_dir("cache");
  const std::string args = "optimize --shape " + config("chiral.json") + " --p 6 --cache --out " + d.string();
  ASSERT_EQ(run(args), 0);
  const Json a = read_json_file((d / "result.json").string());
  ASSERT_EQ(run(args), 0);
  const Json b = read_json_file((d / "result.json").string());
  EXPECT_FALSE(a["cache_hit"].get<bool>());
  EXPECT_TRUE(b["cache_hit"].get<bool>());
  EXPECT_EQ(a["gait"]["power"], b["gait"]["power"]);
}

TEST(Cli, AxisymAndExport) {
  const fs::path d = out_dir("axi");
  EXPECT_EQ(run("axisym --shape " + config("prolate.json") + " --p 8 --cross-check --out " + d.string()), 0);
  EXPECT_TRUE(read_json_file((d / "axisym.json").string())["cross_check"]["passed"].get<bool>());
  EXPECT_EQ(run("export --shape " + config("dumbbell.json") + " --p 6 --out " + d.string()), 0);
  EXPECT_TRUE(fs::exists(d / "matrices.json"));
  EXPECT_TRUE(fs::exists(d / "grid.json"));
  EXPECT_TRUE(fs::exists(d / "fields.vtk"));
}

TEST(Cli, ExitCodes) {
  const std::string o = " --out " + out_dir("codes").string();
  EXPECT_EQ(run("optimize --shape /nonexistent.json" + o), 2);
  EXPECT_EQ(run("optimize --shape " + config("sphere.json") + " --p 2" + o), 2);
  EXPECT_EQ(run("axisym --shape " + config("dumbbell.json") + " --p 8" + o), 2);
  EXPECT_EQ(run("optimize --shape " + config("prolate.json") + " --mode general --p 8" + o), 2);
  EXPECT_EQ(run("optimize --shape " + config("sphere.json") + " --fixed-W 0,0,0" + o), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
  EXPECT_EQ(run("validate --p-list 6 --flow-tol 1e-30" + o), 0);
  EXPECT_EQ(run("validate --p-list 6,16 --flow-tol 1e-30" + o), 4);
}
