#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "swimopt/errors.hpp"
#include "swimopt/trajectory.hpp"

using namespace swimopt;

TEST(Trajectory, Classification) {
  EXPECT_EQ(net_velocity(Vec3::Zero(), Vec3::Zero()).cls, MotionClass::rest);
  EXPECT_EQ(net_velocity(Vec3(1, 0, 0), Vec3::Zero()).cls, MotionClass::pure_translation);
  EXPECT_EQ(net_velocity(Vec3(0, 0, 1), Vec3(0, 0, 2)).cls, MotionClass::spinning_straight);
  EXPECT_EQ(net_velocity(Vec3(1, 0, 0), Vec3(0, 0, 1)).cls, MotionClass::circular);
  EXPECT_EQ(net_velocity(Vec3(1, 0, 1), Vec3(0, 0, 1)).cls, MotionClass::helical);
}

TEST(Trajectory, HelixGeometry) {
  // W along e3, spin s, drift V perpendicular: radius |V|/|s|, pitch 2 pi |W| / |s| |W|.
  const HelixGeometry h = helix_geometry(0.5, Vec3(0.2, 0, 0), Vec3(0, 0, 2));
  EXPECT_NEAR(h.period, 2 * std::numbers::pi / 1.0, 1e-12);
  EXPECT_NEAR(h.pitch, 2.0 * h.period, 1e-12);
  EXPECT_NEAR(h.radius, 0.2 / 1.0, 1e-12);
  EXPECT_FALSE(h.straight);
  EXPECT_TRUE(helix_geometry(0.0, Vec3::Zero(), Vec3(1, 0, 0)).straight);
}

TEST(Trajectory, Rk4MatchesClosedForm) {
  const Vec3 U(0.3, 0.8, 0.5), Om(0.1, -0.25, -0.2);
  const double period = 2 * std::numbers::pi / Om.norm();
  const auto path = integrate_path(U, Om, 2 * period, period / 1000);
  EXPECT_NEAR(path.back().t, 2 * period, 1e-12);
  EXPECT_LT(path_deviation(path, U, Om), 1e-9);
  for (const auto& s : path) EXPECT_NEAR(s.q.norm(), 1.0, 1e-14);
}

TEST(Trajectory, PureTranslationIsExact) {
  const auto path = integrate_path(Vec3(1, 2, 3), Vec3::Zero(), 1.0, 0.3);
  EXPECT_EQ(path.size(), 5u);
  EXPECT_LT((path.back().x - Vec3(1, 2, 3)).norm(), 1e-14);
}

TEST(Trajectory, RejectsBadSteps) {
  EXPECT_THROW(integrate_path(Vec3(1, 0, 0), Vec3::Zero(), 1.0, 0.0), ConfigError);
  EXPECT_THROW(integrate_path(Vec3(1, 0, 0), Vec3::Zero(), -1.0, 0.1), ConfigError);
}

TEST(Trajectory, CsvOutput) {
  const auto path = integrate_path(Vec3(1, 0, 0), Vec3(0, 0, 1), 1.0, 0.5);
  const std::string f = (std::filesystem::temp_directory_path() / "swimopt_path_test.csv").string();
  write_path_csv(f, path);
  std::ifstream in(f);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x,y,z,qw,qx,qy,qz");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, static_cast<int>(path.size()));
}
