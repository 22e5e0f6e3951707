#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "weylfluid/weylfluid.h"

namespace {

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(CApi, VersionAndArguments) {
  EXPECT_STRNE(wf_version(), "");
  wf_config* cfg = nullptr;
  EXPECT_EQ(wf_config_parse(nullptr, &cfg), WF_ERR_ARGUMENT);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_STRNE(wf_last_error(), "");
  EXPECT_EQ(wf_verify(nullptr, nullptr), WF_ERR_ARGUMENT);
  wf_config_free(nullptr);
  wf_report_free(nullptr);
  wf_string_free(nullptr);
}

TEST(CApi, ConfigErrors) {
  wf_config* cfg = nullptr;
  EXPECT_EQ(wf_config_parse("[fluid]\nviscosity = 2\n", &cfg), WF_ERR_CONFIG);
  EXPECT_NE(std::string(wf_last_error()).find("viscosity"), std::string::npos);
  ASSERT_EQ(wf_config_default(&cfg), WF_OK);
  EXPECT_EQ(wf_config_set(cfg, "spacetime.dim", "7"), WF_ERR_CONFIG);
  EXPECT_EQ(wf_config_set(cfg, "run.suites", "nothing"), WF_ERR_CONFIG);
  EXPECT_EQ(wf_config_set(cfg, "run.format", "table"), WF_OK);
  EXPECT_STREQ(wf_config_format(cfg), "table");
  EXPECT_STREQ(wf_config_output(cfg), "");
  wf_config_free(cfg);
  EXPECT_EQ(wf_config_load_file("/nonexistent/file.ini", &cfg), WF_ERR_CONFIG);
}

TEST(CApi, VerifyRenderWriteAndLoad) {
  wf_config* cfg = nullptr;
  ASSERT_EQ(wf_config_parse("[run]\npreset = minkowski-dust-rest\nsuites = connection, fluid\n", &cfg), WF_OK);
  wf_report* rep = nullptr;
  ASSERT_EQ(wf_verify(cfg, &rep), WF_OK);
  EXPECT_EQ(wf_report_passed(rep), 1);
  const size_t n = wf_report_check_count(rep);
  ASSERT_GT(n, 0u);
  const char* name = nullptr;
  const char* anchor = nullptr;
  int has = 0, pass = 0;
  double res = -1.0, tol = 0.0;
  ASSERT_EQ(wf_report_check(rep, 0, &name, &anchor, &has, &res, &tol, &pass), WF_OK);
  EXPECT_STREQ(name, "levi-civita-metricity");
  EXPECT_EQ(has, 1);
  EXPECT_EQ(pass, 1);
  EXPECT_LE(res, tol);
  EXPECT_EQ(wf_report_check(rep, n, &name, &anchor, &has, &res, &tol, &pass), WF_ERR_ARGUMENT);

  char* json = nullptr;
  ASSERT_EQ(wf_report_render(rep, "json", &json), WF_OK);
  const std::string text(json);
  wf_string_free(json);
  EXPECT_EQ(text.front(), '{');
  char* bad = nullptr;
  EXPECT_EQ(wf_report_render(rep, "yaml", &bad), WF_ERR_CONFIG);

  const std::string path = temp_path("weylfluid_capi_report.json");
  ASSERT_EQ(wf_report_write(rep, path.c_str(), "json"), WF_OK);
  wf_report* loaded = nullptr;
  ASSERT_EQ(wf_report_load_file(path.c_str(), &loaded), WF_OK);
  char* again = nullptr;
  ASSERT_EQ(wf_report_render(loaded, "json", &again), WF_OK);
  EXPECT_EQ(text, std::string(again));
  wf_string_free(again);
  wf_report_free(loaded);
  std::remove(path.c_str());
  EXPECT_EQ(wf_report_write(rep, "/nonexistent/dir/r.json", "json"), WF_ERR_IO);
  EXPECT_EQ(wf_report_load_file("/nonexistent/dir/r.json", &loaded), WF_ERR_IO);

  wf_report_free(rep);
  wf_config_free(cfg);
}

TEST(CApi, FailingChecksStatus) {
  wf_config* cfg = nullptr;
  ASSERT_EQ(wf_config_parse("[run]\npreset = flrw-comoving-dust\nsuites = conformal\n[conformal]\nweight_override = -4\n",
                            &cfg),
            WF_OK);
  wf_report* rep = nullptr;
  EXPECT_EQ(wf_verify(cfg, &rep), WF_CHECKS_FAILED);
  ASSERT_NE(rep, nullptr);
  EXPECT_EQ(wf_report_passed(rep), 0);
  wf_report_free(rep);
  wf_config_free(cfg);
}

TEST(CApi, GeodesicExport) {
  wf_config* cfg = nullptr;
  ASSERT_EQ(wf_config_parse("[run]\npreset = minkowski-dust-rest\n", &cfg), WF_OK);
  const std::string path = temp_path("weylfluid_capi_ray.csv");
  const double x0[4] = {0.0, 0.0, 0.0, 0.0};
  const double dir[4] = {0.0, 1.0, 0.0, 0.0};
  ASSERT_EQ(wf_geodesic_export(cfg, "null", x0, dir, 4, 0.5, path.c_str()), WF_OK) << wf_last_error();
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "s,t,x,y,z,dt,dx,dy,dz");
  std::remove(path.c_str());
  EXPECT_EQ(wf_geodesic_export(cfg, "spacelike", x0, dir, 4, 0.5, path.c_str()), WF_ERR_CONFIG);
  EXPECT_EQ(wf_geodesic_export(cfg, "null", x0, dir, 3, 0.5, path.c_str()), WF_ERR_CONFIG);
  wf_config_free(cfg);
}
