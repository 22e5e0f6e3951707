#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylfluid/weylfluid.h"

namespace {

int exit_code(wf_status s) {
  switch (s) {
    case WF_OK: return 0;
    case WF_CHECKS_FAILED: return 1;
    case WF_ERR_CONFIG:
    case WF_ERR_ARGUMENT: return 2;
    default: return 3;
  }
}

int report_error(wf_status s) {
  std::fprintf(stderr, "weylfluid: %s\n", wf_last_error());
  return exit_code(s);
}

struct CommonOptions {
  std::string config;
  std::vector<std::string> suites;
  long long seed = -1;
  std::string out;
  std::string format;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Configuration file (INI)");
    app->add_option("--seed", seed, "Seed for sampling and seeded presets")->check(CLI::NonNegativeNumber);
    app->add_option("--out", out, "Output path");
    app->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));
    app->add_option("--set", sets, "Override a config value, section.key=value");
  }
};

/// Loads the config and applies flag overrides; flags win over the file.
wf_status load(const CommonOptions& o, wf_config** cfg) {
  wf_status s = o.config.empty() ? wf_config_default(cfg) : wf_config_load_file(o.config.c_str(), cfg);
  if (s != WF_OK) return s;
  auto set = [&](const std::string& key, const std::string& value) {
    return s == WF_OK ? (s = wf_config_set(*cfg, key.c_str(), value.c_str())) : s;
  };
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "weylfluid: --set expects section.key=value, got '%s'\n", kv.c_str());
      s = WF_ERR_ARGUMENT;
      break;
    }
    set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.suites.empty()) {
    std::string joined;
    for (const std::string& x : o.suites) joined += (joined.empty() ? "" : ",") + x;
    set("run.suites", joined);
  }
  if (o.seed >= 0) set("run.seed", std::to_string(o.seed));
  if (!o.out.empty()) set("run.output", o.out);
  if (!o.format.empty()) set("run.format", o.format);
  if (s != WF_OK) {
    wf_config_free(*cfg);
    *cfg = nullptr;
  }
  return s;
}

int emit(const wf_report* report, const std::string& path, const std::string& format) {
  if (!path.empty()) {
    const wf_status s = wf_report_write(report, path.c_str(), format.c_str());
    return s == WF_OK ? 0 : report_error(s);
  }
  char* text = nullptr;
  const wf_status s = wf_report_render(report, format.c_str(), &text);
  if (s != WF_OK) return report_error(s);
  std::fputs(text, stdout);
  wf_string_free(text);
  return 0;
}

int run_verify(const CommonOptions& o) {
  wf_config* cfg = nullptr;
  wf_status s = load(o, &cfg);
  if (s != WF_OK) return report_error(s);
  wf_report* report = nullptr;
  s = wf_verify(cfg, &report);
  if (!report) {
    wf_config_free(cfg);
    return report_error(s);
  }
  if (s == WF_ERR_RUNTIME) std::fprintf(stderr, "weylfluid: %s\n", wf_last_error());
  const int written = emit(report, wf_config_output(cfg), wf_config_format(cfg));
  wf_report_free(report);
  wf_config_free(cfg);
  return written != 0 ? 3 : exit_code(s);
}

int run_frame(const CommonOptions& o) {
  if (o.out.empty()) {
    std::fprintf(stderr, "weylfluid: frame requires --out\n");
    return 2;
  }
  wf_config* cfg = nullptr;
  wf_status s = load(o, &cfg);
  if (s != WF_OK) return report_error(s);
  s = wf_frame_export(cfg, o.out.c_str());
  wf_config_free(cfg);
  return s == WF_OK ? 0 : report_error(s);
}

int run_geodesic(const CommonOptions& o, const std::string& kind, const std::vector<double>& x0,
                 const std::vector<double>& direction, double length) {
  if (o.out.empty()) {
    std::fprintf(stderr, "weylfluid: geodesic requires --out\n");
    return 2;
  }
  if (kind != "flow" && direction.size() != x0.size()) {
    std::fprintf(stderr, "weylfluid: --direction needs as many components as --x0\n");
    return 2;
  }
  wf_config* cfg = nullptr;
  wf_status s = load(o, &cfg);
  if (s != WF_OK) return report_error(s);
  s = wf_geodesic_export(cfg, kind.c_str(), x0.data(), direction.empty() ? nullptr : direction.data(), x0.size(),
                         length, o.out.c_str());
  wf_config_free(cfg);
  return s == WF_OK ? 0 : report_error(s);
}

int run_report(const std::string& input, const std::string& out, const std::string& format) {
  wf_report* report = nullptr;
  const wf_status s = wf_report_load_file(input.c_str(), &report);
  if (s != WF_OK) return report_error(s);
  const int written = emit(report, out, format);
  wf_report_free(report);
  return written;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl geometries induced by perfect fluids: verification harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wf_version()));

  CommonOptions verify_opts, frame_opts, geodesic_opts;
  auto* verify = app.add_subcommand("verify", "Run verification suites and emit a report");
  verify_opts.attach(verify);
  verify->add_option("--suite", verify_opts.suites, "Suites to run")
      ->check(CLI::IsMember({"connection", "fluid", "conservation", "conformal", "frame", "worldlines"}));

  auto* frame = app.add_subcommand("frame", "Solve the preferred frame and export lnΦ on the grid as CSV");
  frame_opts.attach(frame);

  auto* geodesic = app.add_subcommand("geodesic", "Integrate a path and export it as CSV");
  geodesic_opts.attach(geodesic);
  std::string kind = "null";
  std::vector<double> x0, direction;
  double length = 1.0;
  geodesic->add_option("--kind", kind, "null | autoparallel | flow")
      ->check(CLI::IsMember({"null", "autoparallel", "flow"}));
  geodesic->add_option("--x0", x0, "Start point")->required()->delimiter(',');
  geodesic->add_option("--direction", direction, "Initial tangent (spatial part for null)")->delimiter(',');
  geodesic->add_option("--length", length, "Parameter length")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Re-render a JSON report");
  std::string input, report_out, report_format = "table";
  report->add_option("input", input, "JSON report")->required();
  report->add_option("--out", report_out, "Output path");
  report->add_option("--format", report_format, "Output format")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) return run_verify(verify_opts);
  if (frame->parsed()) return run_frame(frame_opts);
  if (geodesic->parsed()) return run_geodesic(geodesic_opts, kind, x0, direction, length);
  return run_report(input, report_out, report_format);
}
