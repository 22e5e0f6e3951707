#include "weylfluid/weylfluid.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "weylfluid/harness.hpp"

struct wf_config {
  weylfluid::SuiteConfig value;
};

struct wf_report {
  weylfluid::Report value;
};

namespace {

thread_local std::string last_error;

wf_status fail(wf_status status, const std::string& message) {
  last_error = message;
  return status;
}

wf_status status_of(const weylfluid::Error& e) {
  switch (e.kind()) {
    case weylfluid::ErrorKind::config: return WF_ERR_CONFIG;
    case weylfluid::ErrorKind::io: return WF_ERR_IO;
    default: return WF_ERR_RUNTIME;
  }
}

template <class Fn>
wf_status guarded(Fn fn) {
  try {
    return fn();
  } catch (const weylfluid::Error& e) {
    return fail(status_of(e), std::string(weylfluid::to_string(e.kind())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(WF_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(WF_ERR_RUNTIME, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* wf_version(void) { return "1.0.0"; }

const char* wf_last_error(void) { return last_error.c_str(); }

void wf_string_free(char* s) { std::free(s); }

wf_status wf_config_load_file(const char* path, wf_config** out) {
  if (!path || !out) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new wf_config{weylfluid::load_config(path)};
    return WF_OK;
  });
}

wf_status wf_config_parse(const char* text, wf_config** out) {
  if (!text || !out) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new wf_config{weylfluid::parse_config(text)};
    return WF_OK;
  });
}

wf_status wf_config_default(wf_config** out) {
  if (!out) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new wf_config{};
    return WF_OK;
  });
}

wf_status wf_config_set(wf_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    weylfluid::SuiteConfig updated = cfg->value;
    weylfluid::set_config_value(updated, key, value);
    weylfluid::validate_config(updated);
    cfg->value = std::move(updated);
    return WF_OK;
  });
}

const char* wf_config_output(const wf_config* cfg) { return cfg ? cfg->value.output.c_str() : ""; }

const char* wf_config_format(const wf_config* cfg) { return cfg ? cfg->value.format.c_str() : ""; }

void wf_config_free(wf_config* cfg) { delete cfg; }

wf_status wf_verify(const wf_config* cfg, wf_report** out) {
  if (!cfg || !out) return fail(WF_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    weylfluid::RunOutcome outcome = weylfluid::run_suite(cfg->value);
    const int code = weylfluid::exit_status(outcome);
    if (outcome.runtime_error) last_error = outcome.report.checks.back().anchor;
    *out = new wf_report{std::move(outcome.report)};
    return code == 0 ? WF_OK : code == 1 ? WF_CHECKS_FAILED : WF_ERR_RUNTIME;
  });
}

int wf_report_passed(const wf_report* r) { return r && r->value.pass ? 1 : 0; }

size_t wf_report_check_count(const wf_report* r) { return r ? r->value.checks.size() : 0; }

wf_status wf_report_check(const wf_report* r, size_t index, const char** name, const char** anchor,
                          int* has_residual, double* max_residual, double* tol, int* pass) {
  if (!r) return fail(WF_ERR_ARGUMENT, "null report");
  if (index >= r->value.checks.size()) return fail(WF_ERR_ARGUMENT, "check index out of range");
  const weylfluid::CheckRecord& c = r->value.checks[index];
  if (name) *name = c.name.c_str();
  if (anchor) *anchor = c.anchor.c_str();
  if (has_residual) *has_residual = c.max_residual ? 1 : 0;
  if (max_residual) *max_residual = c.max_residual.value_or(0.0);
  if (tol) *tol = c.tol;
  if (pass) *pass = c.pass ? 1 : 0;
  return WF_OK;
}

wf_status wf_report_render(const wf_report* r, const char* format, char** out) {
  if (!r || !format || !out) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = duplicate(weylfluid::render(r->value, format));
    return WF_OK;
  });
}

wf_status wf_report_write(const wf_report* r, const char* path, const char* format) {
  if (!r || !path || !format) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    weylfluid::write_text_file(path, weylfluid::render(r->value, format));
    return WF_OK;
  });
}

wf_status wf_report_load_file(const char* path, wf_report** out) {
  if (!path || !out) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new wf_report{weylfluid::parse_report(weylfluid::read_text_file(path))};
    return WF_OK;
  });
}

void wf_report_free(wf_report* r) { delete r; }

wf_status wf_frame_export(const wf_config* cfg, const char* path) {
  if (!cfg || !path) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    weylfluid::export_frame_csv(cfg->value, path);
    return WF_OK;
  });
}

wf_status wf_geodesic_export(const wf_config* cfg, const char* kind, const double* x0, const double* direction,
                             size_t dim, double s_max, const char* path) {
  if (!cfg || !kind || !x0 || !path) return fail(WF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<double> x(x0, x0 + dim), d;
    if (direction) d.assign(direction, direction + dim);
    weylfluid::export_geodesic_csv(cfg->value, kind, x, d, s_max, path);
    return WF_OK;
  });
}

}  // extern "C"
