#ifndef WEYLFLUID_H
#define WEYLFLUID_H

/* C interface to the weylfluid verification library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Every call returns a wf_status; on failure the message of
 * the most recent error on the calling thread is available from
 * wf_last_error(). Strings returned through out-parameters are allocated by
 * the library and released with wf_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define WF_API __declspec(dllexport)
#else
#define WF_API __attribute__((visibility("default")))
#endif

typedef enum wf_status {
  WF_OK = 0,
  WF_CHECKS_FAILED = 1,
  WF_ERR_CONFIG = 2,
  WF_ERR_RUNTIME = 3,
  WF_ERR_IO = 4,
  WF_ERR_ARGUMENT = 5
} wf_status;

typedef struct wf_config wf_config;
typedef struct wf_report wf_report;

WF_API const char* wf_version(void);
WF_API const char* wf_last_error(void);
WF_API void wf_string_free(char* s);

WF_API wf_status wf_config_load_file(const char* path, wf_config** out);
WF_API wf_status wf_config_parse(const char* text, wf_config** out);
/* Default configuration (all suites, built-in defaults). */
WF_API wf_status wf_config_default(wf_config** out);
/* Sets "section.key" to a value, e.g. ("run.seed", "11"). */
WF_API wf_status wf_config_set(wf_config* cfg, const char* key, const char* value);
/* Output path and format recorded in the configuration ("" if unset). */
WF_API const char* wf_config_output(const wf_config* cfg);
WF_API const char* wf_config_format(const wf_config* cfg);
WF_API void wf_config_free(wf_config* cfg);

/* Runs the configured suites. Returns WF_OK when every check passes,
 * WF_CHECKS_FAILED when a check fails, WF_ERR_RUNTIME when a suite aborted
 * (the report is still produced and holds an error record), or WF_ERR_CONFIG
 * without producing a report. */
WF_API wf_status wf_verify(const wf_config* cfg, wf_report** out);

WF_API int wf_report_passed(const wf_report* r);
WF_API size_t wf_report_check_count(const wf_report* r);
/* Borrowed views valid until the report is freed. has_residual is 0 for
 * error records. */
WF_API wf_status wf_report_check(const wf_report* r, size_t index, const char** name, const char** anchor,
                                 int* has_residual, double* max_residual, double* tol, int* pass);
/* format: "json" or "table". */
WF_API wf_status wf_report_render(const wf_report* r, const char* format, char** out);
WF_API wf_status wf_report_write(const wf_report* r, const char* path, const char* format);
WF_API wf_status wf_report_load_file(const char* path, wf_report** out);
WF_API void wf_report_free(wf_report* r);

/* Solves the preferred frame of the configured preset and writes the grid as CSV. */
WF_API wf_status wf_frame_export(const wf_config* cfg, const char* path);
/* kind: "null", "autoparallel" or "flow". x0 and direction hold dim values. */
WF_API wf_status wf_geodesic_export(const wf_config* cfg, const char* kind, const double* x0,
                                    const double* direction, size_t dim, double s_max, const char* path);

#ifdef __cplusplus
}
#endif

#endif
