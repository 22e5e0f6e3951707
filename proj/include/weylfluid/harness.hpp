#pragma once

// Batch runner: builds the configured preset and executes the requested
// suites, collecting one record per check.

#include "weylfluid/config.hpp"
#include "weylfluid/report.hpp"

namespace weylfluid {

struct RunOutcome {
  Report report;
  bool runtime_error = false;  // a suite aborted; the report is partial
};

/// Runs every requested suite in order. Configuration problems discovered
/// while building the preset propagate as config errors; other failures end
/// the run with an error record.
RunOutcome run_suite(const SuiteConfig& config);

/// Exit status of the command-line contract: 0 pass, 1 failed check,
/// 3 runtime error.
int exit_status(const RunOutcome& outcome);

/// Writes the nodes of the preferred-frame grid with lnΦ as CSV.
void export_frame_csv(const SuiteConfig& config, const std::string& path);

/// Integrates a path ("null", "autoparallel" or "flow") from x0 with initial
/// direction `direction` and writes it as CSV. For "null" only the spatial
/// part of `direction` is used; the time component is solved for.
void export_geodesic_csv(const SuiteConfig& config, const std::string& kind, const std::vector<double>& x0,
                         const std::vector<double>& direction, double s_max, const std::string& path);

}  // namespace weylfluid
