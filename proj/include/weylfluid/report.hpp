#pragma once

// Verification reports and their JSON / plain-table renderings.
//
// JSON layout (stable key order):
//   { "suite": [...], "spacetime": {...}, "fluid": {...}, "settings": {...},
//     "checks": [{"name", "anchor", "max_residual", "tol", "pass"}, ...],
//     "runtime_seconds": x, "pass": b }
// Floating-point values are written with 17 significant digits.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace weylfluid {

using EchoValue = std::variant<std::string, long long, double, bool>;
using Echo = std::vector<std::pair<std::string, EchoValue>>;

struct CheckRecord {
  std::string name;
  std::string anchor;
  std::optional<double> max_residual;  // empty for error records
  double tol = 0.0;
  bool pass = false;

  bool operator==(const CheckRecord&) const = default;
};

struct Report {
  std::vector<std::string> suites;
  Echo spacetime;
  Echo fluid;
  Echo settings;
  std::vector<CheckRecord> checks;
  double runtime_seconds = 0.0;
  bool pass = true;

  /// Appends a check; pass = residual finite and <= tol.
  void add(std::string name, std::string anchor, double max_residual, double tol);
  void add_error(const std::string& suite, const std::string& message);
  /// Recomputes the overall flag from the records.
  void finalize();

  bool operator==(const Report&) const = default;
};

std::string to_json(const Report& report);
std::string to_table(const Report& report);
std::string render(const Report& report, const std::string& format);
Report parse_report(const std::string& json);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace weylfluid
