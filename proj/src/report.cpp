#include "weylfluid/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "weylfluid/errors.hpp"

namespace weylfluid {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

std::string literal(const EchoValue& v) {
  struct {
    std::string operator()(const std::string& s) const { return quoted(s); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const { return std::isfinite(d) ? number(d) : "null"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } visit;
  return std::visit(visit, v);
}

void echo_object(std::ostringstream& os, const Echo& echo) {
  if (echo.empty()) {
    os << "{}";
    return;
  }
  os << "{\n";
  for (std::size_t i = 0; i < echo.size(); ++i)
    os << "    " << quoted(echo[i].first) << ": " << literal(echo[i].second) << (i + 1 < echo.size() ? ",\n" : "\n");
  os << "  }";
}

Echo parse_echo(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw Error(ErrorKind::io, "report echo section is not an object");
  Echo out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) out.emplace_back(k, v.get<std::string>());
    else if (v.is_boolean()) out.emplace_back(k, v.get<bool>());
    else if (v.is_number_integer()) out.emplace_back(k, v.get<long long>());
    else if (v.is_number()) out.emplace_back(k, v.get<double>());
    else throw Error(ErrorKind::io, "unsupported value for report key '" + k + "'");
  }
  return out;
}

}  // namespace

void Report::add(std::string name, std::string anchor, double max_residual, double tol) {
  CheckRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.tol = tol;
  if (std::isfinite(max_residual)) r.max_residual = max_residual;
  r.pass = r.max_residual.has_value() && max_residual <= tol;
  checks.push_back(std::move(r));
  pass = pass && checks.back().pass;
}

void Report::add_error(const std::string& suite, const std::string& message) {
  CheckRecord r;
  r.name = "runtime-error:" + suite;
  r.anchor = message;
  checks.push_back(std::move(r));
  pass = false;
}

void Report::finalize() {
  pass = true;
  for (const CheckRecord& c : checks) pass = pass && c.pass;
}

std::string to_json(const Report& r) {
  std::ostringstream os;
  os << "{\n  \"suite\": [";
  for (std::size_t i = 0; i < r.suites.size(); ++i) os << (i ? ", " : "") << quoted(r.suites[i]);
  os << "],\n  \"spacetime\": ";
  echo_object(os, r.spacetime);
  os << ",\n  \"fluid\": ";
  echo_object(os, r.fluid);
  os << ",\n  \"settings\": ";
  echo_object(os, r.settings);
  os << ",\n  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckRecord& c = r.checks[i];
    os << (i ? ",\n" : "\n") << "    {\"name\": " << quoted(c.name) << ", \"anchor\": " << quoted(c.anchor)
       << ", \"max_residual\": " << (c.max_residual ? number(*c.max_residual) : "null")
       << ", \"tol\": " << number(c.tol) << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  os << (r.checks.empty() ? "" : "\n  ") << "],\n  \"runtime_seconds\": " << number(r.runtime_seconds)
     << ",\n  \"pass\": " << (r.pass ? "true" : "false") << "\n}\n";
  return os.str();
}

std::string to_table(const Report& r) {
  std::size_t width = 5;
  for (const CheckRecord& c : r.checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  std::string suites;
  for (const std::string& s : r.suites) suites += (suites.empty() ? "" : ",") + s;
  os << "suites: " << suites << '\n';
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-24s  %-10s  %s\n", static_cast<int>(width), "check", "max_residual", "tol",
                "status");
  os << line;
  for (const CheckRecord& c : r.checks) {
    const std::string res = c.max_residual ? number(*c.max_residual) : "-";
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.3g", c.tol);
    std::snprintf(line, sizeof line, "%-*s  %-24s  %-10s  %s\n", static_cast<int>(width), c.name.c_str(), res.c_str(),
                  tol, c.pass ? "pass" : "FAIL");
    os << line;
  }
  os << "overall: " << (r.pass ? "pass" : "FAIL") << '\n';
  return os.str();
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return to_json(report);
  if (format == "table") return to_table(report);
  throw Error(ErrorKind::config, "unknown report format '" + format + "'");
}

Report parse_report(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    Report r;
    for (const auto& s : j.at("suite")) r.suites.push_back(s.get<std::string>());
    r.spacetime = parse_echo(j.at("spacetime"));
    r.fluid = parse_echo(j.at("fluid"));
    r.settings = parse_echo(j.at("settings"));
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.name = c.at("name").get<std::string>();
      rec.anchor = c.at("anchor").get<std::string>();
      if (!c.at("max_residual").is_null()) rec.max_residual = c.at("max_residual").get<double>();
      rec.tol = c.at("tol").get<double>();
      rec.pass = c.at("pass").get<bool>();
      r.checks.push_back(std::move(rec));
    }
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::io, std::string("malformed report: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace weylfluid
