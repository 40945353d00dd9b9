#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gsys/io.hpp"

namespace gsys {

/// Everything a scenario file references, loaded and validated.
struct Scenario {
  std::string name;
  std::filesystem::path path;
  std::string sha256;
  int dimension = 1;
  int order = 0;
  ComplexPtr complex;
  std::map<std::string, Cochain> cochains;
  std::map<std::string, FormalSymbol> symbols;
  std::map<std::string, PolyFunction> polys;
  std::map<std::string, std::vector<PolyFunction>> tables;
  std::vector<io::Json> tasks;
};

/// Throws FormatError (with a location) for unreadable or invalid input.
Scenario load_scenario(const std::filesystem::path& path);

struct TaskOutcome {
  std::string id;
  std::string type;
  /// "pass", "fail" or "error".
  std::string status;
  std::string message;
  io::Json details = io::Json::object();
  io::Json witnesses = io::Json::array();
  double elapsed_ms = 0;
};

struct RunResult {
  std::string scenario;
  std::string sha256;
  std::vector<TaskOutcome> tasks;
  /// 0 all pass, 1 some check failed, 2 some task hit an input error.
  int exit_code = 0;
};

TaskOutcome run_task(const Scenario& s, const io::Json& task);
RunResult run_tasks(const Scenario& s, const std::vector<io::Json>& tasks);
inline RunResult run_scenario(const Scenario& s) { return run_tasks(s, s.tasks); }

io::Json report_json(const RunResult& r, bool timing);
/// verbosity 0: summary; 1: one line per task; 2: also witnesses and details.
std::string report_text(const RunResult& r, int verbosity, bool timing);

std::string sha256_hex(const std::string& bytes);

}  // namespace gsys
