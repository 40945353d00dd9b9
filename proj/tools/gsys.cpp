#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gsys/error.hpp"
#include "gsys/scenario.hpp"

namespace {

int verbosity_from_env() {
  const char* v = std::getenv("GSYS_VERBOSITY");
  if (!v || !*v) return 1;
  return std::atoi(v);
}

struct Output {
  std::string format = "text";
  bool timing = false;
  std::string file;
};

int emit(const gsys::RunResult& r, const Output& o) {
  std::string text;
  if (o.format == "json") text = gsys::report_json(r, o.timing).dump(2) + "\n";
  else text = gsys::report_text(r, verbosity_from_env(), o.timing);
  if (o.file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.file, std::ios::binary);
    if (!out) {
      std::cerr << "gsys: cannot write " << o.file << "\n";
      return 2;
    }
    out << text;
  }
  return r.exit_code;
}

int run_single(const std::string& path, const gsys::io::Json& task, const Output& o) {
  const gsys::Scenario s = gsys::load_scenario(path);
  return emit(gsys::run_tasks(s, {task}), o);
}

std::deque<std::pair<CLI::App*, Output>> outputs;

void add_output_flags(CLI::App* app, const char* default_format) {
  Output& o = outputs.emplace_back(app, Output{}).second;
  o.format = default_format;
  app->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app->add_flag("--timing", o.timing, "Include per-task wall time");
  app->add_option("-o,--output", o.file, "Write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and solvers for formal G-amplitude complexes"};
  app.set_version_flag("--version", std::string(GSYS_VERSION));
  app.require_subcommand(1);

  std::string scenario;
  std::string cochain;
  int order = 0;

  auto* run = app.add_subcommand("run", "Run every task of a scenario");
  run->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  add_output_flags(run, "text");

  auto* report = app.add_subcommand("report", "Run a scenario and print the full report");
  report->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  add_output_flags(report, "json");

  auto* check = app.add_subcommand("check", "Run a single check against scenario data");
  check->require_subcommand(1);
  std::vector<std::string> dga_names;
  auto* dga = check->add_subcommand("dga", "d^2 = 0, Leibniz rule and associativity");
  dga->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  dga->add_option("--cochain", dga_names, "Restrict to these cochains");
  add_output_flags(dga, "text");
  auto* mc = check->add_subcommand("mc", "Maurer-Cartan residual of a degree-1 cochain");
  mc->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  mc->add_option("cochain", cochain)->required();
  add_output_flags(mc, "text");
  auto* rep = check->add_subcommand("representation", "Representation property of a degree-1 cochain");
  rep->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  rep->add_option("cochain", cochain)->required();
  add_output_flags(rep, "text");
  auto* cocycle = check->add_subcommand("cocycle", "Multiplicative or additive cocycle identity");
  cocycle->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  cocycle->add_option("name", cochain, "Cochain (multiplicative) or table (additive)")->required();
  bool multiplicative = false, additive = false;
  auto* mflag = cocycle->add_flag("--multiplicative", multiplicative);
  auto* aflag = cocycle->add_flag("--additive", additive);
  mflag->excludes(aflag);
  add_output_flags(cocycle, "text");

  auto* solve = app.add_subcommand("solve", "Order-by-order solvers");
  solve->require_subcommand(1);
  auto* smc = solve->add_subcommand("mc", "Extend P0 + hbar P1 to a Maurer-Cartan element");
  smc->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  smc->add_option("--seed", cochain, "Seed cochain P0 + hbar P1")->required();
  smc->add_option("--order", order, "Truncation order N")->required()->check(CLI::Range(1, 64));
  add_output_flags(smc, "text");
  auto* srig = solve->add_subcommand("rigidity", "Gauge a Maurer-Cartan element back to its leading term");
  srig->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  srig->add_option("--cochain", cochain, "Maurer-Cartan cochain")->required();
  srig->add_option("--order", order, "Truncation order N")->required()->check(CLI::Range(0, 64));
  add_output_flags(srig, "text");

  int xi_degree = 0, cochain_degree = 1, x_degree = 0;
  std::string p0;
  auto* coh = app.add_subcommand("cohomology", "Window cohomology of the twisted differential");
  coh->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  coh->add_option("--xi-degree", xi_degree)->required()->check(CLI::NonNegativeNumber);
  coh->add_option("--cochain-degree", cochain_degree)->required()->check(CLI::NonNegativeNumber);
  coh->add_option("--x-degree", x_degree)->required()->check(CLI::NonNegativeNumber);
  coh->add_option("--p0", p0, "Twisting cochain (default: the unit cochain)");
  add_output_flags(coh, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out;
  for (const auto& [sub, o] : outputs)
    if (*sub) out = o;

  using gsys::io::Json;
  try {
    if (*run || *report) {
      const gsys::Scenario s = gsys::load_scenario(scenario);
      return emit(gsys::run_scenario(s), out);
    }
    if (*dga) {
      Json t{{"id", "check-dga"}, {"type", "check-dga"}};
      if (!dga_names.empty()) t["cochains"] = dga_names;
      return run_single(scenario, t, out);
    }
    if (*mc) return run_single(scenario, Json{{"type", "check-mc"}, {"cochain", cochain}}, out);
    if (*rep) return run_single(scenario, Json{{"type", "check-representation"}, {"cochain", cochain}}, out);
    if (*cocycle) {
      if (!multiplicative && !additive) {
        std::cerr << "gsys: check cocycle needs --multiplicative or --additive\n";
        return 2;
      }
      Json t{{"type", "check-cocycle"}, {"mode", multiplicative ? "multiplicative" : "additive"}};
      t[multiplicative ? "cochain" : "table"] = cochain;
      return run_single(scenario, t, out);
    }
    if (*smc) return run_single(scenario, Json{{"type", "solve-mc"}, {"seed", cochain}, {"order", order}}, out);
    if (*srig) return run_single(scenario, Json{{"type", "solve-rigidity"}, {"cochain", cochain}, {"order", order}}, out);
    if (*coh) {
      Json t{{"type", "cohomology"}, {"xi_degree", xi_degree}, {"cochain_degree", cochain_degree}, {"x_degree", x_degree}};
      if (!p0.empty()) t["p0"] = p0;
      return run_single(scenario, t, out);
    }
  } catch (const gsys::Error& e) {
    std::cerr << "gsys: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
