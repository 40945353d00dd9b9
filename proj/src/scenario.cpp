#include "gsys/scenario.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gsys/error.hpp"

namespace gsys {

using io::Json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalInconsistency("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw FormatError(where + ": " + msg); }

// Inline object or path relative to the scenario directory.
Json resolve(const Json& j, const std::filesystem::path& base, const std::string& where) {
  if (j.is_string()) {
    const std::filesystem::path p = base / j.get<std::string>();
    if (!std::filesystem::exists(p)) fail(where, "referenced file '" + p.string() + "' does not exist");
    return io::load_json_file(p);
  }
  if (!j.is_object()) fail(where, "expected an inline object or a file name");
  return j;
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  if (!it->is_number_integer()) fail(where + "." + key, "expected an integer");
  return it->get<int>();
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  if (!it->is_string()) fail(where + "." + key, "expected a string");
  return it->get<std::string>();
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
  const auto it = m.find(name);
  if (it == m.end()) throw FormatError(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

void add_witnesses(TaskOutcome& out, const FiniteGroup& g, const std::vector<Witness>& w, const char* identity = nullptr) {
  for (const auto& x : w) {
    Json j{{"tuple", io::tuple_to_json(g, x.tuple)}};
    if (identity) j["identity"] = identity;
    j["difference"] = io::symbol_to_json(x.difference);
    out.witnesses.push_back(std::move(j));
  }
}

std::vector<Witness> nonzero_entries(const Cochain& c) {
  std::vector<Witness> w;
  const auto tuples = enumerate_tuples(c.group(), c.degree());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c.value(i).is_zero()) w.push_back({tuples[i], c.value(i)});
  return w;
}

std::vector<std::string> name_list(const Scenario& s, const Json& task) {
  std::vector<std::string> names;
  if (task.contains("cochains")) {
    for (const auto& n : task["cochains"]) names.push_back(n.get<std::string>());
  } else {
    for (const auto& [n, c] : s.cochains) names.push_back(n);
  }
  return names;
}

void task_check_dga(const Scenario& s, const Json& task, TaskOutcome& out) {
  const auto names = name_list(s, task);
  std::vector<const Cochain*> cs;
  for (const auto& n : names) cs.push_back(&lookup(s.cochains, n, "cochain"));
  const int max_degree = task.value("max_total_degree", 3);
  const FiniteGroup& g = s.complex->group();
  long d2 = 0, leibniz = 0, assoc = 0;
  for (const Cochain* a : cs) {
    add_witnesses(out, g, nonzero_entries(differential(differential(*a))), "d_squared");
    ++d2;
  }
  for (const Cochain* a : cs)
    for (const Cochain* b : cs) {
      if (a->degree() + b->degree() + 1 > max_degree + 1) continue;
      Cochain lhs = differential(cup_star(*a, *b));
      Cochain rhs = cup_star(differential(*a), *b);
      if (a->degree() % 2 == 0) rhs += cup_star(*a, differential(*b));
      else rhs -= cup_star(*a, differential(*b));
      add_witnesses(out, g, nonzero_entries(lhs - rhs), "leibniz");
      ++leibniz;
    }
  for (const Cochain* a : cs)
    for (const Cochain* b : cs)
      for (const Cochain* c : cs) {
        if (a->degree() + b->degree() + c->degree() > max_degree) continue;
        add_witnesses(out, g, nonzero_entries(cup_star(cup_star(*a, *b), *c) - cup_star(*a, cup_star(*b, *c))),
                      "associativity");
        ++assoc;
      }
  out.details = Json{{"cochains", names}, {"d_squared_checks", d2}, {"leibniz_checks", leibniz}, {"associativity_checks", assoc}};
  out.status = out.witnesses.empty() ? "pass" : "fail";
}

void task_check_mc(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string name = string_field(task, "cochain", "task");
  const Cochain& a = lookup(s.cochains, name, "cochain");
  const Cochain r = mc_residual(a);
  add_witnesses(out, s.complex->group(), nonzero_entries(r));
  out.details = Json{{"cochain", name}, {"residual_zero", r.is_zero()}};
  out.status = r.is_zero() ? "pass" : "fail";
}

void task_check_representation(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string name = string_field(task, "cochain", "task");
  const RepresentationReport r = representation_check(lookup(s.cochains, name, "cochain"));
  if (!r.consistent || r.passed != r.residual_zero) {
    throw InternalInconsistency("representation check disagrees with the Maurer-Cartan residual");
  }
  add_witnesses(out, s.complex->group(), r.witnesses);
  out.details = Json{{"cochain", name}, {"residual_zero", r.residual_zero}, {"consistent", r.consistent}};
  out.status = r.passed ? "pass" : "fail";
}

void task_check_cocycle(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string mode = string_field(task, "mode", "task");
  CheckReport r;
  if (mode == "multiplicative") {
    const std::string name = string_field(task, "cochain", "task");
    const Cochain& a = lookup(s.cochains, name, "cochain");
    r = xi_multiplicative_cocycle_check(a);
    const bool residual_zero = mc_residual(a).is_zero();
    if (residual_zero != r.passed) throw InternalInconsistency("multiplicative cocycle check disagrees with the residual");
    out.details = Json{{"mode", mode}, {"cochain", name}, {"residual_zero", residual_zero}};
  } else if (mode == "additive") {
    const std::string name = string_field(task, "table", "task");
    r = additive_cocycle_check(s.complex->action(), lookup(s.tables, name, "table"));
    out.details = Json{{"mode", mode}, {"table", name}};
  } else {
    throw FormatError("task: cocycle mode must be 'multiplicative' or 'additive'");
  }
  add_witnesses(out, s.complex->group(), r.witnesses);
  out.status = r.passed ? "pass" : "fail";
}

void task_check_intertwiner(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string sn = string_field(task, "S", "task");
  const std::string tn = string_field(task, "S_tilde", "task");
  const std::string kn = string_field(task, "K", "task");
  const CheckReport r = coboundary_intertwiner_check(s.complex->action(), lookup(s.tables, sn, "table"),
                                                     lookup(s.tables, tn, "table"), lookup(s.polys, kn, "polynomial"));
  add_witnesses(out, s.complex->group(), r.witnesses);
  out.details = Json{{"S", sn}, {"S_tilde", tn}, {"K", kn}};
  out.status = r.passed ? "pass" : "fail";
}

void task_check_gauge(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string an = string_field(task, "a", "task");
  const std::string bn = string_field(task, "b", "task");
  const std::string un = string_field(task, "u", "task");
  const MCElement a = MCElement::verify(lookup(s.cochains, an, "cochain"));
  const MCElement b = MCElement::verify(lookup(s.cochains, bn, "cochain"));
  const FormalSymbol u = lookup(s.symbols, un, "symbol").with_order(a.order());
  const CheckReport r = gauge_relation_check(a, b, u);
  add_witnesses(out, s.complex->group(), r.witnesses);
  out.details = Json{{"a", an}, {"b", bn}, {"u", un}};
  out.status = r.passed ? "pass" : "fail";
}

void task_solve_mc(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string name = string_field(task, "seed", "task");
  const int order = int_field(task, "order", "task");
  if (order < 1) throw FormatError("task.order: must be at least 1");
  const Cochain& seed = lookup(s.cochains, name, "cochain");
  const MCElement p0 = MCElement::verify(seed.levels_between(0, 0));
  const Extension ext = mc_extend(p0, seed.with_order(std::max(order, seed.order())).levels_between(1, 1), order);
  Json records = Json::array();
  for (const auto& r : ext.records) records.push_back(io::record_to_json(r));
  out.details = Json{{"seed", name}, {"order", order}, {"orders", records}};
  if (ext.obstruction) {
    out.details["obstruction"] = io::certificate_to_json(*ext.obstruction);
    out.status = "fail";
    return;
  }
  out.details["residual_zero"] = mc_residual(ext.omega->cochain()).is_zero();
  out.details["omega"] = io::cochain_to_json(ext.omega->cochain());
  out.status = "pass";
}

void task_solve_rigidity(const Scenario& s, const Json& task, TaskOutcome& out) {
  const std::string name = string_field(task, "cochain", "task");
  const Cochain& c = lookup(s.cochains, name, "cochain");
  const int order = task.contains("order") ? int_field(task, "order", "task") : c.order();
  const MCElement a = MCElement::verify(c);
  const GaugeResult g = rigidity_gauge(a, order);
  Json records = Json::array();
  for (const auto& r : g.records) records.push_back(io::record_to_json(r));
  out.details = Json{{"cochain", name}, {"order", order}, {"orders", records}};
  if (g.obstruction) {
    out.details["obstruction"] = io::certificate_to_json(*g.obstruction);
    out.status = "fail";
    return;
  }
  const CheckReport check = gauge_relation_check(a.with_order(order), a.leading_term(order), *g.unit);
  out.details["gauge_relation"] = check.passed;
  out.details["unit"] = io::symbol_to_json(*g.unit);
  out.status = check.passed ? "pass" : "fail";
}

void task_cohomology(const Scenario& s, const Json& task, TaskOutcome& out) {
  const int n = int_field(task, "xi_degree", "task");
  const int k = int_field(task, "cochain_degree", "task");
  const int d = int_field(task, "x_degree", "task");
  if (n < 0 || k < 0 || d < 0) throw FormatError("task: degrees must be non-negative");
  std::string p0_name = "unit";
  Cochain p0c = Cochain::unit(s.complex, 1, n);
  if (task.contains("p0")) {
    p0_name = string_field(task, "p0", "task");
    p0c = lookup(s.cochains, p0_name, "cochain").levels_between(0, 0).with_order(n);
  }
  const MCElement p0 = MCElement::verify(p0c);
  const CohomologyReport r = cohomology_report(p0, n, k, d);
  out.details = io::cohomology_to_json(r);
  out.details["p0"] = p0_name;
  out.status = "pass";
  if (task.contains("expect_h_dim")) {
    const long expected = task["expect_h_dim"].get<long>();
    out.details["expected_h_dim"] = expected;
    if (expected != r.h_dim) out.status = "fail";
  }
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  Scenario s;
  s.path = path;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  s.sha256 = sha256_hex(bytes);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const std::string where = path.filename().string();
  const std::filesystem::path base = path.parent_path();
  if (!j.is_object()) fail(where, "scenario must be an object");
  if (int_field(j, "format_version", where) != io::kFormatVersion) fail(where, "unsupported format_version");
  s.name = j.contains("name") ? string_field(j, "name", where) : path.stem().string();
  s.dimension = int_field(j, "dimension", where);
  if (s.dimension < 1) fail(where + ".dimension", "must be positive");
  s.order = int_field(j, "order", where);
  if (s.order < 0) fail(where + ".order", "must be non-negative");

  if (!j.contains("group")) fail(where, "missing field 'group'");
  const FiniteGroup g = io::group_from_json(resolve(j["group"], base, where + ".group"), where + ".group");
  if (!j.contains("action")) fail(where, "missing field 'action'");
  const AffineAction action = io::action_from_json(resolve(j["action"], base, where + ".action"), g, s.dimension, where + ".action");
  s.complex = AmplitudeComplex::make(action);

  if (j.contains("cochains")) {
    for (const auto& [name, value] : j["cochains"].items()) {
      const std::string w = where + ".cochains." + name;
      s.cochains.emplace(name, io::cochain_from_json(resolve(value, base, w), s.complex, s.order, w));
    }
  }
  if (j.contains("symbols")) {
    for (const auto& [name, value] : j["symbols"].items()) {
      const std::string w = where + ".symbols." + name;
      s.symbols.emplace(name, io::symbol_from_json(resolve(value, base, w), s.dimension, w));
    }
  }
  if (j.contains("polys")) {
    for (const auto& [name, value] : j["polys"].items())
      s.polys.emplace(name, io::poly_from_json(value, s.dimension, where + ".polys." + name));
  }
  if (j.contains("tables")) {
    for (const auto& [name, value] : j["tables"].items())
      s.tables.emplace(name, io::table_from_json(value, g, s.dimension, where + ".tables." + name));
  }
  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) fail(where + ".tasks", "expected an array");
    for (const auto& t : j["tasks"]) s.tasks.push_back(t);
  }
  return s;
}

TaskOutcome run_task(const Scenario& s, const Json& task) {
  TaskOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!task.is_object()) throw FormatError("task must be an object");
    out.type = string_field(task, "type", "task");
    out.id = task.contains("id") ? string_field(task, "id", "task") : out.type;
    if (out.type == "check-dga") task_check_dga(s, task, out);
    else if (out.type == "check-mc") task_check_mc(s, task, out);
    else if (out.type == "check-representation") task_check_representation(s, task, out);
    else if (out.type == "check-cocycle") task_check_cocycle(s, task, out);
    else if (out.type == "check-intertwiner") task_check_intertwiner(s, task, out);
    else if (out.type == "check-gauge") task_check_gauge(s, task, out);
    else if (out.type == "solve-mc") task_solve_mc(s, task, out);
    else if (out.type == "solve-rigidity") task_solve_rigidity(s, task, out);
    else if (out.type == "cohomology") task_cohomology(s, task, out);
    else throw FormatError("unknown task type '" + out.type + "'");
  } catch (const Error& e) {
    out.status = "error";
    out.message = e.what();
  } catch (const Json::exception& e) {
    out.status = "error";
    out.message = e.what();
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunResult run_tasks(const Scenario& s, const std::vector<Json>& tasks) {
  RunResult r;
  r.scenario = s.name;
  r.sha256 = s.sha256;
  for (const auto& t : tasks) {
    r.tasks.push_back(run_task(s, t));
    const std::string& st = r.tasks.back().status;
    if (st == "error") r.exit_code = 2;
    else if (st == "fail" && r.exit_code == 0) r.exit_code = 1;
  }
  return r;
}

Json report_json(const RunResult& r, bool timing) {
  Json tasks = Json::array();
  long passed = 0, failed = 0, errors = 0;
  for (const auto& t : r.tasks) {
    Json j{{"id", t.id}, {"type", t.type}, {"status", t.status}};
    if (!t.message.empty()) j["message"] = t.message;
    j["details"] = t.details;
    j["witnesses"] = t.witnesses;
    if (timing) j["elapsed_ms"] = t.elapsed_ms;
    tasks.push_back(std::move(j));
    if (t.status == "pass") ++passed;
    else if (t.status == "fail") ++failed;
    else ++errors;
  }
  return Json{{"tool", "gsys"},
              {"version", GSYS_VERSION},
              {"format_version", io::kFormatVersion},
              {"scenario", r.scenario},
              {"scenario_sha256", r.sha256},
              {"tasks", tasks},
              {"summary", {{"passed", passed}, {"failed", failed}, {"errors", errors}}},
              {"exit_code", r.exit_code}};
}

std::string report_text(const RunResult& r, int verbosity, bool timing) {
  std::ostringstream os;
  long passed = 0;
  for (const auto& t : r.tasks) passed += t.status == "pass";
  if (verbosity >= 1) {
    os << "scenario " << r.scenario << " (sha256 " << r.sha256.substr(0, 16) << ")\n";
    for (const auto& t : r.tasks) {
      os << "  [" << t.status << "] " << t.id << " (" << t.type << ")";
      if (timing) os << " " << std::fixed << std::setprecision(1) << t.elapsed_ms << " ms";
      if (!t.message.empty()) os << ": " << t.message;
      os << '\n';
      if (verbosity >= 2) {
        if (!t.details.empty()) os << "    details: " << t.details.dump() << '\n';
        for (const auto& w : t.witnesses) os << "    witness: " << w.dump() << '\n';
      } else if (!t.witnesses.empty()) {
        const auto& tuple = t.witnesses.front()["tuple"];
        os << "    first witness at (";
        for (std::size_t i = 0; i < tuple.size(); ++i) os << (i ? ", " : "") << tuple[i].get<std::string>();
        os << "), " << t.witnesses.size() << " total\n";
      }
    }
  }
  os << passed << "/" << r.tasks.size() << " tasks passed, exit " << r.exit_code << '\n';
  return os.str();
}

}  // namespace gsys
