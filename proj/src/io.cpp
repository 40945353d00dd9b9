#include "gsys/io.hpp"

#include <fstream>
#include <sstream>

#include "gsys/error.hpp"

namespace gsys::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw FormatError(where + ": " + msg);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

MultiIndex index_from_json(const Json& j, int dimension, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension) {
    fail(where, "expected an exponent array of length " + std::to_string(dimension));
  }
  MultiIndex m;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long>() < 0) fail(where, "exponents must be non-negative integers");
    m.push_back(e.get<int>());
  }
  return m;
}

void check_version(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find("format_version");
  if (it == j.end()) return;
  if (!it->is_number_integer() || it->get<int>() != kFormatVersion) {
    fail(where, "unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  if (key.empty()) return parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (key.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Json scalar_to_json(const GaussianRational& z) {
  return Json{{"re", GaussianRational::rational_string(z.re())}, {"im", GaussianRational::rational_string(z.im())}};
}

GaussianRational scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(j.get<long>());
    if (j.is_object()) {
      auto part = [&](const char* key) -> std::string {
        const auto it = j.find(key);
        if (it == j.end()) return "0";
        if (it->is_number_integer()) return std::to_string(it->get<long>());
        if (!it->is_string()) fail(where, "scalar parts must be strings or integers");
        return it->get<std::string>();
      };
      return GaussianRational::parse(part("re"), part("im"));
    }
  } catch (const FormatError& e) {
    if (std::string(e.what()).rfind(where, 0) == 0) throw;
    fail(where, e.what());
  }
  fail(where, "scalars must be \"p/q\" strings, integers or {re, im} objects");
}

Json poly_to_json(const PolyFunction& f) {
  Json arr = Json::array();
  for (const auto& [beta, c] : f.terms()) {
    arr.push_back(Json{{"beta", beta},
                       {"re", GaussianRational::rational_string(c.re())},
                       {"im", GaussianRational::rational_string(c.im())}});
  }
  return arr;
}

PolyFunction poly_from_json(const Json& j, int dimension, const std::string& where) {
  PolyFunction f(dimension);
  if (j.is_string() || j.is_number_integer()) {
    f.add_term(MultiIndex(dimension, 0), scalar_from_json(j, where));
    return f;
  }
  if (!j.is_array()) fail(where, "polynomials are arrays of {beta, re, im}");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const Json& t = j[i];
    const MultiIndex beta = index_from_json(member(t, "beta", w), dimension, w + ".beta");
    f.add_term(beta, scalar_from_json(t, w));
  }
  return f;
}

Json affine_to_json(const AffineDiffeo& phi) {
  Json a = Json::array();
  const Matrix& m = phi.linear();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    a.push_back(row);
  }
  Json b = Json::array();
  for (const auto& v : phi.offset()) b.push_back(scalar_to_json(v));
  return Json{{"A", a}, {"b", b}};
}

AffineDiffeo affine_from_json(const Json& j, int dimension, const std::string& where) {
  const Json& a = member(j, "A", where);
  if (!a.is_array() || static_cast<int>(a.size()) != dimension) fail(where + ".A", "expected a square matrix of size d");
  Matrix m(dimension, dimension);
  for (int r = 0; r < dimension; ++r) {
    if (!a[r].is_array() || static_cast<int>(a[r].size()) != dimension) fail(where + ".A", "row length must equal d");
    for (int c = 0; c < dimension; ++c)
      m(r, c) = scalar_from_json(a[r][c], where + ".A[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  std::vector<GaussianRational> b(dimension);
  if (j.contains("b")) {
    const Json& bj = j["b"];
    if (!bj.is_array() || static_cast<int>(bj.size()) != dimension) fail(where + ".b", "offset length must equal d");
    for (int i = 0; i < dimension; ++i) b[i] = scalar_from_json(bj[i], where + ".b[" + std::to_string(i) + "]");
  }
  try {
    return AffineDiffeo(std::move(m), std::move(b));
  } catch (const NotInvertibleError&) {
    fail(where, "linear part is singular");
  }
}

Json symbol_to_json(const FormalSymbol& p) {
  Json levels = Json::array();
  for (int n = 0; n <= p.order(); ++n) {
    Json terms = Json::array();
    for (const auto& [alpha, f] : p.level(n).terms()) terms.push_back(Json{{"alpha", alpha}, {"poly", poly_to_json(f)}});
    if (!terms.empty()) levels.push_back(Json{{"n", n}, {"terms", terms}});
  }
  return Json{{"order", p.order()}, {"levels", levels}};
}

FormalSymbol symbol_from_json(const Json& j, int dimension, const std::string& where) {
  const Json& oj = member(j, "order", where);
  if (!oj.is_number_integer() || oj.get<int>() < 0) fail(where + ".order", "order must be a non-negative integer");
  const int order = oj.get<int>();
  std::vector<XiPolynomial> levels(order + 1, XiPolynomial(dimension));
  const Json& lj = member(j, "levels", where);
  if (!lj.is_array()) fail(where + ".levels", "expected an array");
  for (std::size_t i = 0; i < lj.size(); ++i) {
    const std::string w = where + ".levels[" + std::to_string(i) + "]";
    const Json& nj = member(lj[i], "n", w);
    if (!nj.is_number_integer() || nj.get<int>() < 0 || nj.get<int>() > order) fail(w + ".n", "level outside [0, order]");
    const int n = nj.get<int>();
    const Json& tj = member(lj[i], "terms", w);
    if (!tj.is_array()) fail(w + ".terms", "expected an array");
    for (std::size_t t = 0; t < tj.size(); ++t) {
      const std::string wt = w + ".terms[" + std::to_string(t) + "]";
      const MultiIndex alpha = index_from_json(member(tj[t], "alpha", wt), dimension, wt + ".alpha");
      if (total_degree(alpha) > n) {
        fail(wt, "grading violated: xi-degree " + std::to_string(total_degree(alpha)) + " at hbar-level " + std::to_string(n));
      }
      levels[n].add_term(alpha, poly_from_json(member(tj[t], "poly", wt), dimension, wt + ".poly"));
    }
  }
  return FormalSymbol(order, std::move(levels));
}

Json group_to_json(const FiniteGroup& g) {
  Json table = Json::object();
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) table[g.label(a) + "," + g.label(b)] = g.label(g.multiply(a, b));
  return Json{{"format_version", kFormatVersion}, {"elements", g.labels()}, {"table", table}};
}

FiniteGroup group_from_json(const Json& j, const std::string& where) {
  check_version(j, where);
  const Json& ej = member(j, "elements", where);
  if (!ej.is_array() || ej.empty()) fail(where + ".elements", "expected a non-empty array of labels");
  std::vector<std::string> labels;
  for (const auto& e : ej) {
    if (!e.is_string()) fail(where + ".elements", "labels must be strings");
    labels.push_back(e.get<std::string>());
  }
  const Json& tj = member(j, "table", where);
  if (!tj.is_object()) fail(where + ".table", "expected an object keyed by \"g,h\"");
  std::map<std::pair<std::string, std::string>, std::string> table;
  for (const auto& [key, value] : tj.items()) {
    const auto parts = split_key(key);
    if (parts.size() != 2) fail(where + ".table", "key '" + key + "' is not of the form \"g,h\"");
    if (!value.is_string()) fail(where + ".table." + key, "products must be labels");
    table[{parts[0], parts[1]}] = value.get<std::string>();
  }
  try {
    return FiniteGroup::build(std::move(labels), table);
  } catch (const GroupAxiomError& e) {
    fail(where, std::string("group axiom '") + e.axiom() + "' fails: " + e.what());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json action_to_json(const AffineAction& a) {
  Json maps = Json::object();
  for (std::size_t g = 0; g < a.group().size(); ++g) maps[a.group().label(g)] = affine_to_json(a.map(g));
  return Json{{"format_version", kFormatVersion}, {"maps", maps}};
}

AffineAction action_from_json(const Json& j, const FiniteGroup& g, int dimension, const std::string& where) {
  check_version(j, where);
  const Json& maps = j.contains("maps") ? j["maps"] : j;
  if (!maps.is_object()) fail(where, "expected an object keyed by group labels");
  for (const auto& [key, value] : maps.items()) {
    if (key == "format_version" && &maps == &j) continue;
    try {
      g.index_of(key);
    } catch (const FormatError&) {
      fail(where, "unknown group element '" + key + "'");
    }
  }
  std::vector<AffineDiffeo> phis;
  for (std::size_t h = 0; h < g.size(); ++h) {
    const auto it = maps.find(g.label(h));
    if (it == maps.end()) fail(where, "missing action entry for element '" + g.label(h) + "'");
    phis.push_back(affine_from_json(*it, dimension, where + "." + g.label(h)));
  }
  AffineAction action(g, std::move(phis));
  const ActionReport r = action_validate(action);
  if (!r.identity_ok) fail(where, "the identity element does not act as the identity map");
  if (!r.valid) {
    const auto [a, b] = r.failing_pairs.front();
    fail(where, "not a homomorphism at (" + g.label(a) + "," + g.label(b) + ")");
  }
  return action;
}

std::string tuple_key(const FiniteGroup& g, std::span<const std::size_t> tuple) {
  std::string key;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) key += ',';
    key += g.label(tuple[i]);
  }
  return key;
}

Json tuple_to_json(const FiniteGroup& g, std::span<const std::size_t> tuple) {
  Json arr = Json::array();
  for (auto t : tuple) arr.push_back(g.label(t));
  return arr;
}

Json cochain_to_json(const Cochain& c) {
  Json values = Json::object();
  const auto tuples = enumerate_tuples(c.group(), c.degree());
  for (std::size_t i = 0; i < tuples.size(); ++i) values[tuple_key(c.group(), tuples[i])] = symbol_to_json(c.value(i));
  return Json{{"format_version", kFormatVersion}, {"degree", c.degree()}, {"values", values}};
}

Cochain cochain_from_json(const Json& j, const ComplexPtr& complex, int order, const std::string& where) {
  check_version(j, where);
  const Json& dj = member(j, "degree", where);
  if (!dj.is_number_integer() || dj.get<int>() < 0) fail(where + ".degree", "degree must be a non-negative integer");
  const int degree = dj.get<int>();
  const Json& vj = member(j, "values", where);
  if (!vj.is_object()) fail(where + ".values", "expected an object keyed by tuples");
  const FiniteGroup& g = complex->group();
  for (const auto& [key, value] : vj.items()) {
    const auto parts = split_key(key);
    if (static_cast<int>(parts.size()) != degree) fail(where + ".values", "key '" + key + "' has the wrong length");
    for (const auto& p : parts) {
      try {
        g.index_of(p);
      } catch (const FormatError&) {
        fail(where + ".values", "unknown group element '" + p + "' in key '" + key + "'");
      }
    }
  }
  std::vector<FormalSymbol> values;
  for (const auto& t : enumerate_tuples(g, degree)) {
    const std::string key = tuple_key(g, t);
    const auto it = vj.find(key);
    if (it == vj.end()) fail(where + ".values", "missing value for tuple (" + key + ")");
    FormalSymbol v = symbol_from_json(*it, complex->dimension(), where + ".values." + key);
    if (v.order() > order) fail(where + ".values." + key, "truncation order exceeds the scenario order");
    values.push_back(v.with_order(order));
  }
  Cochain c = Cochain::from_values(complex, degree, std::move(values));
  if (degree >= 1 && !c.is_normalized()) fail(where, "cochain is not normalized: value at the identity tuple must be 1");
  return c;
}

std::vector<PolyFunction> table_from_json(const Json& j, const FiniteGroup& g, int dimension, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by group labels");
  for (const auto& [key, value] : j.items()) {
    try {
      g.index_of(key);
    } catch (const FormatError&) {
      fail(where, "unknown group element '" + key + "'");
    }
  }
  std::vector<PolyFunction> out;
  for (std::size_t h = 0; h < g.size(); ++h) {
    const auto it = j.find(g.label(h));
    if (it == j.end()) fail(where, "missing entry for element '" + g.label(h) + "'");
    out.push_back(poly_from_json(*it, dimension, where + "." + g.label(h)));
  }
  return out;
}

Json witnesses_to_json(const FiniteGroup& g, const std::vector<Witness>& w) {
  Json arr = Json::array();
  for (const auto& x : w) arr.push_back(Json{{"tuple", tuple_to_json(g, x.tuple)}, {"difference", symbol_to_json(x.difference)}});
  return arr;
}

Json cohomology_to_json(const CohomologyReport& r) {
  return Json{{"window", {{"n", r.n}, {"k", r.k}, {"D_in", r.d_in}, {"D_out", r.d_out}}},
              {"ranks", {{"dim_domain", r.dim_domain}, {"rank_out", r.rank_out}, {"dim_kernel", r.dim_kernel}, {"rank_in", r.rank_in}}},
              {"H_dim", r.h_dim},
              {"window_closed", r.window_closed}};
}

Json record_to_json(const OrderRecord& r) {
  return Json{{"order", r.order}, {"D_in", r.d_in}, {"D_out", r.d_out}, {"unknowns", r.unknowns}, {"rank", r.rank}, {"rhs_zero", r.rhs_zero}};
}

Json certificate_to_json(const ObstructionCertificate& c) {
  Json j{{"order", c.order},
         {"stage", c.stage},
         {"window", {{"n", c.level}, {"k", c.cochain_degree}, {"D_in", c.d_in}, {"D_out", c.d_out}}},
         {"ranks", {{"matrix", c.rank_matrix}, {"augmented", c.rank_augmented}}}};
  if (c.rhs) j["cocycle"] = cochain_to_json(*c.rhs);
  return j;
}

}  // namespace gsys::io
