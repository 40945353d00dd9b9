#include "gsys/cochain.hpp"

#include <algorithm>

#include "gsys/error.hpp"

namespace gsys {

// ---------------------------------------------------------------- AmplitudeComplex

AmplitudeComplex::AmplitudeComplex(AffineAction action)
    : action_(std::move(action)), identity_(AffineDiffeo::identity(action_.dimension())) {}

std::shared_ptr<const AmplitudeComplex> AmplitudeComplex::make(AffineAction action) {
  const ActionReport report = action_validate(action);
  if (!report.identity_ok) throw PreconditionError("action does not map the identity element to the identity map");
  if (!report.valid) {
    const auto [g, h] = report.failing_pairs.front();
    throw PreconditionError("action is not a homomorphism: phi_{" + action.group().label(g) + action.group().label(h) +
                            "} != phi_" + action.group().label(g) + " o phi_" + action.group().label(h));
  }
  return std::shared_ptr<const AmplitudeComplex>(new AmplitudeComplex(std::move(action)));
}

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(ComplexPtr complex, int degree, int order, std::vector<FormalSymbol> values)
    : complex_(std::move(complex)), degree_(degree), order_(order), values_(std::move(values)) {}

Cochain Cochain::zero(ComplexPtr complex, int degree, int order) {
  if (degree < 0) throw PreconditionError("negative cochain degree");
  const std::size_t n = tuple_count(complex->group(), degree);
  std::vector<FormalSymbol> values(n, FormalSymbol(complex->dimension(), order));
  return Cochain(std::move(complex), degree, order, std::move(values));
}

Cochain Cochain::unit(ComplexPtr complex, int degree, int order) {
  if (degree < 0) throw PreconditionError("negative cochain degree");
  const std::size_t n = tuple_count(complex->group(), degree);
  std::vector<FormalSymbol> values(n, FormalSymbol::unit(complex->dimension(), order));
  return Cochain(std::move(complex), degree, order, std::move(values));
}

Cochain Cochain::from_values(ComplexPtr complex, int degree, std::vector<FormalSymbol> values) {
  if (degree < 0) throw PreconditionError("negative cochain degree");
  if (values.size() != tuple_count(complex->group(), degree)) {
    throw PreconditionError("cochain needs one value per tuple in G^" + std::to_string(degree));
  }
  const int order = values.front().order();
  for (const auto& v : values) {
    require_same_dimension(complex->dimension(), v.dimension(), "cochain value");
    if (v.order() != order) throw MismatchError("cochain values have different truncation orders");
  }
  return Cochain(std::move(complex), degree, order, std::move(values));
}

Cochain Cochain::generate(ComplexPtr complex, int degree, int order,
                          const std::function<FormalSymbol(const GroupTuple&)>& value_at) {
  std::vector<FormalSymbol> values;
  for (const auto& t : enumerate_tuples(complex->group(), degree)) values.push_back(value_at(t));
  if (values.empty()) throw PreconditionError("empty cochain");
  for (const auto& v : values)
    if (v.order() != order) throw MismatchError("generated value has the wrong truncation order");
  return from_values(std::move(complex), degree, std::move(values));
}

const FormalSymbol& Cochain::at(std::span<const std::size_t> tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw PreconditionError("tuple length differs from cochain degree");
  return values_[tuple_index(group(), tuple)];
}

void Cochain::set(std::span<const std::size_t> tuple, FormalSymbol v) {
  if (static_cast<int>(tuple.size()) != degree_) throw PreconditionError("tuple length differs from cochain degree");
  require_same_dimension(dimension(), v.dimension(), "cochain value");
  if (v.order() != order_) throw MismatchError("cochain value has the wrong truncation order");
  values_[tuple_index(group(), tuple)] = std::move(v);
}

bool Cochain::is_normalized() const {
  const GroupTuple identity_tuple(degree_, group().identity());
  return at(identity_tuple) == FormalSymbol::unit(dimension(), order_);
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const FormalSymbol& v) { return v.is_zero(); });
}

bool Cochain::is_xi_independent() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const FormalSymbol& v) { return v.is_xi_free() && v.is_hbar_free(); });
}

int Cochain::x_degree() const {
  int deg = -1;
  for (const auto& v : values_) deg = std::max(deg, v.x_degree());
  return deg;
}

Cochain Cochain::with_order(int order) const {
  std::vector<FormalSymbol> values;
  values.reserve(values_.size());
  for (const auto& v : values_) values.push_back(v.with_order(order));
  return Cochain(complex_, degree_, order, std::move(values));
}

Cochain Cochain::levels_between(int from, int to) const {
  Cochain out = *this;
  for (auto& v : out.values_)
    for (int n = 0; n <= order_; ++n)
      if (n < from || n > to) v.set_level(n, XiPolynomial(dimension()));
  return out;
}

void require_compatible(const Cochain& a, const Cochain& b, const char* what) {
  if (a.complex() != b.complex() && !(a.complex()->action() == b.complex()->action())) {
    throw MismatchError(std::string(what) + ": cochains live over different actions");
  }
  if (a.order() != b.order()) throw MismatchError(std::string(what) + ": truncation order mismatch");
}

Cochain& Cochain::operator+=(const Cochain& o) {
  require_compatible(*this, o, "cochain sum");
  if (degree_ != o.degree_) throw MismatchError("cochain sum: degree mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  require_compatible(*this, o, "cochain difference");
  if (degree_ != o.degree_) throw MismatchError("cochain difference: degree mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Cochain& Cochain::operator*=(const GaussianRational& c) {
  for (auto& v : values_) v *= c;
  return *this;
}

bool operator==(const Cochain& a, const Cochain& b) {
  if (a.complex_ != b.complex_ && !(a.complex_->action() == b.complex_->action())) return false;
  return a.degree_ == b.degree_ && a.order_ == b.order_ && a.values_ == b.values_;
}

// ---------------------------------------------------------------- DGA structure

Cochain differential(const Cochain& a) {
  const int k = a.degree();
  const FiniteGroup& g = a.group();
  Cochain out = Cochain::zero(a.complex(), k + 1, a.order());
  if (k == 0) return out;
  GroupTuple face(k);
  auto tuples = enumerate_tuples(g, k + 1);
  std::vector<FormalSymbol> values;
  values.reserve(tuples.size());
  for (const auto& t : tuples) {
    FormalSymbol acc(a.dimension(), a.order());
    for (int i = 1; i <= k; ++i) {
      // merge positions i-1 and i (zero-based)
      int w = 0;
      for (int j = 0; j < k + 1; ++j) {
        if (j == i - 1) {
          face[w++] = g.multiply(t[j], t[j + 1]);
          ++j;
        } else {
          face[w++] = t[j];
        }
      }
      const FormalSymbol& v = a.at(face);
      if (v.is_zero()) continue;
      if (i % 2 == 0) acc += v;
      else acc -= v;
    }
    values.push_back(std::move(acc));
  }
  return Cochain::from_values(a.complex(), k + 1, std::move(values));
}

Cochain cup_star(const Cochain& a, const Cochain& b) {
  require_compatible(a, b, "cup_star");
  const int k = a.degree();
  const int l = b.degree();
  const AmplitudeComplex& cx = *a.complex();
  std::vector<FormalSymbol> values;
  const auto tuples = enumerate_tuples(cx.group(), k + l);
  values.reserve(tuples.size());
  for (const auto& t : tuples) {
    const std::span<const std::size_t> left(t.data(), k);
    const std::span<const std::size_t> right(t.data() + k, l);
    const FormalSymbol& av = a.at(left);
    const FormalSymbol& bv = b.at(right);
    if (av.is_zero() || bv.is_zero()) {
      values.emplace_back(a.dimension(), a.order());
      continue;
    }
    values.push_back(star_compose(av, cx.diffeo_of_product(left), bv, cx.diffeo_of_product(right)));
  }
  return Cochain::from_values(a.complex(), k + l, std::move(values));
}

Cochain mc_residual(const Cochain& a) {
  if (a.degree() != 1) throw PreconditionError("mc_residual expects a degree-1 cochain");
  return differential(a) + cup_star(a, a);
}

MCElement MCElement::verify(Cochain a) {
  const Cochain r = mc_residual(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.value(i).is_zero()) {
      const auto t = enumerate_tuples(a.group(), 2)[i];
      throw PreconditionError("not a Maurer-Cartan element: residual at (" + tuple_label(a.group(), t) +
                              ") is " + r.value(i).to_display());
    }
  }
  return MCElement(std::move(a));
}

std::optional<MCElement> MCElement::try_verify(Cochain a) {
  if (a.degree() != 1 || !mc_residual(a).is_zero()) return std::nullopt;
  return MCElement(std::move(a));
}

MCElement MCElement::leading_term(int order) const {
  return verify(cochain_.levels_between(0, 0).with_order(order));
}

MCElement MCElement::with_order(int order) const { return verify(cochain_.with_order(order)); }

Cochain twisted_differential(const MCElement& p0, const Cochain& a) {
  require_compatible(p0.cochain(), a, "twisted_differential");
  Cochain out = differential(a) + cup_star(p0.cochain(), a);
  const Cochain right = cup_star(a, p0.cochain());
  if (a.degree() % 2 == 0) out -= right;
  else out += right;
  return out;
}

// ---------------------------------------------------------------- checks

RepresentationReport representation_check(const Cochain& a) {
  if (a.degree() != 1) throw PreconditionError("representation_check expects a degree-1 cochain");
  const AmplitudeComplex& cx = *a.complex();
  const FiniteGroup& g = cx.group();
  RepresentationReport report;
  for (const auto& t : enumerate_tuples(g, 2)) {
    const std::size_t g1 = t[0], g2 = t[1];
    FormalSymbol diff = star_compose(a.at(std::span(&t[0], 1)), cx.diffeo(g1), a.at(std::span(&t[1], 1)), cx.diffeo(g2));
    const GroupTuple prod{g.multiply(g1, g2)};
    diff -= a.at(prod);
    if (!diff.is_zero()) report.witnesses.push_back({t, std::move(diff)});
  }
  report.passed = report.witnesses.empty();
  const Cochain residual = mc_residual(a);
  report.residual_zero = residual.is_zero();
  std::size_t w = 0;
  report.consistent = true;
  const auto pairs = enumerate_tuples(g, 2);
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (residual.value(i).is_zero()) continue;
    if (w >= report.witnesses.size() || report.witnesses[w].tuple != pairs[i] ||
        !(report.witnesses[w].difference == residual.value(i))) {
      report.consistent = false;
      break;
    }
    ++w;
  }
  if (w != report.witnesses.size()) report.consistent = false;
  return report;
}

CheckReport gauge_relation_check(const MCElement& a, const MCElement& b, const FormalSymbol& u) {
  require_compatible(a.cochain(), b.cochain(), "gauge_relation_check");
  if (u.order() != a.order()) throw MismatchError("gauge_relation_check: unit has a different truncation order");
  invert_unit(u);
  const AmplitudeComplex& cx = *a.cochain().complex();
  CheckReport report;
  for (std::size_t g = 0; g < cx.group().size(); ++g) {
    const GroupTuple t{g};
    FormalSymbol lhs = star_compose(a.cochain().at(t), cx.diffeo(g), u, cx.identity_map());
    const FormalSymbol rhs = star_compose(u, cx.identity_map(), b.cochain().at(t), cx.diffeo(g));
    lhs -= rhs;
    if (!lhs.is_zero()) report.witnesses.push_back({t, std::move(lhs)});
  }
  report.passed = report.witnesses.empty();
  return report;
}

MCElement conjugate_by_unit(const MCElement& a, const FormalSymbol& u) {
  if (u.order() != a.order()) throw MismatchError("conjugate_by_unit: unit has a different truncation order");
  const FormalSymbol u_inv = invert_unit(u);
  const AmplitudeComplex& cx = *a.cochain().complex();
  std::vector<FormalSymbol> values;
  for (std::size_t g = 0; g < cx.group().size(); ++g) {
    const GroupTuple t{g};
    const FormalSymbol right = star_compose(a.cochain().at(t), cx.diffeo(g), u, cx.identity_map());
    values.push_back(star_compose(u_inv, cx.identity_map(), right, cx.diffeo(g)));
  }
  return MCElement::verify(Cochain::from_values(a.cochain().complex(), 1, std::move(values)));
}

CheckReport xi_multiplicative_cocycle_check(const Cochain& a) {
  if (a.degree() != 1) throw PreconditionError("multiplicative cocycle check expects a degree-1 cochain");
  if (!a.is_xi_independent()) throw PreconditionError("multiplicative cocycle check expects xi- and hbar-free values");
  const AmplitudeComplex& cx = *a.complex();
  const FiniteGroup& g = cx.group();
  const int d = a.dimension();
  const MultiIndex zero(d, 0);
  auto function_of = [&](std::size_t h) { return a.at(GroupTuple{h}).level(0).coefficient(zero); };
  CheckReport report;
  for (const auto& t : enumerate_tuples(g, 2)) {
    const PolyFunction rhs = function_of(t[0]) * poly_compose_affine(function_of(t[1]), affine_invert(cx.diffeo(t[0])));
    const PolyFunction diff = rhs - function_of(g.multiply(t[0], t[1]));
    if (!diff.is_zero()) report.witnesses.push_back({t, FormalSymbol::from_function(diff, a.order())});
  }
  report.passed = report.witnesses.empty();
  return report;
}

namespace {

void require_table(const AffineAction& action, const std::vector<PolyFunction>& s, const char* what) {
  if (s.size() != action.group().size()) throw PreconditionError(std::string(what) + ": one polynomial per group element required");
  for (const auto& f : s) require_same_dimension(action.dimension(), f.dimension(), what);
}

}  // namespace

CheckReport additive_cocycle_check(const AffineAction& action, const std::vector<PolyFunction>& s) {
  require_table(action, s, "additive_cocycle_check");
  const FiniteGroup& g = action.group();
  if (!s[g.identity()].is_zero()) throw PreconditionError("additive cocycle must vanish at the identity");
  CheckReport report;
  for (const auto& t : enumerate_tuples(g, 2)) {
    const PolyFunction rhs = s[t[0]] + poly_compose_affine(s[t[1]], affine_invert(action.map(t[0])));
    const PolyFunction diff = rhs - s[g.multiply(t[0], t[1])];
    if (!diff.is_zero()) report.witnesses.push_back({t, FormalSymbol::from_function(diff, 0)});
  }
  report.passed = report.witnesses.empty();
  return report;
}

CheckReport coboundary_intertwiner_check(const AffineAction& action, const std::vector<PolyFunction>& s,
                                         const std::vector<PolyFunction>& s_tilde, const PolyFunction& k) {
  require_same_dimension(action.dimension(), k.dimension(), "coboundary_intertwiner_check");
  if (!additive_cocycle_check(action, s).passed) throw PreconditionError("S is not an additive cocycle");
  if (!additive_cocycle_check(action, s_tilde).passed) throw PreconditionError("S~ is not an additive cocycle");
  CheckReport report;
  for (std::size_t g = 0; g < action.group().size(); ++g) {
    const PolyFunction delta_k = poly_compose_affine(k, affine_invert(action.map(g))) - k;
    const PolyFunction diff = (s_tilde[g] - s[g]) - delta_k;
    if (!diff.is_zero()) report.witnesses.push_back({GroupTuple{g}, FormalSymbol::from_function(diff, 0)});
  }
  report.passed = report.witnesses.empty();
  return report;
}

}  // namespace gsys
