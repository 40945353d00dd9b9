#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsys/group.hpp"
#include "gsys/symbols.hpp"

namespace gsys {

/// A validated affine action together with cached diffeomorphisms for every group element.
/// Shared by all cochains of one complex.
class AmplitudeComplex {
 public:
  /// Throws PreconditionError when the action fails action_validate.
  static std::shared_ptr<const AmplitudeComplex> make(AffineAction action);

  const AffineAction& action() const noexcept { return action_; }
  const FiniteGroup& group() const noexcept { return action_.group(); }
  int dimension() const noexcept { return action_.dimension(); }
  const AffineDiffeo& diffeo(std::size_t g) const { return action_.map(g); }
  /// phi_{g_1 ... g_k}.
  const AffineDiffeo& diffeo_of_product(std::span<const std::size_t> tuple) const {
    return action_.map(group().product(tuple));
  }
  const AffineDiffeo& identity_map() const noexcept { return identity_; }

 private:
  explicit AmplitudeComplex(AffineAction action);

  AffineAction action_;
  AffineDiffeo identity_;
};

using ComplexPtr = std::shared_ptr<const AmplitudeComplex>;

/// Degree-k cochain G^k -> FormalSymbol, stored as a table in enumerate_tuples order.
/// All values share the dimension and truncation order. Degree 0 holds one value.
class Cochain {
 public:
  static Cochain zero(ComplexPtr complex, int degree, int order);
  /// Every value equal to the unit symbol.
  static Cochain unit(ComplexPtr complex, int degree, int order);
  static Cochain from_values(ComplexPtr complex, int degree, std::vector<FormalSymbol> values);
  static Cochain generate(ComplexPtr complex, int degree, int order,
                          const std::function<FormalSymbol(const GroupTuple&)>& value_at);

  const ComplexPtr& complex() const noexcept { return complex_; }
  const FiniteGroup& group() const noexcept { return complex_->group(); }
  int degree() const noexcept { return degree_; }
  int order() const noexcept { return order_; }
  int dimension() const noexcept { return complex_->dimension(); }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<FormalSymbol>& values() const noexcept { return values_; }
  const FormalSymbol& value(std::size_t index) const { return values_.at(index); }
  const FormalSymbol& at(std::span<const std::size_t> tuple) const;
  void set(std::span<const std::size_t> tuple, FormalSymbol v);

  /// Value at (e, ..., e) equals the unit symbol.
  bool is_normalized() const;
  bool is_zero() const;
  /// Every value is xi-free and hbar-free.
  bool is_xi_independent() const;
  int x_degree() const;

  Cochain with_order(int order) const;
  /// Keeps hbar-levels in [from, to], zeroes the rest.
  Cochain levels_between(int from, int to) const;

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const GaussianRational& c);

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator-(Cochain a) { return a *= GaussianRational(-1); }
  friend Cochain operator*(Cochain a, const GaussianRational& c) { return a *= c; }
  friend Cochain operator*(const GaussianRational& c, Cochain a) { return a *= c; }
  /// Same complex (structurally), degree, order and values.
  friend bool operator==(const Cochain& a, const Cochain& b);

 private:
  Cochain(ComplexPtr complex, int degree, int order, std::vector<FormalSymbol> values);

  ComplexPtr complex_;
  int degree_;
  int order_;
  std::vector<FormalSymbol> values_;
};

/// Throws MismatchError unless both cochains live over the same action with equal order.
void require_compatible(const Cochain& a, const Cochain& b, const char* what);

/// (da)(g_1..g_{k+1}) = sum_{i=1}^{k} (-1)^i a(g_1, ..., g_i g_{i+1}, ..., g_{k+1}).
/// Degree 0 maps to the zero 1-cochain.
Cochain differential(const Cochain& a);

/// (a * b)(g_1..g_{k+l}) = a(g_1..g_k) star b(g_{k+1}..g_{k+l}) with diffeomorphisms
/// phi_{g_1...g_k} and phi_{g_{k+1}...g_{k+l}}.
Cochain cup_star(const Cochain& a, const Cochain& b);

/// da + a * a for a degree-1 cochain.
Cochain mc_residual(const Cochain& a);

/// Degree-1 cochain whose Maurer-Cartan residual vanishes through its truncation order.
class MCElement {
 public:
  /// Throws PreconditionError carrying the first nonzero residual entry otherwise.
  static MCElement verify(Cochain a);
  static std::optional<MCElement> try_verify(Cochain a);

  const Cochain& cochain() const noexcept { return cochain_; }
  int order() const noexcept { return cochain_.order(); }
  /// hbar-free part (level 0) re-verified at truncation `order`.
  MCElement leading_term(int order) const;
  MCElement with_order(int order) const;

 private:
  explicit MCElement(Cochain a) : cochain_(std::move(a)) {}
  Cochain cochain_;
};

/// d_{P0} a = da + P0 * a - (-1)^{|a|} a * P0.
Cochain twisted_differential(const MCElement& p0, const Cochain& a);

struct Witness {
  GroupTuple tuple;
  FormalSymbol difference;
};

struct CheckReport {
  bool passed = true;
  std::vector<Witness> witnesses;
  std::string note;
};

struct RepresentationReport {
  bool passed = true;
  /// Pairs where a_{g1} star a_{g2} != a_{g1 g2}; difference = a_{g1} star a_{g2} - a_{g1 g2}.
  std::vector<Witness> witnesses;
  /// mc_residual(a) == 0, computed independently.
  bool residual_zero = true;
  /// witnesses agree with the nonzero entries of the residual.
  bool consistent = true;
};

/// Representation property of g -> Op(a_g, phi_g), cross-checked against mc_residual.
RepresentationReport representation_check(const Cochain& a);

/// a_g star u == u star b_g for all g (diffeomorphisms phi_g, id and id, phi_g).
/// Throws NotInvertibleError when u is not a unit.
CheckReport gauge_relation_check(const MCElement& a, const MCElement& b, const FormalSymbol& u);

/// b_g = u^{-1} star (a_g star u); returned verified as an MC element.
MCElement conjugate_by_unit(const MCElement& a, const FormalSymbol& u);

/// a_{g1 g2}(x) = a_{g1}(x) a_{g2}(phi_{g1}^{-1}(x)) for a xi- and hbar-free degree-1 cochain.
/// Throws PreconditionError for other inputs.
CheckReport xi_multiplicative_cocycle_check(const Cochain& a);

/// S_{g1 g2} = S_{g1} + S_{g2} o phi_{g1}^{-1}. Requires S_e = 0 (PreconditionError otherwise).
CheckReport additive_cocycle_check(const AffineAction& action, const std::vector<PolyFunction>& s);

/// S~_g - S_g == K o phi_g^{-1} - K for all g. Both S and S~ must pass additive_cocycle_check.
CheckReport coboundary_intertwiner_check(const AffineAction& action, const std::vector<PolyFunction>& s,
                                         const std::vector<PolyFunction>& s_tilde, const PolyFunction& k);

}  // namespace gsys
