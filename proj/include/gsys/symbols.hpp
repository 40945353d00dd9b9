#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsys/affine.hpp"
#include "gsys/poly.hpp"

namespace gsys {

/// Polynomial in xi with polynomial-in-x coefficients: sum_alpha f_alpha(x) xi^alpha.
/// As an operator it acts through D_j = -i d/dx_j with coefficients on the left.
class XiPolynomial {
 public:
  using TermMap = std::map<MultiIndex, PolyFunction, GradedLexLess>;

  explicit XiPolynomial(int dimension);

  static XiPolynomial from_function(const PolyFunction& f);
  static XiPolynomial term(const MultiIndex& alpha, const PolyFunction& coefficient);
  /// c x^beta xi^alpha.
  static XiPolynomial monomial(int dimension, const MultiIndex& alpha, const MultiIndex& beta,
                               const GaussianRational& c = 1);

  int dimension() const noexcept { return dimension_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// max |alpha| over nonzero terms; -1 for zero.
  int xi_degree() const;
  /// max total x-degree over the coefficients; -1 for zero.
  int x_degree() const;
  bool is_xi_free() const { return xi_degree() <= 0; }
  PolyFunction coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const PolyFunction& f);

  XiPolynomial& operator+=(const XiPolynomial& o);
  XiPolynomial& operator-=(const XiPolynomial& o);
  XiPolynomial& operator*=(const GaussianRational& c);

  friend XiPolynomial operator+(XiPolynomial a, const XiPolynomial& b) { return a += b; }
  friend XiPolynomial operator-(XiPolynomial a, const XiPolynomial& b) { return a -= b; }
  friend XiPolynomial operator-(XiPolynomial a) { return a *= GaussianRational(-1); }
  friend XiPolynomial operator*(XiPolynomial a, const GaussianRational& c) { return a *= c; }
  friend XiPolynomial operator*(const GaussianRational& c, XiPolynomial a) { return a *= c; }
  /// Commutative product of polynomials in (x, xi).
  friend XiPolynomial operator*(const XiPolynomial& a, const XiPolynomial& b);
  friend XiPolynomial operator*(const PolyFunction& f, const XiPolynomial& a);
  friend bool operator==(const XiPolynomial& a, const XiPolynomial& b) = default;

  std::string to_display() const;

 private:
  int dimension_;
  TermMap terms_;
};

XiPolynomial xi_partial(const XiPolynomial& p, int axis);
XiPolynomial x_partial(const XiPolynomial& p, int axis);

/// f_alpha -> f_alpha o phi, xi untouched.
XiPolynomial pull_back_coefficients(const XiPolynomial& p, const AffineDiffeo& phi);

/// P(x, M^T xi).
XiPolynomial xi_linear_substitute(const XiPolynomial& p, const Matrix& m);

/// P(x, D) f = sum_alpha f_alpha (-i)^|alpha| d^alpha f.
PolyFunction diff_op_apply(const XiPolynomial& p, const PolyFunction& f);

/// The symbol Q with P(x,D) o T = T o Q(x,D), where T psi = psi o phi^{-1}:
/// Q(y, xi) = P(phi(y), C^T xi), C the inverse Jacobian.
XiPolynomial conjugate_by_diffeo(const XiPolynomial& p, const AffineDiffeo& phi);

/// Symbol of P(x,D) o K(x,D): sum_alpha (1/alpha!) d_xi^alpha P * (-i)^|alpha| d_x^alpha K.
XiPolynomial diffop_symbol_compose(const XiPolynomial& p, const XiPolynomial& k);

/// Element of the truncated symbol space: P^0 + hbar P^1 + ... + hbar^N P^N with
/// xi-degree(P^n) <= n.
class FormalSymbol {
 public:
  /// The zero symbol.
  FormalSymbol(int dimension, int order);
  /// Throws PreconditionError when the grading is violated.
  FormalSymbol(int order, std::vector<XiPolynomial> levels);

  static FormalSymbol unit(int dimension, int order);
  static FormalSymbol constant(int dimension, int order, const GaussianRational& c);
  static FormalSymbol from_function(const PolyFunction& f, int order);
  /// hbar^level * p.
  static FormalSymbol at_level(const XiPolynomial& p, int level, int order);

  int dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }
  const std::vector<XiPolynomial>& levels() const noexcept { return levels_; }
  const XiPolynomial& level(int n) const { return levels_.at(n); }
  void set_level(int n, XiPolynomial p);

  bool is_zero() const;
  bool is_xi_free() const;
  bool is_hbar_free() const;
  /// max x-degree over all levels; -1 for zero.
  int x_degree() const;

  /// Truncates or pads with zero levels.
  FormalSymbol with_order(int order) const;

  FormalSymbol& operator+=(const FormalSymbol& o);
  FormalSymbol& operator-=(const FormalSymbol& o);
  FormalSymbol& operator*=(const GaussianRational& c);

  friend FormalSymbol operator+(FormalSymbol a, const FormalSymbol& b) { return a += b; }
  friend FormalSymbol operator-(FormalSymbol a, const FormalSymbol& b) { return a -= b; }
  friend FormalSymbol operator-(FormalSymbol a) { return a *= GaussianRational(-1); }
  friend FormalSymbol operator*(FormalSymbol a, const GaussianRational& c) { return a *= c; }
  friend FormalSymbol operator*(const GaussianRational& c, FormalSymbol a) { return a *= c; }
  friend bool operator==(const FormalSymbol& a, const FormalSymbol& b) = default;

  std::string to_display() const;

 private:
  int dimension_;
  int order_;
  std::vector<XiPolynomial> levels_;
};

/// psi^0 + hbar psi^1 + ... + hbar^N psi^N.
class FormalFunction {
 public:
  FormalFunction(int dimension, int order);
  FormalFunction(int order, std::vector<PolyFunction> levels);

  static FormalFunction from_function(const PolyFunction& f, int order);

  int dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }
  const std::vector<PolyFunction>& levels() const noexcept { return levels_; }
  const PolyFunction& level(int n) const { return levels_.at(n); }

  friend bool operator==(const FormalFunction& a, const FormalFunction& b) = default;

 private:
  int dimension_;
  int order_;
  std::vector<PolyFunction> levels_;
};

/// hbar-expanded amplitude a^0 + hbar a^1 + ..., each a^j a joint polynomial in (x, xi).
class Amplitude {
 public:
  Amplitude(int order, std::vector<XiPolynomial> levels);

  int dimension() const noexcept { return levels_.front().dimension(); }
  int order() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<XiPolynomial>& levels() const noexcept { return levels_; }

  friend bool operator==(const Amplitude& a, const Amplitude& b) = default;

 private:
  std::vector<XiPolynomial> levels_;
};

/// Action of Op(P, phi) on a formal function:
/// hbar^m coefficient = sum_{n+k=m} sum_alpha f^n_alpha(x) ((D^alpha psi^k) o phi^{-1})(x).
/// Truncated at min(order(P), order(psi)).
FormalFunction op_apply(const FormalSymbol& p, const AffineDiffeo& phi, const FormalFunction& psi);

/// Symbol R with Op(P, phi1) o Op(K, phi2) = Op(R, phi1 o phi2).
FormalSymbol star_compose(const FormalSymbol& p, const AffineDiffeo& phi1, const FormalSymbol& k,
                          const AffineDiffeo& phi2);

/// One hbar-level block of star_compose: the symbol (at level n+k) contributed by P^n and K^k.
XiPolynomial star_compose_levels(const XiPolynomial& p, const AffineDiffeo& phi1, const XiPolynomial& k,
                                 const AffineDiffeo& phi2);

/// Two-sided inverse for the product at phi1 = phi2 = id. The leading level must be a nonzero
/// constant; otherwise NotInvertibleError.
FormalSymbol invert_unit(const FormalSymbol& u);

/// P^n = sum_{|alpha|<=n} (1/alpha!) (d_xi^alpha a^{n-|alpha|})(x, 0) xi^alpha, n = 0..order.
FormalSymbol asymptotic_symbol(const Amplitude& a, int order);

/// Amplitude whose asymptotic symbol is `p`: a^j = sum_alpha [xi^alpha coefficient of P^{j+|alpha|}] xi^alpha.
Amplitude amplitude_from_symbol(const FormalSymbol& p);

}  // namespace gsys
