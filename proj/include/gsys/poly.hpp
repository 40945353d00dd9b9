#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gsys/linalg.hpp"
#include "gsys/scalar.hpp"

namespace gsys {

/// Exponent vector beta in N^d.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& beta);

/// Graded lexicographic order: lower total degree first, ties broken by reverse
/// lexicographic comparison so that x_1 sorts after x_2 within a degree.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Every multi-index in N^dim with |beta| <= max_degree, in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree);

/// alpha! = prod alpha_j!
mpz_class multi_factorial(const MultiIndex& alpha);

/// Polynomial in x_1..x_d over Q(i); stands in for a smooth coefficient function.
/// Zero coefficients are never stored.
class PolyFunction {
 public:
  using TermMap = std::map<MultiIndex, GaussianRational, GradedLexLess>;

  explicit PolyFunction(int dimension);

  static PolyFunction constant(int dimension, const GaussianRational& c);
  static PolyFunction monomial(int dimension, MultiIndex beta, const GaussianRational& c = 1);
  /// x_axis, axis is zero-based.
  static PolyFunction variable(int dimension, int axis);

  int dimension() const noexcept { return dimension_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_constant() const;
  GaussianRational coefficient(const MultiIndex& beta) const;

  void add_term(const MultiIndex& beta, const GaussianRational& c);

  PolyFunction& operator+=(const PolyFunction& o);
  PolyFunction& operator-=(const PolyFunction& o);
  PolyFunction& operator*=(const GaussianRational& c);

  friend PolyFunction operator+(PolyFunction a, const PolyFunction& b) { return a += b; }
  friend PolyFunction operator-(PolyFunction a, const PolyFunction& b) { return a -= b; }
  friend PolyFunction operator-(PolyFunction a) { return a *= GaussianRational(-1); }
  friend PolyFunction operator*(PolyFunction a, const GaussianRational& c) { return a *= c; }
  friend PolyFunction operator*(const GaussianRational& c, PolyFunction a) { return a *= c; }
  friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
  friend bool operator==(const PolyFunction& a, const PolyFunction& b) = default;

  std::string to_display(const char* var = "x") const;

 private:
  int dimension_;
  TermMap terms_;
};

PolyFunction poly_mul(const PolyFunction& f, const PolyFunction& g);

/// d f / d x_axis (zero-based axis). Throws PreconditionError when out of range.
PolyFunction poly_partial(const PolyFunction& f, int axis);

/// f(M x + offset) for a square M of the polynomial's dimension.
PolyFunction substitute_affine(const PolyFunction& f, const Matrix& m, std::span<const GaussianRational> offset);

/// f(M x).
PolyFunction substitute_linear(const PolyFunction& f, const Matrix& m);

void require_same_dimension(int a, int b, const char* what);

}  // namespace gsys
