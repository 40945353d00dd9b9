#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsys/cochain.hpp"
#include "gsys/linalg.hpp"

namespace gsys {

/// Monomials x^beta xi^alpha with |alpha| <= n, |beta| <= D; alpha outer, beta inner,
/// both in graded order.
class GradedBasis {
 public:
  GradedBasis() = default;
  GradedBasis(int dimension, int xi_degree, int x_degree);

  int dimension() const noexcept { return dimension_; }
  int xi_degree() const noexcept { return xi_degree_; }
  int x_degree() const noexcept { return x_degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const std::pair<MultiIndex, MultiIndex>& monomial(std::size_t i) const { return monomials_.at(i); }
  /// Throws PreconditionError when (alpha, beta) lies outside the window.
  std::size_t index_of(const MultiIndex& alpha, const MultiIndex& beta) const;
  bool contains(const XiPolynomial& p) const;

  friend bool operator==(const GradedBasis& a, const GradedBasis& b) {
    return a.dimension_ == b.dimension_ && a.xi_degree_ == b.xi_degree_ && a.x_degree_ == b.x_degree_;
  }

 private:
  int dimension_ = 0;
  int xi_degree_ = 0;
  int x_degree_ = -1;
  std::vector<std::pair<MultiIndex, MultiIndex>> monomials_;
  std::map<std::pair<MultiIndex, MultiIndex>, std::size_t> index_;
};

/// Coordinates of one hbar-level of a degree-k cochain: tuple-major, basis-minor.
struct CochainVector {
  int degree = 0;
  std::size_t tuples = 0;
  GradedBasis basis;
  std::vector<GaussianRational> coordinates;
};

/// Level `level` of `a` in `basis`. Throws PreconditionError when a value leaves the window.
CochainVector to_coordinates(const Cochain& a, int level, const GradedBasis& basis);

/// Cochain of truncation `order` carrying the coordinates at hbar-level `level`.
Cochain from_coordinates(const ComplexPtr& complex, const CochainVector& v, int level, int order);

struct LinearMap {
  int level = 0;
  int domain_degree = 0;
  GradedBasis domain;
  GradedBasis codomain;
  Matrix matrix;
};

/// d_{P0} restricted to hbar-level n, cochain degree k, x-degree window D_in. Only the leading
/// term of P0 enters; the codomain window is D_in + x-degree(P0).
LinearMap matrix_of_twisted_d(const MCElement& p0, int n, int k, int d_in);

struct CohomologyReport {
  int n = 0;
  int k = 0;
  int d_in = 0;
  int d_out = 0;
  std::size_t dim_domain = 0;
  std::size_t rank_out = 0;
  std::size_t dim_kernel = 0;
  std::size_t rank_in = 0;
  long h_dim = 0;
  /// False when d enlarges the window; h_dim is then window-relative.
  bool window_closed = true;
};

CohomologyReport cohomology_report(const MCElement& p0, int n, int k, int d);

struct OracleResult {
  std::optional<Cochain> primitive;
  std::string declined;
};

/// Averaging contraction for a twist by constant values c_g: returns w with d_{P0} w = z for a
/// d_{P0}-cocycle z of degree >= 1. Declines when P0 carries x-, xi- or hbar-dependence.
OracleResult averaging_homotopy_oracle(const MCElement& p0, const Cochain& z);

struct ObstructionCertificate {
  int order = 0;
  std::string stage;
  /// Right-hand side that is not in the image.
  std::optional<Cochain> rhs;
  int level = 0;
  int cochain_degree = 0;
  int d_in = 0;
  int d_out = 0;
  std::size_t rank_matrix = 0;
  std::size_t rank_augmented = 0;
};

struct LinearSolve {
  std::optional<std::vector<GaussianRational>> solution;
  std::size_t rank_matrix = 0;
  std::size_t rank_augmented = 0;
};

/// Particular solution (free coordinates zero) of M x = rhs, with the rank data either way.
LinearSolve solve_in_window(const Matrix& m, std::span<const GaussianRational> rhs);

struct OrderRecord {
  int order = 0;
  int d_in = 0;
  int d_out = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  bool rhs_zero = false;
};

struct OrderSolution {
  std::optional<Cochain> term;
  std::optional<ObstructionCertificate> obstruction;
  OrderRecord record;
};

/// Solves d_{P0} P^n = -sum_{i+j=n, i,j>=1} P^i * P^j. `partial` carries P^1..P^{n-1} in its
/// levels (other levels ignored). Throws InternalInconsistency when the right-hand side is not
/// a cocycle.
OrderSolution solve_order(const MCElement& p0, const Cochain& partial, int n);

struct Extension {
  std::optional<MCElement> omega;
  std::optional<ObstructionCertificate> obstruction;
  std::vector<OrderRecord> records;
};

/// omega = P0 + hbar P1 + ... through hbar^N. P1 is read from level 1 of `p1`.
/// Throws PreconditionError unless d_{P0} P1 = 0.
Extension mc_extend(const MCElement& p0, const Cochain& p1, int order);

struct GaugeResult {
  std::optional<FormalSymbol> unit;
  std::optional<ObstructionCertificate> obstruction;
  std::vector<OrderRecord> records;
};

/// u = 1 + hbar u^1 + ... + hbar^N u^N with a_g * u = u * P0_g, P0 the leading term of a.
GaugeResult rigidity_gauge(const MCElement& a, int order);

/// d_1 P via the twisted differential against the coefficientwise standard group-cohomology
/// differential. Trivial action only (PreconditionError otherwise).
CheckReport trivial_action_split_check(const Cochain& p);

}  // namespace gsys
