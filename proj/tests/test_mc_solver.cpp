#include "doctest.h"
#include "gsys/error.hpp"
#include "gsys/solver.hpp"
#include "testing/random_objects.hpp"

using namespace gsys;
using gsys::testing::Rng;

namespace {

ComplexPtr reflection() { return AmplitudeComplex::make(testing::z2_reflection()); }

MCElement unit_mc(const ComplexPtr& cx, int order) { return MCElement::verify(Cochain::unit(cx, 1, order)); }

// level-1 value of a z2 degree-1 cochain, zero elsewhere
Cochain z2_level1(const ComplexPtr& cx, const XiPolynomial& p, int order) {
  return Cochain::from_values(cx, 1, {FormalSymbol::unit(1, order), FormalSymbol::unit(1, order) + FormalSymbol::at_level(p, 1, order)});
}

XiPolynomial xi_plus_x() { return XiPolynomial::monomial(1, {1}, {0}) + XiPolynomial::monomial(1, {0}, {1}); }

std::vector<GaussianRational> random_vector(Rng& rng, std::size_t n) {
  std::vector<GaussianRational> v(n);
  for (auto& c : v) c = rng.chance(0.4) ? GaussianRational(0) : rng.scalar();
  return v;
}

}  // namespace

TEST_CASE("graded basis and coordinates") {
  const GradedBasis b(2, 1, 2);
  CHECK(b.size() == 3 * 6);
  CHECK(b.monomial(0) == std::pair<MultiIndex, MultiIndex>{{0, 0}, {0, 0}});
  CHECK(b.index_of({1, 0}, {0, 1}) == b.index_of({1, 0}, {0, 0}) + 2);
  CHECK_THROWS_AS(b.index_of({2, 0}, {0, 0}), PreconditionError);
  CHECK(b.contains(XiPolynomial::monomial(2, {0, 1}, {2, 0})));
  CHECK_FALSE(b.contains(XiPolynomial::monomial(2, {0, 1}, {3, 0})));

  const auto cx = AmplitudeComplex::make(testing::z3_rotation());
  Rng rng(51);
  for (int it = 0; it < 10; ++it) {
    const int n = rng.uniform(0, 2), k = rng.uniform(0, 2);
    const GradedBasis basis(2, n, 2);
    const Cochain a = rng.cochain(cx, k, 2, 2, 3, 0.2);
    const CochainVector v = to_coordinates(a, n, basis);
    CHECK(v.coordinates.size() == tuple_count(cx->group(), k) * basis.size());
    const Cochain back = from_coordinates(cx, v, n, 2);
    for (const auto& t : enumerate_tuples(cx->group(), k)) CHECK(back.at(t).level(n) == a.at(t).level(n));
  }
  const Cochain too_wide = Cochain::generate(cx, 1, 1, [](const GroupTuple&) { return FormalSymbol::from_function(PolyFunction::monomial(2, {3, 0}), 1); });
  CHECK_THROWS_AS(to_coordinates(too_wide, 0, GradedBasis(2, 0, 2)), PreconditionError);
}

TEST_CASE("matrix agrees with the twisted differential") {
  Rng rng(52);
  for (const auto& action : {testing::z2_reflection(), testing::z3_rotation()}) {
    const auto cx = AmplitudeComplex::make(action);
    const MCElement p0 = unit_mc(cx, 2);
    for (int k = 0; k <= 2; ++k) {
      for (int n = 0; n <= 2; ++n) {
        const LinearMap m = matrix_of_twisted_d(p0, n, k, 2);
        CochainVector v{k, tuple_count(cx->group(), k), m.domain, random_vector(rng, m.matrix.cols())};
        const Cochain a = from_coordinates(cx, v, n, 2);
        const CochainVector image = to_coordinates(twisted_differential(p0, a), n, m.codomain);
        CHECK(image.coordinates == m.matrix * std::span<const GaussianRational>(v.coordinates));
      }
    }
  }
}

TEST_CASE("consecutive matrices compose to zero") {
  const auto cx = AmplitudeComplex::make(testing::s3_permutation(2));
  const MCElement p0 = unit_mc(cx, 1);
  for (int n = 0; n <= 1; ++n)
    for (int k = 0; k <= 1; ++k) {
      const LinearMap a = matrix_of_twisted_d(p0, n, k, 1);
      const LinearMap b = matrix_of_twisted_d(p0, n, k + 1, a.codomain.x_degree());
      CHECK((b.matrix * a.matrix).is_zero());
    }
}

TEST_CASE("cohomology of the reflection twist") {
  const auto cx = reflection();
  const MCElement p0 = unit_mc(cx, 2);
  // H^0: u(-x, xi) = u(x, -xi), i.e. monomials x^b xi^a with a = b mod 2
  CHECK(cohomology_report(p0, 0, 0, 2).h_dim == 2);
  CHECK(cohomology_report(p0, 1, 0, 2).h_dim == 3);
  CHECK(cohomology_report(p0, 2, 0, 3).h_dim == 6);
  for (int n = 0; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k)
      for (int d = 0; d <= 2; ++d) {
        const CohomologyReport r = cohomology_report(p0, n, k, d);
        CHECK(r.h_dim == 0);
        CHECK(r.window_closed);
        CHECK(r.dim_kernel == r.rank_in);
      }
  const MCElement sign = MCElement::verify(Cochain::from_values(cx, 1, {FormalSymbol::unit(1, 1), FormalSymbol::constant(1, 1, -1)}));
  // a constant character scales both sides of d u alike
  CHECK(cohomology_report(sign, 1, 0, 2).h_dim == 3);
}

TEST_CASE("averaging oracle") {
  const auto cx = reflection();
  const MCElement p0 = unit_mc(cx, 2);
  Rng rng(53);
  const OracleResult zero = averaging_homotopy_oracle(p0, Cochain::zero(cx, 2, 2));
  REQUIRE(zero.primitive);
  CHECK(zero.primitive->is_zero());
  for (int it = 0; it < 5; ++it) {
    const Cochain w = rng.cochain(cx, 1, 2, 2, 3, 0);
    Cochain wn = w;
    wn.set(GroupTuple{0}, FormalSymbol(1, 2));
    const Cochain z = twisted_differential(p0, wn);
    const OracleResult r = averaging_homotopy_oracle(p0, z);
    REQUIRE(r.primitive);
    CHECK(twisted_differential(p0, *r.primitive) == z);
  }
  const MCElement hbar = MCElement::verify(z2_level1(cx, xi_plus_x(), 1));
  CHECK_FALSE(averaging_homotopy_oracle(hbar, Cochain::zero(cx, 2, 1)).primitive);
  CHECK_FALSE(averaging_homotopy_oracle(hbar, Cochain::zero(cx, 2, 1)).declined.empty());
}

TEST_CASE("solve_in_window and obstructions") {
  Matrix m(2, 2);
  m(0, 0) = 1;
  const std::vector<GaussianRational> bad{0, 1}, good{3, 0};
  const LinearSolve no = solve_in_window(m, bad);
  CHECK_FALSE(no.solution);
  CHECK(no.rank_matrix == 1);
  CHECK(no.rank_augmented == 2);
  const LinearSolve yes = solve_in_window(m, good);
  REQUIRE(yes.solution);
  CHECK(*yes.solution == std::vector<GaussianRational>{3, 0});
  CHECK(yes.rank_augmented == 1);
}

TEST_CASE("solve_order and mc_extend") {
  const auto cx = reflection();
  const MCElement p0 = unit_mc(cx, 4);
  const OrderSolution s = solve_order(p0, Cochain::unit(cx, 1, 4), 2);
  REQUIRE(s.term);
  CHECK(s.term->is_zero());
  CHECK(s.record.rhs_zero);

  const Cochain p1 = z2_level1(cx, xi_plus_x(), 4);
  const Extension e = mc_extend(p0, p1, 4);
  REQUIRE(e.omega);
  CHECK_FALSE(e.obstruction);
  CHECK(mc_residual(e.omega->cochain()).is_zero());
  CHECK(e.omega->cochain().at(GroupTuple{1}).level(1) == xi_plus_x());
  CHECK(e.records.size() == 4);

  CHECK_THROWS_AS(mc_extend(p0, z2_level1(cx, XiPolynomial::monomial(1, {0}, {2}), 4), 4), PreconditionError);
}

TEST_CASE("rigidity gauge") {
  const auto cx = reflection();
  const MCElement one = unit_mc(cx, 3);
  const FormalSymbol u = FormalSymbol::unit(1, 3) + FormalSymbol::at_level(XiPolynomial::monomial(1, {1}, {0}), 1, 3);
  const MCElement b = conjugate_by_unit(one, u);
  const GaugeResult g = rigidity_gauge(b, 3);
  REQUIRE(g.unit);
  CHECK(gauge_relation_check(b, b.leading_term(3), *g.unit).passed);
  CHECK_THROWS_AS(rigidity_gauge(b, 4), PreconditionError);

  const Extension e = mc_extend(unit_mc(cx, 3), z2_level1(cx, xi_plus_x(), 3), 3);
  REQUIRE(e.omega);
  const GaugeResult ge = rigidity_gauge(*e.omega, 3);
  REQUIRE(ge.unit);
  CHECK(gauge_relation_check(*e.omega, e.omega->leading_term(3), *ge.unit).passed);
}

TEST_CASE("trivial action split") {
  const auto cx = AmplitudeComplex::make(AffineAction::trivial(FiniteGroup::cyclic(3), 2));
  Rng rng(54);
  for (int it = 0; it < 10; ++it) CHECK(trivial_action_split_check(rng.cochain(cx, rng.uniform(0, 2), 2, 2, 3)).passed);
  CHECK_THROWS_AS(trivial_action_split_check(Cochain::unit(reflection(), 1, 1)), PreconditionError);
}
