#include "doctest.h"
#include "gsys/cochain.hpp"
#include "gsys/error.hpp"
#include "testing/random_objects.hpp"

using namespace gsys;
using gsys::testing::Rng;

namespace {

ComplexPtr z2_reflection() { return AmplitudeComplex::make(testing::z2_reflection()); }

PolyFunction xpow(int k) { return PolyFunction::monomial(1, {k}); }

Cochain z2_cochain(const ComplexPtr& cx, const FormalSymbol& s_value) {
  return Cochain::from_values(cx, 1, {FormalSymbol::unit(1, s_value.order()), s_value});
}

const GroupTuple E{0}, S{1}, SS{1, 1};

}  // namespace

TEST_CASE("complex construction rejects invalid actions") {
  const AffineAction shift(FiniteGroup::cyclic(2), {AffineDiffeo::identity(1), AffineDiffeo::translation({1})});
  CHECK_THROWS_AS(AmplitudeComplex::make(shift), PreconditionError);
}

TEST_CASE("differential examples") {
  const auto cx = AmplitudeComplex::make(testing::z3_rotation());
  Rng rng(41);
  const Cochain a = rng.cochain(cx, 1, 1, 1, 2, 0);
  const Cochain da = differential(a);
  for (const auto& t : enumerate_tuples(cx->group(), 2)) CHECK(da.at(t) == -a.at(GroupTuple{cx->group().multiply(t[0], t[1])}));

  const Cochain u = rng.cochain(cx, 0, 1, 1, 2, 0);
  CHECK(differential(u).is_zero());
  CHECK(differential(u).degree() == 1);

  const Cochain b = rng.cochain(cx, 2, 1, 1, 2, 0);
  const Cochain db = differential(b);
  const auto& g = cx->group();
  for (const auto& t : enumerate_tuples(g, 3)) {
    const FormalSymbol expected = -b.at(GroupTuple{g.multiply(t[0], t[1]), t[2]}) + b.at(GroupTuple{t[0], g.multiply(t[1], t[2])});
    CHECK(db.at(t) == expected);
  }
}

TEST_CASE("cup_star examples") {
  const auto cx = AmplitudeComplex::make(testing::s3_permutation(2));
  Rng rng(42);
  const Cochain a0 = rng.cochain(cx, 0, 2, 1, 2, 0), b0 = rng.cochain(cx, 0, 2, 1, 2, 0);
  const auto id = AffineDiffeo::identity(2);
  CHECK(cup_star(a0, b0).value(0) == star_compose(a0.value(0), id, b0.value(0), id));

  const Cochain one = Cochain::unit(cx, 1, 2);
  const Cochain b = rng.cochain(cx, 1, 2, 1, 2, 0);
  const Cochain ab = cup_star(one, b);
  // unit on the left pulls the coefficients back along phi_{g1}^{-1}
  for (const auto& t : enumerate_tuples(cx->group(), 2)) {
    const FormalSymbol& v = b.at(GroupTuple{t[1]});
    std::vector<XiPolynomial> levels;
    for (const auto& p : v.levels()) levels.push_back(pull_back_coefficients(p, affine_invert(cx->diffeo(t[0]))));
    CHECK(ab.at(t) == FormalSymbol(2, levels));
  }

  // xi-independent: a_{g1}(x) b_{g2}(phi_{g1}^{-1} x)
  const auto cz = AmplitudeComplex::make(testing::z3_rotation());
  const Cochain fa = Cochain::generate(cz, 1, 0, [&](const GroupTuple&) { return FormalSymbol::from_function(rng.poly(2, 2, 3), 0); });
  const Cochain fb = Cochain::generate(cz, 1, 0, [&](const GroupTuple&) { return FormalSymbol::from_function(rng.poly(2, 2, 3), 0); });
  const Cochain fab = cup_star(fa, fb);
  for (const auto& t : enumerate_tuples(cz->group(), 2)) {
    const PolyFunction lhs = fa.at(GroupTuple{t[0]}).level(0).coefficient({0, 0});
    const PolyFunction rhs = poly_compose_affine(fb.at(GroupTuple{t[1]}).level(0).coefficient({0, 0}), affine_invert(cz->diffeo(t[0])));
    CHECK(fab.at(t) == FormalSymbol::from_function(lhs * rhs, 0));
  }
}

TEST_CASE("mc_residual examples") {
  for (const auto& action : {testing::z2_reflection(), testing::z3_rotation(), testing::s3_permutation(3)}) {
    const auto cx = AmplitudeComplex::make(action);
    CHECK(mc_residual(Cochain::unit(cx, 1, 2)).is_zero());
  }
  const auto cx = z2_reflection();
  // constant a_s = c: residual at (s,s) is c^2 - 1
  for (long c : {-3L, -2L, -1L, 0L, 1L, 2L, 3L}) {
    const Cochain a = z2_cochain(cx, FormalSymbol::constant(1, 1, c));
    const Cochain r = mc_residual(a);
    CHECK(r.at(SS) == FormalSymbol::constant(1, 1, c * c - 1));
    CHECK(r.at(GroupTuple{0, 0}).is_zero());
    CHECK(r.is_zero() == (c == 1 || c == -1));
  }
  const Cochain ax = z2_cochain(cx, FormalSymbol::from_function(xpow(1), 1));
  CHECK(mc_residual(ax).at(SS) == FormalSymbol::from_function(-xpow(2) - PolyFunction::constant(1, 1), 1));
}

TEST_CASE("twisted differential examples") {
  const auto cx = z2_reflection();
  Rng rng(43);
  const MCElement p0 = MCElement::verify(z2_cochain(cx, FormalSymbol::constant(1, 2, -1)));
  const Cochain u = rng.cochain(cx, 0, 2, 2, 3, 0);
  CHECK(twisted_differential(p0, u) == cup_star(p0.cochain(), u) - cup_star(u, p0.cochain()));
  CHECK(twisted_differential(p0, p0.cochain()) == cup_star(p0.cochain(), p0.cochain()));

  // trivial action, unit twist: standard group-cohomology coboundary per coefficient
  const auto triv = AmplitudeComplex::make(AffineAction::trivial(FiniteGroup::cyclic(2), 1));
  const MCElement one = MCElement::verify(Cochain::unit(triv, 1, 1));
  const Cochain a = rng.cochain(triv, 1, 1, 2, 3, 0);
  const Cochain da = twisted_differential(one, a);
  for (const auto& t : enumerate_tuples(triv->group(), 2)) {
    CHECK(da.at(t) == a.at(GroupTuple{t[1]}) - a.at(GroupTuple{triv->group().multiply(t[0], t[1])}) + a.at(GroupTuple{t[0]}));
  }
  CHECK_THROWS_AS(MCElement::verify(z2_cochain(cx, FormalSymbol::constant(1, 1, 2))), PreconditionError);
}

TEST_CASE("representation_check examples") {
  const auto cx = z2_reflection();
  const auto r1 = representation_check(Cochain::unit(cx, 1, 2));
  CHECK(r1.passed);
  const auto r2 = representation_check(z2_cochain(cx, FormalSymbol::constant(1, 1, -1)));
  CHECK(r2.passed);
  CHECK(r2.residual_zero);
  const auto r3 = representation_check(z2_cochain(cx, FormalSymbol::from_function(xpow(1), 1)));
  CHECK_FALSE(r3.passed);
  CHECK_FALSE(r3.residual_zero);
  CHECK(r3.consistent);
  REQUIRE(r3.witnesses.size() == 1);
  CHECK(r3.witnesses[0].tuple == SS);
}

TEST_CASE("gauge and conjugation") {
  const auto cx = z2_reflection();
  const MCElement a = MCElement::verify(Cochain::unit(cx, 1, 3));
  CHECK(gauge_relation_check(a, a, FormalSymbol::unit(1, 3)).passed);
  CHECK(gauge_relation_check(a, a, FormalSymbol::constant(1, 3, 2)).passed);
  CHECK(conjugate_by_unit(a, FormalSymbol::unit(1, 3)).cochain() == a.cochain());
  CHECK(conjugate_by_unit(a, FormalSymbol::constant(1, 3, 5)).cochain() == a.cochain());

  // u = 1 + hbar xi: b_s = (1 + hbar xi)/(1 - hbar xi) = 1 + 2 sum_{m>=1} hbar^m xi^m
  const FormalSymbol u = FormalSymbol::unit(1, 3) + FormalSymbol::at_level(XiPolynomial::monomial(1, {1}, {0}), 1, 3);
  const MCElement b = conjugate_by_unit(a, u);
  std::vector<XiPolynomial> levels{XiPolynomial::monomial(1, {0}, {0})};
  for (int m = 1; m <= 3; ++m) levels.push_back(XiPolynomial::monomial(1, {m}, {0}, 2));
  CHECK(b.cochain().at(S) == FormalSymbol(3, levels));
  CHECK(b.cochain().at(E) == FormalSymbol::unit(1, 3));
  CHECK(gauge_relation_check(a, b, u).passed);
  CHECK_FALSE(gauge_relation_check(a, a, u).passed);
  CHECK_THROWS_AS(gauge_relation_check(a, a, FormalSymbol(1, 3)), NotInvertibleError);

  // xi-independent coboundary pair: a_g = 1 and b_g = K(phi_g^{-1} x)^{-1} K(x) is not polynomial in general,
  // so use u = constant and a character
  const MCElement sign = MCElement::verify(z2_cochain(cx, FormalSymbol::constant(1, 3, -1)));
  CHECK(gauge_relation_check(sign, sign, FormalSymbol::constant(1, 3, 7)).passed);
}

TEST_CASE("multiplicative cocycle examples") {
  const auto cx = z2_reflection();
  CHECK(xi_multiplicative_cocycle_check(Cochain::unit(cx, 1, 0)).passed);
  CHECK(xi_multiplicative_cocycle_check(z2_cochain(cx, FormalSymbol::constant(1, 0, -1))).passed);
  const auto r = xi_multiplicative_cocycle_check(z2_cochain(cx, FormalSymbol::from_function(xpow(1), 0)));
  CHECK_FALSE(r.passed);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].tuple == SS);
  const FormalSymbol with_xi = FormalSymbol::at_level(XiPolynomial::monomial(1, {1}, {0}), 1, 1) + FormalSymbol::unit(1, 1);
  CHECK_THROWS_AS(xi_multiplicative_cocycle_check(z2_cochain(cx, with_xi)), PreconditionError);

  // agrees with the residual on random xi-independent data
  Rng rng(44);
  for (int it = 0; it < 20; ++it) {
    const long c = rng.uniform(-2, 2);
    const Cochain a = z2_cochain(cx, rng.chance(0.5) ? FormalSymbol::constant(1, 0, c) : FormalSymbol::from_function(rng.poly(1, 2, 2), 0));
    CHECK(xi_multiplicative_cocycle_check(a).passed == mc_residual(a).is_zero());
  }
}

TEST_CASE("additive cocycles and intertwiners") {
  const AffineAction act = testing::z2_reflection();
  const PolyFunction zero(1);
  CHECK(additive_cocycle_check(act, {zero, zero}).passed);
  CHECK(additive_cocycle_check(act, {zero, xpow(1)}).passed);
  const auto bad = additive_cocycle_check(act, {zero, xpow(2)});
  CHECK_FALSE(bad.passed);
  CHECK(bad.witnesses.front().tuple == SS);
  CHECK_THROWS_AS(additive_cocycle_check(act, {xpow(1), zero}), PreconditionError);

  CHECK(coboundary_intertwiner_check(act, {zero, xpow(1)}, {zero, xpow(1)}, zero).passed);
  const PolyFunction s_tilde = PolyFunction::monomial(1, {1}, -2);
  CHECK(additive_cocycle_check(act, {zero, s_tilde}).passed);
  CHECK(coboundary_intertwiner_check(act, {zero, zero}, {zero, s_tilde}, xpow(1)).passed);
  CHECK_FALSE(coboundary_intertwiner_check(act, {zero, zero}, {zero, xpow(1)}, xpow(1)).passed);
  CHECK_THROWS_AS(coboundary_intertwiner_check(act, {zero, xpow(2)}, {zero, zero}, zero), PreconditionError);
}

TEST_CASE("cochain invariants and errors") {
  const auto cx = z2_reflection();
  CHECK(Cochain::unit(cx, 2, 1).is_normalized());
  CHECK_FALSE(Cochain::zero(cx, 1, 1).is_normalized());
  const auto other = AmplitudeComplex::make(testing::z3_rotation());
  CHECK_THROWS_AS(cup_star(Cochain::unit(cx, 1, 1), Cochain::unit(other, 1, 1)), MismatchError);
  CHECK_THROWS_AS(cup_star(Cochain::unit(cx, 1, 1), Cochain::unit(cx, 1, 2)), MismatchError);
  CHECK_THROWS_AS(mc_residual(Cochain::unit(cx, 2, 1)), PreconditionError);
  // a structurally equal complex is compatible
  const auto again = z2_reflection();
  CHECK(Cochain::unit(cx, 1, 1) == Cochain::unit(again, 1, 1));
}
