#include "doctest.h"
#include "gsys/error.hpp"
#include "gsys/symbols.hpp"
#include "testing/oracles.hpp"
#include "testing/random_objects.hpp"

using namespace gsys;
using gsys::testing::Dense1D;
using gsys::testing::Rng;

namespace {

const GaussianRational I = GaussianRational::imaginary_unit();

PolyFunction xpow(int k) { return PolyFunction::monomial(1, {k}); }
XiPolynomial xi(int k, const PolyFunction& f = PolyFunction::constant(1, 1)) { return XiPolynomial::term({k}, f); }

FormalFunction fn(const PolyFunction& f, int order) { return FormalFunction::from_function(f, order); }

}  // namespace

TEST_CASE("diff_op_apply examples") {
  CHECK(diff_op_apply(xi(1), xpow(2)) == PolyFunction::monomial(1, {1}, GaussianRational(-2) * I));
  const auto f = xpow(3) + xpow(1);
  CHECK(diff_op_apply(XiPolynomial::from_function(PolyFunction::constant(1, 1)), f) == f);
  CHECK(diff_op_apply(xi(2), xpow(3)) == PolyFunction::monomial(1, {1}, -6));
}

TEST_CASE("op_apply examples") {
  const auto neg = AffineDiffeo::scaling(1, -1);
  CHECK(op_apply(FormalSymbol::unit(1, 0), neg, fn(xpow(1), 0)) == fn(-xpow(1), 0));

  const FormalSymbol hxi = FormalSymbol::at_level(xi(1), 1, 1);
  const FormalFunction out = op_apply(hxi, AffineDiffeo::identity(1), fn(xpow(2), 1));
  CHECK(out.level(0).is_zero());
  CHECK(out.level(1) == PolyFunction::monomial(1, {1}, GaussianRational(-2) * I));

  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    const auto c = rng.poly(1, 2, 3);
    const auto psi = rng.poly(1, 3, 3);
    const auto phi = rng.affine(1);
    const FormalFunction r = op_apply(FormalSymbol::from_function(c, 0), phi, fn(psi, 0));
    CHECK(r.level(0) == c * poly_compose_affine(psi, affine_invert(phi)));
  }
}

TEST_CASE("op_apply agrees with the dense operator oracle in one dimension") {
  Rng rng(32);
  for (int it = 0; it < 40; ++it) {
    const int order = rng.uniform(0, 3);
    const FormalSymbol p = rng.symbol(1, order, 2, 3);
    const AffineDiffeo phi = rng.affine(1);
    std::vector<PolyFunction> levels;
    std::vector<Dense1D> dense;
    for (int k = 0; k <= order; ++k) {
      levels.push_back(rng.poly(1, 4, 3));
      dense.push_back(Dense1D::from(levels.back()));
    }
    const FormalFunction got = op_apply(p, phi, FormalFunction(order, levels));
    const auto expected = testing::apply_operator_1d(p, phi, dense);
    for (int m = 0; m <= order; ++m) CHECK(got.level(m) == expected[m].to_poly());
  }
}

TEST_CASE("asymptotic_symbol examples") {
  // a = a0(x) only
  const auto a0 = xpow(2) + PolyFunction::constant(1, 3);
  const FormalSymbol s0 = asymptotic_symbol(Amplitude(2, {XiPolynomial::from_function(a0), XiPolynomial(1), XiPolynomial(1)}), 2);
  CHECK(s0 == FormalSymbol::from_function(a0, 2));

  // a0 = xi
  const FormalSymbol s1 = asymptotic_symbol(Amplitude(2, {xi(1), XiPolynomial(1), XiPolynomial(1)}), 2);
  CHECK(s1.level(0).is_zero());
  CHECK(s1.level(1) == xi(1));
  CHECK(s1.level(2).is_zero());

  // a0 = x xi^2, a1 = x
  const FormalSymbol s2 = asymptotic_symbol(Amplitude(2, {xi(2, xpow(1)), XiPolynomial::from_function(xpow(1)), XiPolynomial(1)}), 2);
  CHECK(s2.level(0).is_zero());
  CHECK(s2.level(1) == XiPolynomial::from_function(xpow(1)));
  CHECK(s2.level(2) == xi(2, xpow(1)));

  CHECK_THROWS_AS(asymptotic_symbol(Amplitude(1, {xi(1), XiPolynomial(1)}), 2), PreconditionError);
}

TEST_CASE("asymptotic_symbol uses the multinomial factorial") {
  // a0 = xi_1 xi_2 in d = 2: 1/alpha! = 1 while 1/|alpha|! would give 1/2
  const XiPolynomial a0 = XiPolynomial::monomial(2, {1, 1}, {0, 0});
  const FormalSymbol s = asymptotic_symbol(Amplitude(2, {a0, XiPolynomial(2), XiPolynomial(2)}), 2);
  CHECK(s.level(2) == a0);
}

TEST_CASE("conjugate_by_diffeo examples and contract") {
  CHECK(conjugate_by_diffeo(xi(1), AffineDiffeo::identity(1)) == xi(1));
  CHECK(conjugate_by_diffeo(xi(1), AffineDiffeo::scaling(1, -1)) == -xi(1));
  CHECK(conjugate_by_diffeo(xi(1, xpow(1)), AffineDiffeo::scaling(1, 2)) == xi(1, xpow(1)));

  // P(x,D) o T = T o Q(x,D) with T psi = psi o phi^{-1}
  Rng rng(33);
  for (int it = 0; it < 20; ++it) {
    const int d = rng.uniform(1, 2);
    const auto p = rng.xi_poly(d, 2, 2, 3);
    const auto phi = rng.affine(d);
    const auto q = conjugate_by_diffeo(p, phi);
    const auto inv = affine_invert(phi);
    for (const auto& beta : multi_indices_up_to(d, 3)) {
      const auto psi = PolyFunction::monomial(d, beta);
      CHECK(diff_op_apply(p, poly_compose_affine(psi, inv)) == poly_compose_affine(diff_op_apply(q, psi), inv));
    }
  }
}

TEST_CASE("diffop_symbol_compose examples") {
  const auto r = diffop_symbol_compose(xi(1), XiPolynomial::from_function(xpow(1)));
  CHECK(r == xi(1, xpow(1)) + XiPolynomial::from_function(PolyFunction::constant(1, -I)));
  for (int m = 0; m <= 3; ++m) {
    const auto psi = xpow(m);
    CHECK(diff_op_apply(r, psi) == diff_op_apply(xi(1), diff_op_apply(XiPolynomial::from_function(xpow(1)), psi)));
  }
  const auto one = XiPolynomial::from_function(PolyFunction::constant(1, 1));
  const auto k = xi(2, xpow(3));
  CHECK(diffop_symbol_compose(one, k) == k);
  CHECK(diffop_symbol_compose(k, one) == k);
  CHECK(diffop_symbol_compose(xi(1), xi(1)) == xi(2));
}

TEST_CASE("star_compose examples") {
  const FormalSymbol p = FormalSymbol::at_level(xi(1), 1, 1);
  const FormalSymbol k = FormalSymbol::from_function(xpow(1), 1);
  const auto id = AffineDiffeo::identity(1);
  const FormalSymbol r = star_compose(p, id, k, id);
  CHECK(r.level(0).is_zero());
  CHECK(r.level(1) == xi(1, xpow(1)) + XiPolynomial::from_function(PolyFunction::constant(1, -I)));

  Rng rng(34);
  for (int it = 0; it < 10; ++it) {
    const FormalSymbol kk = rng.symbol(2, 2, 2, 3);
    const AffineDiffeo phi2 = rng.affine(2);
    CHECK(star_compose(FormalSymbol::unit(2, 2), AffineDiffeo::identity(2), kk, phi2) == kk);
  }
  CHECK_THROWS_AS(star_compose(FormalSymbol::unit(1, 1), id, FormalSymbol::unit(1, 2), id), MismatchError);
}

TEST_CASE("star_compose is associative") {
  Rng rng(35);
  for (int it = 0; it < 25; ++it) {
    const int d = rng.uniform(1, 2);
    const int n = rng.uniform(0, 3);
    const auto p = rng.symbol(d, n, 2, 2), k = rng.symbol(d, n, 2, 2), l = rng.symbol(d, n, 2, 2);
    const auto f1 = rng.affine(d), f2 = rng.affine(d), f3 = rng.affine(d);
    const auto lhs = star_compose(star_compose(p, f1, k, f2), affine_compose(f1, f2), l, f3);
    const auto rhs = star_compose(p, f1, star_compose(k, f2, l, f3), affine_compose(f2, f3));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("grading is enforced") {
  CHECK_THROWS_AS(FormalSymbol(1, {xi(1), XiPolynomial(1)}), PreconditionError);
  CHECK_NOTHROW(FormalSymbol(1, {XiPolynomial(1), xi(1)}));
}

TEST_CASE("invert_unit examples") {
  CHECK(invert_unit(FormalSymbol::unit(1, 2)) == FormalSymbol::unit(1, 2));
  CHECK(invert_unit(FormalSymbol::constant(1, 2, 2)) == FormalSymbol::constant(1, 2, GaussianRational::ratio(1, 2)));
  const FormalSymbol u = FormalSymbol::unit(1, 3) + FormalSymbol::at_level(xi(1), 1, 3);
  const FormalSymbol v = invert_unit(u);
  const auto id = AffineDiffeo::identity(1);
  CHECK(star_compose(u, id, v, id) == FormalSymbol::unit(1, 3));
  CHECK(star_compose(v, id, u, id) == FormalSymbol::unit(1, 3));
  // constant coefficients commute, so the inverse is the geometric series 1 - hbar xi + hbar^2 xi^2 - ...
  CHECK(v.level(1) == -xi(1));
  CHECK(v.level(2) == xi(2));
  CHECK(v.level(3) == -xi(3));
  CHECK_THROWS_AS(invert_unit(FormalSymbol::from_function(xpow(1), 1)), NotInvertibleError);
  CHECK_THROWS_AS(invert_unit(FormalSymbol(1, 1)), NotInvertibleError);
}

TEST_CASE("amplitude embedding round-trips through asymptotic_symbol") {
  Rng rng(36);
  for (int it = 0; it < 20; ++it) {
    const FormalSymbol p = rng.symbol(rng.uniform(1, 2), rng.uniform(0, 3), 2, 3);
    CHECK(asymptotic_symbol(amplitude_from_symbol(p), p.order()) == p);
  }
}
