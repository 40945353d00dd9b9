#include "doctest.h"
#include "gsys/affine.hpp"
#include "gsys/error.hpp"
#include "testing/oracles.hpp"
#include "testing/random_objects.hpp"

using namespace gsys;
using gsys::testing::Dense1D;
using gsys::testing::Rng;

namespace {

PolyFunction x1(int axis = 0, int dim = 1) { return PolyFunction::variable(dim, axis); }
PolyFunction c1(long v, int dim = 1) { return PolyFunction::constant(dim, v); }

}  // namespace

TEST_CASE("scalars parse, print and invert exactly") {
  const auto z = GaussianRational::parse("6/4", "-1/2");
  CHECK(z.re() == mpq_class(3, 2));
  CHECK(z.to_display() == "3/2-1/2i");
  CHECK(GaussianRational::rational_string(mpq_class(-4, 2)) == "-2/1");
  CHECK(z * z.inverse() == GaussianRational(1));
  CHECK_THROWS_AS(GaussianRational::parse("1/0"), FormatError);
  CHECK_THROWS_AS(GaussianRational::parse("abc"), FormatError);
  CHECK_THROWS_AS(GaussianRational(0).inverse(), NotInvertibleError);
  CHECK(minus_i_power(2) == GaussianRational(-1));
  CHECK(minus_i_power(3) == GaussianRational::imaginary_unit());
}

TEST_CASE("poly_mul examples") {
  CHECK(poly_mul(x1(), x1()) == PolyFunction::monomial(1, {2}));
  const PolyFunction f = c1(3) + x1() * x1();
  CHECK(poly_mul(f, c1(1)) == f);
  CHECK(poly_mul(c1(1) + x1(), c1(1) - x1()) == c1(1) - PolyFunction::monomial(1, {2}));
  CHECK_THROWS_AS(poly_mul(x1(), x1(0, 2)), MismatchError);
}

TEST_CASE("poly_partial examples") {
  CHECK(poly_partial(PolyFunction::monomial(1, {2}), 0) == 2 * x1());
  CHECK(poly_partial(c1(7), 0).is_zero());
  CHECK(poly_partial(x1(0, 2) * x1(1, 2), 1) == x1(0, 2));
  CHECK_THROWS_AS(poly_partial(x1(), 1), PreconditionError);
  CHECK_THROWS_AS(poly_partial(x1(), -1), PreconditionError);
}

TEST_CASE("poly_compose_affine examples") {
  const auto neg = AffineDiffeo::scaling(1, -1);
  CHECK(poly_compose_affine(PolyFunction::monomial(1, {2}), neg) == PolyFunction::monomial(1, {2}));
  CHECK(poly_compose_affine(x1(), AffineDiffeo::translation({1})) == x1() + c1(1));
  const Matrix swap = testing::integer_matrix({{0, 1}, {1, 0}});
  const auto xy = x1(0, 2) * x1(1, 2);
  CHECK(poly_compose_affine(xy, AffineDiffeo(swap, {0, 0})) == xy);
}

TEST_CASE("affine_compose and affine_invert examples") {
  const auto phi = AffineDiffeo(testing::integer_matrix({{2}}), {GaussianRational(1)});
  CHECK(affine_compose(phi, AffineDiffeo::identity(1)) == phi);
  const auto neg = AffineDiffeo::scaling(1, -1);
  CHECK(affine_compose(neg, neg).is_identity());
  const auto two_x = AffineDiffeo::scaling(1, 2);
  CHECK(affine_compose(two_x, AffineDiffeo::translation({1})) == AffineDiffeo(testing::integer_matrix({{2}}), {GaussianRational(2)}));
  CHECK(affine_invert(AffineDiffeo::identity(2)).is_identity());
  Matrix half(1, 1);
  half(0, 0) = GaussianRational::ratio(1, 2);
  CHECK(affine_invert(phi) == AffineDiffeo(half, {GaussianRational::ratio(-1, 2)}));
  CHECK_THROWS_AS(AffineDiffeo(Matrix(1, 1), {GaussianRational(0)}), NotInvertibleError);
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(11);
  for (int it = 0; it < 40; ++it) {
    const int d = rng.uniform(1, 3);
    const auto f = rng.poly(d, 3, 4), g = rng.poly(d, 3, 4), h = rng.poly(d, 2, 3);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    if (!f.is_zero() && !g.is_zero()) CHECK((f * g).degree() == f.degree() + g.degree());
    const int j = rng.uniform(0, d - 1);
    CHECK(poly_partial(f * g, j) == poly_partial(f, j) * g + f * poly_partial(g, j));
  }
}

TEST_CASE("pullback composes contravariantly and inversion is an involution") {
  Rng rng(12);
  for (int it = 0; it < 30; ++it) {
    const int d = rng.uniform(1, 3);
    const auto f = rng.poly(d, 3, 4);
    const auto p1 = rng.affine(d), p2 = rng.affine(d);
    CHECK(poly_compose_affine(poly_compose_affine(f, p2), p1) == poly_compose_affine(f, affine_compose(p2, p1)));
    CHECK(affine_invert(affine_invert(p1)) == p1);
    CHECK(affine_compose(p1, affine_invert(p1)).is_identity());
    CHECK(poly_compose_affine(f, p1).degree() == f.degree());
  }
}

TEST_CASE("univariate substitution agrees with the dense oracle") {
  Rng rng(13);
  for (int it = 0; it < 30; ++it) {
    const auto f = rng.poly(1, 5, 4);
    const auto phi = rng.affine(1);
    const Dense1D expected = Dense1D::from(f).substitute(phi.linear()(0, 0), phi.offset()[0]);
    CHECK(poly_compose_affine(f, phi) == expected.to_poly());
  }
}
