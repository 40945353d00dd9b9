#include "gsys/affine.hpp"

#include <sstream>

#include "gsys/error.hpp"

namespace gsys {

namespace {

std::vector<GaussianRational> negated_product(const Matrix& m, const std::vector<GaussianRational>& v) {
  auto out = m * std::span<const GaussianRational>(v);
  for (auto& z : out) z = -z;
  return out;
}

}  // namespace

AffineDiffeo::AffineDiffeo(Matrix linear, std::vector<GaussianRational> offset)
    : linear_(std::move(linear)), offset_(std::move(offset)) {
  const std::size_t d = offset_.size();
  if (d == 0) throw PreconditionError("affine map of dimension zero");
  if (linear_.rows() != d || linear_.cols() != d) throw MismatchError("affine map: matrix/offset shape mismatch");
  auto inv = inverse(linear_);
  if (!inv) throw NotInvertibleError("affine map has a singular linear part");
  inverse_linear_ = std::move(*inv);
  inverse_offset_ = negated_product(inverse_linear_, offset_);
  if (!(linear_ * inverse_linear_ == Matrix::identity(d))) {
    throw InternalInconsistency("affine inverse does not satisfy A*C = I");
  }
}

AffineDiffeo::AffineDiffeo(Matrix linear, std::vector<GaussianRational> offset, Matrix inv,
                           std::vector<GaussianRational> inv_offset)
    : linear_(std::move(linear)),
      offset_(std::move(offset)),
      inverse_linear_(std::move(inv)),
      inverse_offset_(std::move(inv_offset)) {}

AffineDiffeo AffineDiffeo::identity(int dimension) {
  const auto d = static_cast<std::size_t>(dimension);
  return AffineDiffeo(Matrix::identity(d), std::vector<GaussianRational>(d), Matrix::identity(d),
                      std::vector<GaussianRational>(d));
}

AffineDiffeo AffineDiffeo::scaling(int dimension, const GaussianRational& factor) {
  Matrix m(dimension, dimension);
  for (int i = 0; i < dimension; ++i) m(i, i) = factor;
  return AffineDiffeo(std::move(m), std::vector<GaussianRational>(dimension));
}

AffineDiffeo AffineDiffeo::translation(std::vector<GaussianRational> offset) {
  const std::size_t d = offset.size();
  return AffineDiffeo(Matrix::identity(d), std::move(offset));
}

bool AffineDiffeo::is_identity() const { return is_linear() && linear_ == Matrix::identity(offset_.size()); }

bool AffineDiffeo::is_linear() const {
  for (const auto& z : offset_)
    if (!z.is_zero()) return false;
  return true;
}

std::vector<GaussianRational> AffineDiffeo::apply(std::span<const GaussianRational> x) const {
  auto y = linear_ * x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset_[i];
  return y;
}

std::string AffineDiffeo::to_display() const {
  std::ostringstream os;
  const std::size_t d = offset_.size();
  os << "x -> [";
  for (std::size_t r = 0; r < d; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < d; ++c) os << (c ? " " : "") << linear_(r, c);
  }
  os << "] x + (";
  for (std::size_t r = 0; r < d; ++r) os << (r ? ", " : "") << offset_[r];
  os << ")";
  return os.str();
}

AffineDiffeo affine_compose(const AffineDiffeo& outer, const AffineDiffeo& inner) {
  require_same_dimension(outer.dimension(), inner.dimension(), "affine_compose");
  Matrix a = outer.linear() * inner.linear();
  std::vector<GaussianRational> b = outer.apply(inner.offset());
  return AffineDiffeo(std::move(a), std::move(b));
}

AffineDiffeo affine_invert(const AffineDiffeo& phi) {
  return AffineDiffeo(phi.inverse_linear(), phi.inverse_offset());
}

PolyFunction poly_compose_affine(const PolyFunction& f, const AffineDiffeo& phi) {
  require_same_dimension(f.dimension(), phi.dimension(), "poly_compose_affine");
  if (phi.is_identity()) return f;
  return substitute_affine(f, phi.linear(), phi.offset());
}

}  // namespace gsys
