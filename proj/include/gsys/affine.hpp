#pragma once

#include <string>
#include <vector>

#include "gsys/linalg.hpp"
#include "gsys/poly.hpp"

namespace gsys {

/// Invertible affine map x -> A x + b on R^d with exactly stored inverse
/// x -> C x + c, C = A^{-1}, c = -C b.
class AffineDiffeo {
 public:
  /// Throws NotInvertibleError when A is singular.
  AffineDiffeo(Matrix linear, std::vector<GaussianRational> offset);

  static AffineDiffeo identity(int dimension);
  static AffineDiffeo scaling(int dimension, const GaussianRational& factor);
  static AffineDiffeo translation(std::vector<GaussianRational> offset);

  int dimension() const noexcept { return static_cast<int>(offset_.size()); }
  const Matrix& linear() const noexcept { return linear_; }
  const std::vector<GaussianRational>& offset() const noexcept { return offset_; }
  const Matrix& inverse_linear() const noexcept { return inverse_linear_; }
  const std::vector<GaussianRational>& inverse_offset() const noexcept { return inverse_offset_; }

  bool is_identity() const;
  bool is_linear() const;

  std::vector<GaussianRational> apply(std::span<const GaussianRational> x) const;

  /// Equality of the forward data; the inverse is determined by it.
  friend bool operator==(const AffineDiffeo& a, const AffineDiffeo& b) {
    return a.linear_ == b.linear_ && a.offset_ == b.offset_;
  }

  std::string to_display() const;

 private:
  AffineDiffeo(Matrix linear, std::vector<GaussianRational> offset, Matrix inv, std::vector<GaussianRational> inv_offset);

  Matrix linear_;
  std::vector<GaussianRational> offset_;
  Matrix inverse_linear_;
  std::vector<GaussianRational> inverse_offset_;
};

/// (outer o inner)(x) = outer(inner(x)).
AffineDiffeo affine_compose(const AffineDiffeo& outer, const AffineDiffeo& inner);

AffineDiffeo affine_invert(const AffineDiffeo& phi);

/// f o phi.
PolyFunction poly_compose_affine(const PolyFunction& f, const AffineDiffeo& phi);

}  // namespace gsys
