#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace gsys {

/// Exact element of Q(i). GMP keeps both parts in lowest terms.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational imaginary_unit() { return {0, 1}; }
  static GaussianRational ratio(long num, long den);
  /// Parses "p/q" or "p" strings for each part; throws FormatError on garbage or q == 0.
  static GaussianRational parse(std::string_view re, std::string_view im = "0");
  static mpq_class parse_rational(std::string_view text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// Throws NotInvertibleError on zero.
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Serialization form of one part: always "p/q".
  static std::string rational_string(const mpq_class& q);
  /// Human readable, e.g. "3/2-1/2i".
  std::string to_display() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// (-i)^k
GaussianRational minus_i_power(int k);

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

}  // namespace gsys
