#include "gsys/scalar.hpp"

#include <ostream>

#include "gsys/error.hpp"

namespace gsys {

GaussianRational GaussianRational::ratio(long num, long den) {
  if (den == 0) throw NotInvertibleError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q, 0};
}

mpq_class GaussianRational::parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_str(text.substr(0, slash));
  const std::string den_str = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  mpz_class num, den;
  if (num_str.empty() || den_str.empty() || num.set_str(num_str, 10) != 0 || den.set_str(den_str, 10) != 0) {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::inverse() const {
  const mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw NotInvertibleError("division by zero");
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw NotInvertibleError("division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussianRational::rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string GaussianRational::to_display() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return im_part;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
}

GaussianRational minus_i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_display(); }

}  // namespace gsys
