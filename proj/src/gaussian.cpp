#include "jetcr/gaussian.hpp"

#include "jetcr/errors.hpp"

#include <ostream>

namespace jetcr {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
  if (s.empty())
    throw bad();
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+'))
      i = 1;
    if (i >= part.size())
      return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        return false;
    return true;
  };
  std::string_view num = std::string_view(s).substr(0, slash);
  if (!digits_ok(num, true))
    throw bad();
  if (slash != std::string::npos) {
    std::string_view den = std::string_view(s).substr(slash + 1);
    if (!digits_ok(den, false))
      throw bad();
    if (den.find_first_not_of('0') == std::string_view::npos)
      throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  if (s[0] == '+')
    s.erase(0, 1);
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) { return q.get_str(10); }

Gaussian Gaussian::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0)
    throw PreconditionError("division by zero Gaussian rational");
  return Gaussian(re_ / n, -im_ / n);
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

void Gaussian::add_product(const Gaussian& a, const Gaussian& b) {
  const bool ar = sgn(a.im_) == 0;
  const bool br = sgn(b.im_) == 0;
  if (ar && br) {
    re_ += a.re_ * b.re_;
  } else if (ar) {
    re_ += a.re_ * b.re_;
    im_ += a.re_ * b.im_;
  } else if (br) {
    re_ += a.re_ * b.re_;
    im_ += a.im_ * b.re_;
  } else {
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
  }
}

std::string Gaussian::to_string() const {
  if (sgn(im_) == 0)
    return rational_string(re_);
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = rational_string(im_) + "i";
  if (sgn(re_) == 0)
    return imag;
  std::string out = rational_string(re_);
  if (sgn(im_) > 0)
    out += "+";
  return out + imag;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.to_string(); }

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0)
    return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

} // namespace jetcr
