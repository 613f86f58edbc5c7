#pragma once

#include "jetcr/alphabet.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>

namespace jetcr {

// Exponent vector indexed by alphabet position. Absent variables have exponent 0.
class Monomial {
public:
  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  unsigned exponent(std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, unsigned e);

  Monomial operator*(const Monomial& o) const;
  // Exponent of variable i lowered by one; requires exponent(i) > 0.
  Monomial lowered(std::size_t i) const {
    Monomial m = *this;
    --m.exps_[i];
    --m.degree_;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  // Graded lexicographic: total degree first, then larger leading exponents first.
  friend bool graded_lex_less(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_)
      return a.degree_ < b.degree_;
    return std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVariables) > 0;
  }

  std::size_t hash() const;
  std::string to_string(const Alphabet& alphabet) const;

private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  std::uint16_t degree_ = 0;
};

struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return graded_lex_less(a, b); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

} // namespace jetcr
