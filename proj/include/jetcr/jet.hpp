#pragma once

#include "jetcr/alphabet.hpp"
#include "jetcr/gaussian.hpp"
#include "jetcr/monomial.hpp"

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jetcr {

// Truncated multivariate power series with Gaussian rational coefficients.
//
// A jet of order K stores every coefficient of total degree <= K and nothing
// above; "order" is the degree through which the stored coefficients are
// known to be exact. Terms are kept sorted in graded lexicographic order with
// no zero coefficients, so equal jets have identical term vectors.
class Jet {
public:
  using Term = std::pair<Monomial, Gaussian>;

  Jet(AlphabetPtr alphabet, int order);

  static Jet constant(AlphabetPtr alphabet, int order, const Gaussian& c);
  static Jet variable(AlphabetPtr alphabet, int order, std::string_view name);
  static Jet monomial(AlphabetPtr alphabet, int order, const Monomial& m, const Gaussian& c);
  // Terms may be unsorted and repeated; zeros and terms above `order` are dropped.
  static Jet from_terms(AlphabetPtr alphabet, int order, std::vector<Term> terms);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  Gaussian coefficient(const Monomial& m) const;
  Gaussian constant_term() const;
  // Lowest degree present; order()+1 for the zero jet.
  int valuation() const;
  bool depends_on(std::string_view name) const;
  int degree_in(std::string_view name) const;

  Jet truncate(int k) const;
  // Reinterpret the stored polynomial as exact through degree k >= order().
  Jet with_order(int k) const;

  // Apply the alphabet involution to the variables and conjugate coefficients.
  Jet conjugate() const;
  bool is_real() const { return *this == conjugate(); }
  Jet real_part() const;
  Jet imag_part() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator*=(const Gaussian& c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator*(Jet a, const Gaussian& c) { return a *= c; }
  friend Jet operator*(const Gaussian& c, Jet a) { return a *= c; }

  // Same alphabet, same order, same terms.
  friend bool operator==(const Jet& a, const Jet& b);
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  // Human-readable, canonical term order, e.g. "1 - 1/2i*s*t^2 + O(4)".
  std::string to_string() const;

private:
  Jet(AlphabetPtr alphabet, int order, std::vector<Term> sorted_terms);
  void require_compatible(const Jet& o, const char* op) const;

  AlphabetPtr alphabet_;
  int order_;
  std::vector<Term> terms_;

  friend Jet mul_truncated(const Jet&, const Jet&, int);
  friend Jet derive(const Jet&, std::string_view);
  friend class JetBuilder;
};

// Accumulates terms by monomial and produces a canonical jet.
class JetBuilder {
public:
  JetBuilder(AlphabetPtr alphabet, int order);
  void add(const Monomial& m, const Gaussian& c);
  void add_product(const Monomial& m, const Gaussian& a, const Gaussian& b);
  Jet build() &&;

private:
  AlphabetPtr alphabet_;
  int order_;
  std::unordered_map<Monomial, Gaussian, MonomialHash> acc_;
};

// Product truncated at degree k, no order bookkeeping: the caller vouches that
// the result is exact through k.
Jet mul_truncated(const Jet& a, const Jet& b, int k);

// Product whose order is the exact reliable degree of the true series product:
// min(order(a) + val(b), order(b) + val(a)). Operands may have different orders.
Jet mul_exact(const Jet& a, const Jet& b);

// Sum with order min(order(a), order(b)).
Jet add_exact(const Jet& a, const Jet& b);
Jet sub_exact(const Jet& a, const Jet& b);

// Formal partial derivative; the result has order K-1.
Jet derive(const Jet& a, std::string_view variable);

} // namespace jetcr
