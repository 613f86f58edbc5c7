#include "jetcr/jet.hpp"

#include "jetcr/errors.hpp"

#include <algorithm>
#include <sstream>

namespace jetcr {

// ---- Monomial ---------------------------------------------------------------

void Monomial::set(std::size_t i, unsigned e) {
  if (i >= kMaxVariables)
    throw PreconditionError("variable index out of range");
  if (e > 255)
    throw PreconditionError("exponent exceeds 255");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
  exps_[i] = static_cast<std::uint8_t>(e);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned e = unsigned(exps_[i]) + o.exps_[i];
    if (e > 255)
      throw PreconditionError("exponent exceeds 255");
    m.exps_[i] = static_cast<std::uint8_t>(e);
  }
  m.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Monomial::to_string(const Alphabet& alphabet) const {
  if (degree_ == 0)
    return "1";
  std::string out;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (exps_[i] == 0)
      continue;
    if (!out.empty())
      out += "*";
    out += alphabet.name(i);
    if (exps_[i] > 1)
      out += "^" + std::to_string(exps_[i]);
  }
  return out;
}

// ---- Jet --------------------------------------------------------------------

namespace {

void check_order(int order) {
  if (order < 0)
    throw PreconditionError("jet order must be nonnegative (got " + std::to_string(order) + ")");
}

void sort_terms(std::vector<Jet::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Jet::Term& a, const Jet::Term& b) { return graded_lex_less(a.first, b.first); });
}

} // namespace

Jet::Jet(AlphabetPtr alphabet, int order) : alphabet_(std::move(alphabet)), order_(order) {
  if (!alphabet_)
    throw PreconditionError("jet requires an alphabet");
  check_order(order);
}

Jet::Jet(AlphabetPtr alphabet, int order, std::vector<Term> sorted_terms)
    : alphabet_(std::move(alphabet)), order_(order), terms_(std::move(sorted_terms)) {}

Jet Jet::constant(AlphabetPtr alphabet, int order, const Gaussian& c) {
  return monomial(std::move(alphabet), order, Monomial(), c);
}

Jet Jet::variable(AlphabetPtr alphabet, int order, std::string_view name) {
  std::size_t i = alphabet->index(name);
  return monomial(std::move(alphabet), order, Monomial::variable(i), Gaussian(1));
}

Jet Jet::monomial(AlphabetPtr alphabet, int order, const Monomial& m, const Gaussian& c) {
  Jet j(std::move(alphabet), order);
  if (!c.is_zero() && int(m.degree()) <= order)
    j.terms_.emplace_back(m, c);
  return j;
}

Jet Jet::from_terms(AlphabetPtr alphabet, int order, std::vector<Term> terms) {
  JetBuilder b(std::move(alphabet), order);
  for (auto& [m, c] : terms)
    b.add(m, c);
  return std::move(b).build();
}

Gaussian Jet::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return graded_lex_less(t.first, k); });
  if (it != terms_.end() && it->first == m)
    return it->second;
  return Gaussian();
}

Gaussian Jet::constant_term() const {
  if (!terms_.empty() && terms_.front().first.is_one())
    return terms_.front().second;
  return Gaussian();
}

int Jet::valuation() const { return terms_.empty() ? order_ + 1 : int(terms_.front().first.degree()); }

bool Jet::depends_on(std::string_view name) const { return degree_in(name) > 0; }

int Jet::degree_in(std::string_view name) const {
  auto i = alphabet_->find(name);
  if (!i)
    return 0;
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    d = std::max(d, m.exponent(*i));
  return int(d);
}

Jet Jet::truncate(int k) const {
  if (k > order_)
    throw PreconditionError("cannot truncate a jet of order " + std::to_string(order_) + " to order " +
                            std::to_string(k));
  check_order(k);
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (int(t.first.degree()) > k)
      break;
    kept.push_back(t);
  }
  return Jet(alphabet_, k, std::move(kept));
}

Jet Jet::with_order(int k) const {
  if (k < order_)
    return truncate(k);
  return Jet(alphabet_, k, terms_);
}

Jet Jet::conjugate() const {
  const Alphabet& a = *alphabet_;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial n;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (m.exponent(i))
        n.set(a.conjugate(i), m.exponent(i));
    out.emplace_back(n, c.conj());
  }
  sort_terms(out);
  return Jet(alphabet_, order_, std::move(out));
}

Jet Jet::real_part() const {
  Jet r = *this + conjugate();
  return r * Gaussian(Rational(1, 2));
}

Jet Jet::imag_part() const {
  Jet r = *this - conjugate();
  return r * Gaussian(Rational(0), Rational(-1, 2)); // 1/(2i)
}

Jet Jet::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out)
    t.second = -t.second;
  return Jet(alphabet_, order_, std::move(out));
}

void Jet::require_compatible(const Jet& o, const char* op) const {
  if (!same_alphabet(alphabet_, o.alphabet_))
    throw IncompatibleJets(std::string(op) + ": alphabet mismatch");
  if (order_ != o.order_)
    throw IncompatibleJets(std::string(op) + ": order mismatch (" + std::to_string(order_) + " vs " +
                           std::to_string(o.order_) + ")");
}

namespace {

std::vector<Jet::Term> merge(const std::vector<Jet::Term>& a, const std::vector<Jet::Term>& b, bool subtract,
                             int max_degree) {
  std::vector<Jet::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  auto push_b = [&](const Jet::Term& t) {
    if (subtract)
      out.emplace_back(t.first, -t.second);
    else
      out.push_back(t);
  };
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && graded_lex_less(ia->first, ib->first))) {
      if (int(ia->first.degree()) <= max_degree)
        out.push_back(*ia);
      ++ia;
    } else if (ia == a.end() || graded_lex_less(ib->first, ia->first)) {
      if (int(ib->first.degree()) <= max_degree)
        push_b(*ib);
      ++ib;
    } else {
      if (int(ia->first.degree()) <= max_degree) {
        Gaussian c = subtract ? ia->second - ib->second : ia->second + ib->second;
        if (!c.is_zero())
          out.emplace_back(ia->first, std::move(c));
      }
      ++ia;
      ++ib;
    }
  }
  return out;
}

} // namespace

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(o, "add");
  terms_ = merge(terms_, o.terms_, false, order_);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(o, "subtract");
  terms_ = merge(terms_, o.terms_, true, order_);
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  require_compatible(o, "multiply");
  *this = mul_truncated(*this, o, order_);
  return *this;
}

Jet& Jet::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_)
    t.second *= c;
  return *this;
}

bool operator==(const Jet& a, const Jet& b) {
  if (!same_alphabet(a.alphabet_, b.alphabet_) || a.order_ != b.order_ || a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
      return false;
  return true;
}

std::string Jet::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef = c.to_string();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    bool negative = !compound && !coef.empty() && coef[0] == '-';
    if (!first)
      os << (negative ? " - " : " + ");
    else if (negative)
      os << "-";
    if (negative)
      coef.erase(0, 1);
    if (compound)
      coef = "(" + coef + ")";
    if (m.is_one())
      os << coef;
    else if (coef == "1")
      os << m.to_string(*alphabet_);
    else
      os << coef << "*" << m.to_string(*alphabet_);
    first = false;
  }
  if (first)
    os << "0";
  os << " + O(" << order_ + 1 << ")";
  return os.str();
}

// ---- JetBuilder -------------------------------------------------------------

JetBuilder::JetBuilder(AlphabetPtr alphabet, int order) : alphabet_(std::move(alphabet)), order_(order) {
  check_order(order);
}

void JetBuilder::add(const Monomial& m, const Gaussian& c) {
  if (int(m.degree()) > order_ || c.is_zero())
    return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted)
    it->second += c;
}

void JetBuilder::add_product(const Monomial& m, const Gaussian& a, const Gaussian& b) {
  if (int(m.degree()) > order_)
    return;
  acc_[m].add_product(a, b);
}

Jet JetBuilder::build() && {
  std::vector<Jet::Term> terms;
  terms.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (!c.is_zero())
      terms.emplace_back(m, std::move(c));
  acc_.clear();
  sort_terms(terms);
  return Jet(std::move(alphabet_), order_, std::move(terms));
}

// ---- free functions ----------------------------------------------------------

Jet mul_truncated(const Jet& a, const Jet& b, int k) {
  if (!same_alphabet(a.alphabet(), b.alphabet()))
    throw IncompatibleJets("multiply: alphabet mismatch");
  JetBuilder out(a.alphabet(), k);
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (const auto& [ma, ca] : ta) {
    int budget = k - int(ma.degree());
    if (budget < 0)
      break;
    for (const auto& [mb, cb] : tb) {
      if (int(mb.degree()) > budget)
        break;
      out.add_product(ma * mb, ca, cb);
    }
  }
  return std::move(out).build();
}

Jet mul_exact(const Jet& a, const Jet& b) {
  int k = std::min(a.order() + b.valuation(), b.order() + a.valuation());
  return mul_truncated(a, b, k);
}

Jet add_exact(const Jet& a, const Jet& b) {
  int k = std::min(a.order(), b.order());
  return a.truncate(k) + b.truncate(k);
}

Jet sub_exact(const Jet& a, const Jet& b) {
  int k = std::min(a.order(), b.order());
  return a.truncate(k) - b.truncate(k);
}

Jet derive(const Jet& a, std::string_view variable) {
  if (a.order() == 0)
    throw PreconditionError("cannot differentiate a jet of order 0");
  std::size_t v = a.alphabet()->index(variable);
  std::vector<Jet::Term> out;
  for (const auto& [m, c] : a.terms()) {
    unsigned e = m.exponent(v);
    if (e == 0)
      continue;
    out.emplace_back(m.lowered(v), c * Gaussian(long(e)));
  }
  sort_terms(out);
  std::vector<Jet::Term> kept;
  for (auto& t : out)
    if (int(t.first.degree()) <= a.order() - 1)
      kept.push_back(std::move(t));
  return Jet(a.alphabet(), a.order() - 1, std::move(kept));
}

} // namespace jetcr
