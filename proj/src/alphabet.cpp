#include "jetcr/alphabet.hpp"

#include "jetcr/errors.hpp"

#include <set>
#include <stdexcept>

namespace jetcr {

namespace {

void check_names(const std::vector<std::string>& names) {
  if (names.size() > kMaxVariables)
    throw PreconditionError("alphabet exceeds " + std::to_string(kMaxVariables) + " variables");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty())
      throw PreconditionError("empty variable name");
    if (!seen.insert(n).second)
      throw PreconditionError("duplicate variable name '" + n + "'");
  }
}

} // namespace

AlphabetPtr Alphabet::make(std::vector<std::string> names, const std::vector<Pair>& conjugate_pairs) {
  check_names(names);
  auto a = std::shared_ptr<Alphabet>(new Alphabet());
  a->names_ = std::move(names);
  a->has_conjugation_ = true;
  a->conj_.resize(a->names_.size());
  for (std::size_t i = 0; i < a->conj_.size(); ++i)
    a->conj_[i] = i;
  for (const auto& [x, y] : conjugate_pairs) {
    auto ix = a->find(x), iy = a->find(y);
    if (!ix || !iy)
      throw PreconditionError("conjugate pair (" + x + ", " + y + ") names unknown variables");
    if (*ix == *iy || a->conj_[*ix] != *ix || a->conj_[*iy] != *iy)
      throw PreconditionError("conjugate pair (" + x + ", " + y + ") is not an involution");
    a->conj_[*ix] = *iy;
    a->conj_[*iy] = *ix;
  }
  return a;
}

AlphabetPtr Alphabet::holomorphic(std::vector<std::string> names) {
  check_names(names);
  auto a = std::shared_ptr<Alphabet>(new Alphabet());
  a->names_ = std::move(names);
  a->has_conjugation_ = false;
  a->conj_.resize(a->names_.size());
  for (std::size_t i = 0; i < a->conj_.size(); ++i)
    a->conj_[i] = i;
  return a;
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return i;
  return std::nullopt;
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name))
    return *i;
  throw std::out_of_range("variable '" + std::string(name) + "' not in alphabet");
}

std::size_t Alphabet::conjugate(std::size_t i) const {
  if (!has_conjugation_)
    throw PreconditionError("alphabet has no conjugation");
  return conj_.at(i);
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

} // namespace jetcr
