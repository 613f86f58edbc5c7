#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetcr {

inline constexpr std::size_t kMaxVariables = 24;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Ordered set of formal variable names with an optional conjugation involution.
// Variables paired by the involution model (z_j, zbar_j); unpaired variables are real.
class Alphabet {
public:
  using Pair = std::pair<std::string, std::string>;

  // An alphabet with conjugation: unpaired variables are real.
  static AlphabetPtr make(std::vector<std::string> names, const std::vector<Pair>& conjugate_pairs);
  // An alphabet of holomorphic symbols with no conjugation defined.
  static AlphabetPtr holomorphic(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const; // throws std::out_of_range
  bool contains(std::string_view name) const { return find(name).has_value(); }

  bool has_conjugation() const { return has_conjugation_; }
  std::size_t conjugate(std::size_t i) const;
  bool is_real(std::size_t i) const { return has_conjugation_ && conj_[i] == i; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_ && a.has_conjugation_ == b.has_conjugation_ && a.conj_ == b.conj_;
  }

private:
  Alphabet() = default;
  std::vector<std::string> names_;
  std::vector<std::size_t> conj_;
  bool has_conjugation_ = false;
};

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

} // namespace jetcr
