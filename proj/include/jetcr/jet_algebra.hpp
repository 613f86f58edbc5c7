#pragma once

#include "jetcr/jet.hpp"

#include <map>
#include <string>
#include <vector>

namespace jetcr {

// Images of outer variables, all jets over `target`.
struct Substitution {
  AlphabetPtr target;
  std::map<std::string, Jet> images;

  explicit Substitution(AlphabetPtr target_alphabet) : target(std::move(target_alphabet)) {}

  // Every variable of `from` that also exists in `target` is sent to itself.
  static Substitution by_name(const Alphabet& from, AlphabetPtr target, int order);

  Substitution& set(const std::string& variable, Jet image);
};

struct ComposeOptions {
  // Permit images with nonzero constant term. The outer jet is then treated as
  // the exact polynomial it stores and the result order is the images' order.
  bool allow_constant_shift = false;
};

// outer(images). Without constant shifts the result order is the degree through
// which the true series composition is determined:
//   min( min_v [order(image_v) + val(d outer / d v)],  (order(outer)+1)*val_min - 1 ).
Jet compose(const Jet& outer, const Substitution& sub, ComposeOptions options = {});

// Re-express a jet over another alphabet containing all of its variables by name.
Jet embed(const Jet& a, const AlphabetPtr& target);

// Multiplicative inverse of a unit by geometric series.
Jet inverse(const Jet& unit);

// Exact quotient a / v; every term must contain v. Result order K-1.
Jet divide_by_coordinate(const Jet& a, std::string_view variable);

// Square root with constant term +1; requires constant term exactly 1.
Jet jet_sqrt(const Jet& a);

// Newton iteration on jets. `eqs` live over one alphabet containing the
// unknowns plus parameters; every parameter must appear by name in
// `parameters`. Returns the unique solution u(params) with u(0) = 0, with order
// equal to the smallest equation order.
std::vector<Jet> implicit_solve(const std::vector<Jet>& eqs, const std::vector<std::string>& unknowns,
                                const AlphabetPtr& parameters);

// Inverse of a jet diffeomorphism: map[i] is the image of alphabet variable
// `variables[i]`; returns g with map(g) = identity to the map's order.
std::vector<Jet> reversion(const std::vector<Jet>& map, const std::vector<std::string>& variables);

// Square matrix of jets over one alphabet.
using JetMatrix = std::vector<std::vector<Jet>>;

// Inverse of a jet matrix whose constant part is invertible.
JetMatrix invert(const JetMatrix& m);

} // namespace jetcr
