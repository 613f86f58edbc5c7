#pragma once

#include "jetcr/structure.hpp"

#include <vector>

namespace jetcr {

// Germ of a CR map (z, w) -> (f, g) between Im w = source_phi(z, zb, Re w)
// and Im w' = target_phi(z', zb', Re w').
struct CentralEquivalence {
  GermLayout source_layout;  // z, zb, s; no t
  Jet source_phi;
  GermLayout target_layout;
  Jet target_phi;
  std::vector<Jet> f;  // over central_map_alphabet(source_layout)
  Jet g;
};

// Holomorphic z1..zν, w.
AlphabetPtr central_map_alphabet(const GermLayout& source);

// z.., zb.., w, wb with z <-> zb and w <-> wb.
AlphabetPtr complexified_alphabet(const GermLayout& source);

// Im g(z, zeta) - target_phi(f, conj f, Re g) with zeta = s + i source_phi;
// over the source chart. Zero when the basic identity holds.
Jet basic_identity_defect(const CentralEquivalence& ce);

// lambda(z, zb, w, wb), real, with
//   Im g - target_phi(f, conj f, Re g) = lambda * (Im w - source_phi(z, zb, Re w)).
// Throws DivisionError naming the first monomial that survives on r = 0.
Jet extract_lambda(const CentralEquivalence& ce);

struct LiftedEquivalence {
  CentralEquivalence central;
  Jet lambda;               // over complexified_alphabet
  Jet sqrt_lambda;          // sqrt(lambda)(z, w) over the source germ alphabet
  std::vector<Rational> q;  // T_l = q_l t_l sqrt(lambda)
  std::vector<Jet> X, Y;    // Re f(z, w), Im f(z, w)
  Jet S;                    // Re g(z, w)
  std::vector<Jet> T;

  StructureMap map() const;
};

// phi = phi_0(z, zb, s) + sum c_l t_l^2 with every c_l > 0, or PreconditionError.
std::vector<Rational> positive_normal_form(const StructureGerm& g);

// Both germs in positive normal form with t-free parts matching the central
// hypersurfaces of `ce`. lambda(0) must be the square of a rational, as must
// every c_l / c'_l.
LiftedEquivalence lift_equivalence(const CentralEquivalence& ce, const StructureGerm& source,
                                   const StructureGerm& target);

struct LiftReport {
  PullbackReport pullback;
  // Pulled-back z'_j and w' equal f(z, w) and g(z, w).
  bool holomorphic_images = true;
  // F restricted to t = 0 is (Re f, Im f, Re g, 0) evaluated on the central hypersurface.
  bool restriction = true;
  // sum c'_l T_l^2 = lambda(z, w) sum c_l t_l^2.
  bool lambda_consistent = true;
  int order = 0;

  bool passed() const { return pullback.solutions && holomorphic_images && restriction && lambda_consistent; }
};

LiftReport verify_lift(const LiftedEquivalence& le, const StructureGerm& source, const StructureGerm& target);

} // namespace jetcr
