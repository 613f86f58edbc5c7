#pragma once

#include "jetcr/structure.hpp"

#include <string>
#include <vector>

namespace jetcr {

// External CR hypersurface Im w = phi(z, zb, Im zs, Re w) with zs_l = x._l + i t_l.
// The lift depends on the chart of the source germ; it is not an invariant.
struct ExternalLift {
  StructureGerm source;
  StructureGerm lifted;  // complex variables (z1.., zs1..), no t
  int source_rank = 0;   // complex rank of the first-integral differentials at 0
  int lifted_rank = 0;
};

ExternalLift external_lift(const StructureGerm& g);

struct ExternalLevi {
  LeviForm direct;         // Levi form of the lifted hypersurface
  GaussianMatrix block;    // [[phi_zzb, i/2 phi_zt], [-i/2 phi_tzb, 1/4 phi_tt]] from the source
  GaussianMatrix relation; // source Levi matrix evaluated at (zeta, zeta./(2i))
  LeviForm source;
  bool relation_holds = false;
  bool strictly_pseudoconvex = false;
};

ExternalLevi external_levi(const ExternalLift& lift);

// Alphabet (zs1.., z1.., w) of a CR map f(zs, z, w) = (zs + f1(z, w), f2(z, w)).
AlphabetPtr descend_alphabet(const StructureGerm& g);

// Structure map F = (f2_z(z, W), Re f2_w(z, W), t + Im f1(z, W)) with W = s + i phi.
StructureMap descend_map(const ExternalLift& lift, const std::vector<Jet>& f1, const std::vector<Jet>& f2);

} // namespace jetcr
