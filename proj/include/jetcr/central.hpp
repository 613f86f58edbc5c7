#pragma once

#include "jetcr/structure.hpp"

#include <vector>

namespace jetcr {

struct CentralChart {
  // Graph t = F(z, zb, s) of the central manifold, order K-1, over `base`.
  std::vector<Jet> F;
  AlphabetPtr base;
  GermLayout base_layout;
  // phi(z, zb, s, F), order K.
  Jet sigma_phi;
  StructureGerm straightened;
};

// Solves d phi / d t_l = 0 for t. Throws SingularJacobian for a degenerate t-block.
CentralChart central_manifold(const StructureGerm& g);

// phi(z, zb, s, t + F): the central manifold becomes {t = 0}.
StructureGerm straighten(const StructureGerm& g, const CentralChart& chart);

// Largest residual check of the chart: d_t phi(., F) and d_t phi~(., 0), both order K-1.
std::vector<Jet> central_residuals(const StructureGerm& g, const CentralChart& chart);

struct MorseNormalForm {
  Jet base;                       // phi_0(z, zb, s), order K
  std::vector<Rational> quad;     // L(t) = sum c_l t_l^2
  std::vector<Jet> G;             // parameter diffeomorphism in t, order K-1
  int signature_m = 0;            // number of positive c_l

  // phi_0 + L(G) as a jet over the germ alphabet, order K.
  Jet reconstruct(const AlphabetPtr& alphabet) const;
  // sqrt|c_l|, for showing L in the form sum +-T_l^2 with T_l = sqrt|c_l| G_l.
  std::vector<double> unit_scaling() const;
};

// Requires a straightened germ with nondegenerate t-Hessian.
MorseNormalForm morse_normalize(const StructureGerm& g);

struct CentralHypersurface {
  GermLayout layout;  // z, zb, s with s = Re w
  Jet sigma_phi;      // Im w = sigma_phi(z, zb, Re w)
  bool trivial;       // nu = 0: Sigma is a curve with no CR structure
};

CentralHypersurface central_cr_hypersurface(const CentralChart& chart);

} // namespace jetcr
