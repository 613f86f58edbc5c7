#pragma once

#include "jetcr/structure.hpp"

#include <string>
#include <vector>

namespace jetcr {

// Complexified hypersurface Im w = sigma(z, zb, Re w).
struct ComplexDefining {
  GermLayout layout;         // real chart of sigma: z, zb, s
  Jet sigma;                 // over layout.alphabet()
  AlphabetPtr complexified;  // z.., zb.., w, wb with z <-> zb, w <-> wb
  // w = rho(z, zb, wb), over `complexified` (no w dependence), order K.
  Jet rho;
  // (w - wb)/(2i) - sigma(z, zb, (w + wb)/2), over `complexified`; rho_w(0) = 1/(2i).
  Jet defining;

  int n() const { return layout.nu(); }
};

ComplexDefining complexify_defining(const GermLayout& layout, const Jet& sigma);

// rho(z, zb, conj(rho)) - w, which vanishes for every complexified defining equation.
Jet reflection_defect(const ComplexDefining& cd);

// New chart centred at the point (a, s0 + i sigma(a, abar, s0)) with the
// hypersurface again of the form Im W = sigma'(Z, Zb, Re W), sigma' = O(2).
// The truncated sigma is treated as an exact polynomial.
Jet recenter(const GermLayout& layout, const Jet& sigma, const std::vector<Gaussian>& a, const Rational& s0);

struct SegreJet {
  std::vector<Gaussian> a;
  Gaussian b;
  AlphabetPtr local;  // holomorphic zeta_j = z_j - a_j
  Jet graph;          // w(z) = rho(z, abar, bbar) about z = a
};

// Requires b = rho(a, abar, bbar) exactly for the stored polynomial rho.
SegreJet segre_graph(const ComplexDefining& cd, const std::vector<Gaussian>& a, const Gaussian& b);

// Phi_kl(z, w, p) with p = (w_{z_1}, ..., w_{z_n}); symmetric matrix of jets.
struct PhiJet {
  AlphabetPtr alphabet;  // holomorphic z1..zn, w, p1..pn
  std::vector<std::vector<Jet>> entries;
  int order = 0;

  bool is_zero() const;
};

// Holomorphic alphabet (z.., w, p..) for a complexified chart.
AlphabetPtr phi_alphabet(const ComplexDefining& cd);

// Bordered determinants divided by rho_w^3, with the conjugate variables eliminated.
PhiJet phi_determinant(const ComplexDefining& cd);
// Segre graphs solved for (abar, bbar) and differentiated twice.
PhiJet phi_elimination(const ComplexDefining& cd);

// Determinant Phi and p = -rho_z / rho_w along the complexified hypersurface,
// as jets in (z, zb, wb) with w = rho(z, zb, wb).
struct SegreFamilyPhi {
  AlphabetPtr alphabet;
  std::vector<std::vector<Jet>> phi;
  std::vector<Jet> p;
};
SegreFamilyPhi phi_on_segre_family(const ComplexDefining& cd);

struct RigidVerdict {
  bool analytic_consistent = true;
  std::vector<std::string> offending;  // monomials of Phi entries with positive w-exponent
  PhiJet phi;
};

RigidVerdict rigid_phi_test(const StructureGerm& g);

// psi with xi^2 h''(xi) = psi(xi h'(xi)); psi has order floor(K/2).
Jet example_psi(const Jet& h);
// xi^2 h'' - psi(xi h'), over the alphabet of h.
Jet example_psi_residual(const Jet& h, const Jet& psi);

} // namespace jetcr
