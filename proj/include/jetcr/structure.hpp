#pragma once

#include "jetcr/jet.hpp"
#include "jetcr/linear.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jetcr {

// Variable names of a germ chart: complex z_j with conjugates, real s and t_l.
struct GermLayout {
  std::vector<std::string> z;
  std::vector<std::string> zb;
  std::string s = "s";
  std::vector<std::string> t;

  // z1..zν, zb1..zbν, s, t1..tn'
  static GermLayout standard(int nu, int nprime);

  int nu() const { return int(z.size()); }
  int nprime() const { return int(t.size()); }
  AlphabetPtr alphabet() const;
  // Same layout without the t variables.
  GermLayout without_t() const;
};

// Germ of w = s + i phi(z, zb, s, t) with phi real, phi(0) = 0, dphi(0) = 0.
class StructureGerm {
public:
  static StructureGerm build(int nu, int nprime, const Jet& phi);
  static StructureGerm build(GermLayout layout, const Jet& phi);

  int nu() const { return layout_.nu(); }
  int nprime() const { return layout_.nprime(); }
  int n() const { return nu() + nprime(); }
  int order() const { return phi_.order(); }
  const GermLayout& layout() const { return layout_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Jet& phi() const { return phi_; }

  // The first integral s + i phi.
  Jet w() const;
  bool is_rigid() const;

private:
  StructureGerm(GermLayout layout, AlphabetPtr alphabet, Jet phi)
      : layout_(std::move(layout)), alphabet_(std::move(alphabet)), phi_(std::move(phi)) {}

  GermLayout layout_;
  AlphabetPtr alphabet_;
  Jet phi_;
};

// Sum of coefficient * d/d(variable).
struct VectorField {
  std::vector<std::pair<std::string, Jet>> components;

  const Jet* coefficient(const std::string& variable) const;
  std::string to_string() const;
};

// L_1..L_ν along zb_j, then L_{ν+1}..L_n along t_l; coefficients exact to order K-1.
std::vector<VectorField> build_frame(const StructureGerm& g);

Jet apply_field(const VectorField& field, const Jet& u);

struct SolutionReport {
  bool solution = true;
  int order = 0;
  std::optional<std::size_t> failing_field;
  std::optional<Jet> residual;
};

SolutionReport is_solution(const StructureGerm& g, const Jet& u);

struct LeviForm {
  GaussianMatrix matrix;
  Inertia inertia;
  bool nondegenerate = false;
  bool definite = false;
  bool positive() const { return definite && inertia.positive > 0; }
};

LeviForm levi_form(const StructureGerm& g);
LeviForm levi_form_of(const GaussianMatrix& hermitian);

// Second partial derivative of a jet at the origin.
Gaussian second_derivative_at_0(const Jet& f, std::string_view a, std::string_view b);

// Differential form with jet coefficients keyed by differential name ("dz1", "ds", "dw", ...).
struct Covector {
  std::map<std::string, Jet> components;
  std::string to_string() const;
};

// v = -2i sum phi_{z_j} dz_j + (1 - i phi_s) dw
Covector characteristic_covector(const StructureGerm& g);
// Rewrite dw = ds + i dphi in the coframe dz_j, dzb_j, ds, dt_l.
Covector expand_coframe(const StructureGerm& g, const Covector& v);
// Imaginary part of a covector written in the coframe dz_j, dzb_j, ds, dt_l.
Covector imaginary_part(const StructureGerm& g, const Covector& c);
// Im v - sum phi_{t_l} dt_l; zero exactly when Im v lies in the ideal of the phi_{t_l}.
Covector covector_defect(const StructureGerm& g);

// Map between germs in source coordinates: z'_j = z[j], s' = s, t'_l = t[l].
struct StructureMap {
  std::vector<Jet> z;  // complex components X + iY
  Jet s;               // real
  std::vector<Jet> t;  // real
};

// u(z', zb', s', t') pulled back through the map; u lives over the target alphabet.
Jet pullback(const StructureMap& f, const StructureGerm& target, const Jet& u);

struct PullbackReport {
  bool solutions = true;
  // One entry per pulled-back target first integral z'_1..z'_nu, w'.
  std::vector<SolutionReport> reports;
};

// Are the pulled-back first integrals of the target solutions of the source?
PullbackReport verify_structure_map(const StructureGerm& source, const StructureGerm& target, const StructureMap& f);

} // namespace jetcr
