#include "jetcr/structure.hpp"

#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"

#include <sstream>

namespace jetcr {

GermLayout GermLayout::standard(int nu, int nprime) {
  if (nu < 0 || nprime < 0)
    throw PreconditionError("germ dimensions must be nonnegative");
  GermLayout l;
  for (int j = 1; j <= nu; ++j) {
    l.z.push_back("z" + std::to_string(j));
    l.zb.push_back("zb" + std::to_string(j));
  }
  for (int j = 1; j <= nprime; ++j)
    l.t.push_back("t" + std::to_string(j));
  return l;
}

AlphabetPtr GermLayout::alphabet() const {
  if (z.size() != zb.size())
    throw PreconditionError("layout: every z needs a conjugate");
  std::vector<std::string> names = z;
  names.insert(names.end(), zb.begin(), zb.end());
  names.push_back(s);
  names.insert(names.end(), t.begin(), t.end());
  std::vector<Alphabet::Pair> pairs;
  for (std::size_t j = 0; j < z.size(); ++j)
    pairs.emplace_back(z[j], zb[j]);
  return Alphabet::make(std::move(names), pairs);
}

GermLayout GermLayout::without_t() const {
  GermLayout l = *this;
  l.t.clear();
  return l;
}

StructureGerm StructureGerm::build(int nu, int nprime, const Jet& phi) {
  return build(GermLayout::standard(nu, nprime), phi);
}

StructureGerm StructureGerm::build(GermLayout layout, const Jet& phi) {
  AlphabetPtr alpha = layout.alphabet();
  if (layout.nu() + layout.nprime() == 0)
    throw PreconditionError("germ needs at least one z or t variable");
  if (!same_alphabet(alpha, phi.alphabet()))
    throw IncompatibleJets("phi is not over the germ alphabet (z, zb, s, t)");
  if (phi.order() < 2)
    throw PreconditionError("phi needs order at least 2");
  if (!phi.is_real())
    throw PreconditionError("phi is not real");
  for (const auto& [m, c] : phi.terms()) {
    if (m.degree() > 1)
      break;
    if (m.degree() == 0)
      throw PreconditionError("phi(0) != 0");
    throw PreconditionError("dphi(0) != 0: linear term " + m.to_string(*alpha));
  }
  return StructureGerm(std::move(layout), alpha, phi);
}

Jet StructureGerm::w() const {
  return Jet::variable(alphabet_, order(), layout_.s) + Gaussian::i() * phi_;
}

bool StructureGerm::is_rigid() const { return derive(phi_, layout_.s).is_zero(); }

const Jet* VectorField::coefficient(const std::string& variable) const {
  for (const auto& [v, c] : components)
    if (v == variable)
      return &c;
  return nullptr;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : components) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << c.to_string() << ") d/d" << v;
  }
  return os.str();
}

std::vector<VectorField> build_frame(const StructureGerm& g) {
  const GermLayout& l = g.layout();
  const AlphabetPtr& a = g.alphabet();
  const int k = g.order() - 1;
  Jet unit = Jet::constant(a, k, Gaussian(1)) + Gaussian::i() * derive(g.phi(), l.s);
  Jet factor = inverse(unit) * -Gaussian::i();
  Jet one = Jet::constant(a, k, Gaussian(1));

  std::vector<VectorField> frame;
  auto add = [&](const std::string& var) {
    VectorField f;
    f.components.emplace_back(var, one);
    f.components.emplace_back(l.s, derive(g.phi(), var) * factor);
    frame.push_back(std::move(f));
  };
  for (const auto& v : l.zb)
    add(v);
  for (const auto& v : l.t)
    add(v);
  return frame;
}

Jet apply_field(const VectorField& field, const Jet& u) {
  std::optional<Jet> acc;
  for (const auto& [v, c] : field.components) {
    Jet term = mul_exact(c, derive(u, v));
    acc = acc ? add_exact(*acc, term) : term;
  }
  if (!acc)
    return Jet(u.alphabet(), u.order() - 1);
  return *acc;
}

SolutionReport is_solution(const StructureGerm& g, const Jet& u) {
  SolutionReport report;
  report.order = std::min(u.order(), g.order()) - 1;
  auto frame = build_frame(g);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    Jet r = apply_field(frame[i], u);
    report.order = std::min(report.order, r.order());
    if (!r.is_zero() && !report.residual) {
      report.solution = false;
      report.failing_field = i;
      report.residual = r;
    }
  }
  return report;
}

Gaussian second_derivative_at_0(const Jet& f, std::string_view a, std::string_view b) {
  const Alphabet& alpha = *f.alphabet();
  std::size_t ia = alpha.index(a), ib = alpha.index(b);
  if (ia == ib)
    return f.coefficient(Monomial::variable(ia, 2)) * Gaussian(2);
  Monomial m = Monomial::variable(ia) * Monomial::variable(ib);
  return f.coefficient(m);
}

LeviForm levi_form_of(const GaussianMatrix& hermitian) {
  LeviForm lf;
  lf.matrix = hermitian;
  lf.inertia = hermitian_inertia(hermitian);
  lf.nondegenerate = lf.inertia.zero == 0;
  lf.definite = lf.inertia.definite();
  return lf;
}

LeviForm levi_form(const StructureGerm& g) {
  const GermLayout& l = g.layout();
  std::vector<std::string> rows = l.z, cols = l.zb;
  rows.insert(rows.end(), l.t.begin(), l.t.end());
  cols.insert(cols.end(), l.t.begin(), l.t.end());
  const std::size_t n = rows.size();
  GaussianMatrix m(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      m(p, q) = second_derivative_at_0(g.phi(), rows[p], cols[q]);
  return levi_form_of(m);
}

std::string Covector::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : components) {
    if (c.is_zero())
      continue;
    if (!first)
      os << " + ";
    first = false;
    os << "(" << c.to_string() << ") " << d;
  }
  if (first)
    os << "0";
  return os.str();
}

Covector characteristic_covector(const StructureGerm& g) {
  const GermLayout& l = g.layout();
  const AlphabetPtr& a = g.alphabet();
  const int k = g.order() - 1;
  Covector v;
  for (const auto& z : l.z)
    v.components.emplace("d" + z, derive(g.phi(), z) * Gaussian(Rational(0), Rational(-2)));
  v.components.emplace("dw", Jet::constant(a, k, Gaussian(1)) - Gaussian::i() * derive(g.phi(), l.s));
  return v;
}

namespace {

void accumulate(Covector& c, const std::string& key, const Jet& j) {
  auto it = c.components.find(key);
  if (it == c.components.end())
    c.components.emplace(key, j);
  else
    it->second = add_exact(it->second, j);
}

} // namespace

Covector expand_coframe(const StructureGerm& g, const Covector& v) {
  const GermLayout& l = g.layout();
  Covector out;
  for (const auto& [key, c] : v.components) {
    if (key != "dw") {
      accumulate(out, key, c);
      continue;
    }
    accumulate(out, "d" + l.s, c);
    for (const auto& name : g.alphabet()->names())
      accumulate(out, "d" + name, mul_exact(c, derive(g.phi(), name)) * Gaussian::i());
  }
  return out;
}

Covector imaginary_part(const StructureGerm& g, const Covector& c) {
  const GermLayout& l = g.layout();
  Covector out;
  auto get = [&](const std::string& key) -> std::optional<Jet> {
    auto it = c.components.find(key);
    if (it == c.components.end())
      return std::nullopt;
    return it->second;
  };
  const Gaussian half_i_inv(Rational(0), Rational(-1, 2)); // 1/(2i)
  for (std::size_t j = 0; j < l.z.size(); ++j) {
    auto a = get("d" + l.z[j]);
    auto b = get("d" + l.zb[j]);
    if (!a && !b)
      continue;
    Jet za = a ? *a : Jet(g.alphabet(), b->order());
    Jet zb = b ? *b : Jet(g.alphabet(), a->order());
    out.components.emplace("d" + l.z[j], sub_exact(za, zb.conjugate()) * half_i_inv);
    out.components.emplace("d" + l.zb[j], sub_exact(zb, za.conjugate()) * half_i_inv);
  }
  std::vector<std::string> real = l.t;
  real.push_back(l.s);
  for (const auto& r : real)
    if (auto c_r = get("d" + r))
      out.components.emplace("d" + r, c_r->imag_part());
  return out;
}

Covector covector_defect(const StructureGerm& g) {
  Covector im = imaginary_part(g, expand_coframe(g, characteristic_covector(g)));
  for (const auto& t : g.layout().t)
    accumulate(im, "d" + t, -derive(g.phi(), t));
  return im;
}

Jet pullback(const StructureMap& f, const StructureGerm& target, const Jet& u) {
  const GermLayout& l = target.layout();
  if (int(f.z.size()) != l.nu() || int(f.t.size()) != l.nprime())
    throw PreconditionError("pullback: map components do not match the target dimensions");
  Substitution sub(f.s.alphabet());
  for (int j = 0; j < l.nu(); ++j) {
    sub.set(l.z[j], f.z[j]);
    sub.set(l.zb[j], f.z[j].conjugate());
  }
  sub.set(l.s, f.s);
  for (int j = 0; j < l.nprime(); ++j)
    sub.set(l.t[j], f.t[j]);
  return compose(u, sub);
}

PullbackReport verify_structure_map(const StructureGerm& source, const StructureGerm& target, const StructureMap& f) {
  if (!same_alphabet(f.s.alphabet(), source.alphabet()))
    throw IncompatibleJets("structure map is not over the source alphabet");
  PullbackReport out;
  std::vector<Jet> integrals;
  for (const auto& z : target.layout().z)
    integrals.push_back(Jet::variable(target.alphabet(), target.order(), z));
  integrals.push_back(target.w());
  for (const auto& u : integrals) {
    out.reports.push_back(is_solution(source, pullback(f, target, u)));
    out.solutions = out.solutions && out.reports.back().solution;
  }
  return out;
}

} // namespace jetcr
