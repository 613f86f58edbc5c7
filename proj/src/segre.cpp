#include "jetcr/segre.hpp"

#include "jetcr/central.hpp"
#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"

namespace jetcr {

namespace {

const Gaussian kHalf(Rational(1, 2));
const Gaussian kInvTwoI(Rational(0), Rational(-1, 2)); // 1/(2i)

// Value of the stored polynomial at a point given by alphabet index.
Gaussian evaluate(const Jet& f, const std::vector<Gaussian>& values) {
  Gaussian sum;
  for (const auto& [m, c] : f.terms()) {
    Gaussian term = c;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (unsigned e = 0; e < m.exponent(i); ++e)
        term *= values[i];
    sum += term;
  }
  return sum;
}

void require_hypersurface(const GermLayout& layout, const Jet& sigma) {
  if (layout.nprime() != 0)
    throw PreconditionError("hypersurface chart must not carry t variables");
  if (!same_alphabet(layout.alphabet(), sigma.alphabet()))
    throw IncompatibleJets("sigma is not over the chart alphabet (z, zb, s)");
  if (!sigma.is_real())
    throw PreconditionError("sigma is not real");
  if (sigma.valuation() < 2)
    throw PreconditionError("sigma must vanish to second order at 0");
}

std::vector<std::string> p_names(int n) {
  std::vector<std::string> p;
  for (int j = 1; j <= n; ++j)
    p.push_back("p" + std::to_string(j));
  return p;
}

// Alphabet of Phi plus the conjugate unknowns zb.., wb.
AlphabetPtr elimination_alphabet(const ComplexDefining& cd) {
  std::vector<std::string> names = cd.layout.z;
  names.push_back("w");
  for (const auto& p : p_names(cd.n()))
    names.push_back(p);
  names.insert(names.end(), cd.layout.zb.begin(), cd.layout.zb.end());
  names.push_back("wb");
  return Alphabet::holomorphic(std::move(names));
}

std::vector<std::string> conjugate_unknowns(const ComplexDefining& cd) {
  std::vector<std::string> u = cd.layout.zb;
  u.push_back("wb");
  return u;
}

// Solve eqs (over the elimination alphabet) for zb, wb as jets in (z, w, p).
Substitution eliminate_conjugates(const ComplexDefining& cd, const std::vector<Jet>& eqs) {
  AlphabetPtr target = phi_alphabet(cd);
  std::vector<std::string> unknowns = conjugate_unknowns(cd);
  std::vector<Jet> sol;
  try {
    sol = implicit_solve(eqs, unknowns, target);
  } catch (const SingularJacobian& e) {
    throw SingularJacobian("Segre elimination: hypersurface is Levi-degenerate at 0", e.rank(), e.size());
  }
  Substitution sub = Substitution::by_name(*elimination_alphabet(cd), target, sol[0].order());
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    sub.set(unknowns[i], sol[i]);
  return sub;
}

PhiJet finish(const ComplexDefining& cd, std::vector<std::vector<Jet>> entries) {
  PhiJet out{phi_alphabet(cd), std::move(entries), 0};
  out.order = out.entries.empty() ? 0 : out.entries[0][0].order();
  return out;
}

// Bordered determinants divided by rho_w^3 over the complexified alphabet.
std::vector<std::vector<Jet>> determinant_entries(const ComplexDefining& cd) {
  const int n = cd.n();
  const int k = cd.defining.order() - 2;
  const Jet& rho = cd.defining;
  Jet r = rho.truncate(k);
  Jet rw = derive(rho, "w");
  Jet rww = derive(rw, "w").truncate(k);
  Jet inv_w = inverse(rw).truncate(k);
  Jet inv_w3 = inv_w * inv_w * inv_w;
  rw = rw.truncate(k);
  std::vector<Jet> ri, riw;
  for (const auto& z : cd.layout.z) {
    Jet d = derive(rho, z);
    riw.push_back(derive(d, "w").truncate(k));
    ri.push_back(d.truncate(k));
  }
  std::vector<std::vector<Jet>> out(n, std::vector<Jet>(n, Jet(cd.complexified, k)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet rij = derive(derive(rho, cd.layout.z[i]), cd.layout.z[j]);
      Jet det = r * (rij * rww - riw[i] * riw[j]) - ri[j] * (ri[i] * rww - riw[i] * rw) +
                rw * (ri[i] * riw[j] - rij * rw);
      out[i][j] = det * inv_w3;
      out[j][i] = out[i][j];
    }
  return out;
}

} // namespace

ComplexDefining complexify_defining(const GermLayout& layout, const Jet& sigma) {
  require_hypersurface(layout, sigma);
  const int k = sigma.order();
  std::vector<std::string> names = layout.z;
  names.insert(names.end(), layout.zb.begin(), layout.zb.end());
  names.push_back("w");
  names.push_back("wb");
  std::vector<Alphabet::Pair> pairs;
  for (std::size_t j = 0; j < layout.z.size(); ++j)
    pairs.emplace_back(layout.z[j], layout.zb[j]);
  pairs.emplace_back("w", "wb");
  AlphabetPtr cx = Alphabet::make(names, pairs);

  Substitution sub(cx);
  for (std::size_t j = 0; j < layout.z.size(); ++j) {
    sub.set(layout.z[j], Jet::variable(cx, k, layout.z[j]));
    sub.set(layout.zb[j], Jet::variable(cx, k, layout.zb[j]));
  }
  Jet w = Jet::variable(cx, k, "w"), wb = Jet::variable(cx, k, "wb");
  sub.set(layout.s, (w + wb) * kHalf);
  Jet defining = (w - wb) * kInvTwoI - compose(sigma, sub).truncate(k);

  std::vector<std::string> params = layout.z;
  params.insert(params.end(), layout.zb.begin(), layout.zb.end());
  params.push_back("wb");
  Jet rho = implicit_solve({defining}, {"w"}, Alphabet::holomorphic(params))[0];
  return ComplexDefining{layout, sigma, cx, embed(rho, cx), defining};
}

Jet reflection_defect(const ComplexDefining& cd) {
  const int k = cd.rho.order();
  Substitution sub = Substitution::by_name(*cd.complexified, cd.complexified, k);
  sub.set("wb", cd.rho.conjugate());
  return compose(cd.rho, sub).truncate(k) - Jet::variable(cd.complexified, k, "w");
}

Jet recenter(const GermLayout& layout, const Jet& sigma, const std::vector<Gaussian>& a, const Rational& s0) {
  require_hypersurface(layout, sigma);
  const int n = layout.nu();
  const int k = sigma.order();
  if (int(a.size()) != n)
    throw PreconditionError("recenter: base point has the wrong dimension");
  const AlphabetPtr& base = sigma.alphabet();

  std::vector<Gaussian> point(base->size());
  for (int j = 0; j < n; ++j) {
    point[base->index(layout.z[j])] = a[j];
    point[base->index(layout.zb[j])] = a[j].conj();
  }
  point[base->index(layout.s)] = Gaussian(s0);
  Gaussian sigma_p = evaluate(sigma, point);
  std::vector<Gaussian> c;
  for (const auto& z : layout.z)
    c.push_back(evaluate(derive(sigma, z), point));
  Gaussian e = evaluate(derive(sigma, layout.s), point);

  // Chart (Z, Zb, U) plus V = Im W, with W = (1 - i e)(w - b) - 2i c.(z - a).
  std::vector<std::string> names = base->names();
  std::string v = "_v";
  while (base->contains(v))
    v = "_" + v;
  names.push_back(v);
  std::vector<Alphabet::Pair> pairs;
  for (int j = 0; j < n; ++j)
    pairs.emplace_back(layout.z[j], layout.zb[j]);
  AlphabetPtr ext = Alphabet::make(names, pairs);

  Gaussian mu = (Gaussian(1) - Gaussian::i() * e).inverse();
  Jet W = Jet::variable(ext, k, layout.s) + Gaussian::i() * Jet::variable(ext, k, v);
  Jet dw = W;
  for (int j = 0; j < n; ++j)
    dw += Jet::variable(ext, k, layout.z[j]) * (Gaussian(Rational(0), Rational(2)) * c[j]);
  dw *= mu;

  Substitution sub(ext);
  for (int j = 0; j < n; ++j) {
    sub.set(layout.z[j], Jet::variable(ext, k, layout.z[j]) + Jet::constant(ext, k, a[j]));
    sub.set(layout.zb[j], Jet::variable(ext, k, layout.zb[j]) + Jet::constant(ext, k, a[j].conj()));
  }
  sub.set(layout.s, dw.real_part() + Jet::constant(ext, k, Gaussian(s0)));
  Jet moved = compose(sigma, sub, {true}).truncate(k) - Jet::constant(ext, k, sigma_p);
  Jet eq = dw.imag_part() - moved;
  Jet out = implicit_solve({eq}, {v}, base)[0];
  if (!out.is_real())
    throw InvariantError("recenter: recentred sigma is not real");
  return out;
}

SegreJet segre_graph(const ComplexDefining& cd, const std::vector<Gaussian>& a, const Gaussian& b) {
  const int n = cd.n();
  if (int(a.size()) != n)
    throw PreconditionError("segre_graph: base point has the wrong dimension");
  const AlphabetPtr& cx = cd.complexified;
  std::vector<Gaussian> point(cx->size());
  for (int j = 0; j < n; ++j) {
    point[cx->index(cd.layout.z[j])] = a[j];
    point[cx->index(cd.layout.zb[j])] = a[j].conj();
  }
  point[cx->index("w")] = b;
  point[cx->index("wb")] = b.conj();
  if (evaluate(cd.rho, point) != b)
    throw PreconditionError("segre_graph: point is not on the hypersurface");

  std::vector<std::string> zeta;
  for (int j = 1; j <= n; ++j)
    zeta.push_back("zeta" + std::to_string(j));
  AlphabetPtr local = Alphabet::holomorphic(zeta);
  const int k = cd.rho.order();
  Substitution sub(local);
  for (int j = 0; j < n; ++j) {
    sub.set(cd.layout.z[j], Jet::variable(local, k, zeta[j]) + Jet::constant(local, k, a[j]));
    sub.set(cd.layout.zb[j], Jet::constant(local, k, a[j].conj()));
  }
  sub.set("wb", Jet::constant(local, k, b.conj()));
  return SegreJet{a, b, local, compose(cd.rho, sub, {true})};
}

bool PhiJet::is_zero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (!e.is_zero())
        return false;
  return true;
}

AlphabetPtr phi_alphabet(const ComplexDefining& cd) {
  std::vector<std::string> names = cd.layout.z;
  names.push_back("w");
  for (const auto& p : p_names(cd.n()))
    names.push_back(p);
  return Alphabet::holomorphic(std::move(names));
}

PhiJet phi_determinant(const ComplexDefining& cd) {
  const int n = cd.n();
  if (n == 0)
    throw PreconditionError("Phi needs at least one complex variable");
  AlphabetPtr e = elimination_alphabet(cd);
  const int k = cd.defining.order();
  Jet rho = embed(cd.defining, e);
  Jet rw = derive(rho, "w");
  std::vector<Jet> eqs{rho.truncate(k - 1)};
  auto ps = p_names(n);
  for (int j = 0; j < n; ++j)
    eqs.push_back(derive(rho, cd.layout.z[j]) + Jet::variable(e, k - 1, ps[j]) * rw);
  Substitution sub = eliminate_conjugates(cd, eqs);

  auto det = determinant_entries(cd);
  std::vector<std::vector<Jet>> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[i].push_back(compose(embed(det[i][j], e), sub).truncate(det[i][j].order()));
  return finish(cd, std::move(out));
}

PhiJet phi_elimination(const ComplexDefining& cd) {
  const int n = cd.n();
  if (n == 0)
    throw PreconditionError("Phi needs at least one complex variable");
  AlphabetPtr e = elimination_alphabet(cd);
  const int k = cd.rho.order();
  Jet rho = embed(cd.rho, e);
  std::vector<Jet> eqs{Jet::variable(e, k, "w") - rho};
  auto ps = p_names(n);
  for (int j = 0; j < n; ++j)
    eqs.push_back(Jet::variable(e, k - 1, ps[j]) - derive(rho, cd.layout.z[j]));
  Substitution sub = eliminate_conjugates(cd, eqs);

  std::vector<std::vector<Jet>> out(n, std::vector<Jet>(n, Jet(phi_alphabet(cd), 0)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet second = derive(derive(rho, cd.layout.z[i]), cd.layout.z[j]);
      out[i][j] = compose(second, sub).truncate(k - 2);
      out[j][i] = out[i][j];
    }
  return finish(cd, std::move(out));
}

SegreFamilyPhi phi_on_segre_family(const ComplexDefining& cd) {
  const int n = cd.n();
  std::vector<std::string> names = cd.layout.z;
  names.insert(names.end(), cd.layout.zb.begin(), cd.layout.zb.end());
  names.push_back("wb");
  AlphabetPtr fam = Alphabet::holomorphic(names);
  const int k = cd.rho.order();
  Substitution sub = Substitution::by_name(*cd.complexified, fam, k);
  sub.set("w", embed(cd.rho, fam));

  SegreFamilyPhi out{fam, {}, {}};
  auto det = determinant_entries(cd);
  for (int i = 0; i < n; ++i) {
    out.phi.emplace_back();
    for (int j = 0; j < n; ++j)
      out.phi[i].push_back(compose(det[i][j], sub).truncate(k - 2));
  }
  Jet inv_w = inverse(derive(cd.defining, "w"));
  for (int j = 0; j < n; ++j)
    out.p.push_back(compose(-(derive(cd.defining, cd.layout.z[j]) * inv_w), sub).truncate(k - 1));
  return out;
}

RigidVerdict rigid_phi_test(const StructureGerm& g) {
  if (!g.is_rigid())
    throw PreconditionError("rigid test: germ is not rigid (phi_s != 0)");
  if (g.nu() == 0)
    throw PreconditionError("rigid test: no complex variables, Phi is unavailable");
  CentralHypersurface hyp = central_cr_hypersurface(central_manifold(g));
  LeviForm lf = levi_form(StructureGerm::build(hyp.layout, hyp.sigma_phi));
  if (!lf.nondegenerate)
    throw PreconditionError("rigid test: central hypersurface is Levi-degenerate at 0");

  RigidVerdict v;
  v.phi = phi_elimination(complexify_defining(hyp.layout, hyp.sigma_phi));
  const Alphabet& a = *v.phi.alphabet;
  std::size_t w = a.index("w");
  for (std::size_t i = 0; i < v.phi.entries.size(); ++i)
    for (std::size_t j = i; j < v.phi.entries.size(); ++j)
      for (const auto& [m, c] : v.phi.entries[i][j].terms())
        if (m.exponent(w) > 0)
          v.offending.push_back("Phi[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]: (" +
                                c.to_string() + ")*" + m.to_string(a));
  v.analytic_consistent = v.offending.empty();
  return v;
}

Jet example_psi_residual(const Jet& h, const Jet& psi) {
  if (h.alphabet()->size() != 1 || psi.alphabet()->size() != 1)
    throw PreconditionError("example_psi: h and psi must be univariate");
  const std::string& xi = h.alphabet()->name(0);
  const int k = h.order();
  Jet x = Jet::variable(h.alphabet(), k, xi);
  Jet lhs = mul_exact(x * x, derive(derive(h, xi), xi));
  Jet u = mul_exact(x, derive(h, xi));
  Substitution sub(h.alphabet());
  sub.set(psi.alphabet()->name(0), u);
  return sub_exact(lhs, compose(psi, sub));
}

Jet example_psi(const Jet& h) {
  if (h.alphabet()->size() != 1)
    throw PreconditionError("example_psi: h must be univariate");
  const int k = h.order();
  if (k < 2)
    throw PreconditionError("example_psi: h needs order at least 2");
  Gaussian a2 = h.coefficient(Monomial::variable(0, 2));
  if (!h.constant_term().is_zero() || !h.coefficient(Monomial::variable(0, 1)).is_zero())
    throw PreconditionError("example_psi: h(0) and h'(0) must vanish");
  if (a2.is_zero())
    throw PreconditionError("example_psi: h''(0) = 0");

  // Even part of h as a series in eta = xi^2; then u = U(eta), xi^2 h'' = V(eta).
  AlphabetPtr ua = Alphabet::holomorphic({"u"});
  const int ke = k / 2;
  std::vector<Jet::Term> uterms, vterms;
  for (const auto& [m, c] : h.terms()) {
    unsigned d = m.degree();
    if (d % 2)
      continue;
    uterms.emplace_back(Monomial::variable(0, d / 2), c * Gaussian(long(d)));
    vterms.emplace_back(Monomial::variable(0, d / 2), c * Gaussian(long(d) * long(d - 1)));
  }
  Jet U = Jet::from_terms(ua, ke, std::move(uterms));
  Jet V = Jet::from_terms(ua, ke, std::move(vterms));
  Jet inv = reversion({U}, {"u"})[0];
  Substitution sub(ua);
  sub.set("u", inv);
  Jet psi = compose(V, sub).truncate(ke);

  Jet residual = example_psi_residual(h, psi);
  if (!residual.is_zero())
    throw PreconditionError("example_psi: no power series psi exists; residual term " +
                            residual.terms().front().first.to_string(*h.alphabet()));
  return psi;
}

} // namespace jetcr
