#include "jetcr/marson.hpp"

#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"

namespace jetcr {

namespace {

std::vector<std::string> numbered(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int j = 1; j <= n; ++j)
    out.push_back(stem + std::to_string(j));
  return out;
}

// Complex rank at 0 of the differentials of `integrals` in real coordinates:
// x_j, y_j for each conjugate pair of `layout`, then s, t and `extra_real`.
int differential_rank(const std::vector<Jet>& integrals, const GermLayout& layout,
                      const std::vector<std::string>& extra_real) {
  std::vector<std::string> real = {layout.s};
  real.insert(real.end(), layout.t.begin(), layout.t.end());
  real.insert(real.end(), extra_real.begin(), extra_real.end());
  const std::size_t cols = 2 * layout.z.size() + real.size();
  GaussianMatrix m(integrals.size(), cols);
  for (std::size_t r = 0; r < integrals.size(); ++r) {
    const Jet& f = integrals[r];
    const Alphabet& a = *f.alphabet();
    auto d = [&](const std::string& v) { return f.coefficient(Monomial::variable(a.index(v))); };
    for (std::size_t j = 0; j < layout.z.size(); ++j) {
      Gaussian dz = d(layout.z[j]), dzb = d(layout.zb[j]);
      m(r, 2 * j) = dz + dzb;
      m(r, 2 * j + 1) = Gaussian::i() * (dz - dzb);
    }
    for (std::size_t j = 0; j < real.size(); ++j)
      m(r, 2 * layout.z.size() + j) = d(real[j]);
  }
  return m.rank();
}

} // namespace

ExternalLift external_lift(const StructureGerm& g) {
  const GermLayout& src = g.layout();
  const int np = g.nprime();
  const int k = g.order();
  GermLayout lay;
  lay.z = src.z;
  lay.zb = src.zb;
  lay.s = src.s;
  for (const auto& n : numbered("zs", np))
    lay.z.push_back(n);
  for (const auto& n : numbered("zsb", np))
    lay.zb.push_back(n);
  for (const auto& n : lay.z)
    if (g.alphabet()->contains(n) && n.rfind("zs", 0) == 0)
      throw PreconditionError("external lift: source already uses the name " + n);
  AlphabetPtr a = lay.alphabet();

  Substitution sub = Substitution::by_name(*g.alphabet(), a, k);
  const Gaussian inv_two_i(Rational(0), Rational(-1, 2));
  for (int l = 0; l < np; ++l)
    sub.set(src.t[l], (Jet::variable(a, k, lay.z[src.nu() + l]) - Jet::variable(a, k, lay.zb[src.nu() + l])) *
                          inv_two_i);
  ExternalLift lift{g, StructureGerm::build(lay, compose(g.phi(), sub).truncate(k)), 0, 0};

  std::vector<Jet> src_integrals;
  for (const auto& z : src.z)
    src_integrals.push_back(Jet::variable(g.alphabet(), k, z));
  src_integrals.push_back(g.w());
  lift.source_rank = differential_rank(src_integrals, src, {});

  // U. = X x U with real x._l; integrals zs_l = x._l + i t_l, z_j, w.
  std::vector<std::string> names = g.alphabet()->names();
  auto xs = numbered("xs", np);
  names.insert(names.end(), xs.begin(), xs.end());
  std::vector<Alphabet::Pair> pairs;
  for (int j = 0; j < src.nu(); ++j)
    pairs.emplace_back(src.z[j], src.zb[j]);
  AlphabetPtr ua = Alphabet::make(names, pairs);
  std::vector<Jet> integrals;
  for (int l = 0; l < np; ++l)
    integrals.push_back(Jet::variable(ua, k, xs[l]) + Gaussian::i() * Jet::variable(ua, k, src.t[l]));
  for (const auto& j : src_integrals)
    integrals.push_back(embed(j, ua));
  lift.lifted_rank = differential_rank(integrals, src, xs);
  if (lift.lifted_rank != lift.source_rank + np)
    throw InvariantError("external lift: first-integral rank did not grow by n'");
  return lift;
}

ExternalLevi external_levi(const ExternalLift& lift) {
  const StructureGerm& g = lift.source;
  const GermLayout& l = g.layout();
  const int nu = g.nu(), np = g.nprime(), n = nu + np;
  ExternalLevi out;
  out.direct = levi_form(lift.lifted);
  out.source = levi_form(g);

  out.block = GaussianMatrix(n, n);
  const Gaussian half_i(Rational(0), Rational(1, 2));
  for (int j = 0; j < nu; ++j) {
    for (int k = 0; k < nu; ++k)
      out.block(j, k) = second_derivative_at_0(g.phi(), l.z[j], l.zb[k]);
    for (int r = 0; r < np; ++r) {
      out.block(j, nu + r) = half_i * second_derivative_at_0(g.phi(), l.z[j], l.t[r]);
      out.block(nu + r, j) = -half_i * second_derivative_at_0(g.phi(), l.t[r], l.zb[j]);
    }
  }
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      out.block(nu + a, nu + b) = Gaussian(Rational(1, 4)) * second_derivative_at_0(g.phi(), l.t[a], l.t[b]);

  // L(zeta, (2i)^-1 zeta.) as a matrix: D L conj(D) with D = diag(1, .., 1/(2i), ..).
  std::vector<Gaussian> d(n, Gaussian(1));
  for (int r = nu; r < n; ++r)
    d[r] = Gaussian(Rational(0), Rational(-1, 2));
  out.relation = GaussianMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.relation(a, b) = d[a] * out.source.matrix(a, b) * d[b].conj();

  out.relation_holds = out.direct.matrix == out.block && out.block == out.relation;
  out.strictly_pseudoconvex = out.direct.definite;
  return out;
}

AlphabetPtr descend_alphabet(const StructureGerm& g) {
  std::vector<std::string> names = numbered("zs", g.nprime());
  names.insert(names.end(), g.layout().z.begin(), g.layout().z.end());
  names.push_back("w");
  return Alphabet::holomorphic(names);
}

StructureMap descend_map(const ExternalLift& lift, const std::vector<Jet>& f1, const std::vector<Jet>& f2) {
  const StructureGerm& g = lift.source;
  const int nu = g.nu(), np = g.nprime();
  if (int(f1.size()) != np || int(f2.size()) != nu + 1)
    throw PreconditionError("descend_map: expected " + std::to_string(np) + " components in f1 and " +
                            std::to_string(nu + 1) + " in f2");
  AlphabetPtr h = descend_alphabet(g);
  auto zs = numbered("zs", np);
  auto check = [&](const Jet& f, const std::string& what) {
    if (!same_alphabet(f.alphabet(), h))
      throw IncompatibleJets("descend_map: " + what + " is not over (zs, z, w)");
    for (const auto& v : zs)
      if (f.depends_on(v))
        throw PreconditionError("descend_map: " + what + " depends on " + v + "; the map is not shift-equivariant");
    if (!f.constant_term().is_zero())
      throw PreconditionError("descend_map: " + what + " does not fix the origin");
  };
  for (int l = 0; l < np; ++l)
    check(f1[l], "f1[" + std::to_string(l + 1) + "]");
  for (int j = 0; j <= nu; ++j)
    check(f2[j], "f2[" + std::to_string(j + 1) + "]");

  const AlphabetPtr& a = g.alphabet();
  Substitution sub(a);
  for (const auto& z : g.layout().z)
    sub.set(z, Jet::variable(a, g.order(), z));
  sub.set("w", g.w());

  StructureMap f{{}, compose(f2[nu], sub).real_part(), {}};
  for (int j = 0; j < nu; ++j)
    f.z.push_back(compose(f2[j], sub));
  for (int l = 0; l < np; ++l) {
    Jet shift = compose(f1[l], sub).imag_part();
    f.t.push_back(add_exact(Jet::variable(a, shift.order(), g.layout().t[l]), shift));
  }
  return f;
}

} // namespace jetcr
