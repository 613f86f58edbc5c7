#include "jetcr/central.hpp"

#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"

#include <cmath>

namespace jetcr {

namespace {

GaussianMatrix t_hessian(const StructureGerm& g) {
  const auto& t = g.layout().t;
  GaussianMatrix h(t.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      h(i, j) = second_derivative_at_0(g.phi(), t[i], t[j]);
  return h;
}

// Terms of phi with no t variable, re-expressed over `base`.
Jet t_free_part(const StructureGerm& g, const AlphabetPtr& base) {
  std::vector<Jet::Term> kept;
  const Alphabet& a = *g.alphabet();
  for (const auto& [m, c] : g.phi().terms()) {
    bool has_t = false;
    for (const auto& t : g.layout().t)
      has_t = has_t || m.exponent(a.index(t)) > 0;
    if (!has_t)
      kept.emplace_back(m, c);
  }
  return embed(Jet::from_terms(g.alphabet(), g.order(), std::move(kept)), base);
}

} // namespace

CentralChart central_manifold(const StructureGerm& g) {
  GermLayout base_layout = g.layout().without_t();
  AlphabetPtr base = base_layout.alphabet();
  const auto& t = g.layout().t;
  std::vector<Jet> F;
  if (!t.empty()) {
    std::vector<Jet> eqs;
    for (const auto& tl : t)
      eqs.push_back(derive(g.phi(), tl));
    try {
      F = implicit_solve(eqs, t, base);
    } catch (const SingularJacobian& e) {
      throw SingularJacobian("central manifold: degenerate t-block", e.rank(), e.size());
    }
  }

  Substitution onto(base);
  Substitution shift(g.alphabet());
  for (const auto& name : base->names()) {
    onto.set(name, Jet::variable(base, g.order(), name));
    shift.set(name, Jet::variable(g.alphabet(), g.order(), name));
  }
  for (std::size_t l = 0; l < t.size(); ++l) {
    onto.set(t[l], F[l]);
    shift.set(t[l], Jet::variable(g.alphabet(), F[l].order(), t[l]) + embed(F[l], g.alphabet()));
  }
  Jet sigma = compose(g.phi(), onto).truncate(g.order());
  Jet moved = t.empty() ? g.phi() : compose(g.phi(), shift).truncate(g.order());
  return CentralChart{F, base, base_layout, sigma, StructureGerm::build(g.layout(), moved)};
}

StructureGerm straighten(const StructureGerm&, const CentralChart& chart) { return chart.straightened; }

std::vector<Jet> central_residuals(const StructureGerm& g, const CentralChart& chart) {
  std::vector<Jet> out;
  const auto& t = g.layout().t;
  Substitution onto(chart.base);
  Substitution at_zero(chart.base);
  for (const auto& name : chart.base->names()) {
    onto.set(name, Jet::variable(chart.base, g.order(), name));
    at_zero.set(name, Jet::variable(chart.base, g.order(), name));
  }
  for (std::size_t l = 0; l < t.size(); ++l) {
    onto.set(t[l], chart.F[l]);
    at_zero.set(t[l], Jet(chart.base, g.order()));
  }
  for (const auto& tl : t)
    out.push_back(compose(derive(g.phi(), tl), onto).truncate(g.order() - 1));
  for (const auto& tl : t)
    out.push_back(compose(derive(chart.straightened.phi(), tl), at_zero).truncate(g.order() - 1));
  return out;
}

Jet MorseNormalForm::reconstruct(const AlphabetPtr& alphabet) const {
  Jet out = embed(base, alphabet);
  for (std::size_t l = 0; l < G.size(); ++l)
    out = add_exact(out, mul_exact(G[l], G[l]) * Gaussian(quad[l]));
  return out;
}

std::vector<double> MorseNormalForm::unit_scaling() const {
  std::vector<double> out;
  for (const auto& c : quad)
    out.push_back(std::sqrt(std::abs(c.get_d())));
  return out;
}

MorseNormalForm morse_normalize(const StructureGerm& g) {
  const AlphabetPtr& a = g.alphabet();
  const auto& t = g.layout().t;
  const std::size_t np = t.size();
  const int k = g.order();
  GermLayout base_layout = g.layout().without_t();
  AlphabetPtr base = base_layout.alphabet();

  MorseNormalForm nf{t_free_part(g, base), {}, {}, 0};
  if (np == 0)
    return nf;

  for (const auto& tl : t) {
    Jet dt = derive(g.phi(), tl);
    std::vector<Jet::Term> on_sigma;
    for (const auto& [m, c] : dt.terms()) {
      bool has_t = false;
      for (const auto& tk : t)
        has_t = has_t || m.exponent(a->index(tk)) > 0;
      if (!has_t)
        on_sigma.emplace_back(m, c);
    }
    if (!on_sigma.empty())
      throw PreconditionError("morse_normalize: germ is not straightened (phi_" + tl + "(., 0) != 0)");
  }

  GaussianMatrix hess = t_hessian(g);
  Congruence cong = diagonalize_symmetric(hess);
  for (const auto& d : cong.diagonal)
    if (sgn(d) == 0)
      throw SingularJacobian("morse_normalize: degenerate t-block", hess.rank(), int(np));

  // R(P t) with R = phi - phi_0.
  Jet rest = g.phi() - embed(nf.base, a).with_order(k);
  Substitution linear = Substitution::by_name(*a, a, k);
  for (std::size_t l = 0; l < np; ++l) {
    Jet img(a, k);
    for (std::size_t j = 0; j < np; ++j)
      img += Jet::variable(a, k, t[j]) * cong.p(l, j);
    linear.set(t[l], img);
  }
  rest = compose(rest, linear).truncate(k);

  // rest = sum_{l,j} Q_lj t_l t_j with Q symmetric.
  std::vector<std::size_t> ti;
  for (const auto& tl : t)
    ti.push_back(a->index(tl));
  std::vector<std::vector<JetBuilder>> qb(np);
  for (std::size_t l = 0; l < np; ++l)
    for (std::size_t j = 0; j < np; ++j)
      qb[l].emplace_back(a, k - 2);
  for (const auto& [m, c] : rest.terms()) {
    std::vector<std::size_t> first;
    for (std::size_t l = 0; l < np && first.size() < 2; ++l)
      for (unsigned e = 0; e < m.exponent(ti[l]) && first.size() < 2; ++e)
        first.push_back(l);
    if (first.size() < 2)
      throw InvariantError("morse_normalize: term of t-degree below 2 after straightening");
    Monomial q = m.lowered(ti[first[0]]).lowered(ti[first[1]]);
    if (first[0] == first[1]) {
      qb[first[0]][first[0]].add(q, c);
    } else {
      Gaussian half = c * Gaussian(Rational(1, 2));
      qb[first[0]][first[1]].add(q, half);
      qb[first[1]][first[0]].add(q, half);
    }
  }
  std::vector<std::vector<Jet>> Q(np);
  for (std::size_t l = 0; l < np; ++l)
    for (std::size_t j = 0; j < np; ++j)
      Q[l].push_back(std::move(qb[l][j]).build());

  std::vector<Jet> Gp;
  for (std::size_t l = 0; l < np; ++l) {
    Rational c = Q[l][l].constant_term().re();
    if (sgn(c) == 0 || !Q[l][l].constant_term().is_real())
      throw InvariantError("morse_normalize: vanishing pivot after diagonalization");
    Jet a_inv = inverse(Q[l][l]);
    Jet root = jet_sqrt(Q[l][l] * Gaussian(1 / c));
    Jet lin = Jet::variable(a, k - 1, t[l]);
    for (std::size_t j = l + 1; j < np; ++j)
      lin = add_exact(lin, mul_exact(Q[l][j] * a_inv, Jet::variable(a, k, t[j])));
    Gp.push_back(mul_exact(root, lin));
    nf.quad.push_back(c);
    for (std::size_t i = l + 1; i < np; ++i)
      for (std::size_t j = l + 1; j < np; ++j)
        Q[i][j] -= Q[l][i] * Q[l][j] * a_inv;
  }

  // G(t) = G'(P^{-1} t)
  GaussianMatrix pinv = cong.p.inverse();
  Substitution back = Substitution::by_name(*a, a, k - 1);
  for (std::size_t l = 0; l < np; ++l) {
    Jet img(a, k - 1);
    for (std::size_t j = 0; j < np; ++j)
      img += Jet::variable(a, k - 1, t[j]) * pinv(l, j);
    back.set(t[l], img);
  }
  for (const auto& gl : Gp)
    nf.G.push_back(compose(gl, back).truncate(k - 1));
  for (const auto& c : nf.quad)
    nf.signature_m += sgn(c) > 0;

  if (!(nf.reconstruct(a).truncate(k) == g.phi()))
    throw InvariantError("morse_normalize: reconstruction identity failed");
  return nf;
}

CentralHypersurface central_cr_hypersurface(const CentralChart& chart) {
  return CentralHypersurface{chart.base_layout, chart.sigma_phi, chart.base_layout.nu() == 0};
}

} // namespace jetcr
