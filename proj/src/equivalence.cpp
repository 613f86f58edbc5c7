#include "jetcr/equivalence.hpp"

#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"

#include <algorithm>
#include <climits>

namespace jetcr {

namespace {

const Gaussian kHalf(Rational(1, 2));
const Gaussian kInvTwoI(Rational(0), Rational(-1, 2));  // 1/(2i)

bool agree(const Jet& a, const Jet& b) {
  int k = std::min(a.order(), b.order());
  return a.truncate(k) == b.truncate(k);
}

void require_central_equivalence(const CentralEquivalence& ce) {
  const GermLayout& s = ce.source_layout;
  const GermLayout& t = ce.target_layout;
  if (s.nprime() != 0 || t.nprime() != 0)
    throw PreconditionError("central equivalence: hypersurface charts carry t variables");
  if (s.nu() != t.nu() || int(ce.f.size()) != s.nu())
    throw PreconditionError("central equivalence: dimension mismatch");
  if (!same_alphabet(ce.source_phi.alphabet(), s.alphabet()) ||
      !same_alphabet(ce.target_phi.alphabet(), t.alphabet()))
    throw IncompatibleJets("central equivalence: hypersurface jets are not over their charts");
  if (!ce.source_phi.is_real() || !ce.target_phi.is_real())
    throw PreconditionError("central equivalence: hypersurface jets must be real");
  AlphabetPtr m = central_map_alphabet(s);
  std::vector<const Jet*> comps;
  for (const auto& f : ce.f)
    comps.push_back(&f);
  comps.push_back(&ce.g);
  for (const Jet* c : comps) {
    if (!same_alphabet(c->alphabet(), m))
      throw IncompatibleJets("central equivalence: map components must be over (z, w)");
    if (!c->constant_term().is_zero())
      throw PreconditionError("central equivalence: map does not fix the origin");
    if (c->order() < 1)
      throw PreconditionError("central equivalence: map jets of order 0");
  }
  const std::size_t n = comps.size();
  GaussianMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = comps[i]->coefficient(Monomial::variable(j));
  if (d.rank() != int(n))
    throw SingularJacobian("central equivalence: derivative at 0 is not invertible", int(d.rank()), int(n));
}

// The hypersurface phi, defined over the chart `layout`, re-expressed in `alphabet`
// with Re w replaced by `re_w`.
Jet phi_at(const GermLayout& layout, const Jet& phi, const AlphabetPtr& alphabet, const std::vector<Jet>& z,
           const Jet& re_w) {
  Substitution sub(alphabet);
  for (int j = 0; j < layout.nu(); ++j) {
    sub.set(layout.z[j], z[j]);
    sub.set(layout.zb[j], z[j].conjugate());
  }
  sub.set(layout.s, re_w);
  return compose(phi, sub);
}

struct Holomorphic {
  std::vector<Jet> f;
  Jet g;
};

// f and g composed with (z, w) -> (z, W) over the alphabet of W.
Holomorphic along(const CentralEquivalence& ce, const GermLayout& layout, const Jet& W) {
  Substitution sub(W.alphabet());
  for (int j = 0; j < layout.nu(); ++j)
    sub.set(ce.source_layout.z[j], Jet::variable(W.alphabet(), W.order(), layout.z[j]));
  sub.set("w", W);
  Holomorphic h{{}, compose(ce.g, sub)};
  for (const auto& f : ce.f)
    h.f.push_back(compose(f, sub));
  return h;
}

Jet lambda_along(const Jet& lambda, const GermLayout& source, const GermLayout& layout, const Jet& W) {
  const AlphabetPtr& a = W.alphabet();
  Substitution sub(a);
  for (int j = 0; j < layout.nu(); ++j) {
    sub.set(source.z[j], Jet::variable(a, W.order(), layout.z[j]));
    sub.set(source.zb[j], Jet::variable(a, W.order(), layout.zb[j]));
  }
  sub.set("w", W);
  sub.set("wb", W.conjugate());
  return compose(lambda, sub);
}

Jet t_free_part(const StructureGerm& g) {
  std::vector<Jet::Term> keep;
  for (const auto& [m, c] : g.phi().terms()) {
    bool free = true;
    for (const auto& t : g.layout().t)
      free = free && m.exponent(g.alphabet()->index(t)) == 0;
    if (free)
      keep.emplace_back(m, c);
  }
  return Jet::from_terms(g.alphabet(), g.order(), std::move(keep));
}

void require_matches(const StructureGerm& g, const GermLayout& chart, const Jet& sigma, const char* which) {
  const GermLayout& l = g.layout();
  if (l.z != chart.z || l.zb != chart.zb || l.s != chart.s)
    throw PreconditionError(std::string("lift: ") + which + " germ chart differs from its central hypersurface");
  if (!agree(t_free_part(g), embed(sigma, g.alphabet())))
    throw PreconditionError(std::string("lift: ") + which + " germ restricted to t = 0 is not its central hypersurface");
}

} // namespace

AlphabetPtr central_map_alphabet(const GermLayout& source) {
  std::vector<std::string> names = source.z;
  names.push_back("w");
  return Alphabet::holomorphic(names);
}

AlphabetPtr complexified_alphabet(const GermLayout& source) {
  std::vector<std::string> names = source.z;
  names.insert(names.end(), source.zb.begin(), source.zb.end());
  names.push_back("w");
  names.push_back("wb");
  std::vector<Alphabet::Pair> pairs;
  for (int j = 0; j < source.nu(); ++j)
    pairs.emplace_back(source.z[j], source.zb[j]);
  pairs.emplace_back("w", "wb");
  return Alphabet::make(names, pairs);
}

Jet basic_identity_defect(const CentralEquivalence& ce) {
  require_central_equivalence(ce);
  const GermLayout& s = ce.source_layout;
  AlphabetPtr a = s.alphabet();
  const int k = ce.source_phi.order();
  Jet zeta = Jet::variable(a, k, s.s) + ce.source_phi * Gaussian::i();
  Holomorphic h = along(ce, s, zeta);
  return sub_exact(h.g.imag_part(), phi_at(ce.target_layout, ce.target_phi, a, h.f, h.g.real_part()));
}

Jet extract_lambda(const CentralEquivalence& ce) {
  require_central_equivalence(ce);
  const GermLayout& s = ce.source_layout;
  const int nu = s.nu();
  AlphabetPtr a = complexified_alphabet(s);

  std::vector<Jet> f;
  for (const auto& fj : ce.f)
    f.push_back(embed(fj, a));
  Jet g = embed(ce.g, a);
  Jet numerator = sub_exact((g - g.conjugate()) * kInvTwoI,
                            phi_at(ce.target_layout, ce.target_phi, a, f, (g + g.conjugate()) * kHalf));
  const int k = numerator.order();

  // Real coordinates u = Re w and r = Im w - phi(z, zb, u).
  std::vector<std::string> names = s.z;
  names.insert(names.end(), s.zb.begin(), s.zb.end());
  names.push_back("u");
  names.push_back("r");
  std::vector<Alphabet::Pair> pairs;
  for (int j = 0; j < nu; ++j)
    pairs.emplace_back(s.z[j], s.zb[j]);
  AlphabetPtr b = Alphabet::make(names, pairs);

  std::vector<Jet> z_b;
  for (int j = 0; j < nu; ++j)
    z_b.push_back(Jet::variable(b, k, s.z[j]));
  Jet u = Jet::variable(b, k, "u");
  Jet v = add_exact(Jet::variable(b, k, "r"), phi_at(s, ce.source_phi, b, z_b, u));
  Substitution to_b = Substitution::by_name(*a, b, k);
  to_b.set("w", add_exact(u, v * Gaussian::i()));
  to_b.set("wb", sub_exact(u, v * Gaussian::i()));

  Jet quotient = [&] {
    try {
      return divide_by_coordinate(compose(numerator, to_b), "r");
    } catch (const DivisionError& e) {
      throw DivisionError("extract_lambda: the map does not send the source hypersurface to the target",
                          e.monomial());
    }
  }();

  std::vector<Jet> z_vars;
  for (int j = 0; j < nu; ++j)
    z_vars.push_back(Jet::variable(a, k, s.z[j]));
  Jet w = Jet::variable(a, k, "w"), wb = Jet::variable(a, k, "wb");
  Jet re_w = (w + wb) * kHalf;
  Substitution to_a = Substitution::by_name(*b, a, k);
  to_a.set("u", re_w);
  to_a.set("r", sub_exact((w - wb) * kInvTwoI, phi_at(s, ce.source_phi, a, z_vars, re_w)));
  Jet lambda = compose(quotient, to_a);

  if (!lambda.is_real())
    throw InvariantError("extract_lambda: lambda is not real");
  if (lambda.constant_term().is_zero())
    throw PreconditionError("extract_lambda: lambda vanishes at the origin");
  return lambda;
}

StructureMap LiftedEquivalence::map() const {
  StructureMap m{{}, S, T};
  for (std::size_t j = 0; j < X.size(); ++j)
    m.z.push_back(add_exact(X[j], Y[j] * Gaussian::i()));
  return m;
}

std::vector<Rational> positive_normal_form(const StructureGerm& g) {
  const GermLayout& l = g.layout();
  const Alphabet& a = *g.alphabet();
  std::vector<Rational> c(l.nprime(), Rational(0));
  for (const auto& [m, coeff] : g.phi().terms()) {
    for (int j = 0; j < l.nprime(); ++j) {
      unsigned e = m.exponent(a.index(l.t[j]));
      if (e == 0)
        continue;
      if (e != 2 || m.degree() != 2)
        throw PreconditionError("lift: germ is not of the form phi_0(z, zb, s) + sum c_l t_l^2 (term " +
                                m.to_string(a) + ")");
      c[j] = coeff.re();
    }
  }
  for (int j = 0; j < l.nprime(); ++j) {
    if (c[j] == 0)
      throw PreconditionError("lift: missing t_" + std::to_string(j + 1) + "^2 term");
    if (c[j] < 0)
      throw PreconditionError("lift: indefinite Levi form (negative coefficient of " + l.t[j] + "^2)");
  }
  return c;
}

LiftedEquivalence lift_equivalence(const CentralEquivalence& ce, const StructureGerm& source,
                                   const StructureGerm& target) {
  require_central_equivalence(ce);
  if (source.nu() != target.nu() || source.nprime() != target.nprime())
    throw PreconditionError("lift: germs of different dimensions");
  std::vector<Rational> c = positive_normal_form(source);
  std::vector<Rational> cp = positive_normal_form(target);
  if (!levi_form(source).positive() || !levi_form(target).positive())
    throw PreconditionError("lift: Levi form is not positive definite");
  require_matches(source, ce.source_layout, ce.source_phi, "source");
  require_matches(target, ce.target_layout, ce.target_phi, "target");

  Jet lambda = extract_lambda(ce);
  Rational l0 = lambda.constant_term().re(), root;
  if (l0 <= 0 || !rational_sqrt(l0, root))
    throw PreconditionError("lift: lambda(0) = " + lambda.constant_term().to_string() +
                            " is not the square of a positive rational");
  Jet sqrt_a = jet_sqrt(lambda * Gaussian(Rational(1) / l0)) * Gaussian(root);

  const GermLayout& l = source.layout();
  Jet W = source.w();
  Jet sqrt_lambda = lambda_along(sqrt_a, ce.source_layout, l, W);
  Holomorphic h = along(ce, l, W);

  LiftedEquivalence out{ce, lambda, sqrt_lambda, {}, {}, {}, h.g.real_part(), {}};
  for (const auto& fj : h.f) {
    out.X.push_back(fj.real_part());
    out.Y.push_back(fj.imag_part());
  }
  for (int j = 0; j < l.nprime(); ++j) {
    Rational q;
    if (!rational_sqrt(c[j] / cp[j], q))
      throw PreconditionError("lift: c_l / c'_l is not a rational square for " + l.t[j]);
    out.q.push_back(q);
    Jet t = Jet::variable(source.alphabet(), source.order(), l.t[j]);
    out.T.push_back(mul_exact(t, sqrt_lambda) * Gaussian(q));
  }
  return out;
}

LiftReport verify_lift(const LiftedEquivalence& le, const StructureGerm& source, const StructureGerm& target) {
  LiftReport r;
  StructureMap m = le.map();
  r.pullback = verify_structure_map(source, target, m);
  r.order = INT_MAX;
  for (const auto& rep : r.pullback.reports)
    r.order = std::min(r.order, rep.order);

  const GermLayout& l = source.layout();
  Jet W = source.w();
  Holomorphic h = along(le.central, l, W);
  for (int j = 0; j < l.nu(); ++j) {
    Jet z = Jet::variable(target.alphabet(), target.order(), target.layout().z[j]);
    r.holomorphic_images = r.holomorphic_images && agree(pullback(m, target, z), h.f[j]);
  }
  r.holomorphic_images = r.holomorphic_images && agree(pullback(m, target, target.w()), h.g);

  // Restriction to t = 0 against f, g evaluated on the central hypersurface itself.
  const CentralEquivalence& ce = le.central;
  AlphabetPtr base = ce.source_layout.alphabet();
  const int k = ce.source_phi.order();
  Holomorphic on_sigma =
      along(ce, ce.source_layout, Jet::variable(base, k, ce.source_layout.s) + ce.source_phi * Gaussian::i());
  Substitution at0 = Substitution::by_name(*source.alphabet(), base, source.order());
  for (const auto& t : l.t)
    at0.set(t, Jet(base, source.order()));
  for (int j = 0; j < l.nu(); ++j) {
    r.restriction = r.restriction && agree(compose(le.X[j], at0), on_sigma.f[j].real_part()) &&
                    agree(compose(le.Y[j], at0), on_sigma.f[j].imag_part());
  }
  r.restriction = r.restriction && agree(compose(le.S, at0), on_sigma.g.real_part());
  for (const auto& T : le.T)
    r.restriction = r.restriction && compose(T, at0).is_zero();

  std::vector<Rational> c = positive_normal_form(source);
  std::vector<Rational> cp = positive_normal_form(target);
  Jet lhs(source.alphabet(), source.order());
  Jet quad(source.alphabet(), source.order());
  for (int j = 0; j < l.nprime(); ++j) {
    lhs = add_exact(lhs, mul_exact(le.T[j], le.T[j]) * Gaussian(cp[j]));
    Jet t = Jet::variable(source.alphabet(), source.order(), l.t[j]);
    quad = add_exact(quad, mul_exact(t, t) * Gaussian(c[j]));
  }
  Jet lambda_w = lambda_along(le.lambda, ce.source_layout, l, W);
  r.lambda_consistent = agree(lhs, mul_exact(lambda_w, quad));
  return r;
}

} // namespace jetcr
