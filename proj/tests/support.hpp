#pragma once

#include "jetcr/jet.hpp"

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace jetcr;

// "s^2*t" over the given alphabet; "1" is the unit monomial.
inline Monomial mono(const Alphabet& a, const std::string& text) {
  Monomial m;
  if (text == "1")
    return m;
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    unsigned e = caret == std::string::npos ? 1 : unsigned(std::stoi(factor.substr(caret + 1)));
    std::size_t i = a.index(name);
    m.set(i, m.exponent(i) + e);
  }
  return m;
}

inline Jet jet(const AlphabetPtr& a, int order, const std::vector<std::pair<std::string, Gaussian>>& terms) {
  std::vector<Jet::Term> out;
  for (const auto& [m, c] : terms)
    out.emplace_back(mono(*a, m), c);
  return Jet::from_terms(a, order, std::move(out));
}

inline Gaussian q(long p, long d = 1) { return Gaussian(Rational(p, d)); }
inline Gaussian cq(long pr, long dr, long pi, long di) { return Gaussian(Rational(pr, dr), Rational(pi, di)); }

// Random jet with small rational coefficients and valuation >= min_degree.
inline Jet random_jet(const AlphabetPtr& a, int order, std::mt19937& rng, int min_degree = 0, int terms = 8,
                      bool complex = true) {
  std::uniform_int_distribution<int> var(0, int(a->size()) - 1);
  std::uniform_int_distribution<int> deg(min_degree, order);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Jet::Term> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      std::size_t v = std::size_t(var(rng));
      m.set(v, m.exponent(v) + 1);
    }
    Gaussian c(Rational(num(rng), den(rng)), complex ? Rational(num(rng), den(rng)) : Rational(0));
    out.emplace_back(m, c);
  }
  return Jet::from_terms(a, order, std::move(out));
}

// Untruncated polynomial arithmetic on exponent vectors, used as an oracle.
using Naive = std::map<std::vector<unsigned>, Gaussian>;

inline Naive naive(const Jet& j) {
  Naive out;
  for (const auto& [m, c] : j.terms()) {
    std::vector<unsigned> e(j.alphabet()->size());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = m.exponent(i);
    out[e] += c;
  }
  return out;
}

inline Naive naive_mul(const Naive& a, const Naive& b) {
  Naive out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  return out;
}

inline Naive naive_add(Naive a, const Naive& b) {
  for (const auto& [e, c] : b)
    a[e] += c;
  return a;
}

inline Jet from_naive(const AlphabetPtr& a, int order, const Naive& n) {
  std::vector<Jet::Term> out;
  for (const auto& [e, c] : n) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i])
        m.set(i, e[i]);
    out.emplace_back(m, c);
  }
  return Jet::from_terms(a, order, std::move(out));
}

// outer(images) by full expansion of every monomial.
inline Naive naive_compose(const Jet& outer, const std::vector<Jet>& images) {
  std::size_t width = images.empty() ? 0 : images[0].alphabet()->size();
  Naive out;
  for (const auto& [m, c] : outer.terms()) {
    Naive term{{std::vector<unsigned>(width), c}};
    for (std::size_t i = 0; i < outer.alphabet()->size(); ++i)
      for (unsigned k = 0; k < m.exponent(i); ++k)
        term = naive_mul(term, naive(images[i]));
    out = naive_add(out, term);
  }
  return out;
}

} // namespace testing_support

namespace testing_support {

// Random real jet with valuation >= 2 over an alphabet with conjugation.
inline Jet random_phi(const AlphabetPtr& a, int order, std::mt19937& rng, int terms = 10) {
  return random_jet(a, order, rng, 2, terms).real_part();
}

} // namespace testing_support

#include "jetcr/structure.hpp"

namespace testing_support {

// Random germ whose t-Hessian at 0 is invertible.
inline StructureGerm random_nondegenerate_germ(int nu, int nprime, int order, std::mt19937& rng, int terms = 10) {
  AlphabetPtr a = GermLayout::standard(nu, nprime).alphabet();
  std::uniform_int_distribution<int> d(-4, 4);
  for (;;) {
    Jet phi = random_phi(a, order, rng, terms);
    for (int l = 1; l <= nprime; ++l) {
      int c = 0;
      while (c == 0)
        c = d(rng);
      std::string t = "t" + std::to_string(l);
      phi += jet(a, order, {{t + "^2", q(c)}});
    }
    auto g = StructureGerm::build(nu, nprime, phi);
    GaussianMatrix h(nprime, nprime);
    for (int i = 0; i < nprime; ++i)
      for (int j = 0; j < nprime; ++j)
        h(i, j) = second_derivative_at_0(phi, "t" + std::to_string(i + 1), "t" + std::to_string(j + 1));
    if (h.rank() == nprime)
      return g;
  }
}

} // namespace testing_support

namespace testing_support {

// Random central hypersurface sigma over (z, zb, s) with nondegenerate Levi form.
inline Jet random_hypersurface(int nu, int order, std::mt19937& rng, int terms = 10, int max_degree = 4) {
  AlphabetPtr a = GermLayout::standard(nu, 0).alphabet();
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    Jet sigma = random_phi(a, std::min(order, max_degree), rng, terms).with_order(order);
    for (int j = 1; j <= nu; ++j) {
      int c = 0;
      while (c == 0)
        c = d(rng);
      std::string z = "z" + std::to_string(j), zb = "zb" + std::to_string(j);
      sigma += jet(a, order, {{z + "*" + zb, q(c)}});
    }
    GaussianMatrix h(nu, nu);
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nu; ++j)
        h(i, j) = second_derivative_at_0(sigma, "z" + std::to_string(i + 1), "zb" + std::to_string(j + 1));
    if (h.rank() == nu)
      return sigma;
  }
}

} // namespace testing_support

#include "jetcr/equivalence.hpp"
#include "jetcr/jet_algebra.hpp"

namespace testing_support {

// sigma_0 + sum_j c_j z_j zb_j with c_j > 0 and sigma_0 of valuation >= 3.
inline Jet random_positive_hypersurface(int nu, int order, std::mt19937& rng, int terms = 8) {
  AlphabetPtr a = GermLayout::standard(nu, 0).alphabet();
  std::uniform_int_distribution<int> d(1, 3);
  Jet sigma = random_jet(a, order, rng, 3, terms).real_part();
  for (int j = 1; j <= nu; ++j)
    sigma += jet(a, order, {{"z" + std::to_string(j) + "*zb" + std::to_string(j), q(d(rng))}});
  return sigma;
}

// sigma + sum c_l t_l^2 as a germ over the standard layout.
inline StructureGerm normal_form_germ(int nu, const Jet& sigma, const std::vector<Gaussian>& c) {
  const int nprime = int(c.size());
  AlphabetPtr a = GermLayout::standard(nu, nprime).alphabet();
  Jet phi = embed(sigma, a);
  for (int l = 1; l <= nprime; ++l)
    phi += jet(a, sigma.order(), {{"t" + std::to_string(l) + "^2", c[l - 1]}});
  return StructureGerm::build(nu, nprime, phi);
}

// The hypersurface Im w' = sigma'(z', zb', Re w') swept out by (f, g) on Im w = sigma,
// obtained by reverting (z, s) -> (f(z, zeta), Re g(z, zeta)).
inline Jet image_hypersurface(const GermLayout& layout, const Jet& sigma, const std::vector<Jet>& f, const Jet& g) {
  AlphabetPtr a = layout.alphabet();
  const int k = sigma.order();
  Jet zeta = Jet::variable(a, k, layout.s) + sigma * Gaussian::i();
  Substitution sub(a);
  for (const auto& z : layout.z)
    sub.set(z, Jet::variable(a, k, z));
  sub.set("w", zeta);
  std::vector<Jet> map;
  std::vector<std::string> vars;
  for (const auto& fj : f)
    map.push_back(compose(fj, sub));
  for (int j = 0; j < layout.nu(); ++j)
    map.push_back(map[j].conjugate());
  Jet gz = compose(g, sub);
  map.push_back(gz.real_part());
  vars = layout.z;
  vars.insert(vars.end(), layout.zb.begin(), layout.zb.end());
  vars.push_back(layout.s);
  std::vector<Jet> inv = reversion(map, vars);
  Substitution back(a);
  for (std::size_t i = 0; i < vars.size(); ++i)
    back.set(vars[i], inv[i]);
  return compose(gz.imag_part(), back);
}

inline CentralEquivalence central_map(int nu, const Jet& source, const Jet& target, std::vector<Jet> f, Jet g) {
  GermLayout l = GermLayout::standard(nu, 0);
  return CentralEquivalence{l, source, l, target, std::move(f), std::move(g)};
}

} // namespace testing_support

namespace testing_support {

// Number of positive eigenvalues of a real symmetric matrix: characteristic
// polynomial by Faddeev-LeVerrier, then Descartes' sign rule, which is exact
// for polynomials with only real roots.
inline int positive_eigenvalues(const GaussianMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  GaussianMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    GaussianMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i)
      am(i, i) += Gaussian(c[n - k + 1]);
    m = am;
    GaussianMatrix p = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      tr += p(i, i).re();
    c[n - k] = -tr / Rational(long(k));
  }
  int changes = 0, last = 0;
  for (std::size_t k = n + 1; k-- > 0;) {
    int s = sgn(c[k]);
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++changes;
    last = s;
  }
  return changes;
}

} // namespace testing_support
