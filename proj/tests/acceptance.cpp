// One line per acceptance criterion; exit status 1 if any fails.
#include "jetcr/central.hpp"
#include "jetcr/equivalence.hpp"
#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"
#include "jetcr/marson.hpp"
#include "jetcr/segre.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace jetcr;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = Clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  bool pass = o.ok && in_time;
  if (!pass)
    ++failures;
  std::string limit = limit_seconds > 0 ? " < " + std::to_string(int(limit_seconds)) + " s" : "";
  std::printf("%s %d %s (%.2f s%s)%s%s\n", pass ? "PASS" : "FAIL", id, title, secs, limit.c_str(),
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

GermLayout hyp(int nu) { return GermLayout::standard(nu, 0); }

Jet diag_quadric(const std::vector<long>& signs, int order) {
  int nu = int(signs.size());
  AlphabetPtr a = hyp(nu).alphabet();
  Jet s(a, order);
  for (int j = 1; j <= nu; ++j)
    s += jet(a, order, {{"z" + std::to_string(j) + "*zb" + std::to_string(j), q(signs[j - 1])}});
  return s;
}

bool same_phi(const PhiJet& a, const PhiJet& b) {
  if (a.entries.size() != b.entries.size() || a.order != b.order)
    return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    for (std::size_t j = 0; j < a.entries.size(); ++j)
      if (a.entries[i][j] != b.entries[i][j])
        return false;
  return true;
}

GaussianMatrix t_hessian(const StructureGerm& g) {
  const int n = g.nprime();
  GaussianMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h(i, j) = second_derivative_at_0(g.phi(), g.layout().t[i], g.layout().t[j]);
  return h;
}

std::vector<StructureGerm> central_corpus() {
  std::mt19937 rng(31337);
  std::vector<StructureGerm> out;
  for (int i = 0; i < 20; ++i)
    out.push_back(random_nondegenerate_germ(i % 3, 1 + i % 2, 6, rng));
  return out;
}

// H(|z|^2) with H'(0) != 0.
Jet rigid_radial(int nu, int order, std::mt19937& rng) {
  AlphabetPtr a = GermLayout::standard(nu, 0).alphabet();
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Jet r(a, order);
  for (int j = 1; j <= nu; ++j)
    r += jet(a, order, {{"z" + std::to_string(j) + "*zb" + std::to_string(j), q(1)}});
  Jet sum(a, order), power = Jet::constant(a, order, q(1));
  for (int d = 1; 2 * d <= order; ++d) {
    power = power * r;
    Rational c(num(rng), den(rng));
    if (d == 1 && c == 0)
      c = 1;
    sum += power * Gaussian(c);
  }
  return sum;
}

} // namespace

int main() {
  criterion(1, "quadric Phi vanishes by both routes at K=8", 1, [] {
    for (auto signs : {std::vector<long>{1}, std::vector<long>{1, -1}}) {
      auto cd = complexify_defining(hyp(int(signs.size())), diag_quadric(signs, 8));
      if (!phi_determinant(cd).is_zero() || !phi_elimination(cd).is_zero())
        return Outcome{false, "nonzero Phi entry"};
    }
    return Outcome{true, "Im w = |z|^2 and diag(1,-1)"};
  });

  criterion(2, "determinant and elimination Phi agree on 20 random hypersurfaces", 30, [] {
    std::mt19937 rng(4242);
    for (int i = 0; i < 20; ++i) {
      int nu = 1 + i % 2;
      auto cd = complexify_defining(hyp(nu), random_hypersurface(nu, 6, rng, 8, 4));
      if (!same_phi(phi_determinant(cd), phi_elimination(cd)))
        return Outcome{false, "mismatch on sample " + std::to_string(i)};
    }
    return Outcome{true, "20/20 exact"};
  });

  const std::vector<StructureGerm> corpus = central_corpus();

  criterion(3, "central manifold residuals vanish on 20 random germs", 10, [&] {
    for (const auto& g : corpus) {
      auto chart = central_manifold(g);
      for (const auto& r : central_residuals(g, chart))
        if (!r.is_zero() || r.order() < g.order() - 1)
          return Outcome{false, "residual " + r.to_string()};
    }
    return Outcome{true, "20/20 zero to order K-1"};
  });

  criterion(4, "Morse reconstruction and signature on the same corpus", 0, [&] {
    for (const auto& g : corpus) {
      StructureGerm s = straighten(g, central_manifold(g));
      MorseNormalForm nf = morse_normalize(s);
      Jet rec = nf.reconstruct(s.alphabet());
      if (rec.order() != s.order() || rec != s.phi())
        return Outcome{false, "reconstruction differs"};
      if (nf.signature_m != positive_eigenvalues(t_hessian(g)))
        return Outcome{false, "signature differs"};
    }
    return Outcome{true, "20/20"};
  });

  criterion(5, "Levi relation for the external lift on 10 germs", 0, [] {
    std::mt19937 rng(555);
    int definite = 0;
    for (int i = 0; i < 10; ++i) {
      int nu = i % 2, nprime = 1 + (i / 2) % 2;
      StructureGerm g = random_nondegenerate_germ(nu, nprime, 5, rng);
      if (i >= 5) {
        // positive definite: keep only the part of degree >= 3, add a positive diagonal
        AlphabetPtr a = g.alphabet();
        std::vector<Jet::Term> high;
        for (const auto& t : g.phi().terms())
          if (t.first.degree() >= 3)
            high.push_back(t);
        Jet phi = Jet::from_terms(a, 5, high);
        for (const auto& z : g.layout().z)
          phi += Jet::monomial(a, 5, mono(*a, z + "*zb" + z.substr(1)), q(1 + i % 3));
        for (const auto& t : g.layout().t)
          phi += Jet::monomial(a, 5, mono(*a, t + "^2"), q(2));
        g = StructureGerm::build(g.layout(), phi);
      }
      ExternalLevi lv = external_levi(external_lift(g));
      if (!lv.relation_holds)
        return Outcome{false, "relation fails on sample " + std::to_string(i)};
      if (lv.source.definite) {
        ++definite;
        if (!lv.direct.definite)
          return Outcome{false, "definite source with indefinite lift"};
      }
    }
    return Outcome{definite >= 5, std::to_string(definite) + " definite sources"};
  });

  criterion(6, "rigid germs H(|z|^2) have w-free Phi; quadric is analytic-consistent", 0, [] {
    std::mt19937 rng(6060);
    for (int i = 0; i < 20; ++i) {
      int nu = 1 + i % 2, nprime = i % 3 == 0 ? 0 : 1;
      Jet sigma = rigid_radial(nu, 6, rng);
      AlphabetPtr a = GermLayout::standard(nu, nprime).alphabet();
      Jet phi = embed(sigma, a);
      if (nprime)
        phi += jet(a, 6, {{"t1^2", q(1, 2)}});
      RigidVerdict v = rigid_phi_test(StructureGerm::build(nu, nprime, phi));
      std::size_t w = v.phi.alphabet->index("w");
      for (const auto& row : v.phi.entries)
        for (const auto& e : row)
          for (const auto& t : e.terms())
            if (t.first.exponent(w) != 0)
              return Outcome{false, "w-dependent Phi on sample " + std::to_string(i)};
      if (!v.analytic_consistent)
        return Outcome{false, "verdict disagrees with the monomial scan"};
    }
    RigidVerdict quad = rigid_phi_test(StructureGerm::build(1, 0, diag_quadric({1}, 6)));
    return Outcome{quad.analytic_consistent && quad.offending.empty(), "20/20"};
  });

  criterion(7, "worked example: psi(u) = u and zero residuals at K=8", 0, [] {
    AlphabetPtr xi = Alphabet::holomorphic({"xi"});
    Jet h = jet(xi, 8, {{"xi^2", q(1, 2)}});
    Jet psi = example_psi(h);
    if (psi != Jet::variable(psi.alphabet(), psi.order(), "u"))
      return Outcome{false, "psi = " + psi.to_string()};
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    for (int i = 0; i < 10; ++i) {
      Jet r(xi, 8);
      for (int d = 2; d <= 8; d += 2) {
        Rational c(num(rng), den(rng));
        if (d == 2 && c == 0)
          c = 1;
        r += Jet::monomial(xi, 8, Monomial::variable(0, d), Gaussian(c));
      }
      if (!example_psi_residual(r, example_psi(r)).is_zero())
        return Outcome{false, "nonzero residual for h = " + r.to_string()};
    }
    return Outcome{true, "10/10 even h"};
  });

  criterion(8, "equivalence lift: identity, scaling |c|^2 = 4, negative control", 0, [] {
    const int k = 6;
    Jet sigma = diag_quadric({1}, k);
    StructureGerm g = normal_form_germ(1, sigma, {q(1, 2)});
    AlphabetPtr m = central_map_alphabet(hyp(1));
    AlphabetPtr a = g.alphabet();

    auto id = central_map(1, sigma, sigma, {Jet::variable(m, k, "z1")}, Jet::variable(m, k, "w"));
    LiftedEquivalence li = lift_equivalence(id, g, g);
    Jet z = Jet::variable(a, k, "z1");
    StructureMap mi = li.map();
    bool identity = mi.z[0] == z.with_order(mi.z[0].order()) && li.S == Jet::variable(a, li.S.order(), "s") &&
                    li.T[0] == Jet::variable(a, li.T[0].order(), "t1") && verify_lift(li, g, g).passed();
    if (!identity)
      return Outcome{false, "identity does not lift to the identity"};

    auto sc = central_map(1, sigma, sigma, {Jet::variable(m, k, "z1") * cq(6, 5, 8, 5)},
                          Jet::variable(m, k, "w") * q(4));
    Jet lambda = extract_lambda(sc);
    if (lambda != Jet::constant(lambda.alphabet(), lambda.order(), q(4)))
      return Outcome{false, "lambda = " + lambda.to_string()};
    LiftedEquivalence ls = lift_equivalence(sc, g, g);
    if (ls.T[0] != jet(a, ls.T[0].order(), {{"t1", q(2)}}))
      return Outcome{false, "T = " + ls.T[0].to_string()};
    LiftReport rep = verify_lift(ls, g, g);
    if (!rep.passed())
      return Outcome{false, "scaling lift fails verification"};
    for (const auto& r : rep.pullback.reports)
      if (r.residual && !r.residual->is_zero())
        return Outcome{false, "nonzero residual"};

    LiftedEquivalence bad = ls;
    bad.T[0] = Jet::variable(a, ls.T[0].order(), "t1");
    LiftReport br = verify_lift(bad, g, g);
    bool caught = !br.pullback.solutions && br.pullback.reports.back().residual &&
                  !br.pullback.reports.back().residual->is_zero();
    return Outcome{caught, caught ? "lambda = 4, T = 2t, corrupted T rejected" : "corrupted T not detected"};
  });

  criterion(9, "jet kernel: Catalan numbers by implicit_solve, reversion round trip", 0, [] {
    AlphabetPtr st = Alphabet::holomorphic({"t", "s"});
    Jet t = Jet::variable(st, 5, "t"), s = Jet::variable(st, 5, "s");
    Jet sol = implicit_solve({t - s - t * t}, {"t"}, Alphabet::holomorphic({"s"}))[0];
    const long catalan[] = {1, 1, 2, 5, 14};
    for (int d = 1; d <= 5; ++d)
      if (sol.coefficient(Monomial::variable(0, unsigned(d))) != q(catalan[d - 1]))
        return Outcome{false, "coefficient of s^" + std::to_string(d)};
    if (sol.order() != 5 || sol.size() != 5)
      return Outcome{false, "unexpected extra terms"};

    std::mt19937 rng(99);
    AlphabetPtr xy = Alphabet::holomorphic({"x", "y"});
    for (int i = 0; i < 5; ++i) {
      std::vector<Jet> f = {Jet::variable(xy, 6, "x") + random_jet(xy, 6, rng, 2, 6),
                            Jet::variable(xy, 6, "y") * q(2) + Jet::variable(xy, 6, "x") + random_jet(xy, 6, rng, 2, 6)};
      std::vector<Jet> g = reversion(f, {"x", "y"});
      Substitution fg(xy), gf(xy);
      fg.set("x", g[0]).set("y", g[1]);
      gf.set("x", f[0]).set("y", f[1]);
      for (int c = 0; c < 2; ++c) {
        const char* v = c == 0 ? "x" : "y";
        if (compose(f[c], fg) != Jet::variable(xy, 6, v) || compose(g[c], gf) != Jet::variable(xy, 6, v))
          return Outcome{false, "reversion does not invert"};
      }
    }
    return Outcome{true, "1, 1, 2, 5, 14; 5 reversions"};
  });

  return failures == 0 ? 0 : 1;
}
