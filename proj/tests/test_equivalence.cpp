#include "doctest.h"

#include "jetcr/equivalence.hpp"
#include "jetcr/errors.hpp"
#include "jetcr/jet_algebra.hpp"
#include "support.hpp"

using namespace jetcr;
using namespace testing_support;

namespace {

Jet quadric(int nu, int order) {
  AlphabetPtr a = GermLayout::standard(nu, 0).alphabet();
  Jet s(a, order);
  for (int j = 1; j <= nu; ++j)
    s += jet(a, order, {{"z" + std::to_string(j) + "*zb" + std::to_string(j), q(1)}});
  return s;
}

CentralEquivalence identity_map(int nu, const Jet& sigma) {
  AlphabetPtr m = central_map_alphabet(GermLayout::standard(nu, 0));
  std::vector<Jet> f;
  for (int j = 1; j <= nu; ++j)
    f.push_back(Jet::variable(m, sigma.order(), "z" + std::to_string(j)));
  return central_map(nu, sigma, sigma, f, Jet::variable(m, sigma.order(), "w"));
}

// z -> (z + a w)/delta, w -> w/delta with delta = 1 - 2i conj(a) z - i|a|^2 w, on Im w = |z|^2.
CentralEquivalence heisenberg_automorphism(const Gaussian& a, int order) {
  AlphabetPtr m = central_map_alphabet(GermLayout::standard(1, 0));
  Jet z = Jet::variable(m, order, "z1"), w = Jet::variable(m, order, "w");
  Jet delta = Jet::constant(m, order, q(1)) - z * (Gaussian(0, 2) * a.conj()) - w * (Gaussian::i() * Gaussian(a.norm()));
  Jet d = inverse(delta);
  Jet sigma = quadric(1, order);
  return central_map(1, sigma, sigma, {(z + w * a) * d}, w * d);
}

Jet r_coordinate(const GermLayout& l, const Jet& sigma) {
  AlphabetPtr a = complexified_alphabet(l);
  const int k = sigma.order();
  Jet w = Jet::variable(a, k, "w"), wb = Jet::variable(a, k, "wb");
  Substitution sub = Substitution::by_name(*l.alphabet(), a, k);
  sub.set("s", (w + wb) * q(1, 2));
  return (w - wb) * Gaussian(Rational(0), Rational(-1, 2)) - compose(sigma, sub);
}

} // namespace

TEST_CASE("identity map lifts to the identity") {
  Jet sigma = quadric(1, 6);
  auto ce = identity_map(1, sigma);
  CHECK(basic_identity_defect(ce).is_zero());
  Jet lambda = extract_lambda(ce);
  CHECK(lambda == Jet::constant(lambda.alphabet(), lambda.order(), q(1)));

  StructureGerm g = normal_form_germ(1, sigma, {q(1, 2)});
  auto le = lift_equivalence(ce, g, g);
  auto a = g.alphabet();
  CHECK(le.X[0] == jet(a, le.X[0].order(), {{"z1", q(1, 2)}, {"zb1", q(1, 2)}}));
  CHECK(le.Y[0] == jet(a, le.Y[0].order(), {{"z1", cq(0, 1, -1, 2)}, {"zb1", cq(0, 1, 1, 2)}}));
  CHECK(le.S == Jet::variable(a, le.S.order(), "s"));
  CHECK(le.T[0] == Jet::variable(a, le.T[0].order(), "t1"));
  auto rep = verify_lift(le, g, g);
  CHECK(rep.passed());
  CHECK(rep.order >= 5);
}

TEST_CASE("quadric scaling with |c|^2 = 4") {
  const int k = 6;
  Jet sigma = quadric(1, k);
  AlphabetPtr m = central_map_alphabet(GermLayout::standard(1, 0));
  Gaussian c = cq(6, 5, 8, 5);
  REQUIRE(c.norm() == Rational(4));
  auto ce = central_map(1, sigma, sigma, {Jet::variable(m, k, "z1") * c}, Jet::variable(m, k, "w") * q(4));
  CHECK(basic_identity_defect(ce).is_zero());
  Jet lambda = extract_lambda(ce);
  CHECK(lambda == Jet::constant(lambda.alphabet(), lambda.order(), q(4)));

  StructureGerm g = normal_form_germ(1, sigma, {q(1, 2)});
  auto le = lift_equivalence(ce, g, g);
  CHECK(le.T[0] == jet(g.alphabet(), le.T[0].order(), {{"t1", q(2)}}));
  CHECK(le.S == jet(g.alphabet(), le.S.order(), {{"s", q(4)}}));
  auto rep = verify_lift(le, g, g);
  CHECK(rep.passed());
  for (const auto& r : rep.pullback.reports)
    CHECK(r.order >= k - 1);

  SUBCASE("dropping sqrt(lambda) breaks the lift") {
    auto bad = le;
    bad.T[0] = Jet::variable(g.alphabet(), le.T[0].order(), "t1");
    auto br = verify_lift(bad, g, g);
    CHECK_FALSE(br.passed());
    CHECK_FALSE(br.pullback.solutions);
    CHECK_FALSE(br.lambda_consistent);
    REQUIRE(br.pullback.reports.back().residual.has_value());
    CHECK_FALSE(br.pullback.reports.back().residual->is_zero());
    CHECK(br.pullback.reports[0].solution);
  }
}

TEST_CASE("non-equivalence is rejected with the offending monomial") {
  const int k = 5;
  Jet sigma = quadric(1, k);
  AlphabetPtr m = central_map_alphabet(GermLayout::standard(1, 0));
  Jet z = Jet::variable(m, k, "z1");
  auto ce = central_map(1, sigma, sigma, {z}, Jet::variable(m, k, "w") + z * z);
  CHECK_FALSE(basic_identity_defect(ce).is_zero());
  try {
    extract_lambda(ce);
    FAIL("expected DivisionError");
  } catch (const DivisionError& e) {
    CHECK_FALSE(e.monomial().empty());
  }
  CHECK_THROWS_AS(extract_lambda(central_map(1, sigma, sigma, {z}, z)), SingularJacobian);
}

TEST_CASE("Heisenberg automorphisms") {
  const int k = 6;
  for (Gaussian a : {cq(1, 2, 1, 3), cq(-2, 1, 0, 1), cq(0, 1, 3, 4)}) {
    auto ce = heisenberg_automorphism(a, k);
    REQUIRE(basic_identity_defect(ce).is_zero());
    Jet lambda = extract_lambda(ce);
    CHECK(lambda.is_real());
    CHECK(lambda.constant_term() == q(1));
    CHECK(lambda.valuation() == 0);
    CHECK(lambda.size() > 1);

    // lambda * r reproduces the numerator, computed independently in (z, zb, w, wb).
    GermLayout l = GermLayout::standard(1, 0);
    AlphabetPtr cx = complexified_alphabet(l);
    Jet fz = embed(ce.f[0], cx), gw = embed(ce.g, cx);
    Jet num = (gw - gw.conjugate()) * Gaussian(Rational(0), Rational(-1, 2)) - fz * fz.conjugate();
    Jet prod = mul_exact(lambda, r_coordinate(l, ce.source_phi));
    CHECK(num.truncate(prod.order()) == prod);

    StructureGerm g = normal_form_germ(1, ce.source_phi, {q(1), q(3, 2)});
    auto le = lift_equivalence(ce, g, g);
    auto rep = verify_lift(le, g, g);
    CHECK(rep.pullback.solutions);
    CHECK(rep.holomorphic_images);
    CHECK(rep.restriction);
    CHECK(rep.lambda_consistent);
  }
}

TEST_CASE("post-composition with a target automorphism changes lambda, not validity") {
  const int k = 5;
  auto aut = heisenberg_automorphism(cq(1, 3, -1, 2), k);
  AlphabetPtr m = aut.g.alphabet();
  Gaussian c = q(2);
  // scaling after the automorphism
  std::vector<Jet> f{aut.f[0] * c};
  Jet g = aut.g * Gaussian(c.norm());
  auto ce = central_map(1, aut.source_phi, aut.target_phi, f, g);
  Jet l1 = extract_lambda(aut), l2 = extract_lambda(ce);
  CHECK(l2 == l1 * q(4));
  StructureGerm germ = normal_form_germ(1, aut.source_phi, {q(1, 2)});
  CHECK(verify_lift(lift_equivalence(ce, germ, germ), germ, germ).passed());
}

TEST_CASE("random maps onto their image hypersurfaces") {
  std::mt19937 rng(20240611);
  const int k = 5;
  for (int nu = 1; nu <= 2; ++nu) {
    for (int trial = 0; trial < 3; ++trial) {
      GermLayout l = GermLayout::standard(nu, 0);
      AlphabetPtr m = central_map_alphabet(l);
      Jet sigma = random_positive_hypersurface(nu, k, rng, 5);
      std::vector<Jet> f;
      for (int j = 1; j <= nu; ++j)
        f.push_back(Jet::variable(m, k, "z" + std::to_string(j)) + random_jet(m, k, rng, 2, 3));
      Jet g = Jet::variable(m, k, "w") + random_jet(m, k, rng, 2, 3);
      Jet target = image_hypersurface(l, sigma, f, g);
      REQUIRE(target.is_real());
      auto ce = central_map(nu, sigma, target, f, g);
      CHECK(basic_identity_defect(ce).is_zero());
      Jet lambda = extract_lambda(ce);
      CHECK(lambda.constant_term() == q(1));

      std::vector<Gaussian> c(2, q(1, 2));
      StructureGerm src = normal_form_germ(nu, sigma, c);
      StructureGerm dst = normal_form_germ(nu, target, c);
      if (!levi_form(dst).positive())
        continue;
      auto le = lift_equivalence(ce, src, dst);
      auto rep = verify_lift(le, src, dst);
      CHECK(rep.passed());
      CHECK(rep.order >= k - 2);
    }
  }
}

TEST_CASE("lift preconditions") {
  const int k = 5;
  Jet sigma = quadric(1, k);
  auto ce = identity_map(1, sigma);
  StructureGerm pos = normal_form_germ(1, sigma, {q(1)});
  CHECK_THROWS_AS(lift_equivalence(ce, normal_form_germ(1, sigma, {q(-1)}), pos), PreconditionError);
  CHECK_THROWS_AS(lift_equivalence(ce, pos, normal_form_germ(1, sigma, {q(1), q(-1, 2)})), PreconditionError);
  // c / c' = 1/2 is not a rational square
  CHECK_THROWS_AS(lift_equivalence(ce, pos, normal_form_germ(1, sigma, {q(2)})), PreconditionError);
  // c / c' = 4 is: T = t / ... scaled by 2
  auto le = lift_equivalence(ce, normal_form_germ(1, sigma, {q(4)}), pos);
  CHECK(le.q[0] == Rational(2));
  CHECK(verify_lift(le, normal_form_germ(1, sigma, {q(4)}), pos).passed());

  AlphabetPtr m = central_map_alphabet(GermLayout::standard(1, 0));
  auto twice = central_map(1, sigma, sigma, {Jet::variable(m, k, "z1") * cq(1, 1, 1, 1)}, Jet::variable(m, k, "w") * q(2));
  CHECK(extract_lambda(twice).constant_term() == q(2));
  CHECK_THROWS_AS(lift_equivalence(twice, pos, pos), PreconditionError);

  // t-dependence beyond sum c_l t_l^2
  AlphabetPtr a = GermLayout::standard(1, 1).alphabet();
  StructureGerm mixed = StructureGerm::build(1, 1, embed(sigma, a) + jet(a, k, {{"t1^2", q(1)}, {"s*t1^2", q(1)}}));
  CHECK_THROWS_AS(positive_normal_form(mixed), PreconditionError);
}
