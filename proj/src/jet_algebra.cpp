#include "jetcr/jet_algebra.hpp"

#include "jetcr/errors.hpp"
#include "jetcr/linear.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace jetcr {

Substitution Substitution::by_name(const Alphabet& from, AlphabetPtr target, int order) {
  Substitution sub(target);
  for (const auto& name : from.names())
    if (target->contains(name))
      sub.images.emplace(name, Jet::variable(target, order, name));
  return sub;
}

Substitution& Substitution::set(const std::string& variable, Jet image) {
  if (!same_alphabet(image.alphabet(), target))
    throw IncompatibleJets("substitution image for '" + variable + "' is over the wrong alphabet");
  images.insert_or_assign(variable, std::move(image));
  return *this;
}

namespace {

struct Composer {
  const AlphabetPtr& target;
  std::vector<Jet::Term> terms;          // outer terms, sorted lexicographically on `vars`
  std::vector<std::size_t> vars;         // occurring outer variable indices
  std::vector<const Jet*> images;        // parallel to vars
  std::vector<int> vals;                 // image valuations
  std::vector<std::vector<Jet>> powers;  // cached truncated powers
  int order;

  const Jet& power(std::size_t slot, unsigned e) {
    auto& p = powers[slot];
    if (p.empty())
      p.push_back(Jet::constant(target, order, Gaussian(1)));
    while (p.size() <= e)
      p.push_back(mul_truncated(p.back(), *images[slot], order));
    return p[e];
  }

  Jet run(std::size_t begin, std::size_t end, std::size_t slot, int budget) {
    if (budget < 0)
      return Jet(target, 0);
    if (slot == vars.size()) {
      // All occurring exponents agree, so this range holds exactly one term.
      return Jet::constant(target, budget, terms[begin].second);
    }
    std::size_t v = vars[slot];
    Jet acc(target, budget);
    std::size_t i = begin;
    while (i < end) {
      unsigned e = terms[i].first.exponent(v);
      std::size_t j = i;
      while (j < end && terms[j].first.exponent(v) == e)
        ++j;
      int sub_budget = budget - int(e) * vals[slot];
      if (sub_budget >= 0) {
        Jet inner = run(i, j, slot + 1, sub_budget);
        if (e == 0)
          acc += inner.with_order(budget);
        else
          acc += mul_truncated(power(slot, e), inner, budget);
      }
      i = j;
    }
    return acc;
  }
};

} // namespace

Jet compose(const Jet& outer, const Substitution& sub, ComposeOptions options) {
  const Alphabet& from = *outer.alphabet();
  const int k_out = outer.order();

  std::vector<std::size_t> occurring;
  for (std::size_t i = 0; i < from.size(); ++i)
    for (const auto& [m, c] : outer.terms())
      if (m.exponent(i)) {
        occurring.push_back(i);
        break;
      }

  std::vector<const Jet*> images;
  bool shifted = false;
  for (std::size_t i : occurring) {
    auto it = sub.images.find(from.name(i));
    if (it == sub.images.end())
      throw PreconditionError("compose: no assignment for variable '" + from.name(i) + "'");
    if (!same_alphabet(it->second.alphabet(), sub.target))
      throw IncompatibleJets("compose: image of '" + from.name(i) + "' is over the wrong alphabet");
    if (!it->second.constant_term().is_zero()) {
      if (!options.allow_constant_shift)
        throw PreconditionError("compose: image of '" + from.name(i) + "' has a nonzero constant term");
      shifted = true;
    }
    images.push_back(&it->second);
  }

  int k;
  if (occurring.empty()) {
    k = k_out;
    for (const auto& [name, img] : sub.images)
      k = std::min(k, img.order());
  } else if (shifted) {
    k = INT_MAX;
    for (const Jet* img : images)
      k = std::min(k, img->order());
  } else {
    int vmin = INT_MAX;
    for (std::size_t i = 0; i < from.size(); ++i) {
      auto it = sub.images.find(from.name(i));
      vmin = std::min(vmin, it == sub.images.end() ? 1 : it->second.valuation());
    }
    long k2 = long(k_out + 1) * vmin - 1;
    long k1 = LONG_MAX;
    for (std::size_t s = 0; s < occurring.size(); ++s) {
      int dval = k_out >= 1 ? derive(outer, from.name(occurring[s])).valuation() : 0;
      k1 = std::min(k1, long(images[s]->order()) + dval);
    }
    k = int(std::min(k1, k2));
  }

  Composer c{sub.target, outer.terms(), occurring, images, {}, {}, k};
  c.vals.resize(images.size());
  for (std::size_t s = 0; s < images.size(); ++s)
    c.vals[s] = shifted ? 0 : std::min(images[s]->valuation(), k + 1);
  c.powers.resize(images.size());
  std::sort(c.terms.begin(), c.terms.end(), [&](const Jet::Term& a, const Jet::Term& b) {
    for (std::size_t v : occurring)
      if (a.first.exponent(v) != b.first.exponent(v))
        return a.first.exponent(v) < b.first.exponent(v);
    return false;
  });
  if (c.terms.empty())
    return Jet(sub.target, k);
  return c.run(0, c.terms.size(), 0, k);
}

Jet embed(const Jet& a, const AlphabetPtr& target) {
  if (same_alphabet(a.alphabet(), target))
    return a;
  const Alphabet& from = *a.alphabet();
  std::vector<std::optional<std::size_t>> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    map[i] = target->find(from.name(i));
  std::vector<Jet::Term> out;
  for (const auto& [m, c] : a.terms()) {
    Monomial n;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (!m.exponent(i))
        continue;
      if (!map[i])
        throw PreconditionError("embed: variable '" + from.name(i) + "' missing from target alphabet");
      n.set(*map[i], m.exponent(i));
    }
    out.emplace_back(n, c);
  }
  return Jet::from_terms(target, a.order(), std::move(out));
}

Jet inverse(const Jet& unit) {
  Gaussian c0 = unit.constant_term();
  if (c0.is_zero())
    throw PreconditionError("inverse: jet is not a unit (zero constant term)");
  Gaussian c0_inv = c0.inverse();
  const int k = unit.order();
  Jet one = Jet::constant(unit.alphabet(), k, Gaussian(1));
  Jet r = unit * c0_inv - one; // valuation >= 1
  Jet neg_r = -r;
  Jet sum = one;
  Jet power = one;
  for (int i = 1; i <= k; ++i) {
    power = power * neg_r;
    if (power.is_zero())
      break;
    sum += power;
  }
  return sum * c0_inv;
}

Jet divide_by_coordinate(const Jet& a, std::string_view variable) {
  std::size_t v = a.alphabet()->index(variable);
  if (a.order() == 0)
    throw PreconditionError("divide_by_coordinate: jet of order 0");
  std::vector<Jet::Term> out;
  out.reserve(a.size());
  for (const auto& [m, c] : a.terms()) {
    if (m.exponent(v) == 0)
      throw DivisionError("not divisible by " + std::string(variable), m.to_string(*a.alphabet()));
    out.emplace_back(m.lowered(v), c);
  }
  return Jet::from_terms(a.alphabet(), a.order() - 1, std::move(out));
}

Jet jet_sqrt(const Jet& a) {
  if (a.constant_term() != Gaussian(1))
    throw PreconditionError("jet_sqrt: constant term must be 1 (got " + a.constant_term().to_string() + ")");
  const int k = a.order();
  Jet one = Jet::constant(a.alphabet(), k, Gaussian(1));
  Jet r = a - one;
  Jet sum = one;
  Jet power = one;
  Rational binom(1);
  for (int i = 1; i <= k; ++i) {
    binom *= (Rational(1, 2) - (i - 1)) / Rational(i);
    power = power * r;
    if (power.is_zero())
      break;
    sum += power * Gaussian(binom);
  }
  return sum;
}

JetMatrix invert(const JetMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0)
    return {};
  const AlphabetPtr& alpha = m[0][0].alphabet();
  const int k = m[0][0].order();
  JetMatrix a = m;
  JetMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n)
      throw PreconditionError("invert: matrix is not square");
    for (std::size_t j = 0; j < n; ++j)
      inv[i].push_back(Jet::constant(alpha, k, Gaussian(i == j ? 1 : 0)));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r)
      if (!a[r][col].constant_term().is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == n)
      throw SingularJacobian("invert: constant part singular", int(col), int(n));
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    Jet p_inv = inverse(a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * p_inv;
      inv[col][j] = inv[col][j] * p_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero())
        continue;
      Jet f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Jet> implicit_solve(const std::vector<Jet>& eqs, const std::vector<std::string>& unknowns,
                                const AlphabetPtr& parameters) {
  const std::size_t n = eqs.size();
  if (n == 0 || n != unknowns.size())
    throw PreconditionError("implicit_solve: need as many equations as unknowns");
  const AlphabetPtr& alpha = eqs[0].alphabet();
  int order = eqs[0].order();
  for (const auto& e : eqs) {
    if (!same_alphabet(e.alphabet(), alpha))
      throw IncompatibleJets("implicit_solve: equations over different alphabets");
    order = std::min(order, e.order());
  }
  std::vector<Jet> f;
  for (const auto& e : eqs) {
    if (!e.constant_term().is_zero())
      throw PreconditionError("implicit_solve: equations do not vanish at 0");
    f.push_back(e.truncate(order));
  }

  std::vector<std::size_t> unknown_idx;
  for (const auto& u : unknowns)
    unknown_idx.push_back(alpha->index(u));
  for (std::size_t i = 0; i < alpha->size(); ++i) {
    if (std::find(unknown_idx.begin(), unknown_idx.end(), i) != unknown_idx.end())
      continue;
    const std::string& name = alpha->name(i);
    bool occurs = std::any_of(f.begin(), f.end(), [&](const Jet& e) { return e.depends_on(name); });
    if (occurs && !parameters->contains(name))
      throw PreconditionError("implicit_solve: parameter '" + name + "' missing from parameter alphabet");
  }

  GaussianMatrix j0(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      j0(i, j) = f[i].coefficient(Monomial::variable(unknown_idx[j]));
  if (int r = j0.rank(); r < int(n))
    throw SingularJacobian("implicit_solve: Jacobian with respect to the unknowns is singular at 0", r, int(n));

  std::vector<Jet> u(n, Jet(parameters, 0));
  if (order == 0)
    return u;

  std::vector<std::vector<Jet>> derivs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      derivs[i].push_back(derive(f[i], unknowns[j]));

  auto substitution = [&](int k) {
    Substitution sub(parameters);
    for (std::size_t i = 0; i < alpha->size(); ++i) {
      const std::string& name = alpha->name(i);
      auto pos = std::find(unknown_idx.begin(), unknown_idx.end(), i);
      if (pos != unknown_idx.end())
        sub.images.emplace(name, u[pos - unknown_idx.begin()].with_order(k));
      else if (parameters->contains(name))
        sub.images.emplace(name, Jet::variable(parameters, k, name));
    }
    return sub;
  };

  int prec = 0;
  while (prec < order) {
    const int target = std::min(order, 2 * prec + 1);
    const int jac_order = target - prec - 1;

    Substitution at_target = substitution(target);
    std::vector<Jet> residual;
    for (std::size_t i = 0; i < n; ++i)
      residual.push_back(compose(f[i].truncate(target), at_target).with_order(target));

    Substitution at_jac = substitution(jac_order);
    JetMatrix jac(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        jac[i].push_back(compose(derivs[i][j].truncate(jac_order), at_jac).with_order(jac_order));
    JetMatrix jac_inv = invert(jac);

    // residual has valuation > prec, so jac_inv only matters through jac_order.
    for (std::size_t i = 0; i < n; ++i) {
      Jet delta(parameters, target);
      for (std::size_t j = 0; j < n; ++j)
        delta += mul_truncated(jac_inv[i][j], residual[j], target);
      u[i] = u[i].with_order(target) - delta;
    }
    prec = target;
  }
  return u;
}

std::vector<Jet> reversion(const std::vector<Jet>& map, const std::vector<std::string>& variables) {
  const std::size_t n = map.size();
  if (n == 0 || n != variables.size())
    throw PreconditionError("reversion: map must be square");
  const AlphabetPtr& alpha = map[0].alphabet();
  int order = map[0].order();
  for (const auto& m : map) {
    if (!same_alphabet(m.alphabet(), alpha))
      throw IncompatibleJets("reversion: components over different alphabets");
    if (!m.constant_term().is_zero())
      throw PreconditionError("reversion: map does not fix the origin");
    order = std::min(order, m.order());
  }

  std::vector<std::string> names = alpha->names();
  std::vector<std::string> fresh;
  for (std::size_t i = 0; i < n; ++i) {
    std::string y = "_y" + std::to_string(i);
    while (alpha->contains(y))
      y = "_" + y;
    fresh.push_back(y);
    names.push_back(y);
  }
  AlphabetPtr ext = Alphabet::holomorphic(names);

  Substitution sub = Substitution::by_name(*alpha, ext, order);
  for (std::size_t i = 0; i < n; ++i)
    sub.set(variables[i], Jet::variable(ext, order, fresh[i]));

  std::vector<Jet> eqs;
  for (std::size_t i = 0; i < n; ++i)
    eqs.push_back(compose(map[i].truncate(order), sub).with_order(order) -
                  Jet::variable(ext, order, variables[i]));
  try {
    return implicit_solve(eqs, fresh, alpha);
  } catch (const SingularJacobian& e) {
    throw SingularJacobian("reversion: linear part is not invertible", e.rank(), e.size());
  }
}

} // namespace jetcr
