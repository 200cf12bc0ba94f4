#include "grpd/pseudogroup.hpp"

#include <algorithm>
#include <string>

#include "grpd/groupoid.hpp"

namespace grpd {

  namespace {
    void check_carrier(GroupoidPtr const& g, GroupoidPtr const& h) {
      if (!same_groupoid(g, h)) {
        throw PreconditionError("partial bisections live on different groupoids");
      }
    }
  }  // namespace

  PartialBisection PartialBisection::make(GroupoidPtr g, std::vector<morphism_type> components) {
    auto const n = g->number_of_objects();
    if (components.size() != n) {
      throw LawViolation("partial bisection", {}, "expected one entry per object");
    }
    std::vector<char> hit(n, false);
    for (object_type u = 0; u < n; ++u) {
      auto a = components[u];
      if (a == UNDEFINED) {
        continue;
      }
      if (a >= g->number_of_morphisms() || g->source(a) != u) {
        throw LawViolation("partial bisection",
                           {u},
                           "component at " + std::to_string(u) + " does not start there");
      }
      if (hit[g->target(a)]) {
        throw LawViolation("partial bisection",
                           {u, a},
                           "object action is not injective at " + std::to_string(u));
      }
      hit[g->target(a)] = true;
    }
    return PartialBisection(std::move(g), std::move(components));
  }

  PartialBisection PartialBisection::unit(GroupoidPtr const& g) {
    std::vector<morphism_type> c(g->number_of_objects());
    for (object_type u = 0; u < c.size(); ++u) {
      c[u] = g->identity(u);
    }
    return PartialBisection(g, std::move(c));
  }

  PartialBisection PartialBisection::bottom(GroupoidPtr const& g) {
    return PartialBisection(g, std::vector<morphism_type>(g->number_of_objects(), UNDEFINED));
  }

  PartialBisection PartialBisection::singleton(GroupoidPtr const& g, morphism_type a) {
    if (a >= g->number_of_morphisms()) {
      throw PreconditionError("singleton: morphism out of range");
    }
    std::vector<morphism_type> c(g->number_of_objects(), UNDEFINED);
    c[g->source(a)] = a;
    return PartialBisection(g, std::move(c));
  }

  PartialBisection PartialBisection::idempotent_on(GroupoidPtr const&              g,
                                                   std::vector<object_type> const& objects) {
    std::vector<morphism_type> c(g->number_of_objects(), UNDEFINED);
    for (auto u : objects) {
      if (u >= c.size()) {
        throw PreconditionError("idempotent_on: object out of range");
      }
      c[u] = g->identity(u);
    }
    return PartialBisection(g, std::move(c));
  }

  object_type PartialBisection::action(object_type u) const {
    return defined(u) ? _g->target(_components[u]) : UNDEFINED;
  }

  std::vector<object_type> PartialBisection::source_set() const {
    std::vector<object_type> out;
    for (object_type u = 0; u < _components.size(); ++u) {
      if (defined(u)) {
        out.push_back(u);
      }
    }
    return out;
  }

  std::vector<object_type> PartialBisection::target_set() const {
    std::vector<object_type> out;
    for (object_type u = 0; u < _components.size(); ++u) {
      if (defined(u)) {
        out.push_back(action(u));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t PartialBisection::size() const {
    return std::count_if(
        _components.begin(), _components.end(), [](auto a) { return a != UNDEFINED; });
  }

  bool PartialBisection::operator==(PartialBisection const& that) const {
    return _components == that._components && same_groupoid(_g, that._g);
  }

  PartialBisection multiply(PartialBisection const& beta, PartialBisection const& alpha) {
    check_carrier(beta.groupoid(), alpha.groupoid());
    auto const&                g = *alpha.groupoid();
    std::vector<morphism_type> c(g.number_of_objects(), UNDEFINED);
    for (object_type u = 0; u < c.size(); ++u) {
      if (alpha.defined(u)) {
        auto b = beta.component(alpha.action(u));
        if (b != UNDEFINED) {
          c[u] = g.compose(b, alpha.component(u));
        }
      }
    }
    return PartialBisection::make(alpha.groupoid(), std::move(c));
  }

  PartialBisection star(PartialBisection const& alpha) {
    auto const&                g = *alpha.groupoid();
    std::vector<morphism_type> c(g.number_of_objects(), UNDEFINED);
    for (object_type u = 0; u < c.size(); ++u) {
      if (alpha.defined(u)) {
        c[alpha.action(u)] = g.inverse(alpha.component(u));
      }
    }
    return PartialBisection::make(alpha.groupoid(), std::move(c));
  }

  bool is_idempotent(PartialBisection const& alpha) {
    auto const& g = *alpha.groupoid();
    for (object_type u = 0; u < g.number_of_objects(); ++u) {
      if (alpha.defined(u) && !g.is_identity(alpha.component(u))) {
        return false;
      }
    }
    return true;
  }

  bool compatible(PartialBisection const& alpha, PartialBisection const& beta) {
    auto bs = star(beta);
    return is_idempotent(multiply(alpha, bs)) && is_idempotent(multiply(bs, alpha));
  }

  bool natural_leq(PartialBisection const& alpha, PartialBisection const& beta) {
    return alpha == multiply(beta, multiply(star(alpha), alpha));
  }

  bool agrees_on_common_source(PartialBisection const& alpha, PartialBisection const& beta) {
    check_carrier(alpha.groupoid(), beta.groupoid());
    for (object_type u = 0; u < alpha.components().size(); ++u) {
      if (alpha.defined(u) && beta.defined(u) && alpha.component(u) != beta.component(u)) {
        return false;
      }
    }
    return true;
  }

  bool restricts(PartialBisection const& alpha, PartialBisection const& beta) {
    check_carrier(alpha.groupoid(), beta.groupoid());
    for (object_type u = 0; u < alpha.components().size(); ++u) {
      if (alpha.defined(u) && alpha.component(u) != beta.component(u)) {
        return false;
      }
    }
    return true;
  }

  PartialBisection join(GroupoidPtr const& g, std::vector<PartialBisection> const& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      check_carrier(g, family[i].groupoid());
      for (std::size_t j = i + 1; j < family.size(); ++j) {
        if (!compatible(family[i], family[j])) {
          throw LawViolation("compatible join",
                             {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                             "members " + std::to_string(i) + " and " + std::to_string(j)
                                 + " are not compatible");
        }
      }
    }
    std::vector<morphism_type> c(g->number_of_objects(), UNDEFINED);
    for (auto const& alpha : family) {
      for (object_type u = 0; u < c.size(); ++u) {
        if (alpha.defined(u)) {
          c[u] = alpha.component(u);
        }
      }
    }
    return PartialBisection::make(g, std::move(c));
  }

  std::vector<PartialBisection> enumerate_partial_bisections(GroupoidPtr const& g,
                                                             EnumerationCaps    caps) {
    auto const                    n = g->number_of_objects();
    std::vector<PartialBisection> out;
    std::vector<morphism_type>    c(n, UNDEFINED);
    std::vector<char>             used(n, false);

    auto dfs = [&](auto& self, object_type u) -> void {
      if (u == n) {
        if (out.size() == caps.max_results) {
          throw CapExceeded("partial bisection count", caps.max_results, out.size() + 1);
        }
        out.push_back(PartialBisection::make(g, c));
        return;
      }
      for (auto a : g->out(u)) {
        auto v = g->target(a);
        if (!used[v]) {
          used[v] = true;
          c[u]    = a;
          self(self, u + 1);
          used[v] = false;
        }
      }
      c[u] = UNDEFINED;
      self(self, u + 1);
    };
    dfs(dfs, 0);
    return out;
  }

  PartialBisection pushforward(Comorphism const& f, PartialBisection const& alpha) {
    check_carrier(f.dom(), alpha.groupoid());
    std::vector<morphism_type> c(f.cod()->number_of_objects(), UNDEFINED);
    for (object_type u = 0; u < c.size(); ++u) {
      auto a = alpha.component(f.object(u));
      if (a != UNDEFINED) {
        c[u] = f.lift(a, u);
      }
    }
    return PartialBisection::make(f.cod(), std::move(c));
  }

  ////////////////////////////////////////////////////////////////////////
  // Abstract inverse monoids
  ////////////////////////////////////////////////////////////////////////

  void check_inverse_monoid(InverseMonoidView const& m) {
    auto const k = m.size;
    if (m.table.size() != k * k || m.star.size() != k || m.unit >= k) {
      throw LawViolation("shape", {}, "tables have the wrong size");
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (m.multiply(m.unit, i) != i || m.multiply(i, m.unit) != i) {
        throw LawViolation("unit law", {static_cast<std::uint32_t>(i)}, "unit fails");
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
          if (m.multiply(m.multiply(i, j), l) != m.multiply(i, m.multiply(j, l))) {
            throw LawViolation("associativity",
                               {static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(l)},
                               "non-associative triple");
          }
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      auto s = m.star[i];
      if (m.multiply(m.multiply(i, s), i) != i || m.multiply(m.multiply(s, i), s) != s) {
        throw LawViolation("star law", {static_cast<std::uint32_t>(i)}, "m m* m != m or m* m m* != m*");
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (j != s && m.multiply(m.multiply(i, j), i) == i && m.multiply(m.multiply(j, i), j) == j) {
          throw LawViolation("star uniqueness",
                             {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                             "a second generalized inverse exists");
        }
      }
    }
  }

  std::optional<std::vector<std::size_t>> boolean_atoms(InverseMonoidView const& m) {
    std::vector<std::size_t> idem;
    for (std::size_t i = 0; i < m.size; ++i) {
      if (m.is_idempotent(i)) {
        idem.push_back(i);
      }
    }
    auto leq = [&](std::size_t e, std::size_t f) { return m.natural_leq(e, f); };
    // Least idempotent.
    std::optional<std::size_t> zero;
    for (auto e : idem) {
      if (std::all_of(idem.begin(), idem.end(), [&](auto f) { return leq(e, f); })) {
        zero = e;
      }
    }
    if (!zero) {
      return std::nullopt;
    }
    std::vector<std::size_t> atoms;
    for (auto e : idem) {
      if (e == *zero) {
        continue;
      }
      bool minimal = std::none_of(idem.begin(), idem.end(), [&](auto f) {
        return f != e && f != *zero && leq(f, e);
      });
      if (minimal) {
        atoms.push_back(e);
      }
    }
    if (atoms.size() >= 8 * sizeof(std::size_t) - 1 || idem.size() != (std::size_t(1) << atoms.size())) {
      return std::nullopt;
    }
    // e ↦ {atoms below e} must be an order isomorphism onto the power set.
    std::vector<std::size_t> mask(m.size, 0);
    std::vector<char>        seen(idem.size(), false);
    for (auto e : idem) {
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (leq(atoms[i], e)) {
          mask[e] |= std::size_t(1) << i;
        }
      }
      if (seen[mask[e]]) {
        return std::nullopt;
      }
      seen[mask[e]] = true;
    }
    for (auto e : idem) {
      for (auto f : idem) {
        if (leq(e, f) != ((mask[e] & ~mask[f]) == 0)) {
          return std::nullopt;
        }
      }
    }
    return atoms;
  }

  bool is_complete_atomic(InverseMonoidView const& m) {
    return boolean_atoms(m).has_value();
  }

  std::size_t PBisMonoid::index_of(PartialBisection const& alpha) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), alpha);
    if (it == elements.end() || !(*it == alpha)) {
      throw PreconditionError("partial bisection not in this monoid");
    }
    return it - elements.begin();
  }

  std::size_t PBisMonoid::singleton(morphism_type a) const {
    return index_of(PartialBisection::singleton(groupoid, a));
  }

  std::size_t PBisMonoid::join(std::size_t i, std::size_t j) const {
    return index_of(grpd::join(groupoid, {elements[i], elements[j]}));
  }

  PBisMonoid pbis_monoid(GroupoidPtr const& g, std::size_t max_size) {
    PBisMonoid result;
    result.groupoid = g;
    result.elements = enumerate_partial_bisections(g, {max_size});
    auto const k    = result.elements.size();
    auto&      v    = result.view;
    v.size          = k;
    v.table.resize(k * k);
    v.star.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        v.table[i * k + j] = result.index_of(multiply(result.elements[i], result.elements[j]));
      }
      v.star[i] = result.index_of(star(result.elements[i]));
    }
    v.unit        = result.index_of(PartialBisection::unit(g));
    result.bottom = result.index_of(PartialBisection::bottom(g));
    return result;
  }

  void check_join_distributivity(PBisMonoid const& m) {
    auto const  k = m.elements.size();
    auto const& v = m.view;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!compatible(m.elements[i], m.elements[j])) {
          continue;
        }
        auto ij = m.join(i, j);
        for (std::size_t l = 0; l < k; ++l) {
          bool left  = v.multiply(l, ij) == m.join(v.multiply(l, i), v.multiply(l, j));
          bool right = v.multiply(ij, l) == m.join(v.multiply(i, l), v.multiply(j, l));
          if (!left || !right) {
            throw LawViolation("join distributivity",
                               {static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(l)},
                               "multiplication does not distribute over a join");
          }
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Pseudogroup morphisms
  ////////////////////////////////////////////////////////////////////////

  PseudogroupMap pbis_map(Comorphism const& f, PBisMonoid const& dom, PBisMonoid const& cod) {
    check_carrier(f.dom(), dom.groupoid);
    check_carrier(f.cod(), cod.groupoid);
    PseudogroupMap phi(dom.elements.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
      phi[i] = cod.index_of(pushforward(f, dom.elements[i]));
    }
    return phi;
  }

  void check_pseudogroup_morphism(PBisMonoid const&     dom,
                                  PBisMonoid const&     cod,
                                  PseudogroupMap const& phi) {
    auto const k = dom.elements.size();
    if (phi.size() != k) {
      throw LawViolation("shape", {}, "map has the wrong size");
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (phi[i] >= cod.elements.size()) {
        throw LawViolation("shape", {static_cast<std::uint32_t>(i)}, "image out of range");
      }
    }
    if (phi[dom.view.unit] != cod.view.unit) {
      throw LawViolation("unit preservation", {}, "unit is not sent to the unit");
    }
    if (phi[dom.bottom] != cod.bottom) {
      throw LawViolation("join preservation", {}, "the empty join is not preserved");
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (phi[dom.view.multiply(i, j)] != cod.view.multiply(phi[i], phi[j])) {
          throw LawViolation("product preservation",
                             {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                             "product of " + std::to_string(i) + " and " + std::to_string(j)
                                 + " is not preserved");
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!compatible(dom.elements[i], dom.elements[j])) {
          continue;
        }
        if (!compatible(cod.elements[phi[i]], cod.elements[phi[j]])
            || phi[dom.join(i, j)] != cod.join(phi[i], phi[j])) {
          throw LawViolation("join preservation",
                             {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                             "join of " + std::to_string(i) + " and " + std::to_string(j)
                                 + " is not preserved");
        }
      }
    }
  }

  Comorphism reconstruct_comorphism(PBisMonoid const&     dom,
                                    PBisMonoid const&     cod,
                                    PseudogroupMap const& phi) {
    check_pseudogroup_morphism(dom, cod, phi);
    auto const& G = *dom.groupoid;
    auto const& H = *cod.groupoid;
    auto const  m = G.number_of_morphisms();

    std::vector<object_type> objects(H.number_of_objects(), UNDEFINED);
    for (object_type u = 0; u < G.number_of_objects(); ++u) {
      auto const& e = cod.elements[phi[dom.singleton(G.identity(u))]];
      for (auto v : e.source_set()) {
        if (objects[v] != UNDEFINED) {
          throw LawViolation("partition", {v}, "object " + std::to_string(v) + " covered twice");
        }
        objects[v] = u;
      }
    }
    for (object_type v = 0; v < objects.size(); ++v) {
      if (objects[v] == UNDEFINED) {
        throw LawViolation("partition", {v}, "object " + std::to_string(v) + " not covered");
      }
    }
    std::vector<morphism_type> lifts(objects.size() * m, UNDEFINED);
    for (morphism_type a = 0; a < m; ++a) {
      auto const& image = cod.elements[phi[dom.singleton(a)]];
      for (object_type v = 0; v < objects.size(); ++v) {
        if (objects[v] == G.source(a)) {
          lifts[v * m + a] = image.component(v);
        }
      }
    }
    return Comorphism::make(dom.groupoid, cod.groupoid, std::move(objects), std::move(lifts));
  }

  std::vector<PseudogroupMap> enumerate_pseudogroup_morphisms(PBisMonoid const& dom,
                                                              PBisMonoid const& cod,
                                                              EnumerationCaps   caps) {
    auto const& G = *dom.groupoid;
    auto const  m = G.number_of_morphisms();
    auto const  k = cod.elements.size();

    std::vector<std::size_t> single(m);
    for (morphism_type a = 0; a < m; ++a) {
      single[a] = dom.singleton(a);
    }
    // Compatibility in the codomain, tabulated once.
    std::vector<char> compat(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        compat[i * k + j] = compatible(cod.elements[i], cod.elements[j]);
      }
    }

    std::vector<char> dom_compat(m * m);
    for (morphism_type a = 0; a < m; ++a) {
      for (morphism_type b = 0; b < m; ++b) {
        dom_compat[a * m + b] = compatible(dom.elements[single[a]], dom.elements[single[b]]);
      }
    }

    std::vector<PseudogroupMap> out;
    std::vector<std::size_t>    image(m);

    auto consistent = [&](morphism_type a) {
      if (G.is_identity(a) && !cod.view.is_idempotent(image[a])) {
        return false;
      }
      for (morphism_type b = 0; b <= a; ++b) {
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
          // [x]·[y] is [x∘y] when composable and ⊥ otherwise.
          auto xy   = G.compose(x, y);
          auto prod = cod.view.multiply(image[x], image[y]);
          if (xy == UNDEFINED ? prod != cod.bottom : (xy <= a && prod != image[xy])) {
            return false;
          }
        }
        if (dom_compat[a * m + b] && !compat[image[a] * k + image[b]]) {
          return false;
        }
      }
      return true;
    };

    auto complete = [&]() {
      PseudogroupMap phi(dom.elements.size());
      for (std::size_t i = 0; i < phi.size(); ++i) {
        auto const&                   alpha = dom.elements[i];
        std::vector<PartialBisection> parts;
        for (auto u : alpha.source_set()) {
          parts.push_back(cod.elements[image[alpha.component(u)]]);
        }
        phi[i] = cod.index_of(join(cod.groupoid, parts));
      }
      try {
        check_pseudogroup_morphism(dom, cod, phi);
      } catch (LawViolation const&) {
        return;
      }
      if (out.size() == caps.max_results) {
        throw CapExceeded("pseudogroup morphism count", caps.max_results, out.size() + 1);
      }
      out.push_back(std::move(phi));
    };

    auto dfs = [&](auto& self, morphism_type a) -> void {
      if (a == m) {
        complete();
        return;
      }
      for (std::size_t x = 0; x < k; ++x) {
        image[a] = x;
        if (consistent(a)) {
          self(self, a + 1);
        }
      }
    };
    dfs(dfs, 0);
    return out;
  }

}  // namespace grpd
