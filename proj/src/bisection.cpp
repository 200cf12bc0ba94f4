#include "grpd/bisection.hpp"

#include <algorithm>
#include <string>

#include "grpd/groupoid.hpp"

namespace grpd {

  namespace {
    void check_carrier(GroupoidPtr const& g, GroupoidPtr const& h) {
      if (!same_groupoid(g, h)) {
        throw PreconditionError("bisections live on different groupoids");
      }
    }
  }  // namespace

  Bisection Bisection::make(GroupoidPtr g, std::vector<morphism_type> components) {
    auto const n = g->number_of_objects();
    if (components.size() != n) {
      throw LawViolation("bisection", {}, "expected one component per object");
    }
    std::vector<char> hit(n, false);
    for (object_type u = 0; u < n; ++u) {
      auto a = components[u];
      if (a >= g->number_of_morphisms() || g->source(a) != u) {
        throw LawViolation("bisection", {u}, "component at " + std::to_string(u) + " does not start there");
      }
      if (hit[g->target(a)]) {
        throw LawViolation("bisection",
                           {u, a},
                           "object action is not injective at " + std::to_string(u));
      }
      hit[g->target(a)] = true;
    }
    return Bisection(std::move(g), std::move(components));
  }

  Bisection Bisection::identity(GroupoidPtr const& g) {
    std::vector<morphism_type> c(g->number_of_objects());
    for (object_type u = 0; u < c.size(); ++u) {
      c[u] = g->identity(u);
    }
    return Bisection(g, std::move(c));
  }

  object_type Bisection::action(object_type u) const {
    return _g->target(_components[u]);
  }

  bool Bisection::operator==(Bisection const& that) const {
    return _components == that._components && same_groupoid(_g, that._g);
  }

  Bisection multiply(Bisection const& beta, Bisection const& alpha) {
    check_carrier(beta.groupoid(), alpha.groupoid());
    auto const&                g = *alpha.groupoid();
    std::vector<morphism_type> c(g.number_of_objects());
    for (object_type u = 0; u < c.size(); ++u) {
      auto a = alpha.component(u);
      c[u]   = g.compose(beta.component(g.target(a)), a);
    }
    return Bisection::make(alpha.groupoid(), std::move(c));
  }

  Bisection inverse(Bisection const& alpha) {
    auto const&                g = *alpha.groupoid();
    std::vector<morphism_type> c(g.number_of_objects());
    for (object_type u = 0; u < c.size(); ++u) {
      auto a            = alpha.component(u);
      c[g.target(a)] = g.inverse(a);
    }
    return Bisection::make(alpha.groupoid(), std::move(c));
  }

  std::vector<Bisection> enumerate_bisections(GroupoidPtr const& g, EnumerationCaps caps) {
    auto const                 n = g->number_of_objects();
    std::vector<Bisection>     out;
    std::vector<morphism_type> c(n);
    std::vector<char>          used(n, false);

    auto dfs = [&](auto& self, object_type u) -> void {
      if (u == n) {
        if (out.size() == caps.max_results) {
          throw CapExceeded("bisection count", caps.max_results, out.size() + 1);
        }
        out.push_back(Bisection::make(g, c));
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
    };
    dfs(dfs, 0);
    return out;
  }

  std::size_t BisectionGroup::index_of(Bisection const& alpha) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), alpha);
    if (it == elements.end() || !(*it == alpha)) {
      throw PreconditionError("bisection not in this group");
    }
    return it - elements.begin();
  }

  BisectionGroup bisection_group(GroupoidPtr const& g, std::size_t max_order) {
    BisectionGroup result;
    result.elements = enumerate_bisections(g, {max_order});
    auto const k    = result.elements.size();
    std::vector<std::vector<FiniteGroup::element_type>> table(
        k, std::vector<FiniteGroup::element_type>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        table[i][j] = result.index_of(multiply(result.elements[i], result.elements[j]));
      }
    }
    result.group = FiniteGroup::from_table(table);
    return result;
  }

  Functor conjugation(Bisection const& alpha) {
    auto const&                g = *alpha.groupoid();
    std::vector<object_type>   objects(g.number_of_objects());
    std::vector<morphism_type> morphisms(g.number_of_morphisms());
    for (object_type u = 0; u < objects.size(); ++u) {
      objects[u] = alpha.action(u);
    }
    for (morphism_type x = 0; x < morphisms.size(); ++x) {
      auto au      = alpha.component(g.source(x));
      auto av      = alpha.component(g.target(x));
      morphisms[x] = g.compose(av, g.compose(x, g.inverse(au)));
    }
    return Functor::make(alpha.groupoid(), alpha.groupoid(), std::move(objects), std::move(morphisms));
  }

  Bisection pushforward(Comorphism const& f, Bisection const& alpha) {
    check_carrier(f.dom(), alpha.groupoid());
    std::vector<morphism_type> c(f.cod()->number_of_objects());
    for (object_type u = 0; u < c.size(); ++u) {
      c[u] = f.lift(alpha.component(f.object(u)), u);
    }
    return Bisection::make(f.cod(), std::move(c));
  }

  std::vector<Bisection> adjunction_forward(Comorphism const& f) {
    auto const& sh = *f.dom();
    if (sh.number_of_objects() != 1) {
      throw PreconditionError("adjunction: domain must have exactly one object");
    }
    auto const             n = f.cod()->number_of_objects();
    std::vector<Bisection> out;
    for (morphism_type a = 0; a < sh.number_of_morphisms(); ++a) {
      std::vector<morphism_type> c(n);
      for (object_type u = 0; u < n; ++u) {
        c[u] = f.lift(a, u);
      }
      out.push_back(Bisection::make(f.cod(), std::move(c)));
    }
    return out;
  }

  Comorphism adjunction_back(GroupoidPtr const&            sigma_h,
                             GroupoidPtr const&            g,
                             std::vector<Bisection> const& images) {
    auto const& sh = *sigma_h;
    if (sh.number_of_objects() != 1) {
      throw PreconditionError("adjunction: domain must have exactly one object");
    }
    auto const m = sh.number_of_morphisms();
    if (images.size() != m) {
      throw PreconditionError("adjunction: expected one bisection per group element");
    }
    for (auto const& x : images) {
      check_carrier(x.groupoid(), g);
    }
    for (morphism_type a = 0; a < m; ++a) {
      for (morphism_type b = 0; b < m; ++b) {
        if (!(images[sh.compose(b, a)] == multiply(images[b], images[a]))) {
          throw LawViolation("group homomorphism",
                             {a, b},
                             "image of " + std::to_string(b) + "*" + std::to_string(a)
                                 + " is not the product of the images");
        }
      }
    }
    auto const                 n = g->number_of_objects();
    std::vector<morphism_type> lifts(n * m);
    for (object_type u = 0; u < n; ++u) {
      for (morphism_type a = 0; a < m; ++a) {
        lifts[u * m + a] = images[a].component(u);
      }
    }
    return Comorphism::make(sigma_h, g, std::vector<object_type>(n, 0), std::move(lifts));
  }

}  // namespace grpd
