#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "grpd/harness.hpp"

namespace grpd {

  PartialAutomorphism PartialAutomorphism::make(GroupoidPtr                carrier,
                                                std::vector<object_type>   objects,
                                                std::vector<morphism_type> morphisms) {
    auto const& g = *carrier;
    auto const  n = g.number_of_objects();
    auto const  m = g.number_of_morphisms();
    if (objects.size() != n || morphisms.size() != m) {
      throw LawViolation("partial automorphism", {}, "maps have the wrong size");
    }
    std::vector<char> hit(n, false);
    for (object_type u = 0; u < n; ++u) {
      auto v = objects[u];
      if (v == UNDEFINED) {
        continue;
      }
      if (v >= n || hit[v]) {
        throw LawViolation("partial automorphism", {u}, "object map is not injective at " + std::to_string(u));
      }
      hit[v] = true;
    }
    auto inside = [&](morphism_type a) {
      return objects[g.source(a)] != UNDEFINED && objects[g.target(a)] != UNDEFINED;
    };
    std::vector<char> image(m, false);
    for (morphism_type a = 0; a < m; ++a) {
      auto b = morphisms[a];
      if (!inside(a)) {
        if (b != UNDEFINED) {
          throw LawViolation("partial automorphism", {a}, "morphism " + std::to_string(a) + " lies outside the domain");
        }
        continue;
      }
      if (b >= m || g.source(b) != objects[g.source(a)] || g.target(b) != objects[g.target(a)]) {
        throw LawViolation("partial automorphism", {a}, "morphism " + std::to_string(a) + " has the wrong image");
      }
      if (image[b]) {
        throw LawViolation("partial automorphism", {a}, "morphism map is not injective");
      }
      image[b] = true;
    }
    for (morphism_type b = 0; b < m; ++b) {
      if (hit[g.source(b)] && hit[g.target(b)] && !image[b]) {
        throw LawViolation("partial automorphism", {b}, "morphism map is not onto the target subgroupoid");
      }
    }
    for (morphism_type a = 0; a < m; ++a) {
      if (!inside(a)) {
        continue;
      }
      for (auto b : g.out(g.target(a))) {
        if (inside(b) && morphisms[g.compose(b, a)] != g.compose(morphisms[b], morphisms[a])) {
          throw LawViolation("partial automorphism", {a, b}, "composition is not preserved");
        }
      }
    }
    return PartialAutomorphism(std::move(carrier), std::move(objects), std::move(morphisms));
  }

  PartialAutomorphism PartialAutomorphism::identity(GroupoidPtr const& carrier) {
    auto f = Functor::identity(carrier);
    return PartialAutomorphism(carrier, f.object_map(), f.morphism_map());
  }

  PartialAutomorphism PartialAutomorphism::empty(GroupoidPtr const& carrier) {
    return PartialAutomorphism(carrier,
                               std::vector<object_type>(carrier->number_of_objects(), UNDEFINED),
                               std::vector<morphism_type>(carrier->number_of_morphisms(), UNDEFINED));
  }

  std::vector<object_type> PartialAutomorphism::source_set() const {
    std::vector<object_type> out;
    for (object_type u = 0; u < _objects.size(); ++u) {
      if (defined(u)) {
        out.push_back(u);
      }
    }
    return out;
  }

  bool PartialAutomorphism::operator==(PartialAutomorphism const& that) const {
    return _objects == that._objects && _morphisms == that._morphisms && same_groupoid(_g, that._g);
  }

  bool PartialAutomorphism::operator<(PartialAutomorphism const& that) const {
    return std::tie(_objects, _morphisms) < std::tie(that._objects, that._morphisms);
  }

  std::vector<PartialAutomorphism> enumerate_partial_automorphisms(GroupoidPtr const& g) {
    auto const n = g->number_of_objects();
    if (n >= 32) {
      throw CapExceeded("partial automorphism objects", 31, n);
    }
    std::vector<PartialAutomorphism> out;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      for (std::uint32_t t = 0; t < (1u << n); ++t) {
        if (std::popcount(s) != std::popcount(t)) {
          continue;
        }
        std::vector<char> src(n), dst(n);
        for (std::size_t x = 0; x < n; ++x) {
          src[x] = (s >> x) & 1;
          dst[x] = (t >> x) & 1;
        }
        detail::for_each_homomorphism(*g, src, *g, dst, true, [&](auto const& o, auto const& m) {
          out.push_back(PartialAutomorphism::make(g, o, m));
          return true;
        });
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  PartialAutomorphism partial_conjugation(PartialBisection const& alpha) {
    auto const&                g = *alpha.groupoid();
    std::vector<object_type>   objects(g.number_of_objects(), UNDEFINED);
    std::vector<morphism_type> morphisms(g.number_of_morphisms(), UNDEFINED);
    for (object_type u = 0; u < objects.size(); ++u) {
      objects[u] = alpha.action(u);
    }
    for (morphism_type x = 0; x < morphisms.size(); ++x) {
      auto u = g.source(x);
      auto v = g.target(x);
      if (alpha.defined(u) && alpha.defined(v)) {
        morphisms[x] = g.compose(alpha.component(v), g.compose(x, g.inverse(alpha.component(u))));
      }
    }
    return PartialAutomorphism::make(alpha.groupoid(), std::move(objects), std::move(morphisms));
  }

  PartialAutomorphism pa_compose(PartialAutomorphism const& psi, PartialAutomorphism const& phi) {
    if (!same_groupoid(psi.carrier(), phi.carrier())) {
      throw PreconditionError("partial automorphisms of different groupoids");
    }
    auto const&              g = *phi.carrier();
    std::vector<object_type> objects(g.number_of_objects(), UNDEFINED);
    for (object_type u = 0; u < objects.size(); ++u) {
      if (phi.defined(u) && psi.defined(phi.object(u))) {
        objects[u] = psi.object(phi.object(u));
      }
    }
    std::vector<morphism_type> morphisms(g.number_of_morphisms(), UNDEFINED);
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      if (objects[g.source(a)] != UNDEFINED && objects[g.target(a)] != UNDEFINED) {
        morphisms[a] = psi.morphism(phi.morphism(a));
      }
    }
    return PartialAutomorphism::make(phi.carrier(), std::move(objects), std::move(morphisms));
  }

  bool check_partial_square(Comorphism const&          f,
                            PartialAutomorphism const& phi,
                            PartialAutomorphism const& psi) {
    if (!same_groupoid(f.dom(), phi.carrier()) || !same_groupoid(f.cod(), psi.carrier())) {
      throw PreconditionError("partial square: carriers do not match the comorphism");
    }
    auto const& G = *f.dom();
    auto const& H = *f.cod();
    for (object_type u = 0; u < H.number_of_objects(); ++u) {
      if (psi.defined(u) != phi.defined(f.object(u))) {
        return false;
      }
      if (psi.defined(u) && phi.object(f.object(u)) != f.object(psi.object(u))) {
        return false;
      }
    }
    for (object_type u = 0; u < H.number_of_objects(); ++u) {
      if (!psi.defined(u)) {
        continue;
      }
      for (auto a : G.out(f.object(u))) {
        if (!phi.defined(G.target(a))) {
          continue;
        }
        if (psi.morphism(f.lift(a, u)) != f.lift(phi.morphism(a), psi.object(u))) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace grpd
