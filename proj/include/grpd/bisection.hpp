#ifndef GRPD_BISECTION_HPP
#define GRPD_BISECTION_HPP

#include <cstddef>
#include <vector>

#include "grpd/comorphism.hpp"
#include "grpd/functor.hpp"
#include "grpd/group.hpp"
#include "grpd/types.hpp"

namespace grpd {

  // A bisection α of G: one morphism α_u out of every object u such that
  // u ↦ target(α_u) is a permutation of the objects.
  class Bisection {
   public:
    // Throws LawViolation("bisection", ...) if a component starts at the
    // wrong object or two components share a target.
    static Bisection make(GroupoidPtr g, std::vector<morphism_type> components);
    static Bisection identity(GroupoidPtr const& g);

    GroupoidPtr const& groupoid() const noexcept {
      return _g;
    }
    morphism_type component(object_type u) const {
      return _components[u];
    }
    // ᾱ(u) = target(α_u).
    object_type action(object_type u) const;

    std::vector<morphism_type> const& components() const noexcept {
      return _components;
    }

    bool operator==(Bisection const& that) const;
    bool operator<(Bisection const& that) const {
      return _components < that._components;
    }

   private:
    Bisection(GroupoidPtr g, std::vector<morphism_type> components)
        : _g(std::move(g)), _components(std::move(components)) {}

    GroupoidPtr                _g;
    std::vector<morphism_type> _components;
  };

  // β·α with (β·α)_u = β_{ᾱ(u)} ∘ α_u.
  Bisection multiply(Bisection const& beta, Bisection const& alpha);
  // (α⁻¹)_{ᾱ(u)} = (α_u)⁻¹.
  Bisection inverse(Bisection const& alpha);

  // All bisections, in lexicographic order of component vectors.
  std::vector<Bisection> enumerate_bisections(GroupoidPtr const& g,
                                              EnumerationCaps    caps = {});

  // Bis(G) with an explicit Cayley table; group element i is elements[i].
  struct BisectionGroup {
    std::vector<Bisection> elements;
    FiniteGroup            group;

    std::size_t index_of(Bisection const& alpha) const;
  };

  // Throws CapExceeded if |Bis(G)| > max_order.
  BisectionGroup bisection_group(GroupoidPtr const& g, std::size_t max_order = 10'000);

  // c_α : G -> G, x : u -> v ↦ α_v ∘ x ∘ α_u⁻¹.
  Functor conjugation(Bisection const& alpha);

  // (fα)_u = f(α_{f(u)})_u, a bisection of cod(f).
  Bisection pushforward(Comorphism const& f, Bisection const& alpha);

  // For f : ΣH ⇝ G, the homomorphism H -> Bis(G) sending a to (f(a)_u)_u,
  // as a vector indexed by the morphisms of ΣH.
  std::vector<Bisection> adjunction_forward(Comorphism const& f);

  // Inverse of adjunction_forward. `images[a]` is the image of the
  // morphism a of the one-object groupoid `sigma_h`; throws
  // LawViolation("group homomorphism", {a, b}) if images[b∘a] differs from
  // images[b]·images[a].
  Comorphism adjunction_back(GroupoidPtr const&            sigma_h,
                             GroupoidPtr const&            g,
                             std::vector<Bisection> const& images);

}  // namespace grpd

#endif  // GRPD_BISECTION_HPP
