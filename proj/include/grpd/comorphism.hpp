#ifndef GRPD_COMORPHISM_HPP
#define GRPD_COMORPHISM_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "grpd/functor.hpp"
#include "grpd/types.hpp"

namespace grpd {

  // A comorphism (cofunctor) f : G ⇝ H. It maps objects backwards,
  // u ↦ f(u) from H to G, and lifts each G-morphism a : f(u) -> v to an
  // H-morphism f(a)_u with source u, subject to
  //
  //   target axiom       f(target f(a)_u) = v,
  //   unit axiom         f(1_{f(u)})_u = 1_u,
  //   composition axiom  f(b)_{target f(a)_u} ∘ f(a)_u = f(b∘a)_u.
  //
  // The lift table is stored densely, indexed by u * |G₁| + a, with UNDEFINED
  // wherever source(a) != f(u).
  class Comorphism {
   public:
    // Throws LawViolation naming the violated axiom ("target axiom",
    // "unit axiom", "composition axiom", "lift source" or
    // "comorphism shape") with witnesses (u, a[, b]).
    static Comorphism make(GroupoidPtr                dom,
                           GroupoidPtr                cod,
                           std::vector<object_type>   objects,
                           std::vector<morphism_type> lifts);

    // Builds the dense table from (u, a, f(a)_u) triples, then validates.
    static Comorphism
    from_triples(GroupoidPtr                                       dom,
                 GroupoidPtr                                       cod,
                 std::vector<object_type>                          objects,
                 std::vector<std::array<std::uint32_t, 3>> const& lifts);

    static Comorphism identity(GroupoidPtr const& g);

    GroupoidPtr const& dom() const noexcept {
      return _dom;
    }
    GroupoidPtr const& cod() const noexcept {
      return _cod;
    }
    // f(u) for an object u of the codomain.
    object_type object(object_type u) const {
      return _objects[u];
    }
    // f(a)_u; UNDEFINED unless source(a) = f(u).
    morphism_type lift(morphism_type a, object_type u) const {
      return _lifts[u * _stride + a];
    }
    object_type lift_target(morphism_type a, object_type u) const;

    std::vector<object_type> const& object_map() const noexcept {
      return _objects;
    }
    std::vector<morphism_type> const& lift_table() const noexcept {
      return _lifts;
    }

    bool operator==(Comorphism const& that) const;

   private:
    friend Comorphism compose(Comorphism const&, Comorphism const&);

    Comorphism(GroupoidPtr                dom,
               GroupoidPtr                cod,
               std::vector<object_type>   objects,
               std::vector<morphism_type> lifts);

    GroupoidPtr                _dom;
    GroupoidPtr                _cod;
    std::size_t                _stride;
    std::vector<object_type>   _objects;
    std::vector<morphism_type> _lifts;
  };

  std::size_t hash_value(Comorphism const& f);
  std::size_t hash_value(Functor const& f);

  // g∘f for f : G ⇝ H and g : H ⇝ K. Objects u ↦ f(g(u)); the lift of
  // a : f(g(u)) -> v at u is g(f(a)_{g(u)})_u.
  Comorphism compose(Comorphism const& g, Comorphism const& f);

  // f_* : G ⇝ H for a bijective-on-objects functor f : G -> H.
  Comorphism lower_star(Functor const& f);

  // f^* : G ⇝ H for a discrete opfibration f : H -> G.
  Comorphism upper_star(Functor const& f);

  // f = (to_cod)_* ∘ (to_dom)^* through the intermediate groupoid K, whose
  // objects are those of cod(f) and whose morphisms u -> v are the pairs
  // (u, a) with f(a)_u : u -> v. K-morphism i is morphisms[i].
  struct Factorization {
    GroupoidPtr                                        intermediate;
    Functor                                            to_dom;  // discrete opfibration
    Functor                                            to_cod;  // identity on objects
    std::vector<std::pair<object_type, morphism_type>> morphisms;
  };

  Factorization factorize(Comorphism const& f);

  // For a commuting square
  //
  //        f
  //    G -----> H
  //  h |        | k
  //    v        v
  //    K -----> L
  //        g
  //
  // with f, g bijective on objects and h, k discrete opfibrations, returns
  // whether f_*∘h^* = k^*∘g_* as comorphisms K ⇝ H. Throws PreconditionError
  // if the functors do not form such a square.
  bool check_beck_chevalley(Functor const& f,
                            Functor const& g,
                            Functor const& h,
                            Functor const& k);

  struct ComorphismInverse {
    Functor    functor;  // invertible g with f = g_*
    Comorphism inverse;  // g^*
  };

  // Empty unless f is invertible in the category of comorphisms.
  std::optional<ComorphismInverse> invert_comorphism(Comorphism const& f);

  // All comorphisms G ⇝ H, lexicographically ordered by (object map, lift
  // table).
  std::vector<Comorphism> enumerate_comorphisms(GroupoidPtr const& g,
                                                GroupoidPtr const& h,
                                                EnumerationCaps    caps = {});

}  // namespace grpd

#endif  // GRPD_COMORPHISM_HPP
