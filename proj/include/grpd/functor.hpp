#ifndef GRPD_FUNCTOR_HPP
#define GRPD_FUNCTOR_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "grpd/types.hpp"

namespace grpd {

  // A homomorphism of finite groupoids.
  class Functor {
   public:
    // Validates that the maps are total, in range, and preserve sources,
    // targets, identities and composition; throws LawViolation otherwise.
    static Functor make(GroupoidPtr                dom,
                        GroupoidPtr                cod,
                        std::vector<object_type>   objects,
                        std::vector<morphism_type> morphisms);

    static Functor identity(GroupoidPtr const& g);

    GroupoidPtr const& dom() const noexcept {
      return _dom;
    }
    GroupoidPtr const& cod() const noexcept {
      return _cod;
    }
    object_type object(object_type u) const {
      return _objects[u];
    }
    morphism_type morphism(morphism_type a) const {
      return _morphisms[a];
    }
    std::vector<object_type> const& object_map() const noexcept {
      return _objects;
    }
    std::vector<morphism_type> const& morphism_map() const noexcept {
      return _morphisms;
    }

    bool operator==(Functor const& that) const;

   private:
    Functor(GroupoidPtr                dom,
            GroupoidPtr                cod,
            std::vector<object_type>   objects,
            std::vector<morphism_type> morphisms);

    GroupoidPtr                _dom;
    GroupoidPtr                _cod;
    std::vector<object_type>   _objects;
    std::vector<morphism_type> _morphisms;
  };

  // g∘f.
  Functor compose(Functor const& g, Functor const& f);

  bool is_bijective_on_objects(Functor const& f);
  bool is_invertible(Functor const& f);
  // Throws PreconditionError unless f is invertible.
  Functor inverse(Functor const& f);

  // For every object u of dom(f) and every morphism a : f(u) -> v of cod(f)
  // there is exactly one morphism of dom(f) with source u and image a.
  bool is_discrete_opfibration(Functor const& f);

  // The unique lift described above, or UNDEFINED if it does not exist or is
  // not unique.
  morphism_type opfibration_lift(Functor const& f, object_type u, morphism_type a);

  struct EnumerationCaps {
    std::size_t max_results = 1'000'000;
  };

  // All functors G -> H in lexicographic order of (object map, morphism map).
  // Throws CapExceeded if there are more than caps.max_results.
  std::vector<Functor> enumerate_functors(GroupoidPtr const& g,
                                          GroupoidPtr const& h,
                                          EnumerationCaps    caps = {});

  std::vector<Functor> enumerate_automorphisms(GroupoidPtr const& g);

  namespace detail {
    // Core homomorphism search between full subgroupoids. `src_objects` and
    // `dst_objects` are membership vectors; the maps passed to `emit` are
    // indexed by identifiers of the ambient groupoids and hold UNDEFINED
    // outside the chosen full subgroupoid. With `bijective` set only
    // isomorphisms between the two full subgroupoids are produced. Returning
    // false from `emit` stops the search.
    void for_each_homomorphism(
        FiniteGroupoid const&    src,
        std::vector<char> const& src_objects,
        FiniteGroupoid const&    dst,
        std::vector<char> const& dst_objects,
        bool                     bijective,
        std::function<bool(std::vector<object_type> const&,
                           std::vector<morphism_type> const&)> const& emit);
  }  // namespace detail

}  // namespace grpd

#endif  // GRPD_FUNCTOR_HPP
