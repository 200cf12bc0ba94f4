#ifndef GRPD_GROUPOID_HPP
#define GRPD_GROUPOID_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "grpd/functor.hpp"
#include "grpd/types.hpp"

namespace grpd {

  class FiniteGroup;

  // Raw composition-table presentation of a groupoid. Morphism a has ends
  // source[a] -> target[a]. `compose` is an m x m table indexed by
  // b * m + a and holds b∘a (a applied first), or UNDEFINED when
  // target(a) != source(b).
  struct GroupoidTables {
    std::size_t                objects = 0;
    std::vector<object_type>   source;
    std::vector<object_type>   target;
    std::vector<morphism_type> identity;
    std::vector<morphism_type> inverse;
    std::vector<morphism_type> compose;

    bool operator==(GroupoidTables const&) const = default;
  };

  // A validated finite groupoid. Values are immutable after construction and
  // are normally shared through GroupoidPtr.
  class FiniteGroupoid {
   public:
    // Checks every groupoid law and throws LawViolation naming the first one
    // that fails, together with the witnessing identifiers.
    static FiniteGroupoid validate(GroupoidTables tables);
    static GroupoidPtr    make(GroupoidTables tables);

    std::size_t number_of_objects() const noexcept {
      return _t.objects;
    }
    std::size_t number_of_morphisms() const noexcept {
      return _t.source.size();
    }

    object_type source(morphism_type a) const {
      return _t.source[a];
    }
    object_type target(morphism_type a) const {
      return _t.target[a];
    }
    morphism_type identity(object_type u) const {
      return _t.identity[u];
    }
    morphism_type inverse(morphism_type a) const {
      return _t.inverse[a];
    }
    // b∘a, or UNDEFINED if target(a) != source(b).
    morphism_type compose(morphism_type b, morphism_type a) const {
      return _t.compose[b * number_of_morphisms() + a];
    }
    bool is_identity(morphism_type a) const {
      return identity(source(a)) == a;
    }

    // Morphisms with source u, ascending.
    std::span<morphism_type const> out(object_type u) const {
      return _out[u];
    }
    // Morphisms u -> v, ascending.
    std::span<morphism_type const> hom(object_type u, object_type v) const {
      return _hom[u * number_of_objects() + v];
    }

    GroupoidTables const& tables() const noexcept {
      return _t;
    }

    bool operator==(FiniteGroupoid const& that) const {
      return _t == that._t;
    }

   private:
    explicit FiniteGroupoid(GroupoidTables t);

    GroupoidTables                          _t;
    std::vector<std::vector<morphism_type>> _out;
    std::vector<std::vector<morphism_type>> _hom;
  };

  bool same_groupoid(GroupoidPtr const& g, GroupoidPtr const& h);

  ////////////////////////////////////////////////////////////////////////
  // Standard constructions
  ////////////////////////////////////////////////////////////////////////

  // n objects and only identities.
  GroupoidPtr discrete(std::size_t n);
  // Exactly one morphism u -> v for every ordered pair; the morphism u -> v
  // has identifier u * n + v.
  GroupoidPtr indiscrete(std::size_t n);
  // One object; morphism identifiers are the group elements.
  GroupoidPtr sigma(FiniteGroup const& g);
  // Two objects and a single isomorphism 0 -> 1 between them (morphism 1,
  // with inverse 2).
  GroupoidPtr interval();
  GroupoidPtr terminal();
  GroupoidPtr empty_groupoid();

  // Identifier of the generic isomorphism 0 -> 1 of interval().
  inline constexpr morphism_type INTERVAL_ARROW = 1;

  struct Coproduct {
    GroupoidPtr sum;
    // Disjoint union: objects and morphisms of the left summand come first.
    Functor left;
    Functor right;
  };

  Coproduct coproduct(GroupoidPtr const& g, GroupoidPtr const& h);

  // The unique functor ⟨f, h⟩ : G + H -> K restricting to f and h.
  Functor copair(Coproduct const& c, Functor const& f, Functor const& h);

  // The coslice u/G: objects are the morphisms with source u (object i is
  // out(u)[i]); there is exactly one morphism a -> b, namely b∘a⁻¹, and it has
  // identifier i * k + j where k = |out(u)|. The projection sends a to
  // target(a).
  struct Coslice {
    GroupoidPtr                groupoid;
    Functor                    projection;
    object_type                base;
    std::vector<morphism_type> objects;

    // The object of u/G corresponding to the G-morphism a out of u.
    object_type object_of(morphism_type a) const;
  };

  Coslice coslice(GroupoidPtr const& g, object_type u);

  // For a : u -> v, the functor v/G -> u/G sending b to b∘a.
  Functor precompose(GroupoidPtr const& g, morphism_type a);

  struct Pullback {
    GroupoidPtr groupoid;
    Functor     left;   // to dom(f)
    Functor     right;  // to dom(g)
  };

  // Pullback of f : A -> C and g : B -> C. Objects are the pairs (x, y) with
  // f(x) = g(y) in lexicographic order; morphisms likewise.
  Pullback pullback(Functor const& f, Functor const& g);

  // Backtracking search for an isomorphism G -> H.
  std::optional<Functor> find_isomorphism(GroupoidPtr const& g,
                                          GroupoidPtr const& h);

  bool are_isomorphic(GroupoidPtr const& g, GroupoidPtr const& h);

}  // namespace grpd

#endif  // GRPD_GROUPOID_HPP
