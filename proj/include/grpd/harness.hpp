#ifndef GRPD_HARNESS_HPP
#define GRPD_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/pseudogroup.hpp"
#include "grpd/types.hpp"

namespace grpd {

  ////////////////////////////////////////////////////////////////////////
  // Universes
  ////////////////////////////////////////////////////////////////////////

  // In comorphism mode the arrows are all comorphisms between members; in
  // functor mode they are all functors. Either way the arrow set is
  // closed under composition and contains the identities.
  enum class UniverseMode { comorphism, functor };

  struct UniverseCaps {
    std::size_t max_objects   = 4;
    std::size_t max_morphisms = 24;
    std::size_t max_groupoids = 40;
    std::size_t max_arrows    = 2000;
  };

  // What a closure rule did: members it added, candidates already present
  // (exactly, or up to isomorphism where the rule dedupes that way), and
  // candidates refused because a cap would have been exceeded.
  struct ClosureRecord {
    std::string rule;
    std::size_t added      = 0;
    std::size_t duplicates = 0;
    std::size_t capped     = 0;
  };

  class Universe {
   public:
    UniverseMode mode() const noexcept {
      return _mode;
    }
    UniverseCaps const& caps() const noexcept {
      return _caps;
    }

    // Member 0 is the base groupoid.
    std::size_t number_of_groupoids() const noexcept {
      return _groupoids.size();
    }
    GroupoidPtr const& groupoid(std::size_t i) const {
      return _groupoids[i];
    }
    std::string const& label(std::size_t i) const {
      return _labels[i];
    }
    std::optional<std::size_t> index_of(GroupoidPtr const& g) const;

    std::size_t number_of_arrows() const noexcept {
      return _dom.size();
    }
    std::size_t dom(std::size_t arrow) const {
      return _dom[arrow];
    }
    std::size_t cod(std::size_t arrow) const {
      return _cod[arrow];
    }
    // Only in comorphism mode.
    Comorphism const& comorphism(std::size_t arrow) const {
      return _comorphisms[arrow];
    }
    // Only in functor mode.
    Functor const& functor(std::size_t arrow) const {
      return _functors[arrow];
    }
    // Arrows with domain member i, ascending.
    std::vector<std::size_t> const& arrows_from(std::size_t i) const {
      return _from[i];
    }

    std::optional<std::size_t> find(Comorphism const& f) const;
    std::optional<std::size_t> find(Functor const& f) const;
    // The arrow g∘f.
    std::size_t compose(std::size_t g, std::size_t f) const;

    // Invertible functors of member i, in enumeration order.
    std::vector<Functor> const& automorphisms(std::size_t i) const {
      return _automorphisms[i];
    }

    std::vector<ClosureRecord> const& closures() const noexcept {
      return _closures;
    }
    // No closure rule was cut short by a cap.
    bool fully_closed() const;

    // π_u^* : G ⇝ u/G for each object u of the base, or UNDEFINED if the
    // coslice is not a member (comorphism mode only).
    std::vector<std::size_t> const& coslice_arrows() const noexcept {
      return _coslice_arrows;
    }

    // Members G + 1 and G + 𝒥 with their injections, if present.
    std::optional<std::pair<std::size_t, Coproduct>> const& plus_terminal() const noexcept {
      return _plus_terminal;
    }
    std::optional<std::pair<std::size_t, Coproduct>> const& plus_interval() const noexcept {
      return _plus_interval;
    }

   private:
    friend class UniverseBuilder;
    friend Universe build_universe(GroupoidPtr const&, UniverseMode, UniverseCaps);

    std::size_t key(std::size_t dom, std::size_t cod, std::size_t hash) const;

    UniverseMode                                      _mode = UniverseMode::comorphism;
    UniverseCaps                                      _caps;
    std::vector<GroupoidPtr>                          _groupoids;
    std::vector<std::string>                          _labels;
    std::vector<std::size_t>                          _dom;
    std::vector<std::size_t>                          _cod;
    std::vector<Comorphism>                           _comorphisms;
    std::vector<Functor>                              _functors;
    std::vector<std::vector<std::size_t>>             _from;
    std::unordered_multimap<std::size_t, std::size_t> _lookup;
    std::vector<std::vector<Functor>>                 _automorphisms;
    std::vector<ClosureRecord>                        _closures;
    std::vector<std::size_t>                          _coslice_arrows;
    std::optional<std::pair<std::size_t, Coproduct>>  _plus_terminal;
    std::optional<std::pair<std::size_t, Coproduct>>  _plus_interval;
  };

  // Comorphism mode: the base, its coproducts with the terminal and the
  // interval groupoid, coslices of every member, and (to a fixpoint) the
  // factorization intermediates of arrows out of the base together with
  // the pullbacks of coslice projections along their identity-on-objects
  // legs; the last two are added only if no isomorphic member exists.
  // Functor mode: the base and its two coproducts. Arrows are all
  // comorphisms (functors) between members. Candidates that would break a
  // cap are skipped and recorded in closures().
  Universe build_universe(GroupoidPtr const& base, UniverseMode mode, UniverseCaps caps = {});

  struct FamilySearchOptions {
    std::size_t max_families = 100'000;
    // Shuffles the branching order of the search; results are returned
    // in canonical order regardless.
    std::optional<std::uint64_t> seed_order;
  };

  ////////////////////////////////////////////////////////////////////////
  // Families of automorphisms
  ////////////////////////////////////////////////////////////////////////

  // β_f for every arrow f out of the base, aligned with
  // universe.arrows_from(0). In comorphism mode β_f stands for the
  // comorphism automorphism (β_f)_*.
  struct InnerFamily {
    std::vector<Functor> components;

    bool operator==(InnerFamily const&) const = default;
  };

  // Squares (f, g) with g∘β_f != β_{g∘f}∘g.
  struct NaturalityReport {
    std::vector<std::pair<std::size_t, std::size_t>> violations;

    bool natural() const noexcept {
      return violations.empty();
    }
  };

  InnerFamily identity_family(Universe const& u);
  // β_f = c_{fα} (comorphism mode).
  InnerFamily      conjugation_family(Bisection const& alpha, Universe const& u);
  NaturalityReport check_naturality(InnerFamily const& family, Universe const& u);
  // α_u = β_{π_u^*}(1_u). Throws PreconditionError if a coslice arrow is
  // missing from the universe.
  Bisection extract_bisection(InnerFamily const& family, Universe const& u);
  // Pointwise composite, second after first.
  InnerFamily compose_families(InnerFamily const& second, InnerFamily const& first);
  std::vector<InnerFamily> enumerate_inner_families(Universe const&     u,
                                                    FamilySearchOptions options = {});

  ////////////////////////////////////////////////////////////////////////
  // Partial automorphisms
  ////////////////////////////////////////////////////////////////////////

  // An isomorphism between the full subgroupoids on s(φ) and t(φ), stored
  // on the carrier's identifiers with UNDEFINED outside.
  class PartialAutomorphism {
   public:
    static PartialAutomorphism make(GroupoidPtr                carrier,
                                    std::vector<object_type>   objects,
                                    std::vector<morphism_type> morphisms);
    static PartialAutomorphism identity(GroupoidPtr const& carrier);
    static PartialAutomorphism empty(GroupoidPtr const& carrier);

    GroupoidPtr const& carrier() const noexcept {
      return _g;
    }
    bool defined(object_type u) const {
      return _objects[u] != UNDEFINED;
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
    std::vector<object_type> source_set() const;

    bool operator==(PartialAutomorphism const& that) const;
    bool operator<(PartialAutomorphism const& that) const;

   private:
    PartialAutomorphism(GroupoidPtr g, std::vector<object_type> o, std::vector<morphism_type> m)
        : _g(std::move(g)), _objects(std::move(o)), _morphisms(std::move(m)) {}

    GroupoidPtr                _g;
    std::vector<object_type>   _objects;
    std::vector<morphism_type> _morphisms;
  };

  // All partial automorphisms, sorted.
  std::vector<PartialAutomorphism> enumerate_partial_automorphisms(GroupoidPtr const& g);

  // c_α on the full subgroupoid on s(α): a : u -> v ↦ α_v ∘ a ∘ α_u⁻¹.
  PartialAutomorphism partial_conjugation(PartialBisection const& alpha);
  // ψ∘φ, defined on φ⁻¹(s(ψ) ∩ t(φ)).
  PartialAutomorphism pa_compose(PartialAutomorphism const& psi, PartialAutomorphism const& phi);

  // For f : G ⇝ H, φ on G and ψ on H:
  //   u ∈ s(ψ) iff f(u) ∈ s(φ), and then φ(f(u)) = f(ψ(u));
  //   ψ(f(a)_u) = f(φ(a))_{ψ(u)} for a : f(u) -> v inside s(φ).
  bool check_partial_square(Comorphism const&          f,
                            PartialAutomorphism const& phi,
                            PartialAutomorphism const& psi);

  // Partial counterpart of InnerFamily over a comorphism-mode universe.
  struct PartialFamily {
    std::vector<PartialAutomorphism> components;

    bool operator==(PartialFamily const&) const = default;
  };

  PartialFamily    partial_conjugation_family(PartialBisection const& alpha, Universe const& u);
  NaturalityReport check_partial_naturality(PartialFamily const& family, Universe const& u);
  PartialBisection extract_partial_bisection(PartialFamily const& family, Universe const& u);
  PartialFamily    compose_partial_families(PartialFamily const& second, PartialFamily const& first);
  std::vector<PartialFamily> enumerate_partial_families(Universe const&     u,
                                                        FamilySearchOptions options = {});

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  struct UniverseStats {
    std::size_t                groupoids        = 0;
    std::size_t                arrows           = 0;
    std::size_t                arrows_from_base = 0;
    bool                       fully_closed     = false;
    std::vector<ClosureRecord> closures;
  };

  UniverseStats universe_stats(Universe const& u);

  struct Theorem1Report {
    UniverseStats universe;
    std::size_t   families = 0;
    std::size_t   expected = 0;  // |Bis(G)|
    bool          conjugation_natural = false;
    bool          extraction_inverts  = false;
    bool          group_isomorphic    = false;
    // Extracted bisection of each family, in family order.
    std::vector<Bisection> bisections;
    bool                   pass = false;
  };

  Theorem1Report verify_theorem1(GroupoidPtr const&  g,
                                 UniverseCaps        caps    = {},
                                 FamilySearchOptions options = {});

  struct Prop1Report {
    UniverseStats universe;
    std::size_t   families = 0;
    // Every natural family has β_ι fixing ⋆ in G + 1 and β_ȷ fixing the
    // generic arrow in G + 𝒥.
    bool fixes_star          = false;
    bool fixes_generic_arrow = false;
    bool identity_only       = false;
    bool pass                = false;
  };

  Prop1Report verify_prop1(GroupoidPtr const&  g,
                           UniverseCaps        caps    = {},
                           FamilySearchOptions options = {});

  struct PartialReport {
    UniverseStats universe;
    std::size_t   families = 0;
    std::size_t   expected = 0;  // |PBis(G)|
    bool          conjugation_natural = false;
    bool          extraction_inverts  = false;
    bool          monoid_isomorphic   = false;
    std::vector<PartialBisection> partial_bisections;
    bool                          pass = false;
  };

  PartialReport verify_partial(GroupoidPtr const&  g,
                               UniverseCaps        caps    = {},
                               FamilySearchOptions options = {});

}  // namespace grpd

#endif  // GRPD_HARNESS_HPP
