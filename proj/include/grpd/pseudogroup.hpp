#ifndef GRPD_PSEUDOGROUP_HPP
#define GRPD_PSEUDOGROUP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "grpd/comorphism.hpp"
#include "grpd/functor.hpp"
#include "grpd/types.hpp"

namespace grpd {

  // A partial bisection: components α_u for u in a subset s(α) of the
  // objects, such that u ↦ target(α_u) is injective. Entries outside s(α)
  // are UNDEFINED.
  class PartialBisection {
   public:
    // Throws LawViolation("partial bisection", ...) on a bad component or a
    // repeated target.
    static PartialBisection make(GroupoidPtr g, std::vector<morphism_type> components);

    static PartialBisection unit(GroupoidPtr const& g);
    static PartialBisection bottom(GroupoidPtr const& g);
    // [a], defined only at source(a).
    static PartialBisection singleton(GroupoidPtr const& g, morphism_type a);
    // The unit restricted to `objects`.
    static PartialBisection idempotent_on(GroupoidPtr const&              g,
                                          std::vector<object_type> const& objects);

    GroupoidPtr const& groupoid() const noexcept {
      return _g;
    }
    bool defined(object_type u) const {
      return _components[u] != UNDEFINED;
    }
    morphism_type component(object_type u) const {
      return _components[u];
    }
    // target(α_u), or UNDEFINED outside s(α).
    object_type action(object_type u) const;

    std::vector<object_type> source_set() const;
    std::vector<object_type> target_set() const;
    std::size_t              size() const;

    std::vector<morphism_type> const& components() const noexcept {
      return _components;
    }

    bool operator==(PartialBisection const& that) const;
    bool operator<(PartialBisection const& that) const {
      return _components < that._components;
    }

   private:
    PartialBisection(GroupoidPtr g, std::vector<morphism_type> components)
        : _g(std::move(g)), _components(std::move(components)) {}

    GroupoidPtr                _g;
    std::vector<morphism_type> _components;
  };

  // β·α: defined at u when α_u is and β is defined at target(α_u).
  PartialBisection multiply(PartialBisection const& beta, PartialBisection const& alpha);
  // α*, with (α*)_{target(α_u)} = (α_u)⁻¹.
  PartialBisection star(PartialBisection const& alpha);

  bool is_idempotent(PartialBisection const& alpha);
  // α·β* and β*·α are both idempotent.
  bool compatible(PartialBisection const& alpha, PartialBisection const& beta);
  // α = β·(α*·α).
  bool natural_leq(PartialBisection const& alpha, PartialBisection const& beta);
  // α_u = β_u wherever both are defined.
  bool agrees_on_common_source(PartialBisection const& alpha, PartialBisection const& beta);
  // s(α) ⊆ s(β) and α_u = β_u on s(α).
  bool restricts(PartialBisection const& alpha, PartialBisection const& beta);

  // Least upper bound of a pairwise compatible family; throws
  // LawViolation("compatible join", {i, j}) naming an incompatible pair.
  PartialBisection join(GroupoidPtr const& g, std::vector<PartialBisection> const& family);

  // All partial bisections in lexicographic order of component vectors.
  std::vector<PartialBisection> enumerate_partial_bisections(GroupoidPtr const& g,
                                                             EnumerationCaps    caps = {});

  // (fα)_u = f(α_{f(u)})_u for u with f(u) in s(α).
  PartialBisection pushforward(Comorphism const& f, PartialBisection const& alpha);

  ////////////////////////////////////////////////////////////////////////
  // Abstract inverse monoids
  ////////////////////////////////////////////////////////////////////////

  // A finite monoid on 0, ..., size - 1 with an involution `star`.
  struct InverseMonoidView {
    std::size_t              size = 0;
    std::vector<std::size_t> table;  // table[i * size + j] = i·j
    std::size_t              unit = 0;
    std::vector<std::size_t> star;

    std::size_t multiply(std::size_t i, std::size_t j) const {
      return table[i * size + j];
    }
    bool is_idempotent(std::size_t i) const {
      return multiply(i, i) == i;
    }
    // m ≤ n iff m = n·(m*·m).
    bool natural_leq(std::size_t m, std::size_t n) const {
      return m == multiply(n, multiply(star[m], m));
    }
  };

  // Throws LawViolation naming "associativity", "unit law", "star law" or
  // "star uniqueness".
  void check_inverse_monoid(InverseMonoidView const& m);

  // The atoms of the idempotents under the natural order, provided these
  // idempotents form a Boolean lattice isomorphic to the power set of its
  // atoms; empty otherwise.
  std::optional<std::vector<std::size_t>> boolean_atoms(InverseMonoidView const& m);

  bool is_complete_atomic(InverseMonoidView const& m);

  // PBis(G) with its tables; element i of `view` is elements[i].
  struct PBisMonoid {
    GroupoidPtr                   groupoid;
    std::vector<PartialBisection> elements;
    InverseMonoidView             view;
    std::size_t                   bottom = 0;

    std::size_t index_of(PartialBisection const& alpha) const;
    // Index of [a].
    std::size_t singleton(morphism_type a) const;
    // Join of elements i and j, which must be compatible.
    std::size_t join(std::size_t i, std::size_t j) const;
  };

  PBisMonoid pbis_monoid(GroupoidPtr const& g, std::size_t max_size = 10'000);

  // Checks γ(α ∨ β) = γα ∨ γβ and (α ∨ β)γ = αγ ∨ βγ for every compatible
  // pair; throws LawViolation("join distributivity", {α, β, γ}).
  void check_join_distributivity(PBisMonoid const& m);

  ////////////////////////////////////////////////////////////////////////
  // Pseudogroup morphisms PBis(G) -> PBis(H)
  ////////////////////////////////////////////////////////////////////////

  // A map between materialized monoids: images[i] is the index in the
  // codomain of the image of element i of the domain.
  using PseudogroupMap = std::vector<std::size_t>;

  PseudogroupMap pbis_map(Comorphism const& f, PBisMonoid const& dom, PBisMonoid const& cod);

  // Throws LawViolation naming "unit preservation", "product preservation"
  // or "join preservation" with the offending element indices.
  void check_pseudogroup_morphism(PBisMonoid const&     dom,
                                  PBisMonoid const&     cod,
                                  PseudogroupMap const& phi);

  // The comorphism G ⇝ H whose pbis_map is φ. Checks φ first.
  Comorphism reconstruct_comorphism(PBisMonoid const&     dom,
                                    PBisMonoid const&     cod,
                                    PseudogroupMap const& phi);

  // All unit-, product- and join-preserving maps, found by choosing the
  // images of the singletons [a] and extending by joins. Lexicographic in
  // the singleton images.
  std::vector<PseudogroupMap> enumerate_pseudogroup_morphisms(PBisMonoid const& dom,
                                                              PBisMonoid const& cod,
                                                              EnumerationCaps   caps = {});

}  // namespace grpd

#endif  // GRPD_PSEUDOGROUP_HPP
