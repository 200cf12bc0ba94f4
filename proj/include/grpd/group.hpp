#ifndef GRPD_GROUP_HPP
#define GRPD_GROUP_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace grpd {

  // A finite group given by its multiplication table. Elements are
  // 0, ..., size() - 1; `multiply(a, b)` is the product ab.
  class FiniteGroup {
   public:
    using element_type = std::size_t;

    FiniteGroup() = default;

    // Throws LawViolation unless `table` is the Cayley table of a group.
    static FiniteGroup
    from_table(std::vector<std::vector<element_type>> const& table);

    std::size_t size() const noexcept {
      return _size;
    }
    element_type identity() const noexcept {
      return _identity;
    }
    element_type multiply(element_type a, element_type b) const {
      return _table[a * _size + b];
    }
    element_type inverse(element_type a) const {
      return _inverse[a];
    }

    std::vector<std::vector<element_type>> table() const;

    bool operator==(FiniteGroup const&) const = default;

   private:
    std::size_t               _size     = 0;
    element_type              _identity = 0;
    std::vector<element_type> _table;
    std::vector<element_type> _inverse;
  };

  FiniteGroup trivial_group();
  FiniteGroup cyclic_group(std::size_t n);
  FiniteGroup dihedral_group(std::size_t n);  // order 2n
  FiniteGroup quaternion_group();
  FiniteGroup direct_product(FiniteGroup const& g, FiniteGroup const& h);

  // One representative of every isomorphism class of groups of order <= 8.
  std::vector<FiniteGroup> small_groups();

  // Greedy generating set: each element is not in the subgroup generated by
  // the previous ones.
  std::vector<FiniteGroup::element_type> generators(FiniteGroup const& g);

  bool is_homomorphism(FiniteGroup const&                            from,
                       FiniteGroup const&                            to,
                       std::vector<FiniteGroup::element_type> const& images);

  // All homomorphisms `from` -> `to` as image vectors, in lexicographic
  // order.
  std::vector<std::vector<FiniteGroup::element_type>>
  enumerate_homomorphisms(FiniteGroup const& from, FiniteGroup const& to);

  // Backtracking over the images of a generating set.
  std::optional<std::vector<FiniteGroup::element_type>>
  find_isomorphism(FiniteGroup const& from, FiniteGroup const& to);

}  // namespace grpd

#endif  // GRPD_GROUP_HPP
