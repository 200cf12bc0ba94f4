#ifndef GRPD_CSP_HPP
#define GRPD_CSP_HPP

#include <cstddef>
#include <vector>

namespace grpd {

  // A binary constraint satisfaction problem over finite domains
  // {0, ..., size - 1}. Relations are shared tables so that many
  // constraints can point at the same one.
  class BinaryCsp {
   public:
    explicit BinaryCsp(std::vector<std::size_t> domain_sizes);

    std::size_t number_of_variables() const noexcept {
      return _sizes.size();
    }

    // Removes every value of `var` for which keep(value) is false.
    template <typename Pred>
    void restrict(std::size_t var, Pred&& keep) {
      for (std::size_t x = 0; x < _sizes[var]; ++x) {
        if (_initial[var][x] && !keep(x)) {
          _initial[var][x] = false;
        }
      }
    }

    // allowed[i * cols + j] says whether (i, j) is permitted.
    std::size_t add_relation(std::size_t rows, std::size_t cols, std::vector<char> allowed);

    // Requires (value of x, value of y) to lie in the relation.
    void add_constraint(std::size_t x, std::size_t y, std::size_t relation);

    // All solutions, searched with arc consistency followed by
    // forward checking. Variables are branched on by smallest remaining
    // domain, ties broken by position in `order` (identity if empty).
    // Throws CapExceeded past max_solutions.
    std::vector<std::vector<std::size_t>> solve(std::size_t                     max_solutions,
                                                std::vector<std::size_t> const& order = {});

   private:
    struct Relation {
      std::size_t       rows;
      std::size_t       cols;
      std::vector<char> allowed;

      bool ok(std::size_t i, std::size_t j) const {
        return allowed[i * cols + j];
      }
    };

    struct Arc {
      std::size_t other;
      std::size_t relation;
      bool        forward;  // this variable is the row of the relation
    };

    bool supported(std::size_t x, Arc const& arc, std::vector<std::vector<char>> const& dom) const;

    std::vector<std::size_t>       _sizes;
    std::vector<std::vector<char>> _initial;
    std::vector<Relation>          _relations;
    std::vector<std::vector<Arc>>  _arcs;
  };

}  // namespace grpd

#endif  // GRPD_CSP_HPP
