#include "grpd/group.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "grpd/types.hpp"

namespace grpd {

  namespace {
    using element_type = FiniteGroup::element_type;

    std::uint32_t id32(std::size_t x) {
      return static_cast<std::uint32_t>(x);
    }

    // Closure of `gens` under multiplication, as a membership vector.
    std::vector<char> generated_subgroup(FiniteGroup const&               g,
                                         std::vector<element_type> const& gens) {
      std::vector<char>         in(g.size(), 0);
      std::vector<element_type> queue = {g.identity()};
      in[g.identity()]                = 1;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto s : gens) {
          auto x = g.multiply(queue[i], s);
          if (!in[x]) {
            in[x] = 1;
            queue.push_back(x);
          }
        }
      }
      return in;
    }
  }  // namespace

  FiniteGroup
  FiniteGroup::from_table(std::vector<std::vector<element_type>> const& table) {
    FiniteGroup g;
    g._size = table.size();
    auto n  = g._size;
    if (n == 0) {
      throw LawViolation("group identity", {}, "a group has at least one element");
    }
    g._table.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) {
        throw LawViolation("table shape", {id32(a)}, "row has the wrong length");
      }
      for (auto x : table[a]) {
        if (x >= n) {
          throw LawViolation("table shape", {id32(a)}, "entry out of range");
        }
        g._table.push_back(x);
      }
    }
    auto e = n;
    for (std::size_t a = 0; a < n && e == n; ++a) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        ok = g.multiply(a, x) == x && g.multiply(x, a) == x;
      }
      if (ok) {
        e = a;
      }
    }
    if (e == n) {
      throw LawViolation("group identity", {}, "no two-sided identity");
    }
    g._identity = e;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) {
            throw LawViolation("associativity",
                               {id32(a), id32(b), id32(c)},
                               "(ab)c != a(bc)");
          }
        }
      }
    }
    g._inverse.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (g.multiply(a, b) == e && g.multiply(b, a) == e) {
          g._inverse[a] = b;
          break;
        }
      }
      if (g._inverse[a] == n) {
        throw LawViolation("inverse law", {id32(a)}, "element has no inverse");
      }
    }
    return g;
  }

  std::vector<std::vector<element_type>> FiniteGroup::table() const {
    std::vector<std::vector<element_type>> out(_size);
    for (std::size_t a = 0; a < _size; ++a) {
      out[a].assign(_table.begin() + a * _size, _table.begin() + (a + 1) * _size);
    }
    return out;
  }

  FiniteGroup trivial_group() {
    return cyclic_group(1);
  }

  FiniteGroup cyclic_group(std::size_t n) {
    std::vector<std::vector<element_type>> t(n, std::vector<element_type>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        t[a][b] = (a + b) % n;
      }
    }
    return FiniteGroup::from_table(t);
  }

  FiniteGroup dihedral_group(std::size_t n) {
    // r^i s^j is stored as i + n*j.
    auto                                   size = 2 * n;
    std::vector<std::vector<element_type>> t(size, std::vector<element_type>(size));
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        auto i = x % n, j = x / n, k = y % n, l = y / n;
        // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
        auto rot = j == 0 ? (i + k) % n : (i + n - k) % n;
        t[x][y]  = rot + n * ((j + l) % 2);
      }
    }
    return FiniteGroup::from_table(t);
  }

  FiniteGroup quaternion_group() {
    // Elements: 0=1, 1=i, 2=j, 3=k, 4..7 their negatives.
    struct Signed {
      std::size_t unit;
      bool        negative;
    };
    static constexpr Signed units[4][4] = {
        {{0, false}, {1, false}, {2, false}, {3, false}},
        {{1, false}, {0, true}, {3, false}, {2, true}},
        {{2, false}, {3, true}, {0, true}, {1, false}},
        {{3, false}, {2, false}, {1, true}, {0, true}}};
    std::vector<std::vector<element_type>> t(8, std::vector<element_type>(8));
    for (std::size_t x = 0; x < 8; ++x) {
      for (std::size_t y = 0; y < 8; ++y) {
        auto p   = units[x % 4][y % 4];
        bool neg = p.negative ^ (x >= 4) ^ (y >= 4);
        t[x][y]  = p.unit + (neg ? 4 : 0);
      }
    }
    return FiniteGroup::from_table(t);
  }

  FiniteGroup direct_product(FiniteGroup const& g, FiniteGroup const& h) {
    auto                                   n = g.size() * h.size();
    std::vector<std::vector<element_type>> t(n, std::vector<element_type>(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x][y] = g.multiply(x / h.size(), y / h.size()) * h.size()
                  + h.multiply(x % h.size(), y % h.size());
      }
    }
    return FiniteGroup::from_table(t);
  }

  std::vector<FiniteGroup> small_groups() {
    auto z2 = cyclic_group(2);
    return {trivial_group(),
            cyclic_group(2),
            cyclic_group(3),
            cyclic_group(4),
            direct_product(z2, z2),
            cyclic_group(5),
            cyclic_group(6),
            dihedral_group(3),
            cyclic_group(7),
            cyclic_group(8),
            direct_product(cyclic_group(4), z2),
            direct_product(direct_product(z2, z2), z2),
            dihedral_group(4),
            quaternion_group()};
  }

  std::vector<element_type> generators(FiniteGroup const& g) {
    std::vector<element_type> gens;
    auto                      in = generated_subgroup(g, gens);
    for (element_type x = 0; x < g.size(); ++x) {
      if (!in[x]) {
        gens.push_back(x);
        in = generated_subgroup(g, gens);
      }
    }
    return gens;
  }

  bool is_homomorphism(FiniteGroup const&               from,
                       FiniteGroup const&               to,
                       std::vector<element_type> const& images) {
    if (images.size() != from.size()) {
      return false;
    }
    for (auto x : images) {
      if (x >= to.size()) {
        return false;
      }
    }
    for (element_type a = 0; a < from.size(); ++a) {
      for (element_type b = 0; b < from.size(); ++b) {
        if (images[from.multiply(a, b)] != to.multiply(images[a], images[b])) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {
    // Extends an assignment of generator images to the whole group by
    // breadth-first search over words; returns false on an inconsistency.
    bool extend_from_generators(FiniteGroup const&               from,
                                FiniteGroup const&               to,
                                std::vector<element_type> const& gens,
                                std::vector<element_type> const& gen_images,
                                std::vector<element_type>&       images) {
      auto const none = from.size() + to.size();
      images.assign(from.size(), none);
      images[from.identity()]         = to.identity();
      std::vector<element_type> queue = {from.identity()};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        auto x = queue[i];
        for (std::size_t k = 0; k < gens.size(); ++k) {
          auto y  = from.multiply(x, gens[k]);
          auto fy = to.multiply(images[x], gen_images[k]);
          if (images[y] == none) {
            images[y] = fy;
            queue.push_back(y);
          } else if (images[y] != fy) {
            return false;
          }
        }
      }
      return is_homomorphism(from, to, images);
    }

    void homs_backtrack(FiniteGroup const&                      from,
                        FiniteGroup const&                      to,
                        std::vector<element_type> const&        gens,
                        std::vector<element_type>&              gen_images,
                        std::vector<std::vector<element_type>>& out) {
      if (gen_images.size() == gens.size()) {
        std::vector<element_type> images;
        if (extend_from_generators(from, to, gens, gen_images, images)) {
          out.push_back(std::move(images));
        }
        return;
      }
      for (element_type y = 0; y < to.size(); ++y) {
        gen_images.push_back(y);
        homs_backtrack(from, to, gens, gen_images, out);
        gen_images.pop_back();
      }
    }
  }  // namespace

  std::vector<std::vector<element_type>>
  enumerate_homomorphisms(FiniteGroup const& from, FiniteGroup const& to) {
    auto                                   gens = generators(from);
    std::vector<element_type>              gen_images;
    std::vector<std::vector<element_type>> out;
    homs_backtrack(from, to, gens, gen_images, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::vector<element_type>>
  find_isomorphism(FiniteGroup const& from, FiniteGroup const& to) {
    if (from.size() != to.size()) {
      return std::nullopt;
    }
    for (auto& images : enumerate_homomorphisms(from, to)) {
      auto sorted = images;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
        return images;
      }
    }
    return std::nullopt;
  }

}  // namespace grpd
