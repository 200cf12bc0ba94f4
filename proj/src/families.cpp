#include <algorithm>
#include <random>
#include <unordered_map>

#include "grpd/csp.hpp"
#include "grpd/harness.hpp"

namespace grpd {

  namespace {
    // Position of each arrow among the arrows out of the base.
    std::vector<std::size_t> base_positions(Universe const& u) {
      std::vector<std::size_t> pos(u.number_of_arrows(), UNDEFINED);
      auto const&              from = u.arrows_from(0);
      for (std::size_t k = 0; k < from.size(); ++k) {
        pos[from[k]] = k;
      }
      return pos;
    }

    // g∘β = γ∘g for automorphisms β of dom(g) and γ of cod(g).
    class SquareChecker {
     public:
      explicit SquareChecker(Universe const& u) : _u(u) {
        if (u.mode() == UniverseMode::comorphism) {
          _lowered.resize(u.number_of_groupoids());
          for (std::size_t i = 0; i < u.number_of_groupoids(); ++i) {
            for (auto const& a : u.automorphisms(i)) {
              _lowered[i].push_back(lower_star(a));
            }
          }
        }
      }

      bool holds(std::size_t g, Functor const& beta, Functor const& gamma) const {
        if (_u.mode() == UniverseMode::comorphism) {
          auto const& f = _u.comorphism(g);
          return compose(f, lower_star(beta)) == compose(lower_star(gamma), f);
        }
        auto const& f = _u.functor(g);
        return compose(f, beta) == compose(gamma, f);
      }

      // Table over Aut(dom g) x Aut(cod g).
      std::vector<char> relation(std::size_t g) const {
        auto const         x = _u.dom(g);
        auto const         y = _u.cod(g);
        auto const&        ax = _u.automorphisms(x);
        auto const&        ay = _u.automorphisms(y);
        std::vector<char>  table(ax.size() * ay.size());
        if (_u.mode() == UniverseMode::comorphism) {
          auto const&             f = _u.comorphism(g);
          std::vector<Comorphism> left, right;
          for (auto const& b : _lowered[x]) {
            left.push_back(compose(f, b));
          }
          for (auto const& c : _lowered[y]) {
            right.push_back(compose(c, f));
          }
          for (std::size_t i = 0; i < left.size(); ++i) {
            for (std::size_t j = 0; j < right.size(); ++j) {
              table[i * ay.size() + j] = left[i] == right[j];
            }
          }
        } else {
          auto const&          f = _u.functor(g);
          std::vector<Functor> left, right;
          for (auto const& b : ax) {
            left.push_back(compose(f, b));
          }
          for (auto const& c : ay) {
            right.push_back(compose(c, f));
          }
          for (std::size_t i = 0; i < left.size(); ++i) {
            for (std::size_t j = 0; j < right.size(); ++j) {
              table[i * ay.size() + j] = left[i] == right[j];
            }
          }
        }
        return table;
      }

     private:
      Universe const&                      _u;
      std::vector<std::vector<Comorphism>> _lowered;
    };

    std::vector<std::size_t> variable_order(std::size_t n, std::optional<std::uint64_t> seed) {
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
      }
      if (seed) {
        // Fisher-Yates with raw engine output, so that the order is the
        // same on every standard library.
        std::mt19937_64 rng(*seed);
        for (std::size_t i = n; i > 1; --i) {
          std::swap(order[i - 1], order[rng() % i]);
        }
      }
      return order;
    }
  }  // namespace

  InnerFamily identity_family(Universe const& u) {
    InnerFamily fam;
    for (auto f : u.arrows_from(0)) {
      fam.components.push_back(Functor::identity(u.groupoid(u.cod(f))));
    }
    return fam;
  }

  InnerFamily conjugation_family(Bisection const& alpha, Universe const& u) {
    if (u.mode() != UniverseMode::comorphism) {
      throw PreconditionError("conjugation families need a comorphism-mode universe");
    }
    InnerFamily fam;
    for (auto f : u.arrows_from(0)) {
      fam.components.push_back(conjugation(pushforward(u.comorphism(f), alpha)));
    }
    return fam;
  }

  NaturalityReport check_naturality(InnerFamily const& family, Universe const& u) {
    auto const& from = u.arrows_from(0);
    if (family.components.size() != from.size()) {
      throw PreconditionError("family does not match the universe");
    }
    auto const       pos = base_positions(u);
    SquareChecker    squares(u);
    NaturalityReport report;
    for (std::size_t k = 0; k < from.size(); ++k) {
      auto f = from[k];
      for (auto g : u.arrows_from(u.cod(f))) {
        auto h = u.compose(g, f);
        if (!squares.holds(g, family.components[k], family.components[pos[h]])) {
          report.violations.emplace_back(f, g);
        }
      }
    }
    return report;
  }

  Bisection extract_bisection(InnerFamily const& family, Universe const& u) {
    auto const  pos  = base_positions(u);
    auto const& base = u.groupoid(0);
    std::vector<morphism_type> components;
    for (object_type x = 0; x < base->number_of_objects(); ++x) {
      auto arrow = u.coslice_arrows().at(x);
      if (arrow == UNDEFINED) {
        throw PreconditionError("universe lacks the coslice arrow at " + std::to_string(x));
      }
      auto const& beta = family.components.at(pos[arrow]);
      auto        c    = coslice(base, x);
      auto        one  = c.object_of(base->identity(x));
      components.push_back(c.objects[beta.object(one)]);
    }
    return Bisection::make(base, std::move(components));
  }

  InnerFamily compose_families(InnerFamily const& second, InnerFamily const& first) {
    if (second.components.size() != first.components.size()) {
      throw PreconditionError("families over different universes");
    }
    InnerFamily fam;
    for (std::size_t k = 0; k < first.components.size(); ++k) {
      fam.components.push_back(compose(second.components[k], first.components[k]));
    }
    return fam;
  }

  std::vector<InnerFamily> enumerate_inner_families(Universe const& u, FamilySearchOptions options) {
    auto const& from = u.arrows_from(0);
    auto const  pos  = base_positions(u);

    std::vector<std::size_t> sizes;
    for (auto f : from) {
      sizes.push_back(u.automorphisms(u.cod(f)).size());
    }
    BinaryCsp     csp(sizes);
    SquareChecker squares(u);
    std::unordered_map<std::size_t, std::size_t> relations;
    for (std::size_t k = 0; k < from.size(); ++k) {
      auto f = from[k];
      for (auto g : u.arrows_from(u.cod(f))) {
        auto it = relations.find(g);
        if (it == relations.end()) {
          auto rows = u.automorphisms(u.dom(g)).size();
          auto cols = u.automorphisms(u.cod(g)).size();
          it        = relations.emplace(g, csp.add_relation(rows, cols, squares.relation(g))).first;
        }
        csp.add_constraint(k, pos[u.compose(g, f)], it->second);
      }
    }
    auto solutions = csp.solve(options.max_families, variable_order(from.size(), options.seed_order));

    std::vector<InnerFamily> out;
    for (auto const& s : solutions) {
      InnerFamily fam;
      for (std::size_t k = 0; k < from.size(); ++k) {
        fam.components.push_back(u.automorphisms(u.cod(from[k]))[s[k]]);
      }
      out.push_back(std::move(fam));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Partial families
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::uint64_t source_mask(PartialAutomorphism const& phi) {
      std::uint64_t m = 0;
      for (object_type x = 0; x < phi.object_map().size(); ++x) {
        if (phi.defined(x)) {
          m |= std::uint64_t(1) << x;
        }
      }
      return m;
    }
  }  // namespace

  PartialFamily partial_conjugation_family(PartialBisection const& alpha, Universe const& u) {
    if (u.mode() != UniverseMode::comorphism) {
      throw PreconditionError("partial families need a comorphism-mode universe");
    }
    PartialFamily fam;
    for (auto f : u.arrows_from(0)) {
      fam.components.push_back(partial_conjugation(pushforward(u.comorphism(f), alpha)));
    }
    return fam;
  }

  NaturalityReport check_partial_naturality(PartialFamily const& family, Universe const& u) {
    auto const& from = u.arrows_from(0);
    if (family.components.size() != from.size()) {
      throw PreconditionError("family does not match the universe");
    }
    auto const       pos = base_positions(u);
    NaturalityReport report;
    for (std::size_t k = 0; k < from.size(); ++k) {
      auto f = from[k];
      for (auto g : u.arrows_from(u.cod(f))) {
        auto h = u.compose(g, f);
        if (!check_partial_square(u.comorphism(g), family.components[k], family.components[pos[h]])) {
          report.violations.emplace_back(f, g);
        }
      }
    }
    return report;
  }

  PartialBisection extract_partial_bisection(PartialFamily const& family, Universe const& u) {
    auto const  pos  = base_positions(u);
    auto const& base = u.groupoid(0);
    std::vector<morphism_type> components;
    for (object_type x = 0; x < base->number_of_objects(); ++x) {
      auto arrow = u.coslice_arrows().at(x);
      if (arrow == UNDEFINED) {
        throw PreconditionError("universe lacks the coslice arrow at " + std::to_string(x));
      }
      auto const& phi = family.components.at(pos[arrow]);
      auto        c   = coslice(base, x);
      auto        one = c.object_of(base->identity(x));
      components.push_back(phi.defined(one) ? c.objects[phi.object(one)] : UNDEFINED);
    }
    return PartialBisection::make(base, std::move(components));
  }

  PartialFamily compose_partial_families(PartialFamily const& second, PartialFamily const& first) {
    if (second.components.size() != first.components.size()) {
      throw PreconditionError("families over different universes");
    }
    PartialFamily fam;
    for (std::size_t k = 0; k < first.components.size(); ++k) {
      fam.components.push_back(pa_compose(second.components[k], first.components[k]));
    }
    return fam;
  }

  std::vector<PartialFamily> enumerate_partial_families(Universe const& u, FamilySearchOptions options) {
    if (u.mode() != UniverseMode::comorphism) {
      throw PreconditionError("partial families need a comorphism-mode universe");
    }
    auto const& from = u.arrows_from(0);
    auto const  pos  = base_positions(u);
    auto const  n    = u.number_of_groupoids();

    std::vector<std::vector<PartialAutomorphism>> autos(n);
    // Partial automorphisms of each member bucketed by source set.
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::size_t>>> buckets(n);
    for (std::size_t i = 0; i < n; ++i) {
      autos[i] = enumerate_partial_automorphisms(u.groupoid(i));
      for (std::size_t j = 0; j < autos[i].size(); ++j) {
        buckets[i][source_mask(autos[i][j])].push_back(j);
      }
    }

    std::vector<std::size_t> sizes;
    for (auto f : from) {
      sizes.push_back(autos[u.cod(f)].size());
    }
    BinaryCsp csp(sizes);
    std::unordered_map<std::size_t, std::size_t> relations;
    auto relation = [&](std::size_t g) {
      auto const&       f    = u.comorphism(g);
      auto const        x    = u.dom(g);
      auto const        y    = u.cod(g);
      auto const        cols = autos[y].size();
      std::vector<char> table(autos[x].size() * cols);
      for (std::size_t i = 0; i < autos[x].size(); ++i) {
        auto const&   phi  = autos[x][i];
        std::uint64_t need = 0;
        for (object_type v = 0; v < f.object_map().size(); ++v) {
          if (phi.defined(f.object(v))) {
            need |= std::uint64_t(1) << v;
          }
        }
        auto it = buckets[y].find(need);
        if (it == buckets[y].end()) {
          continue;
        }
        for (auto j : it->second) {
          table[i * cols + j] = check_partial_square(f, phi, autos[y][j]);
        }
      }
      return csp.add_relation(autos[x].size(), cols, std::move(table));
    };
    for (std::size_t k = 0; k < from.size(); ++k) {
      auto f = from[k];
      for (auto g : u.arrows_from(u.cod(f))) {
        auto it = relations.find(g);
        if (it == relations.end()) {
          it = relations.emplace(g, relation(g)).first;
        }
        csp.add_constraint(k, pos[u.compose(g, f)], it->second);
      }
    }
    auto solutions = csp.solve(options.max_families, variable_order(from.size(), options.seed_order));

    std::vector<PartialFamily> out;
    for (auto const& s : solutions) {
      PartialFamily fam;
      for (std::size_t k = 0; k < from.size(); ++k) {
        fam.components.push_back(autos[u.cod(from[k])][s[k]]);
      }
      out.push_back(std::move(fam));
    }
    return out;
  }

}  // namespace grpd
