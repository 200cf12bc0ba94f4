#include <functional>

#include "grpd/harness.hpp"

namespace grpd {

  std::optional<std::size_t> Universe::index_of(GroupoidPtr const& g) const {
    for (std::size_t i = 0; i < _groupoids.size(); ++i) {
      if (_groupoids[i] == g) {
        return i;
      }
    }
    for (std::size_t i = 0; i < _groupoids.size(); ++i) {
      if (same_groupoid(_groupoids[i], g)) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Universe::key(std::size_t dom, std::size_t cod, std::size_t hash) const {
    return hash ^ (dom * 0x9e3779b97f4a7c15ULL) ^ (cod * 0xc2b2ae3d27d4eb4fULL);
  }

  std::optional<std::size_t> Universe::find(Comorphism const& f) const {
    if (_mode != UniverseMode::comorphism) {
      return std::nullopt;
    }
    auto d = index_of(f.dom());
    auto c = index_of(f.cod());
    if (!d || !c) {
      return std::nullopt;
    }
    auto [lo, hi] = _lookup.equal_range(key(*d, *c, hash_value(f)));
    for (auto it = lo; it != hi; ++it) {
      auto i = it->second;
      if (_dom[i] == *d && _cod[i] == *c && _comorphisms[i].object_map() == f.object_map()
          && _comorphisms[i].lift_table() == f.lift_table()) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> Universe::find(Functor const& f) const {
    if (_mode != UniverseMode::functor) {
      return std::nullopt;
    }
    auto d = index_of(f.dom());
    auto c = index_of(f.cod());
    if (!d || !c) {
      return std::nullopt;
    }
    auto [lo, hi] = _lookup.equal_range(key(*d, *c, hash_value(f)));
    for (auto it = lo; it != hi; ++it) {
      auto i = it->second;
      if (_dom[i] == *d && _cod[i] == *c && _functors[i].object_map() == f.object_map()
          && _functors[i].morphism_map() == f.morphism_map()) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Universe::compose(std::size_t g, std::size_t f) const {
    if (_cod[f] != _dom[g]) {
      throw PreconditionError("universe arrows are not composable");
    }
    auto i = _mode == UniverseMode::comorphism
                 ? find(grpd::compose(_comorphisms[g], _comorphisms[f]))
                 : find(grpd::compose(_functors[g], _functors[f]));
    if (!i) {
      throw PreconditionError("universe is not closed under composition");
    }
    return *i;
  }

  bool Universe::fully_closed() const {
    for (auto const& c : _closures) {
      if (c.capped != 0) {
        return false;
      }
    }
    return true;
  }

  class UniverseBuilder {
   public:
    UniverseBuilder(UniverseMode mode, UniverseCaps caps) {
      _u._mode = mode;
      _u._caps = caps;
    }

    ClosureRecord& record(std::string const& rule) {
      for (auto& c : _u._closures) {
        if (c.rule == rule) {
          return c;
        }
      }
      _u._closures.push_back({rule});
      return _u._closures.back();
    }

    // Adds g unless it is already present (exactly, or up to isomorphism
    // if `up_to_iso`) or would break a cap. Returns the member index of g
    // or of the existing copy, if any.
    std::optional<std::size_t> add(GroupoidPtr const& g,
                                   std::string const& label,
                                   std::string const& rule,
                                   bool               up_to_iso) {
      auto& rec = record(rule);
      if (auto i = _u.index_of(g)) {
        ++rec.duplicates;
        return i;
      }
      if (up_to_iso) {
        for (auto const& h : _u._groupoids) {
          if (are_isomorphic(g, h)) {
            ++rec.duplicates;
            return std::nullopt;
          }
        }
      }
      auto const& caps = _u._caps;
      if (g->number_of_objects() > caps.max_objects || g->number_of_morphisms() > caps.max_morphisms
          || _u._groupoids.size() == caps.max_groupoids) {
        ++rec.capped;
        return std::nullopt;
      }
      auto const n = _u._groupoids.size();
      if (!add_arrows(g, n)) {
        ++rec.capped;
        return std::nullopt;
      }
      ++rec.added;
      _u._groupoids.push_back(g);
      _u._labels.push_back(label);
      _u._automorphisms.push_back(enumerate_automorphisms(g));
      _u._from.emplace_back();
      return n;
    }

    Universe finish() {
      _u._from.assign(_u._groupoids.size(), {});
      for (std::size_t i = 0; i < _u._dom.size(); ++i) {
        _u._from[_u._dom[i]].push_back(i);
      }
      return std::move(_u);
    }

    Universe& universe() {
      return _u;
    }

   private:
    // Enumerates the arrows between g (to become member n) and the current
    // members; commits them only if they fit under the arrow cap.
    bool add_arrows(GroupoidPtr const& g, std::size_t n) {
      auto const       budget = _u._caps.max_arrows - _u._dom.size();
      std::size_t      used   = 0;
      std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pending;  // dom, cod, count
      std::vector<Comorphism> comorphisms;
      std::vector<Functor>    functors;

      auto collect = [&](GroupoidPtr const& x, std::size_t xi, GroupoidPtr const& y, std::size_t yi) {
        EnumerationCaps caps{budget - used};
        std::size_t     count;
        if (_u._mode == UniverseMode::comorphism) {
          auto arrows = enumerate_comorphisms(x, y, caps);
          count       = arrows.size();
          std::move(arrows.begin(), arrows.end(), std::back_inserter(comorphisms));
        } else {
          auto arrows = enumerate_functors(x, y, caps);
          count       = arrows.size();
          std::move(arrows.begin(), arrows.end(), std::back_inserter(functors));
        }
        used += count;
        pending.emplace_back(xi, yi, count);
      };

      try {
        for (std::size_t i = 0; i < n; ++i) {
          collect(_u._groupoids[i], i, g, n);
          collect(g, n, _u._groupoids[i], i);
        }
        collect(g, n, g, n);
      } catch (CapExceeded const&) {
        return false;
      }

      std::size_t k = 0;
      for (auto [d, c, count] : pending) {
        for (std::size_t j = 0; j < count; ++j, ++k) {
          auto const i = _u._dom.size();
          _u._dom.push_back(d);
          _u._cod.push_back(c);
          std::size_t h;
          if (_u._mode == UniverseMode::comorphism) {
            h = hash_value(comorphisms[k]);
            _u._comorphisms.push_back(std::move(comorphisms[k]));
          } else {
            h = hash_value(functors[k]);
            _u._functors.push_back(std::move(functors[k]));
          }
          _u._lookup.emplace(_u.key(d, c, h), i);
        }
      }
      return true;
    }

    Universe _u;
  };

  Universe build_universe(GroupoidPtr const& base, UniverseMode mode, UniverseCaps caps) {
    UniverseBuilder b(mode, caps);
    auto&           u = b.universe();

    if (!b.add(base, "G", "base", false)) {
      throw CapExceeded("universe base", caps.max_objects, base->number_of_objects());
    }

    auto coslices = [&](std::size_t& done) {
      for (; done < u.number_of_groupoids(); ++done) {
        auto g = u.groupoid(done);
        for (object_type x = 0; x < g->number_of_objects(); ++x) {
          b.add(coslice(g, x).groupoid,
                "coslice of " + u.label(done) + " at " + std::to_string(x),
                "coslices",
                false);
        }
      }
    };

    std::size_t coslices_done = 0;
    if (mode == UniverseMode::comorphism) {
      coslices(coslices_done);
    }

    auto plus_one = coproduct(base, terminal());
    if (auto i = b.add(plus_one.sum, "G+1", "coproducts", false)) {
      u._plus_terminal.emplace(*i, plus_one);
    }
    auto plus_interval = coproduct(base, interval());
    if (auto i = b.add(plus_interval.sum, "G+J", "coproducts", false)) {
      u._plus_interval.emplace(*i, plus_interval);
    }

    if (mode == UniverseMode::comorphism) {
      std::size_t factorized = 0;
      std::size_t count      = 0;
      do {
        count = u.number_of_groupoids();
        coslices(coslices_done);
        // Arrows out of the base, in the order they were added.
        std::vector<std::size_t> base_arrows;
        for (std::size_t i = 0; i < u.number_of_arrows(); ++i) {
          if (u.dom(i) == 0) {
            base_arrows.push_back(i);
          }
        }
        for (; factorized < base_arrows.size(); ++factorized) {
          auto const& f     = u.comorphism(base_arrows[factorized]);
          auto        parts = factorize(f);
          auto        label = "factorization " + std::to_string(factorized);
          b.add(parts.intermediate, label, "factorizations", true);
          auto const& h = parts.to_cod;
          for (object_type x = 0; x < parts.intermediate->number_of_objects(); ++x) {
            auto pi = coslice(h.cod(), h.object(x)).projection;
            b.add(pullback(h, pi).groupoid,
                  label + " pullback at " + std::to_string(x),
                  "pullbacks",
                  true);
          }
        }
      } while (count != u.number_of_groupoids());
    }

    auto result = b.finish();
    if (mode == UniverseMode::comorphism) {
      auto const& g = *base;
      for (object_type x = 0; x < g.number_of_objects(); ++x) {
        auto c = coslice(base, x);
        auto i = result.find(upper_star(c.projection));
        result._coslice_arrows.push_back(i ? *i : UNDEFINED);
      }
    }
    return result;
  }

  UniverseStats universe_stats(Universe const& u) {
    UniverseStats s;
    s.groupoids        = u.number_of_groupoids();
    s.arrows           = u.number_of_arrows();
    s.arrows_from_base = u.number_of_groupoids() == 0 ? 0 : u.arrows_from(0).size();
    s.fully_closed     = u.fully_closed();
    s.closures         = u.closures();
    return s;
  }

}  // namespace grpd
