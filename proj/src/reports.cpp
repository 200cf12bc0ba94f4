#include <algorithm>

#include "grpd/harness.hpp"

namespace grpd {

  namespace {
    template <typename T>
    std::size_t position(std::vector<T> const& xs, T const& x) {
      auto it = std::find(xs.begin(), xs.end(), x);
      return it == xs.end() ? UNDEFINED : static_cast<std::size_t>(it - xs.begin());
    }
  }  // namespace

  Theorem1Report verify_theorem1(GroupoidPtr const& g, UniverseCaps caps, FamilySearchOptions options) {
    Theorem1Report r;
    auto           u = build_universe(g, UniverseMode::comorphism, caps);
    r.universe       = universe_stats(u);
    auto families    = enumerate_inner_families(u, options);
    auto bis         = enumerate_bisections(u.groupoid(0));
    r.families       = families.size();
    r.expected       = bis.size();

    r.conjugation_natural = std::all_of(bis.begin(), bis.end(), [&](auto const& alpha) {
      return check_naturality(conjugation_family(alpha, u), u).natural();
    });

    try {
      bool ok = true;
      for (auto const& alpha : bis) {
        ok = ok && extract_bisection(conjugation_family(alpha, u), u) == alpha;
      }
      for (auto const& fam : families) {
        auto alpha = extract_bisection(fam, u);
        r.bisections.push_back(alpha);
        ok = ok && conjugation_family(alpha, u) == fam;
      }
      r.extraction_inverts = ok;
    } catch (Error const&) {
      r.extraction_inverts = false;
    }

    if (r.extraction_inverts && r.families == r.expected) {
      auto sorted = r.bisections;
      std::sort(sorted.begin(), sorted.end());
      bool ok = sorted == bis;
      for (std::size_t i = 0; ok && i < families.size(); ++i) {
        for (std::size_t j = 0; ok && j < families.size(); ++j) {
          auto k = position(families, compose_families(families[i], families[j]));
          ok     = k != UNDEFINED && r.bisections[k] == multiply(r.bisections[i], r.bisections[j]);
        }
      }
      r.group_isomorphic = ok;
    }
    r.pass = r.families == r.expected && r.conjugation_natural && r.extraction_inverts
             && r.group_isomorphic;
    return r;
  }

  Prop1Report verify_prop1(GroupoidPtr const& g, UniverseCaps caps, FamilySearchOptions options) {
    Prop1Report r;
    auto        u = build_universe(g, UniverseMode::functor, caps);
    r.universe    = universe_stats(u);
    auto families = enumerate_inner_families(u, options);
    r.families    = families.size();

    auto const& from = u.arrows_from(0);
    if (u.plus_terminal()) {
      auto const& [i, c] = *u.plus_terminal();
      auto iota          = u.find(c.left);
      auto star          = c.right.object(0);
      r.fixes_star       = iota.has_value();
      for (auto const& fam : families) {
        if (iota) {
          auto k       = position(from, *iota);
          r.fixes_star = r.fixes_star && fam.components[k].object(star) == star;
        }
      }
    }
    if (u.plus_interval()) {
      auto const& [i, c]    = *u.plus_interval();
      auto jota             = u.find(c.left);
      auto arrow            = c.right.morphism(INTERVAL_ARROW);
      r.fixes_generic_arrow = jota.has_value();
      for (auto const& fam : families) {
        if (jota) {
          auto k                = position(from, *jota);
          r.fixes_generic_arrow = r.fixes_generic_arrow && fam.components[k].morphism(arrow) == arrow;
        }
      }
    }
    r.identity_only = r.families == 1 && families.front() == identity_family(u);
    r.pass          = r.identity_only && r.fixes_star && r.fixes_generic_arrow;
    return r;
  }

  PartialReport verify_partial(GroupoidPtr const& g, UniverseCaps caps, FamilySearchOptions options) {
    PartialReport r;
    auto          u = build_universe(g, UniverseMode::comorphism, caps);
    r.universe      = universe_stats(u);
    auto families   = enumerate_partial_families(u, options);
    auto pbis       = enumerate_partial_bisections(u.groupoid(0));
    r.families      = families.size();
    r.expected      = pbis.size();

    r.conjugation_natural = std::all_of(pbis.begin(), pbis.end(), [&](auto const& alpha) {
      return check_partial_naturality(partial_conjugation_family(alpha, u), u).natural();
    });

    try {
      bool ok = true;
      for (auto const& alpha : pbis) {
        ok = ok && extract_partial_bisection(partial_conjugation_family(alpha, u), u) == alpha;
      }
      for (auto const& fam : families) {
        auto alpha = extract_partial_bisection(fam, u);
        r.partial_bisections.push_back(alpha);
        ok = ok && partial_conjugation_family(alpha, u) == fam;
      }
      r.extraction_inverts = ok;
    } catch (Error const&) {
      r.extraction_inverts = false;
    }

    if (r.extraction_inverts && r.families == r.expected) {
      auto sorted = r.partial_bisections;
      std::sort(sorted.begin(), sorted.end());
      bool ok = sorted == pbis;
      for (std::size_t i = 0; ok && i < families.size(); ++i) {
        for (std::size_t j = 0; ok && j < families.size(); ++j) {
          auto k = position(families, compose_partial_families(families[i], families[j]));
          ok     = k != UNDEFINED
               && r.partial_bisections[k]
                      == multiply(r.partial_bisections[i], r.partial_bisections[j]);
        }
      }
      r.monoid_isomorphic = ok;
    }
    r.pass = r.families == r.expected && r.conjugation_natural && r.extraction_inverts
             && r.monoid_isomorphic;
    return r;
  }

}  // namespace grpd
