#include <doctest.h>

#include <algorithm>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/group.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/harness.hpp"
#include "grpd/pseudogroup.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {
  std::vector<oracle::Named> desk() {
    return {{"discrete(2)", discrete(2)},
            {"sigma(Z2)", sigma(cyclic_group(2))},
            {"indiscrete(2)", indiscrete(2)},
            {"sigma(Z3)", sigma(cyclic_group(3))}};
  }

  // Every square checked directly on the arrows, without check_naturality.
  bool natural_by_hand(InnerFamily const& fam, Universe const& u) {
    auto const& out = u.arrows_from(0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      auto f = out[k];
      for (auto g : u.arrows_from(u.cod(f))) {
        auto gf = u.compose(g, f);
        auto k2 = static_cast<std::size_t>(std::find(out.begin(), out.end(), gf) - out.begin());
        REQUIRE(k2 < out.size());
        if (u.mode() == UniverseMode::comorphism) {
          auto const& gc = u.comorphism(g);
          if (compose(gc, lower_star(fam.components[k])) != compose(lower_star(fam.components[k2]), gc)) {
            return false;
          }
        } else {
          auto const& gf_ = u.functor(g);
          if (compose(gf_, fam.components[k]) != compose(fam.components[k2], gf_)) {
            return false;
          }
        }
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("universe contents") {
  auto z2 = sigma(cyclic_group(2));
  auto u  = build_universe(z2, UniverseMode::comorphism);
  CHECK(u.fully_closed());
  REQUIRE(u.plus_terminal().has_value());
  REQUIRE(u.plus_interval().has_value());
  CHECK(are_isomorphic(u.groupoid(u.plus_terminal()->first), coproduct(z2, terminal()).sum));
  CHECK(are_isomorphic(u.groupoid(u.plus_interval()->first), coproduct(z2, interval()).sum));
  CHECK(same_groupoid(u.groupoid(0), z2));

  std::vector<std::string> rules;
  for (auto const& c : u.closures()) {
    rules.push_back(c.rule);
  }
  CHECK(rules == std::vector<std::string>{"base", "coslices", "coproducts", "factorizations", "pullbacks"});

  // Coslices of every member are present up to isomorphism.
  for (std::size_t i = 0; i < u.number_of_groupoids(); ++i) {
    auto const& g = u.groupoid(i);
    for (object_type x = 0; x < g->number_of_objects(); ++x) {
      auto s     = coslice(g, x).groupoid;
      bool found = false;
      for (std::size_t j = 0; j < u.number_of_groupoids() && !found; ++j) {
        found = are_isomorphic(s, u.groupoid(j));
      }
      CHECK(found);
    }
  }
  for (object_type x = 0; x < z2->number_of_objects(); ++x) {
    auto a = u.coslice_arrows()[x];
    REQUIRE(a != UNDEFINED);
    CHECK(u.dom(a) == 0);
    CHECK(u.comorphism(a) == upper_star(coslice(z2, x).projection));
  }
}

TEST_CASE("universe arrows are composition closed with identities") {
  for (auto mode : {UniverseMode::comorphism, UniverseMode::functor}) {
    for (auto const& [name, g] : desk()) {
      CAPTURE(name);
      auto u = build_universe(g, mode);
      for (std::size_t i = 0; i < u.number_of_groupoids(); ++i) {
        auto const& gi = u.groupoid(i);
        auto        id = mode == UniverseMode::comorphism ? u.find(Comorphism::identity(gi)) : u.find(Functor::identity(gi));
        CHECK(id.has_value());
      }
      // All comorphisms between members are arrows.
      if (mode == UniverseMode::comorphism && u.number_of_arrows() < 800) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < u.number_of_groupoids(); ++i) {
          for (std::size_t j = 0; j < u.number_of_groupoids(); ++j) {
            total += enumerate_comorphisms(u.groupoid(i), u.groupoid(j)).size();
          }
        }
        CHECK(total == u.number_of_arrows());
      }
      for (std::size_t f = 0; f < u.number_of_arrows(); f += 3) {
        for (auto g2 : u.arrows_from(u.cod(f))) {
          auto gf = u.compose(g2, f);
          CHECK(u.dom(gf) == u.dom(f));
          CHECK(u.cod(gf) == u.cod(g2));
          if (mode == UniverseMode::comorphism) {
            CHECK(u.comorphism(gf) == compose(u.comorphism(g2), u.comorphism(f)));
          } else {
            CHECK(u.functor(gf) == compose(u.functor(g2), u.functor(f)));
          }
        }
      }
    }
  }
}

TEST_CASE("universe construction is deterministic") {
  auto g = indiscrete(2);
  auto a = universe_stats(build_universe(g, UniverseMode::comorphism));
  auto b = universe_stats(build_universe(g, UniverseMode::comorphism));
  CHECK(a.groupoids == b.groupoids);
  CHECK(a.arrows == b.arrows);
  CHECK(a.arrows_from_base == b.arrows_from_base);
  for (std::size_t i = 0; i < a.closures.size(); ++i) {
    CHECK(a.closures[i].added == b.closures[i].added);
    CHECK(a.closures[i].duplicates == b.closures[i].duplicates);
  }
}

TEST_CASE("caps truncate the universe and are reported") {
  UniverseCaps caps;
  caps.max_groupoids = 1;
  auto u = build_universe(sigma(cyclic_group(2)), UniverseMode::comorphism, caps);
  CHECK(u.number_of_groupoids() == 1);
  CHECK_FALSE(u.fully_closed());
  std::size_t capped = 0;
  for (auto const& c : u.closures()) {
    capped += c.capped;
  }
  CHECK(capped > 0);
  CHECK(u.coslice_arrows()[0] == UNDEFINED);
  CHECK_THROWS_AS(extract_bisection(identity_family(u), u), PreconditionError);

  auto report = verify_theorem1(sigma(cyclic_group(2)), caps);
  CHECK_FALSE(report.universe.fully_closed);
  CHECK_FALSE(report.pass);
}

TEST_CASE("conjugation families are natural and multiply like bisections") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto u   = build_universe(g, UniverseMode::comorphism);
    auto bis = enumerate_bisections(g);
    CHECK(conjugation_family(Bisection::identity(g), u) == identity_family(u));
    CHECK(check_naturality(identity_family(u), u).natural());
    std::vector<InnerFamily> fams;
    for (auto const& a : bis) {
      auto fam = conjugation_family(a, u);
      CHECK(check_naturality(fam, u).natural());
      CHECK(natural_by_hand(fam, u));
      auto back = extract_bisection(fam, u);
      CHECK(back == a);
      // β at the identity arrow is c_α.
      auto id = *u.find(Comorphism::identity(g));
      auto k  = std::find(u.arrows_from(0).begin(), u.arrows_from(0).end(), id) - u.arrows_from(0).begin();
      CHECK(fam.components[k] == conjugation(a));
      fams.push_back(fam);
    }
    for (std::size_t i = 0; i < bis.size(); ++i) {
      for (std::size_t j = 0; j < bis.size(); ++j) {
        CHECK(compose_families(fams[j], fams[i]) == conjugation_family(multiply(bis[j], bis[i]), u));
        CHECK((i == j) == (fams[i] == fams[j]));
      }
    }
  }
}

TEST_CASE("mutated families are caught with a witness") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto        u    = build_universe(g, UniverseMode::comorphism);
    auto        base = identity_family(u);
    auto const& out  = u.arrows_from(0);
    std::size_t caught = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      auto const& auts = u.automorphisms(u.cod(out[k]));
      for (std::size_t i = 0; i < std::min<std::size_t>(auts.size(), 4); ++i) {
        auto fam          = base;
        fam.components[k] = auts[i];
        auto report       = check_naturality(fam, u);
        if (k < 6) {
          CHECK(report.natural() == natural_by_hand(fam, u));
        }
        if (!report.natural()) {
          ++caught;
          auto [f, g2] = report.violations.front();
          CHECK(u.dom(f) == 0);
          CHECK(u.dom(g2) == u.cod(f));
        }
      }
    }
    CHECK(caught > 0);
  }
}

TEST_CASE("inner families are exactly the conjugation families") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto u    = build_universe(g, UniverseMode::comorphism);
    auto fams = enumerate_inner_families(u);
    auto bis  = enumerate_bisections(g);
    CHECK(fams.size() == bis.size());
    for (auto const& fam : fams) {
      CHECK(natural_by_hand(fam, u));
      CHECK(conjugation_family(extract_bisection(fam, u), u) == fam);
    }
    for (auto const& a : bis) {
      CHECK(std::find(fams.begin(), fams.end(), conjugation_family(a, u)) != fams.end());
    }
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      CHECK(enumerate_inner_families(u, {.seed_order = seed}) == fams);
    }
  }
  auto u = build_universe(indiscrete(3), UniverseMode::comorphism);
  CHECK_THROWS_AS(enumerate_inner_families(u, {.max_families = 2, .seed_order = std::nullopt}), CapExceeded);
}

TEST_CASE("functor mode admits only the identity family") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto u    = build_universe(g, UniverseMode::functor);
    auto fams = enumerate_inner_families(u);
    REQUIRE(fams.size() == 1);
    CHECK(fams[0] == identity_family(u));
    CHECK(natural_by_hand(fams[0], u));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CHECK(enumerate_inner_families(u, {.seed_order = seed}) == fams);
    }
  }
  // Contrast with the comorphism count.
  auto z2 = sigma(cyclic_group(2));
  CHECK(enumerate_inner_families(build_universe(z2, UniverseMode::comorphism)).size() == 2);
}

TEST_CASE("theorem and proposition reports") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto t = verify_theorem1(g);
    CHECK(t.pass);
    CHECK(t.families == enumerate_bisections(g).size());
    CHECK(t.expected == t.families);
    CHECK(t.conjugation_natural);
    CHECK(t.extraction_inverts);
    CHECK(t.group_isomorphic);
    CHECK(t.bisections == enumerate_bisections(g));

    auto p = verify_prop1(g);
    CHECK(p.pass);
    CHECK(p.families == 1);
    CHECK(p.fixes_star);
    CHECK(p.fixes_generic_arrow);
    CHECK(p.identity_only);
  }
  CHECK(verify_theorem1(indiscrete(3)).families == 6);
}

TEST_CASE("partial automorphisms") {
  CHECK(enumerate_partial_automorphisms(indiscrete(2)).size() == 7);
  CHECK(enumerate_partial_automorphisms(discrete(2)).size() == 7);
  CHECK(enumerate_partial_automorphisms(sigma(cyclic_group(3))).size() == 3);
  auto g = indiscrete(2);
  CHECK(partial_conjugation(PartialBisection::unit(g)) == PartialAutomorphism::identity(g));
  CHECK(partial_conjugation(PartialBisection::bottom(g)) == PartialAutomorphism::empty(g));
  auto all = enumerate_partial_bisections(g);
  REQUIRE(all.size() == 7);
  std::size_t pairs = 0;
  for (auto const& a : all) {
    for (auto const& b : all) {
      CHECK(pa_compose(partial_conjugation(b), partial_conjugation(a)) == partial_conjugation(multiply(b, a)));
      ++pairs;
    }
  }
  CHECK(pairs == 49);
  auto pas = enumerate_partial_automorphisms(g);
  CHECK(std::is_sorted(pas.begin(), pas.end()));
  for (auto const& p : pas) {
    CHECK(pa_compose(PartialAutomorphism::identity(g), p) == p);
    CHECK(pa_compose(p, PartialAutomorphism::empty(g)) == PartialAutomorphism::empty(g));
  }
  // Object 1 is not a morphism identifier of discrete(2)'s sub on {0}.
  CHECK_THROWS_AS(PartialAutomorphism::make(discrete(2), {1, 1}, {1, 1}), LawViolation);
}

TEST_CASE("partial squares") {
  std::vector<GroupoidPtr> gs = {indiscrete(2), sigma(cyclic_group(2)), discrete(2)};
  for (auto const& g : gs) {
    for (auto const& p : enumerate_partial_automorphisms(g)) {
      CHECK(check_partial_square(Comorphism::identity(g), p, p));
    }
  }
  // Conjugations give commuting squares.
  for (auto const& g : gs) {
    for (auto const& h : gs) {
      for (auto const& f : enumerate_comorphisms(g, h)) {
        for (auto const& a : enumerate_partial_bisections(g)) {
          CHECK(check_partial_square(f, partial_conjugation(a), partial_conjugation(pushforward(f, a))));
        }
      }
    }
  }
  // Stacking true squares gives true squares.
  auto g   = indiscrete(2);
  auto h   = sigma(cyclic_group(2));
  auto pg  = enumerate_partial_automorphisms(g);
  auto ph  = enumerate_partial_automorphisms(h);
  for (auto const& f : enumerate_comorphisms(g, h)) {
    for (auto const& e : enumerate_comorphisms(h, g)) {
      for (auto const& phi : pg) {
        for (auto const& psi : ph) {
          if (!check_partial_square(f, phi, psi)) {
            continue;
          }
          for (auto const& chi : pg) {
            if (check_partial_square(e, psi, chi)) {
              CHECK(check_partial_square(compose(e, f), phi, chi));
            }
          }
          for (auto const& phi2 : pg) {
            for (auto const& psi2 : ph) {
              if (check_partial_square(f, phi2, psi2)) {
                CHECK(check_partial_square(f, pa_compose(phi2, phi), pa_compose(psi2, psi)));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("partial families") {
  for (auto const& [name, g] : desk()) {
    CAPTURE(name);
    auto u    = build_universe(g, UniverseMode::comorphism);
    auto fams = enumerate_partial_families(u);
    auto pbis = enumerate_partial_bisections(g);
    CHECK(fams.size() == pbis.size());
    for (auto const& a : pbis) {
      auto fam = partial_conjugation_family(a, u);
      CHECK(check_partial_naturality(fam, u).natural());
      CHECK(extract_partial_bisection(fam, u) == a);
      CHECK(std::find(fams.begin(), fams.end(), fam) != fams.end());
      for (auto const& b : pbis) {
        CHECK(compose_partial_families(partial_conjugation_family(b, u), fam)
              == partial_conjugation_family(multiply(b, a), u));
      }
    }
    CHECK(enumerate_partial_families(u, {.seed_order = 7}) == fams);

    auto r = verify_partial(g);
    CHECK(r.pass);
    CHECK(r.families == pbis.size());
    CHECK(r.monoid_isomorphic);
    CHECK(r.partial_bisections == pbis);
  }
  CHECK(verify_partial(discrete(2)).families == 4);
  CHECK(verify_partial(sigma(cyclic_group(2))).families == 3);
}
