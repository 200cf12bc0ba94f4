// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any criterion fails or overruns its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "grpd/bisection.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/group.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/harness.hpp"
#include "grpd/pseudogroup.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {
  // Collects the first few failures of a criterion.
  struct Check {
    std::size_t        checked = 0;
    std::size_t        failed  = 0;
    std::ostringstream notes;

    void operator()(bool ok, std::string const& what) {
      ++checked;
      if (!ok && failed++ < 3) {
        notes << " [" << what << "]";
      }
    }
  };

  struct Criterion {
    int                               number;
    char const*                       title;
    double                            budget_seconds;
    std::function<void(Check&)>       body;
  };

  ////////////////////////////////////////////////////////////////////////
  // 1. groupoid and functor laws
  ////////////////////////////////////////////////////////////////////////

  void laws(Check& check) {
    for (auto const& [name, g] : oracle::corpus()) {
      check(!oracle::broken_law(g->tables()).has_value(), name + " breaks a law");
      bool valid = true;
      try {
        FiniteGroupoid::validate(g->tables());
      } catch (LawViolation const&) {
        valid = false;
      }
      check(valid, name + " rejected");
    }
    auto small = oracle::corpus_up_to(3);
    for (auto const& [gn, g] : small) {
      for (auto const& [hn, h] : small) {
        auto expected = oracle::count_functors(g, h, 2'000'000);
        if (!expected) {
          continue;
        }
        auto fs = enumerate_functors(g, h);
        check(fs.size() == *expected, "functor count " + gn + " -> " + hn);
        for (auto const& f : fs) {
          check(oracle::is_functor(*g, *h, f.object_map(), f.morphism_map()), "invalid functor " + gn + " -> " + hn);
          check(compose(Functor::identity(h), f) == f && compose(f, Functor::identity(g)) == f, "unit law");
        }
      }
    }
    for (auto const& [name, g] : oracle::corpus_up_to(2)) {
      auto fs = enumerate_functors(g, g);
      for (auto const& a : fs) {
        for (auto const& b : fs) {
          for (auto const& c : fs) {
            check(compose(c, compose(b, a)) == compose(compose(c, b), a), "associativity on " + name);
          }
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 2. factorization and Beck-Chevalley
  ////////////////////////////////////////////////////////////////////////

  void factorization(Check& check) {
    auto small = oracle::corpus_up_to(3);
    for (auto const& [gn, g] : small) {
      for (auto const& [hn, h] : small) {
        auto fs       = enumerate_comorphisms(g, h);
        auto expected = oracle::count_comorphisms(g, h, 2'000'000);
        if (expected) {
          check(fs.size() == *expected, "comorphism count " + gn + " ~> " + hn);
        }
        for (auto const& f : fs) {
          auto fact = factorize(f);
          check(is_discrete_opfibration(fact.to_dom), "left leg " + gn + " ~> " + hn);
          check(is_bijective_on_objects(fact.to_cod), "right leg " + gn + " ~> " + hn);
          check(compose(lower_star(fact.to_cod), upper_star(fact.to_dom)) == f, "recompose " + gn + " ~> " + hn);
          for (object_type u = 0; u < h->number_of_objects(); ++u) {
            auto k = coslice(h, u).projection;
            auto p = pullback(fact.to_cod, k);
            check(check_beck_chevalley(p.right, fact.to_cod, p.left, k), "Beck-Chevalley " + gn + " ~> " + hn);
          }
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 3. bisection counts
  ////////////////////////////////////////////////////////////////////////

  void bisection_counts(Check& check) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto d = std::to_string(n);
      check(enumerate_bisections(discrete(n)).size() == 1, "Bis(discrete(" + d + "))");
      check(oracle::bisections(*discrete(n)).size() == 1, "oracle Bis(discrete(" + d + "))");
      check(enumerate_bisections(indiscrete(n)).size() == oracle::factorial(n), "Bis(indiscrete(" + d + "))");
      check(oracle::bisections(*indiscrete(n)).size() == oracle::factorial(n), "oracle Bis(indiscrete(" + d + "))");
    }
    for (auto const& group : small_groups()) {
      auto b = bisection_group(sigma(group));
      check(b.group.size() == group.size() && find_isomorphism(b.group, group).has_value(),
            "Bis(sigma) of order " + std::to_string(group.size()));
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 4. comorphisms out of ΣH against homomorphisms into Bis
  ////////////////////////////////////////////////////////////////////////

  void adjunction(Check& check) {
    for (std::size_t n = 2; n <= 4; ++n) {
      auto sh = sigma(cyclic_group(n));
      for (auto const& [name, g] : oracle::corpus_up_to(3)) {
        auto what  = "Z" + std::to_string(n) + " / " + name;
        auto bis   = bisection_group(g);
        auto homs  = oracle::count_cyclic_homs(n, bis.group);
        auto brute = oracle::count_comorphisms(sh, g, 20'000'000);
        auto comor = enumerate_comorphisms(sh, g);
        check(brute.has_value() && *brute == homs, "brute count " + what);
        check(comor.size() == homs, "count " + what);
        for (auto const& f : comor) {
          check(adjunction_back(sh, g, adjunction_forward(f)) == f, "round trip " + what);
        }
        for (auto const& phi : enumerate_homomorphisms(cyclic_group(n), bis.group)) {
          std::vector<Bisection> images;
          for (auto x : phi) {
            images.push_back(bis.elements[x]);
          }
          check(adjunction_forward(adjunction_back(sh, g, images)) == images, "reverse round trip " + what);
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 5. PBis is a complete atomic pseudogroup of the right size
  ////////////////////////////////////////////////////////////////////////

  void pseudogroup_laws(Check& check) {
    for (auto const& [name, g] : oracle::corpus()) {
      auto m = pbis_monoid(g);
      try {
        check_inverse_monoid(m.view);
        check_join_distributivity(m);
        check(true, name);
      } catch (LawViolation const& e) {
        check(false, name + ": " + e.law());
      }
      check(m.elements.size() == oracle::partial_bisections(*g).size(), "size of PBis(" + name + ")");
      check(is_complete_atomic(m.view), name + " not complete atomic");
      auto atoms = boolean_atoms(m.view);
      bool match = atoms && atoms->size() == g->number_of_objects();
      for (object_type u = 0; match && u < g->number_of_objects(); ++u) {
        match = std::find(atoms->begin(), atoms->end(), m.singleton(g->identity(u))) != atoms->end();
      }
      check(match, "atoms of " + name);
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      check(enumerate_partial_bisections(discrete(n)).size() == (std::size_t{1} << n), "2^n");
      check(enumerate_partial_bisections(indiscrete(n)).size() == oracle::partial_permutations(n), "partial permutations");
    }
    for (auto const& group : small_groups()) {
      check(enumerate_partial_bisections(sigma(group)).size() == group.size() + 1, "|G| + 1");
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 6. pseudogroup morphisms are the comorphisms
  ////////////////////////////////////////////////////////////////////////

  void full_and_faithful(Check& check) {
    std::vector<oracle::Named> gs = {
        {"discrete(1)", discrete(1)}, {"discrete(2)", discrete(2)}, {"sigma(Z2)", sigma(cyclic_group(2))}};
    for (auto const& [gn, g] : gs) {
      auto mg = pbis_monoid(g);
      for (auto const& [hn, h] : gs) {
        auto what  = gn + " / " + hn;
        auto mh    = pbis_monoid(h);
        auto brute = oracle::pseudogroup_morphisms(oracle::pbis(g), oracle::pbis(h));
        auto comor = oracle::count_comorphisms(g, h, 1'000'000);
        check(comor.has_value() && brute.size() == *comor, "count " + what);
        check(enumerate_pseudogroup_morphisms(mg, mh) == brute, "enumeration " + what);
        for (auto const& f : enumerate_comorphisms(g, h)) {
          check(reconstruct_comorphism(mg, mh, pbis_map(f, mg, mh)) == f, "comorphism round trip " + what);
        }
        for (auto const& phi : brute) {
          check(pbis_map(reconstruct_comorphism(mg, mh, phi), mg, mh) == phi, "map round trip " + what);
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 7-9. families over closed universes
  ////////////////////////////////////////////////////////////////////////

  std::vector<oracle::Named> desk() {
    return {{"discrete(2)", discrete(2)}, {"sigma(Z2)", sigma(cyclic_group(2))}, {"indiscrete(2)", indiscrete(2)}};
  }

  void theorem1(Check& check) {
    for (auto const& [name, g] : desk()) {
      auto r = verify_theorem1(g);
      check(r.universe.fully_closed, name + " universe truncated");
      check(r.families == oracle::bisections(*g).size(), name + " family count");
      check(r.conjugation_natural && r.extraction_inverts && r.group_isomorphic, name + " flags");
      check(r.pass, name);
    }
  }

  void prop1(Check& check) {
    for (auto const& [name, g] : desk()) {
      auto r = verify_prop1(g);
      check(r.families == 1 && r.identity_only, name + " family count");
      check(r.pass, name);
    }
  }

  void partial(Check& check) {
    for (auto const& [name, g] : {oracle::Named{"discrete(2)", discrete(2)},
                                  oracle::Named{"sigma(Z2)", sigma(cyclic_group(2))}}) {
      auto r = verify_partial(g);
      check(r.universe.fully_closed, name + " universe truncated");
      check(r.families == oracle::partial_bisections(*g).size(), name + " family count");
      check(r.monoid_isomorphic, name + " monoid table");
      check(r.pass, name);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // 10. order and compatibility regressions
  ////////////////////////////////////////////////////////////////////////

  void regressions(Check& check) {
    for (auto const& [name, g] : oracle::corpus_up_to(3)) {
      auto all = enumerate_partial_bisections(g);
      if (all.size() > 40) {
        continue;
      }
      for (auto const& a : all) {
        for (auto const& b : all) {
          check(natural_leq(a, b) == oracle::restriction_leq(a.components(), b.components()), "order on " + name);
          check(!compatible(a, b) || agrees_on_common_source(a, b), "compatibility on " + name);
        }
      }
    }
    auto g = indiscrete(2);
    auto a = PartialBisection::singleton(g, 0);  // 0 -> 0
    auto b = PartialBisection::singleton(g, 2);  // 1 -> 0
    check(agrees_on_common_source(a, b) && !compatible(a, b), "pinned witness");
  }
}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "groupoid and functor laws", 10, laws},
      {2, "factorization and Beck-Chevalley", 60, factorization},
      {3, "bisection counts", 10, bisection_counts},
      {4, "comorphisms from sigma(H) vs homomorphisms into Bis", 60, adjunction},
      {5, "pseudogroup laws and counts", 30, pseudogroup_laws},
      {6, "pseudogroup morphisms vs comorphisms", 120, full_and_faithful},
      {7, "comorphism-mode families vs bisections", 600, theorem1},
      {8, "functor-mode families", 600, prop1},
      {9, "partial families vs partial bisections", 600, partial},
      {10, "natural order and compatibility", 10, regressions},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    Check check;
    auto  start = std::chrono::steady_clock::now();
    try {
      c.body(check);
    } catch (std::exception const& e) {
      check(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool   in_time = seconds < c.budget_seconds;
    bool   pass    = check.failed == 0 && check.checked > 0 && in_time;
    failures += !pass;
    char   timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", seconds, c.budget_seconds);
    std::cout << "criterion " << c.number << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << " ("
              << check.checked << " checks, " << timing << ")";
    if (check.failed > 0) {
      std::cout << " " << check.failed << " failed:" << check.notes.str();
    }
    if (!in_time) {
      std::cout << " over budget";
    }
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
