#include <doctest.h>

#include "grpd/group.hpp"
#include "grpd/types.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {
  void check_group_laws(FiniteGroup const& g) {
    auto const n = g.size();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(g.multiply(g.identity(), a) == a);
      CHECK(g.multiply(a, g.identity()) == a);
      CHECK(g.multiply(a, g.inverse(a)) == g.identity());
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
        }
      }
    }
  }

  bool abelian(FiniteGroup const& g) {
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < g.size(); ++b) {
        if (g.multiply(a, b) != g.multiply(b, a)) {
          return false;
        }
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("standard groups satisfy the group laws") {
  check_group_laws(trivial_group());
  check_group_laws(cyclic_group(5));
  check_group_laws(dihedral_group(4));
  check_group_laws(quaternion_group());
  check_group_laws(direct_product(cyclic_group(2), cyclic_group(3)));
  CHECK(dihedral_group(3).size() == 6);
  CHECK(quaternion_group().size() == 8);
  CHECK_FALSE(abelian(dihedral_group(3)));
  CHECK_FALSE(abelian(quaternion_group()));
}

TEST_CASE("small groups: one per isomorphism class up to order 8") {
  auto groups = small_groups();
  CHECK(groups.size() == 14);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    check_group_laws(groups[i]);
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      if (groups[i].size() == groups[j].size()) {
        CHECK_FALSE(find_isomorphism(groups[i], groups[j]).has_value());
      }
    }
  }
}

TEST_CASE("from_table rejects tables that are not groups") {
  CHECK_THROWS_AS(FiniteGroup::from_table({}), LawViolation);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), LawViolation);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 2}, {1, 0}}), LawViolation);
  try {
    // Left zero semigroup on two elements has no identity.
    FiniteGroup::from_table({{0, 0}, {1, 1}});
    FAIL("accepted a semigroup");
  } catch (LawViolation const& e) {
    CHECK(e.law() == "group identity");
  }
}

TEST_CASE("homomorphism counts from cyclic groups match element orders") {
  for (auto const& k : small_groups()) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(enumerate_homomorphisms(cyclic_group(n), k).size() == oracle::count_cyclic_homs(n, k));
    }
  }
}

TEST_CASE("homomorphisms are homomorphisms and isomorphisms invert") {
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  for (auto const& images : enumerate_homomorphisms(v4, dihedral_group(4))) {
    CHECK(is_homomorphism(v4, dihedral_group(4), images));
  }
  CHECK_FALSE(is_homomorphism(cyclic_group(2), cyclic_group(3), {0, 1}));
  auto iso = find_isomorphism(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6));
  REQUIRE(iso.has_value());
  CHECK(is_homomorphism(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6), *iso));
  CHECK_FALSE(find_isomorphism(cyclic_group(4), v4).has_value());
}
