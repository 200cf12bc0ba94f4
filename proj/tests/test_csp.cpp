#include <doctest.h>

#include <algorithm>
#include <random>

#include "grpd/csp.hpp"
#include "grpd/types.hpp"

using namespace grpd;

namespace {
  struct Problem {
    std::vector<std::size_t>                              sizes;
    std::vector<std::vector<char>>                        unary;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> constraints;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<char>>> relations;
  };

  Problem random_problem(std::mt19937& rng) {
    Problem p;
    std::size_t n = 1 + rng() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      p.sizes.push_back(1 + rng() % 4);
      std::vector<char> keep(p.sizes.back());
      for (auto& k : keep) {
        k = rng() % 5 != 0;
      }
      p.unary.push_back(keep);
    }
    std::size_t m = rng() % 7;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t x = rng() % n, y = rng() % n;
      std::vector<char> allowed(p.sizes[x] * p.sizes[y]);
      for (auto& a : allowed) {
        a = rng() % 3 != 0;
      }
      p.relations.push_back({{p.sizes[x], p.sizes[y]}, allowed});
      p.constraints.emplace_back(x, y, p.relations.size() - 1);
    }
    return p;
  }

  std::vector<std::vector<std::size_t>> brute(Problem const& p) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t>              v(p.sizes.size(), 0);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < v.size() && ok; ++i) {
        ok = p.unary[i][v[i]];
      }
      for (auto const& [x, y, r] : p.constraints) {
        if (!ok) {
          break;
        }
        auto const& [dims, allowed] = p.relations[r];
        ok                          = allowed[v[x] * dims.second + v[y]];
      }
      if (ok) {
        out.push_back(v);
      }
      std::size_t i = 0;
      while (i < v.size() && ++v[i] == p.sizes[i]) {
        v[i++] = 0;
      }
      if (i == v.size()) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }

  BinaryCsp build(Problem const& p) {
    BinaryCsp csp(p.sizes);
    for (std::size_t i = 0; i < p.sizes.size(); ++i) {
      csp.restrict(i, [&](std::size_t x) { return p.unary[i][x] != 0; });
    }
    std::vector<std::size_t> ids;
    for (auto const& [dims, allowed] : p.relations) {
      ids.push_back(csp.add_relation(dims.first, dims.second, allowed));
    }
    for (auto const& [x, y, r] : p.constraints) {
      csp.add_constraint(x, y, ids[r]);
    }
    return csp;
  }
}  // namespace

TEST_CASE("solver agrees with exhaustive search on random problems") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 400; ++trial) {
    auto p        = random_problem(rng);
    auto expected = brute(p);
    CAPTURE(trial);
    CHECK(build(p).solve(100000) == expected);
    // Any branching order gives the same (sorted) set.
    std::vector<std::size_t> order(p.sizes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = order.size() - 1 - i;
    }
    CHECK(build(p).solve(100000, order) == expected);
  }
}

TEST_CASE("shared relations") {
  // x0 < x1 < x2 over {0,1,2,3}.
  std::vector<char> lt(16, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      lt[i * 4 + j] = 1;
    }
  }
  BinaryCsp csp({4, 4, 4});
  auto r = csp.add_relation(4, 4, lt);
  csp.add_constraint(0, 1, r);
  csp.add_constraint(1, 2, r);
  auto sols = csp.solve(100);
  CHECK(sols.size() == 4);
  CHECK(sols.front() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("edge cases") {
  CHECK(BinaryCsp({}).solve(10) == std::vector<std::vector<std::size_t>>{{}});
  CHECK(BinaryCsp({0}).solve(10).empty());
  BinaryCsp csp({3});
  csp.restrict(0, [](std::size_t x) { return x == 1; });
  CHECK(csp.solve(10) == std::vector<std::vector<std::size_t>>{{1}});
  CHECK_THROWS_AS(BinaryCsp({3, 3}).solve(10, {0}), PreconditionError);
}

TEST_CASE("solution cap") {
  BinaryCsp csp({3, 3, 3});
  CHECK(csp.solve(27).size() == 27);
  try {
    csp.solve(26);
    FAIL("cap not enforced");
  } catch (CapExceeded const& e) {
    CHECK(e.cap() == "solution count");
  }
}
