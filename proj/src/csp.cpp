#include "grpd/csp.hpp"

#include <algorithm>
#include <deque>

#include "grpd/types.hpp"

namespace grpd {

  BinaryCsp::BinaryCsp(std::vector<std::size_t> domain_sizes)
      : _sizes(std::move(domain_sizes)), _initial(), _relations(), _arcs(_sizes.size()) {
    for (auto n : _sizes) {
      _initial.emplace_back(n, true);
    }
  }

  std::size_t BinaryCsp::add_relation(std::size_t rows, std::size_t cols, std::vector<char> allowed) {
    if (allowed.size() != rows * cols) {
      throw PreconditionError("relation table has the wrong size");
    }
    _relations.push_back({rows, cols, std::move(allowed)});
    return _relations.size() - 1;
  }

  void BinaryCsp::add_constraint(std::size_t x, std::size_t y, std::size_t relation) {
    auto const& r = _relations.at(relation);
    if (r.rows != _sizes.at(x) || r.cols != _sizes.at(y)) {
      throw PreconditionError("relation does not match the variable domains");
    }
    if (x == y) {
      restrict(x, [&](std::size_t v) { return r.ok(v, v); });
      return;
    }
    _arcs[x].push_back({y, relation, true});
    _arcs[y].push_back({x, relation, false});
  }

  bool BinaryCsp::supported(std::size_t                           x,
                            Arc const&                            arc,
                            std::vector<std::vector<char>> const& dom) const {
    auto const& r = _relations[arc.relation];
    auto const& d = dom[arc.other];
    for (std::size_t y = 0; y < d.size(); ++y) {
      if (d[y] && (arc.forward ? r.ok(x, y) : r.ok(y, x))) {
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> BinaryCsp::solve(std::size_t                     max_solutions,
                                                         std::vector<std::size_t> const& order) {
    auto const n   = _sizes.size();
    auto       dom = _initial;

    std::vector<std::size_t> rank(n);
    if (order.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        rank[i] = i;
      }
    } else {
      if (order.size() != n) {
        throw PreconditionError("variable order has the wrong length");
      }
      for (std::size_t i = 0; i < n; ++i) {
        rank[order[i]] = i;
      }
    }

    // AC-3.
    std::deque<std::size_t> queue;
    std::vector<char>       queued(n, true);
    for (std::size_t v = 0; v < n; ++v) {
      queue.push_back(v);
    }
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      queued[v] = false;
      for (auto const& arc : _arcs[v]) {
        bool changed = false;
        for (std::size_t x = 0; x < dom[v].size(); ++x) {
          if (dom[v][x] && !supported(x, arc, dom)) {
            dom[v][x] = false;
            changed   = true;
          }
        }
        if (changed) {
          if (std::none_of(dom[v].begin(), dom[v].end(), [](char c) { return c; })) {
            return {};
          }
          for (auto const& back : _arcs[v]) {
            if (!queued[back.other]) {
              queued[back.other] = true;
              queue.push_back(back.other);
            }
          }
          // Re-examine v against its other neighbours as well.
          if (!queued[v]) {
            queued[v] = true;
            queue.push_back(v);
          }
        }
      }
    }

    std::vector<std::size_t>              count(n);
    std::vector<std::size_t>              value(n, UNDEFINED);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < n; ++v) {
      count[v] = std::count(dom[v].begin(), dom[v].end(), char(true));
      if (count[v] == 0) {
        return {};
      }
    }

    // Trail of (variable, value) removals for undo.
    std::vector<std::pair<std::size_t, std::size_t>> trail;

    auto dfs = [&](auto& self, std::size_t assigned) -> void {
      if (assigned == n) {
        if (out.size() == max_solutions) {
          throw CapExceeded("solution count", max_solutions, out.size() + 1);
        }
        out.push_back(value);
        return;
      }
      std::size_t var = UNDEFINED;
      for (std::size_t v = 0; v < n; ++v) {
        if (value[v] == UNDEFINED
            && (var == UNDEFINED || count[v] < count[var]
                || (count[v] == count[var] && rank[v] < rank[var]))) {
          var = v;
        }
      }
      for (std::size_t x = 0; x < dom[var].size(); ++x) {
        if (!dom[var][x]) {
          continue;
        }
        value[var] = x;
        auto mark  = trail.size();
        bool wiped = false;
        for (auto const& arc : _arcs[var]) {
          if (value[arc.other] != UNDEFINED) {
            continue;
          }
          auto const& r = _relations[arc.relation];
          auto&       d = dom[arc.other];
          for (std::size_t y = 0; y < d.size(); ++y) {
            if (d[y] && !(arc.forward ? r.ok(x, y) : r.ok(y, x))) {
              d[y] = false;
              --count[arc.other];
              trail.emplace_back(arc.other, y);
            }
          }
          if (count[arc.other] == 0) {
            wiped = true;
            break;
          }
        }
        if (!wiped) {
          self(self, assigned + 1);
        }
        while (trail.size() > mark) {
          auto [v, y] = trail.back();
          trail.pop_back();
          dom[v][y] = true;
          ++count[v];
        }
        value[var] = UNDEFINED;
      }
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace grpd
