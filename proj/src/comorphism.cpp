#include "grpd/comorphism.hpp"

#include <deque>
#include <string>

#include "grpd/groupoid.hpp"

namespace grpd {

  namespace {
    std::string str(std::uint32_t x) {
      return std::to_string(x);
    }

    void hash_combine(std::size_t& seed, std::size_t x) {
      seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
  }  // namespace

  Comorphism::Comorphism(GroupoidPtr                dom,
                         GroupoidPtr                cod,
                         std::vector<object_type>   objects,
                         std::vector<morphism_type> lifts)
      : _dom(std::move(dom)),
        _cod(std::move(cod)),
        _stride(_dom->number_of_morphisms()),
        _objects(std::move(objects)),
        _lifts(std::move(lifts)) {}

  Comorphism Comorphism::make(GroupoidPtr                dom,
                              GroupoidPtr                cod,
                              std::vector<object_type>   objects,
                              std::vector<morphism_type> lifts) {
    if (!dom || !cod) {
      throw PreconditionError("comorphism: missing domain or codomain");
    }
    auto const& g = *dom;
    auto const& h = *cod;
    auto const  m = g.number_of_morphisms();
    if (objects.size() != h.number_of_objects() || lifts.size() != h.number_of_objects() * m) {
      throw LawViolation("comorphism shape", {}, "object map or lift table has the wrong size");
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      if (objects[u] >= g.number_of_objects()) {
        throw LawViolation("comorphism shape", {u}, "image of object " + str(u) + " out of range");
      }
      for (morphism_type a = 0; a < m; ++a) {
        auto b        = lifts[u * m + a];
        bool required = g.source(a) == objects[u];
        if (required && b == UNDEFINED) {
          throw LawViolation("comorphism shape", {u, a}, "missing lift of " + str(a) + " at " + str(u));
        }
        if (!required && b != UNDEFINED) {
          throw LawViolation("comorphism shape",
                             {u, a},
                             "lift of " + str(a) + " at " + str(u) + " given but " + str(a)
                                 + " does not start at the image of " + str(u));
        }
        if (required && b >= h.number_of_morphisms()) {
          throw LawViolation("comorphism shape", {u, a}, "lift out of range");
        }
      }
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      for (auto a : g.out(objects[u])) {
        auto b = lifts[u * m + a];
        if (h.source(b) != u) {
          throw LawViolation("lift source", {u, a}, "lift of " + str(a) + " at " + str(u) + " does not start at " + str(u));
        }
        if (objects[h.target(b)] != g.target(a)) {
          throw LawViolation("target axiom",
                             {u, a},
                             "lift of " + str(a) + " at " + str(u) + " ends over the wrong object");
        }
      }
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      if (lifts[u * m + g.identity(objects[u])] != h.identity(u)) {
        throw LawViolation("unit axiom", {u}, "identity does not lift to the identity at " + str(u));
      }
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      for (auto a : g.out(objects[u])) {
        auto fa = lifts[u * m + a];
        auto w  = h.target(fa);
        for (auto b : g.out(g.target(a))) {
          if (h.compose(lifts[w * m + b], fa) != lifts[u * m + g.compose(b, a)]) {
            throw LawViolation("composition axiom",
                               {u, a, b},
                               "f(b)∘f(a)_u != f(b∘a)_u for u=" + str(u) + ", a=" + str(a)
                                   + ", b=" + str(b));
          }
        }
      }
    }
    return Comorphism(std::move(dom), std::move(cod), std::move(objects), std::move(lifts));
  }

  Comorphism
  Comorphism::from_triples(GroupoidPtr                                      dom,
                           GroupoidPtr                                      cod,
                           std::vector<object_type>                         objects,
                           std::vector<std::array<std::uint32_t, 3>> const& lifts) {
    auto const                 m = dom->number_of_morphisms();
    std::vector<morphism_type> table(cod->number_of_objects() * m, UNDEFINED);
    for (auto [u, a, b] : lifts) {
      if (u >= cod->number_of_objects() || a >= m) {
        throw LawViolation("comorphism shape", {u, a}, "lift entry out of range");
      }
      table[u * m + a] = b;
    }
    return make(std::move(dom), std::move(cod), std::move(objects), std::move(table));
  }

  Comorphism Comorphism::identity(GroupoidPtr const& g) {
    return lower_star(Functor::identity(g));
  }

  object_type Comorphism::lift_target(morphism_type a, object_type u) const {
    return _cod->target(lift(a, u));
  }

  bool Comorphism::operator==(Comorphism const& that) const {
    return _objects == that._objects && _lifts == that._lifts && same_groupoid(_dom, that._dom)
           && same_groupoid(_cod, that._cod);
  }

  std::size_t hash_value(Comorphism const& f) {
    std::size_t seed = f.object_map().size();
    for (auto x : f.object_map()) {
      hash_combine(seed, x);
    }
    for (auto x : f.lift_table()) {
      hash_combine(seed, x);
    }
    return seed;
  }

  std::size_t hash_value(Functor const& f) {
    std::size_t seed = f.object_map().size();
    for (auto x : f.object_map()) {
      hash_combine(seed, x);
    }
    for (auto x : f.morphism_map()) {
      hash_combine(seed, x);
    }
    return seed;
  }

  Comorphism compose(Comorphism const& g, Comorphism const& f) {
    if (!same_groupoid(f.cod(), g.dom())) {
      throw PreconditionError("comorphism composition: codomain/domain mismatch");
    }
    auto const& G = *f.dom();
    auto const& K = *g.cod();
    auto const  m = G.number_of_morphisms();

    std::vector<object_type>   objects(K.number_of_objects());
    std::vector<morphism_type> lifts(K.number_of_objects() * m, UNDEFINED);
    for (object_type u = 0; u < objects.size(); ++u) {
      auto gu    = g.object(u);
      objects[u] = f.object(gu);
      for (auto a : G.out(objects[u])) {
        lifts[u * m + a] = g.lift(f.lift(a, gu), u);
      }
    }
    return Comorphism(f.dom(), g.cod(), std::move(objects), std::move(lifts));
  }

  Comorphism lower_star(Functor const& f) {
    if (!is_bijective_on_objects(f)) {
      throw PreconditionError("lower star: functor is not bijective on objects");
    }
    auto const& G = *f.dom();
    auto const  m = G.number_of_morphisms();
    std::vector<object_type> objects(G.number_of_objects());
    for (object_type x = 0; x < objects.size(); ++x) {
      objects[f.object(x)] = x;
    }
    std::vector<morphism_type> lifts(objects.size() * m, UNDEFINED);
    for (object_type u = 0; u < objects.size(); ++u) {
      for (auto a : G.out(objects[u])) {
        lifts[u * m + a] = f.morphism(a);
      }
    }
    return Comorphism::make(f.dom(), f.cod(), std::move(objects), std::move(lifts));
  }

  Comorphism upper_star(Functor const& f) {
    if (!is_discrete_opfibration(f)) {
      throw PreconditionError("upper star: functor is not a discrete opfibration");
    }
    auto const& H = *f.dom();
    auto const& G = *f.cod();
    auto const  m = G.number_of_morphisms();
    std::vector<morphism_type> lifts(H.number_of_objects() * m, UNDEFINED);
    for (object_type u = 0; u < H.number_of_objects(); ++u) {
      for (auto a : G.out(f.object(u))) {
        lifts[u * m + a] = opfibration_lift(f, u, a);
      }
    }
    return Comorphism::make(f.cod(), f.dom(), f.object_map(), std::move(lifts));
  }

  Factorization factorize(Comorphism const& f) {
    auto const& G = *f.dom();
    auto const& H = *f.cod();
    auto const  m = G.number_of_morphisms();
    auto const  n = H.number_of_objects();

    std::vector<std::pair<object_type, morphism_type>> pairs;
    std::vector<morphism_type>                         index(n * m, UNDEFINED);
    for (object_type u = 0; u < n; ++u) {
      for (auto a : G.out(f.object(u))) {
        index[u * m + a] = static_cast<morphism_type>(pairs.size());
        pairs.emplace_back(u, a);
      }
    }
    auto const     k = pairs.size();
    GroupoidTables t;
    t.objects = n;
    for (auto [u, a] : pairs) {
      auto v = f.lift_target(a, u);
      t.source.push_back(u);
      t.target.push_back(v);
      t.inverse.push_back(index[v * m + G.inverse(a)]);
    }
    for (object_type u = 0; u < n; ++u) {
      t.identity.push_back(index[u * m + G.identity(f.object(u))]);
    }
    t.compose.assign(k * k, UNDEFINED);
    for (morphism_type i = 0; i < k; ++i) {
      for (morphism_type j = 0; j < k; ++j) {
        if (t.target[i] == t.source[j]) {
          auto [u, a]          = pairs[i];
          t.compose[j * k + i] = index[u * m + G.compose(pairs[j].second, a)];
        }
      }
    }
    auto K = FiniteGroupoid::make(std::move(t));

    std::vector<morphism_type> to_dom(k), to_cod(k);
    for (morphism_type i = 0; i < k; ++i) {
      to_dom[i] = pairs[i].second;
      to_cod[i] = f.lift(pairs[i].second, pairs[i].first);
    }
    std::vector<object_type> id_objects(n);
    for (object_type u = 0; u < n; ++u) {
      id_objects[u] = u;
    }
    return Factorization{K,
                         Functor::make(K, f.dom(), f.object_map(), std::move(to_dom)),
                         Functor::make(K, f.cod(), std::move(id_objects), std::move(to_cod)),
                         std::move(pairs)};
  }

  bool check_beck_chevalley(Functor const& f,
                            Functor const& g,
                            Functor const& h,
                            Functor const& k) {
    if (!same_groupoid(f.dom(), h.dom()) || !same_groupoid(f.cod(), k.dom())
        || !same_groupoid(h.cod(), g.dom()) || !same_groupoid(g.cod(), k.cod())) {
      throw PreconditionError("Beck-Chevalley: functors do not form a square");
    }
    if (!(compose(g, h) == compose(k, f))) {
      throw PreconditionError("Beck-Chevalley: square does not commute");
    }
    if (!is_bijective_on_objects(f) || !is_bijective_on_objects(g)) {
      throw PreconditionError("Beck-Chevalley: horizontal functors must be bijective on objects");
    }
    if (!is_discrete_opfibration(h) || !is_discrete_opfibration(k)) {
      throw PreconditionError("Beck-Chevalley: vertical functors must be discrete opfibrations");
    }
    return compose(lower_star(f), upper_star(h)) == compose(upper_star(k), lower_star(g));
  }

  std::optional<ComorphismInverse> invert_comorphism(Comorphism const& f) {
    auto const& G = *f.dom();
    auto const  n = G.number_of_objects();
    if (f.cod()->number_of_objects() != n) {
      return std::nullopt;
    }
    std::vector<object_type> objects(n, UNDEFINED);
    for (object_type u = 0; u < n; ++u) {
      if (objects[f.object(u)] != UNDEFINED) {
        return std::nullopt;
      }
      objects[f.object(u)] = u;
    }
    std::vector<morphism_type> morphisms(G.number_of_morphisms());
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      morphisms[a] = f.lift(a, objects[G.source(a)]);
    }
    auto g = Functor::make(f.dom(), f.cod(), std::move(objects), std::move(morphisms));
    if (!is_invertible(g)) {
      return std::nullopt;
    }
    return ComorphismInverse{g, upper_star(g)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class ComorphismSearch {
     public:
      ComorphismSearch(GroupoidPtr const& g, GroupoidPtr const& h, EnumerationCaps caps)
          : _gp(g), _hp(h), _g(*g), _h(*h), _caps(caps), _m(g->number_of_morphisms()) {}

      std::vector<Comorphism> run() {
        auto const n = _h.number_of_objects();
        if (n == 0) {
          emit({}, {});
          return std::move(_out);
        }
        if (_g.number_of_objects() == 0) {
          return {};
        }
        std::vector<object_type> objects(n, 0);
        while (true) {
          search_lifts(objects);
          // Odometer: the last object varies fastest.
          std::size_t i = n;
          while (i > 0 && objects[i - 1] + 1 == _g.number_of_objects()) {
            objects[--i] = 0;
          }
          if (i == 0) {
            break;
          }
          ++objects[i - 1];
        }
        return std::move(_out);
      }

     private:
      void emit(std::vector<object_type> objects, std::vector<morphism_type> lifts) {
        if (_out.size() == _caps.max_results) {
          throw CapExceeded("comorphism count", _caps.max_results, _out.size() + 1);
        }
        _out.push_back(Comorphism::make(_gp, _hp, std::move(objects), std::move(lifts)));
      }

      void search_lifts(std::vector<object_type> const& objects) {
        _objects = objects;
        auto const n = _h.number_of_objects();
        _candidates.assign(n * _m, {});
        _vars.clear();
        for (object_type u = 0; u < n; ++u) {
          for (auto a : _g.out(objects[u])) {
            auto& c = _candidates[u * _m + a];
            for (auto b : _h.out(u)) {
              if (objects[_h.target(b)] == _g.target(a)) {
                c.push_back(b);
              }
            }
            if (c.empty()) {
              return;
            }
            _vars.push_back(u * _m + a);
          }
        }
        std::vector<morphism_type> lifts(n * _m, UNDEFINED);
        std::deque<std::size_t>    queue;
        for (object_type u = 0; u < n; ++u) {
          auto var = u * _m + _g.identity(objects[u]);
          if (!set(lifts, var, _h.identity(u), queue)) {
            return;
          }
        }
        if (propagate(lifts, queue)) {
          branch(lifts, 0);
        }
      }

      bool set(std::vector<morphism_type>& lifts,
               std::size_t                 var,
               morphism_type               value,
               std::deque<std::size_t>&    queue) const {
        if (lifts[var] == UNDEFINED) {
          lifts[var] = value;
          queue.push_back(var);
          return true;
        }
        return lifts[var] == value;
      }

      // Enforces f(c∘a⁻¹)_{target f(a)_u} = f(c)_u ∘ (f(a)_u)⁻¹ for every
      // pair of assigned lifts at the same object u.
      bool propagate(std::vector<morphism_type>& lifts, std::deque<std::size_t>& queue) const {
        while (!queue.empty()) {
          auto var = queue.front();
          queue.pop_front();
          auto u  = static_cast<object_type>(var / _m);
          auto a  = static_cast<morphism_type>(var % _m);
          auto fa = lifts[var];
          for (auto c : _g.out(_objects[u])) {
            auto fc = lifts[u * _m + c];
            if (fc == UNDEFINED) {
              continue;
            }
            auto w   = _h.target(fa);
            auto lhs = w * _m + _g.compose(c, _g.inverse(a));
            if (!set(lifts, lhs, _h.compose(fc, _h.inverse(fa)), queue)) {
              return false;
            }
            auto x   = _h.target(fc);
            auto rhs = x * _m + _g.compose(a, _g.inverse(c));
            if (!set(lifts, rhs, _h.compose(fa, _h.inverse(fc)), queue)) {
              return false;
            }
          }
        }
        return true;
      }

      void branch(std::vector<morphism_type> const& lifts, std::size_t i) {
        while (i < _vars.size() && lifts[_vars[i]] != UNDEFINED) {
          ++i;
        }
        if (i == _vars.size()) {
          emit(_objects, lifts);
          return;
        }
        auto var = _vars[i];
        for (auto b : _candidates[var]) {
          auto                    next = lifts;
          std::deque<std::size_t> queue;
          set(next, var, b, queue);
          if (propagate(next, queue)) {
            branch(next, i + 1);
          }
        }
      }

      GroupoidPtr                             _gp;
      GroupoidPtr                             _hp;
      FiniteGroupoid const&                   _g;
      FiniteGroupoid const&                   _h;
      EnumerationCaps                         _caps;
      std::size_t                             _m;
      std::vector<object_type>                _objects;
      std::vector<std::vector<morphism_type>> _candidates;
      std::vector<std::size_t>                _vars;
      std::vector<Comorphism>                 _out;
    };
  }  // namespace

  std::vector<Comorphism> enumerate_comorphisms(GroupoidPtr const& g,
                                                GroupoidPtr const& h,
                                                EnumerationCaps    caps) {
    return ComorphismSearch(g, h, caps).run();
  }

}  // namespace grpd
