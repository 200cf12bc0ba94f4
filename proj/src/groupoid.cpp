#include "grpd/groupoid.hpp"

#include <algorithm>
#include <string>

#include "grpd/group.hpp"

namespace grpd {

  namespace {
    std::string str(std::uint32_t x) {
      return std::to_string(x);
    }

    void check_shape(GroupoidTables const& t) {
      auto const n = t.objects;
      auto const m = t.source.size();
      if (t.target.size() != m || t.inverse.size() != m) {
        throw LawViolation("table shape", {}, "source/target/inverse tables differ in length");
      }
      if (t.identity.size() != n) {
        throw LawViolation("table shape", {}, "identity table must have one entry per object");
      }
      if (t.compose.size() != m * m) {
        throw LawViolation("table shape", {}, "composition table must have m*m entries");
      }
      for (morphism_type a = 0; a < m; ++a) {
        if (t.source[a] >= n || t.target[a] >= n) {
          throw LawViolation("table shape", {a}, "morphism " + str(a) + " has an end out of range");
        }
        if (t.inverse[a] >= m) {
          throw LawViolation("table shape", {a}, "inverse of " + str(a) + " out of range");
        }
      }
      for (object_type u = 0; u < n; ++u) {
        if (t.identity[u] >= m) {
          throw LawViolation("identity law", {u}, "object " + str(u) + " has no identity");
        }
      }
      for (auto c : t.compose) {
        if (c != UNDEFINED && c >= m) {
          throw LawViolation("table shape", {c}, "composite out of range");
        }
      }
    }
  }  // namespace

  FiniteGroupoid::FiniteGroupoid(GroupoidTables t) : _t(std::move(t)) {
    auto const n = _t.objects;
    _out.resize(n);
    _hom.resize(n * n);
    for (morphism_type a = 0; a < _t.source.size(); ++a) {
      _out[_t.source[a]].push_back(a);
      _hom[_t.source[a] * n + _t.target[a]].push_back(a);
    }
  }

  FiniteGroupoid FiniteGroupoid::validate(GroupoidTables t) {
    check_shape(t);
    FiniteGroupoid g(std::move(t));
    auto const     n = g.number_of_objects();
    auto const     m = g.number_of_morphisms();

    for (object_type u = 0; u < n; ++u) {
      auto e = g.identity(u);
      if (g.source(e) != u || g.target(e) != u) {
        throw LawViolation("identity law",
                           {u, e},
                           "identity " + str(e) + " of object " + str(u)
                               + " is not an endomorphism of " + str(u));
      }
    }
    for (morphism_type b = 0; b < m; ++b) {
      for (morphism_type a = 0; a < m; ++a) {
        bool composable = g.target(a) == g.source(b);
        auto ba         = g.compose(b, a);
        if (composable != (ba != UNDEFINED)) {
          throw LawViolation("composition domain",
                             {b, a},
                             "composite " + str(b) + "∘" + str(a)
                                 + (composable ? " is missing" : " is defined but the morphisms are not composable"));
        }
        if (composable && (g.source(ba) != g.source(a) || g.target(ba) != g.target(b))) {
          throw LawViolation("source/target mismatch",
                             {b, a, ba},
                             "composite " + str(b) + "∘" + str(a) + " = " + str(ba)
                                 + " has the wrong ends");
        }
      }
    }
    for (morphism_type a = 0; a < m; ++a) {
      if (g.compose(g.identity(g.target(a)), a) != a
          || g.compose(a, g.identity(g.source(a))) != a) {
        throw LawViolation("unit law", {a}, "identities do not act trivially on " + str(a));
      }
    }
    for (morphism_type a = 0; a < m; ++a) {
      auto i = g.inverse(a);
      if (g.source(i) != g.target(a) || g.target(i) != g.source(a)
          || g.compose(i, a) != g.identity(g.source(a))
          || g.compose(a, i) != g.identity(g.target(a))) {
        throw LawViolation("inverse law",
                           {a, i},
                           str(i) + " is not an inverse of " + str(a));
      }
    }
    for (morphism_type a = 0; a < m; ++a) {
      for (auto b : g.out(g.target(a))) {
        auto ba = g.compose(b, a);
        for (auto c : g.out(g.target(b))) {
          if (g.compose(c, ba) != g.compose(g.compose(c, b), a)) {
            throw LawViolation("associativity",
                               {c, b, a},
                               "c∘(b∘a) != (c∘b)∘a for c=" + str(c) + ", b=" + str(b)
                                   + ", a=" + str(a));
          }
        }
      }
    }
    return g;
  }

  GroupoidPtr FiniteGroupoid::make(GroupoidTables tables) {
    return std::make_shared<FiniteGroupoid const>(validate(std::move(tables)));
  }

  bool same_groupoid(GroupoidPtr const& g, GroupoidPtr const& h) {
    return g == h || (g && h && *g == *h);
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  GroupoidPtr discrete(std::size_t n) {
    GroupoidTables t;
    t.objects = n;
    for (object_type u = 0; u < n; ++u) {
      t.source.push_back(u);
      t.target.push_back(u);
      t.identity.push_back(u);
      t.inverse.push_back(u);
    }
    t.compose.assign(n * n, UNDEFINED);
    for (morphism_type a = 0; a < n; ++a) {
      t.compose[a * n + a] = a;
    }
    return FiniteGroupoid::make(std::move(t));
  }

  GroupoidPtr indiscrete(std::size_t n) {
    GroupoidTables t;
    t.objects    = n;
    auto const m = n * n;
    for (object_type u = 0; u < n; ++u) {
      t.identity.push_back(static_cast<morphism_type>(u * n + u));
      for (object_type v = 0; v < n; ++v) {
        t.source.push_back(u);
        t.target.push_back(v);
        t.inverse.push_back(static_cast<morphism_type>(v * n + u));
      }
    }
    t.compose.assign(m * m, UNDEFINED);
    for (morphism_type a = 0; a < m; ++a) {
      for (morphism_type b = 0; b < m; ++b) {
        if (t.target[a] == t.source[b]) {
          t.compose[b * m + a] = static_cast<morphism_type>(t.source[a] * n + t.target[b]);
        }
      }
    }
    return FiniteGroupoid::make(std::move(t));
  }

  GroupoidPtr sigma(FiniteGroup const& g) {
    GroupoidTables t;
    t.objects    = 1;
    auto const m = g.size();
    t.source.assign(m, 0);
    t.target.assign(m, 0);
    t.identity.push_back(static_cast<morphism_type>(g.identity()));
    t.compose.resize(m * m);
    for (morphism_type a = 0; a < m; ++a) {
      t.inverse.push_back(static_cast<morphism_type>(g.inverse(a)));
      for (morphism_type b = 0; b < m; ++b) {
        t.compose[b * m + a] = static_cast<morphism_type>(g.multiply(b, a));
      }
    }
    return FiniteGroupoid::make(std::move(t));
  }

  GroupoidPtr interval() {
    // Morphism layout 0: 1_0, 1: 0 -> 1, 2: 1 -> 0, 3: 1_1.
    return indiscrete(2);
  }

  GroupoidPtr terminal() {
    return discrete(1);
  }

  GroupoidPtr empty_groupoid() {
    return discrete(0);
  }

  Coproduct coproduct(GroupoidPtr const& g, GroupoidPtr const& h) {
    auto const&    x  = *g;
    auto const&    y  = *h;
    auto const     n1 = static_cast<object_type>(x.number_of_objects());
    auto const     m1 = static_cast<morphism_type>(x.number_of_morphisms());
    auto const     m  = x.number_of_morphisms() + y.number_of_morphisms();
    GroupoidTables t;
    t.objects = x.number_of_objects() + y.number_of_objects();
    for (morphism_type a = 0; a < x.number_of_morphisms(); ++a) {
      t.source.push_back(x.source(a));
      t.target.push_back(x.target(a));
      t.inverse.push_back(x.inverse(a));
    }
    for (morphism_type a = 0; a < y.number_of_morphisms(); ++a) {
      t.source.push_back(y.source(a) + n1);
      t.target.push_back(y.target(a) + n1);
      t.inverse.push_back(y.inverse(a) + m1);
    }
    for (object_type u = 0; u < x.number_of_objects(); ++u) {
      t.identity.push_back(x.identity(u));
    }
    for (object_type u = 0; u < y.number_of_objects(); ++u) {
      t.identity.push_back(y.identity(u) + m1);
    }
    t.compose.assign(m * m, UNDEFINED);
    for (morphism_type b = 0; b < m; ++b) {
      for (morphism_type a = 0; a < m; ++a) {
        if (a < m1 && b < m1) {
          t.compose[b * m + a] = x.compose(b, a);
        } else if (a >= m1 && b >= m1) {
          auto c = y.compose(b - m1, a - m1);
          if (c != UNDEFINED) {
            t.compose[b * m + a] = c + m1;
          }
        }
      }
    }
    auto sum = FiniteGroupoid::make(std::move(t));

    std::vector<object_type>   lo(x.number_of_objects()), ro(y.number_of_objects());
    std::vector<morphism_type> lm(x.number_of_morphisms()), rm(y.number_of_morphisms());
    for (object_type u = 0; u < lo.size(); ++u) {
      lo[u] = u;
    }
    for (object_type u = 0; u < ro.size(); ++u) {
      ro[u] = u + n1;
    }
    for (morphism_type a = 0; a < lm.size(); ++a) {
      lm[a] = a;
    }
    for (morphism_type a = 0; a < rm.size(); ++a) {
      rm[a] = a + m1;
    }
    return Coproduct{sum,
                     Functor::make(g, sum, std::move(lo), std::move(lm)),
                     Functor::make(h, sum, std::move(ro), std::move(rm))};
  }

  Functor copair(Coproduct const& c, Functor const& f, Functor const& h) {
    if (!same_groupoid(f.dom(), c.left.dom()) || !same_groupoid(h.dom(), c.right.dom())
        || !same_groupoid(f.cod(), h.cod())) {
      throw PreconditionError("copair: functors do not match the coproduct");
    }
    auto const& sum = *c.sum;
    std::vector<object_type>   objects(sum.number_of_objects());
    std::vector<morphism_type> morphisms(sum.number_of_morphisms());
    for (object_type u = 0; u < f.dom()->number_of_objects(); ++u) {
      objects[c.left.object(u)] = f.object(u);
    }
    for (object_type u = 0; u < h.dom()->number_of_objects(); ++u) {
      objects[c.right.object(u)] = h.object(u);
    }
    for (morphism_type a = 0; a < f.dom()->number_of_morphisms(); ++a) {
      morphisms[c.left.morphism(a)] = f.morphism(a);
    }
    for (morphism_type a = 0; a < h.dom()->number_of_morphisms(); ++a) {
      morphisms[c.right.morphism(a)] = h.morphism(a);
    }
    return Functor::make(c.sum, f.cod(), std::move(objects), std::move(morphisms));
  }

  object_type Coslice::object_of(morphism_type a) const {
    auto it = std::find(objects.begin(), objects.end(), a);
    if (it == objects.end()) {
      throw PreconditionError("coslice: morphism " + str(a) + " does not start at the base object");
    }
    return static_cast<object_type>(it - objects.begin());
  }

  Coslice coslice(GroupoidPtr const& g, object_type u) {
    if (u >= g->number_of_objects()) {
      throw PreconditionError("coslice: object " + str(u) + " out of range");
    }
    auto const out = g->out(u);
    auto const k   = out.size();
    auto       shape = indiscrete(k);

    std::vector<object_type>   objects(k);
    std::vector<morphism_type> morphisms(k * k);
    for (object_type i = 0; i < k; ++i) {
      objects[i] = g->target(out[i]);
      for (object_type j = 0; j < k; ++j) {
        morphisms[i * k + j] = g->compose(out[j], g->inverse(out[i]));
      }
    }
    return Coslice{shape,
                   Functor::make(shape, g, std::move(objects), std::move(morphisms)),
                   u,
                   std::vector<morphism_type>(out.begin(), out.end())};
  }

  Functor precompose(GroupoidPtr const& g, morphism_type a) {
    auto from = coslice(g, g->target(a));
    auto to   = coslice(g, g->source(a));
    auto k    = from.objects.size();
    auto l    = to.objects.size();

    std::vector<object_type> objects(k);
    for (object_type i = 0; i < k; ++i) {
      objects[i] = to.object_of(g->compose(from.objects[i], a));
    }
    std::vector<morphism_type> morphisms(k * k);
    for (object_type i = 0; i < k; ++i) {
      for (object_type j = 0; j < k; ++j) {
        morphisms[i * k + j] = static_cast<morphism_type>(objects[i] * l + objects[j]);
      }
    }
    return Functor::make(from.groupoid, to.groupoid, std::move(objects), std::move(morphisms));
  }

  Pullback pullback(Functor const& f, Functor const& g) {
    if (!same_groupoid(f.cod(), g.cod())) {
      throw PreconditionError("pullback: functors have different codomains");
    }
    auto const& a = *f.dom();
    auto const& b = *g.dom();

    std::vector<object_type> obj_index(a.number_of_objects() * b.number_of_objects(), UNDEFINED);
    std::vector<object_type> left_obj, right_obj;
    for (object_type x = 0; x < a.number_of_objects(); ++x) {
      for (object_type y = 0; y < b.number_of_objects(); ++y) {
        if (f.object(x) == g.object(y)) {
          obj_index[x * b.number_of_objects() + y] = static_cast<object_type>(left_obj.size());
          left_obj.push_back(x);
          right_obj.push_back(y);
        }
      }
    }
    auto const bm = b.number_of_morphisms();
    std::vector<morphism_type> mor_index(a.number_of_morphisms() * bm, UNDEFINED);
    std::vector<morphism_type> left_mor, right_mor;
    for (morphism_type x = 0; x < a.number_of_morphisms(); ++x) {
      for (morphism_type y = 0; y < bm; ++y) {
        if (f.morphism(x) == g.morphism(y)) {
          mor_index[x * bm + y] = static_cast<morphism_type>(left_mor.size());
          left_mor.push_back(x);
          right_mor.push_back(y);
        }
      }
    }
    auto const     m = left_mor.size();
    GroupoidTables t;
    t.objects = left_obj.size();
    for (morphism_type i = 0; i < m; ++i) {
      auto x = left_mor[i], y = right_mor[i];
      t.source.push_back(obj_index[a.source(x) * b.number_of_objects() + b.source(y)]);
      t.target.push_back(obj_index[a.target(x) * b.number_of_objects() + b.target(y)]);
      t.inverse.push_back(mor_index[a.inverse(x) * bm + b.inverse(y)]);
    }
    for (object_type i = 0; i < t.objects; ++i) {
      t.identity.push_back(mor_index[a.identity(left_obj[i]) * bm + b.identity(right_obj[i])]);
    }
    t.compose.assign(m * m, UNDEFINED);
    for (morphism_type j = 0; j < m; ++j) {
      for (morphism_type i = 0; i < m; ++i) {
        if (t.target[i] == t.source[j]) {
          t.compose[j * m + i] = mor_index[a.compose(left_mor[j], left_mor[i]) * bm
                                           + b.compose(right_mor[j], right_mor[i])];
        }
      }
    }
    auto p = FiniteGroupoid::make(std::move(t));
    return Pullback{p,
                    Functor::make(p, f.dom(), std::move(left_obj), std::move(left_mor)),
                    Functor::make(p, g.dom(), std::move(right_obj), std::move(right_mor))};
  }

  std::optional<Functor> find_isomorphism(GroupoidPtr const& g, GroupoidPtr const& h) {
    if (g->number_of_objects() != h->number_of_objects()
        || g->number_of_morphisms() != h->number_of_morphisms()) {
      return std::nullopt;
    }
    std::optional<Functor> found;
    std::vector<char>      all_g(g->number_of_objects(), 1), all_h(h->number_of_objects(), 1);
    detail::for_each_homomorphism(
        *g, all_g, *h, all_h, true, [&](auto const& objects, auto const& morphisms) {
          found = Functor::make(g, h, objects, morphisms);
          return false;
        });
    return found;
  }

  bool are_isomorphic(GroupoidPtr const& g, GroupoidPtr const& h) {
    return find_isomorphism(g, h).has_value();
  }

}  // namespace grpd
