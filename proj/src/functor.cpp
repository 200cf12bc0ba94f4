#include "grpd/functor.hpp"

#include <string>

#include "grpd/groupoid.hpp"

namespace grpd {

  namespace {
    std::string str(std::uint32_t x) {
      return std::to_string(x);
    }
  }  // namespace

  Functor::Functor(GroupoidPtr                dom,
                   GroupoidPtr                cod,
                   std::vector<object_type>   objects,
                   std::vector<morphism_type> morphisms)
      : _dom(std::move(dom)),
        _cod(std::move(cod)),
        _objects(std::move(objects)),
        _morphisms(std::move(morphisms)) {}

  Functor Functor::make(GroupoidPtr                dom,
                        GroupoidPtr                cod,
                        std::vector<object_type>   objects,
                        std::vector<morphism_type> morphisms) {
    if (!dom || !cod) {
      throw PreconditionError("functor: missing domain or codomain");
    }
    auto const& g = *dom;
    auto const& h = *cod;
    if (objects.size() != g.number_of_objects()
        || morphisms.size() != g.number_of_morphisms()) {
      throw LawViolation("functor shape", {}, "maps must be total on the domain");
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      if (objects[u] >= h.number_of_objects()) {
        throw LawViolation("functor shape", {u}, "image of object " + str(u) + " out of range");
      }
    }
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      auto fa = morphisms[a];
      if (fa >= h.number_of_morphisms()) {
        throw LawViolation("functor shape", {a}, "image of morphism " + str(a) + " out of range");
      }
      if (h.source(fa) != objects[g.source(a)] || h.target(fa) != objects[g.target(a)]) {
        throw LawViolation("functor source/target",
                           {a},
                           "image of morphism " + str(a) + " has the wrong ends");
      }
    }
    for (object_type u = 0; u < objects.size(); ++u) {
      if (morphisms[g.identity(u)] != h.identity(objects[u])) {
        throw LawViolation("functor identity", {u}, "identity of object " + str(u) + " not preserved");
      }
    }
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      for (auto b : g.out(g.target(a))) {
        if (morphisms[g.compose(b, a)] != h.compose(morphisms[b], morphisms[a])) {
          throw LawViolation("functor composition",
                             {b, a},
                             "composite " + str(b) + "∘" + str(a) + " not preserved");
        }
      }
    }
    return Functor(std::move(dom), std::move(cod), std::move(objects), std::move(morphisms));
  }

  Functor Functor::identity(GroupoidPtr const& g) {
    std::vector<object_type>   objects(g->number_of_objects());
    std::vector<morphism_type> morphisms(g->number_of_morphisms());
    for (object_type u = 0; u < objects.size(); ++u) {
      objects[u] = u;
    }
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      morphisms[a] = a;
    }
    return Functor(g, g, std::move(objects), std::move(morphisms));
  }

  bool Functor::operator==(Functor const& that) const {
    return _objects == that._objects && _morphisms == that._morphisms
           && same_groupoid(_dom, that._dom) && same_groupoid(_cod, that._cod);
  }

  Functor compose(Functor const& g, Functor const& f) {
    if (!same_groupoid(f.cod(), g.dom())) {
      throw PreconditionError("functor composition: codomain/domain mismatch");
    }
    std::vector<object_type>   objects(f.object_map().size());
    std::vector<morphism_type> morphisms(f.morphism_map().size());
    for (object_type u = 0; u < objects.size(); ++u) {
      objects[u] = g.object(f.object(u));
    }
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      morphisms[a] = g.morphism(f.morphism(a));
    }
    return Functor::make(f.dom(), g.cod(), std::move(objects), std::move(morphisms));
  }

  bool is_bijective_on_objects(Functor const& f) {
    auto const        n = f.cod()->number_of_objects();
    std::vector<char> hit(n, 0);
    if (f.object_map().size() != n) {
      return false;
    }
    for (auto v : f.object_map()) {
      if (hit[v]) {
        return false;
      }
      hit[v] = 1;
    }
    return true;
  }

  bool is_invertible(Functor const& f) {
    if (!is_bijective_on_objects(f)) {
      return false;
    }
    auto const        m = f.cod()->number_of_morphisms();
    std::vector<char> hit(m, 0);
    if (f.morphism_map().size() != m) {
      return false;
    }
    for (auto b : f.morphism_map()) {
      if (hit[b]) {
        return false;
      }
      hit[b] = 1;
    }
    return true;
  }

  Functor inverse(Functor const& f) {
    if (!is_invertible(f)) {
      throw PreconditionError("functor inverse: functor is not invertible");
    }
    std::vector<object_type>   objects(f.object_map().size());
    std::vector<morphism_type> morphisms(f.morphism_map().size());
    for (object_type u = 0; u < objects.size(); ++u) {
      objects[f.object(u)] = u;
    }
    for (morphism_type a = 0; a < morphisms.size(); ++a) {
      morphisms[f.morphism(a)] = a;
    }
    return Functor::make(f.cod(), f.dom(), std::move(objects), std::move(morphisms));
  }

  morphism_type opfibration_lift(Functor const& f, object_type u, morphism_type a) {
    auto const&   h     = *f.dom();
    morphism_type found = UNDEFINED;
    for (auto b : h.out(u)) {
      if (f.morphism(b) == a) {
        if (found != UNDEFINED) {
          return UNDEFINED;
        }
        found = b;
      }
    }
    return found;
  }

  bool is_discrete_opfibration(Functor const& f) {
    auto const& h = *f.dom();
    auto const& g = *f.cod();
    for (object_type u = 0; u < h.number_of_objects(); ++u) {
      for (auto a : g.out(f.object(u))) {
        if (opfibration_lift(f, u, a) == UNDEFINED) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism search
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    namespace {
      using Emit = std::function<bool(std::vector<object_type> const&,
                                      std::vector<morphism_type> const&)>;

      class HomSearch {
       public:
        HomSearch(FiniteGroupoid const&    src,
                  std::vector<char> const& src_objects,
                  FiniteGroupoid const&    dst,
                  std::vector<char> const& dst_objects,
                  bool                     bijective,
                  Emit const&              emit)
            : _src(src),
              _dst(dst),
              _src_in(src_objects),
              _dst_in(dst_objects),
              _bijective(bijective),
              _emit(emit),
              _objects(src.number_of_objects(), UNDEFINED),
              _morphisms(src.number_of_morphisms(), UNDEFINED),
              _obj_used(dst.number_of_objects(), 0),
              _mor_used(dst.number_of_morphisms(), 0) {
          for (object_type u = 0; u < src.number_of_objects(); ++u) {
            if (_src_in[u]) {
              _src_objects.push_back(u);
            }
          }
          for (object_type v = 0; v < dst.number_of_objects(); ++v) {
            if (_dst_in[v]) {
              _dst_objects.push_back(v);
            }
          }
          for (morphism_type a = 0; a < src.number_of_morphisms(); ++a) {
            if (_src_in[src.source(a)] && _src_in[src.target(a)]) {
              _scope.push_back(a);
            }
          }
          _dst_scope_size = 0;
          for (morphism_type b = 0; b < dst.number_of_morphisms(); ++b) {
            if (_dst_in[dst.source(b)] && _dst_in[dst.target(b)]) {
              ++_dst_scope_size;
            }
          }
        }

        void run() {
          if (_bijective
              && (_src_objects.size() != _dst_objects.size()
                  || _scope.size() != _dst_scope_size)) {
            return;
          }
          assign_object(0);
        }

       private:
        bool hom_compatible(object_type u, object_type w) const {
          auto s = _src.hom(u, w).size();
          auto d = _dst.hom(_objects[u], _objects[w]).size();
          return _bijective ? s == d : (s == 0 || d != 0);
        }

        // Returns false to abort the whole search.
        bool assign_object(std::size_t i) {
          if (i == _src_objects.size()) {
            return assign_morphism(0);
          }
          auto u = _src_objects[i];
          for (auto v : _dst_objects) {
            if (_bijective && _obj_used[v]) {
              continue;
            }
            _objects[u] = v;
            bool ok     = true;
            for (std::size_t j = 0; j <= i && ok; ++j) {
              auto w = _src_objects[j];
              ok     = hom_compatible(u, w) && hom_compatible(w, u);
            }
            if (ok) {
              _obj_used[v] = 1;
              bool go_on   = assign_object(i + 1);
              _obj_used[v] = 0;
              if (!go_on) {
                _objects[u] = UNDEFINED;
                return false;
              }
            }
          }
          _objects[u] = UNDEFINED;
          return true;
        }

        bool assigned(morphism_type a) const {
          return _morphisms[a] != UNDEFINED;
        }

        bool in_scope(morphism_type a) const {
          return _src_in[_src.source(a)] && _src_in[_src.target(a)];
        }

        // Every composition triple whose last member is a and whose other
        // members are assigned is preserved.
        bool consistent(morphism_type a) const {
          auto fa = _morphisms[a];
          for (auto b : _src.out(_src.target(a))) {
            if (in_scope(b) && assigned(b)) {
              auto c = _src.compose(b, a);
              if (assigned(c) && _morphisms[c] != _dst.compose(_morphisms[b], fa)) {
                return false;
              }
            }
          }
          for (auto w : _src_objects) {
            for (auto x : _src.hom(w, _src.source(a))) {
              if (assigned(x)) {
                auto c = _src.compose(a, x);
                if (assigned(c) && _morphisms[c] != _dst.compose(fa, _morphisms[x])) {
                  return false;
                }
              }
            }
          }
          for (auto x : _src.out(_src.source(a))) {
            if (in_scope(x) && assigned(x)) {
              auto y = _src.compose(a, _src.inverse(x));
              if (assigned(y) && fa != _dst.compose(_morphisms[y], _morphisms[x])) {
                return false;
              }
            }
          }
          return true;
        }

        bool try_value(std::size_t i, morphism_type a, morphism_type b) {
          if (_bijective && _mor_used[b]) {
            return true;
          }
          _morphisms[a] = b;
          bool go_on    = true;
          if (consistent(a)) {
            _mor_used[b] = 1;
            go_on        = assign_morphism(i + 1);
            _mor_used[b] = 0;
          }
          _morphisms[a] = UNDEFINED;
          return go_on;
        }

        bool assign_morphism(std::size_t i) {
          if (i == _scope.size()) {
            return _emit(_objects, _morphisms);
          }
          auto a = _scope[i];
          auto u = _objects[_src.source(a)];
          auto v = _objects[_src.target(a)];
          if (_src.is_identity(a)) {
            return try_value(i, a, _dst.identity(u));
          }
          auto inv = _src.inverse(a);
          if (assigned(inv)) {
            return try_value(i, a, _dst.inverse(_morphisms[inv]));
          }
          for (auto b : _dst.hom(u, v)) {
            if (!try_value(i, a, b)) {
              return false;
            }
          }
          return true;
        }

        FiniteGroupoid const&      _src;
        FiniteGroupoid const&      _dst;
        std::vector<char> const&   _src_in;
        std::vector<char> const&   _dst_in;
        bool                       _bijective;
        Emit const&                _emit;
        std::vector<object_type>   _src_objects;
        std::vector<object_type>   _dst_objects;
        std::vector<morphism_type> _scope;
        std::size_t                _dst_scope_size;
        std::vector<object_type>   _objects;
        std::vector<morphism_type> _morphisms;
        std::vector<char>          _obj_used;
        std::vector<char>          _mor_used;
      };
    }  // namespace

    void for_each_homomorphism(FiniteGroupoid const&    src,
                               std::vector<char> const& src_objects,
                               FiniteGroupoid const&    dst,
                               std::vector<char> const& dst_objects,
                               bool                     bijective,
                               Emit const&              emit) {
      HomSearch(src, src_objects, dst, dst_objects, bijective, emit).run();
    }
  }  // namespace detail

  std::vector<Functor> enumerate_functors(GroupoidPtr const& g,
                                          GroupoidPtr const& h,
                                          EnumerationCaps    caps) {
    std::vector<Functor> out;
    std::vector<char>    all_g(g->number_of_objects(), 1), all_h(h->number_of_objects(), 1);
    detail::for_each_homomorphism(
        *g, all_g, *h, all_h, false, [&](auto const& objects, auto const& morphisms) {
          if (out.size() == caps.max_results) {
            throw CapExceeded("functor count", caps.max_results, out.size() + 1);
          }
          out.push_back(Functor::make(g, h, objects, morphisms));
          return true;
        });
    return out;
  }

  std::vector<Functor> enumerate_automorphisms(GroupoidPtr const& g) {
    std::vector<Functor> out;
    std::vector<char>    all(g->number_of_objects(), 1);
    detail::for_each_homomorphism(
        *g, all, *g, all, true, [&](auto const& objects, auto const& morphisms) {
          out.push_back(Functor::make(g, g, objects, morphisms));
          return true;
        });
    return out;
  }

}  // namespace grpd
