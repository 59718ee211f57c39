#include "qtopos/limits.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace qtopos {

  namespace {

    void check_bases(FinCat const& base, Diagram const& d) {
      for (auto const& p : d.objects) {
        if (!(p.base() == base)) {
          throw std::invalid_argument("diagram mixes presheaves over different bases");
        }
      }
      for (auto const& a : d.arrows) {
        if (a.from >= d.objects.size() || a.to >= d.objects.size()
            || !a.map.source().same_structure(d.objects[a.from])
            || !a.map.target().same_structure(d.objects[a.to])) {
          throw std::invalid_argument("diagram arrow does not match its endpoints");
        }
      }
    }

    std::string tuple_label(std::vector<std::string> const& parts) {
      std::string s = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i == 0 ? "" : ",") + parts[i];
      }
      return s + ")";
    }

    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }
      // The smaller index survives as representative.
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
      }

     private:
      std::vector<std::size_t> _parent;
    };

  }  // namespace

  Cone finite_limit(FinCat const& base, Diagram const& d) {
    check_bases(base, d);
    std::size_t const n = d.objects.size();
    std::size_t const k = base.number_of_objects();
    std::vector<bool> free(n, true);
    for (auto const& a : d.arrows) {
      free[a.to] = false;
    }

    std::vector<std::vector<std::vector<ElementId>>> tuples(k);
    for (ObjectId c = 0; c < k; ++c) {
      std::vector<ElementId> t(n, UNDEFINED);
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
          tuples[c].push_back(t);
          return;
        }
        ElementId forced = UNDEFINED;
        for (auto const& a : d.arrows) {
          if (a.to == i && a.from < i) {
            ElementId v = a.map(c, t[a.from]);
            if (forced != UNDEFINED && forced != v) {
              return;
            }
            forced = v;
          }
        }
        auto try_value = [&](ElementId x) {
          for (auto const& a : d.arrows) {
            if (a.from == i && a.to <= i) {
              ElementId target = a.to == i ? x : t[a.to];
              if (a.map(c, x) != target) {
                return;
              }
            }
          }
          t[i] = x;
          self(self, i + 1);
          t[i] = UNDEFINED;
        };
        if (forced != UNDEFINED) {
          try_value(forced);
        } else {
          for (ElementId x = 0; x < d.objects[i].size(c); ++x) {
            try_value(x);
          }
        }
      };
      rec(rec, 0);
    }

    std::vector<std::vector<std::string>> labels(k);
    for (ObjectId c = 0; c < k; ++c) {
      std::map<std::string, int> seen;
      bool                       clash = false;
      for (auto const& t : tuples[c]) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < n; ++i) {
          if (free[i]) {
            parts.push_back(d.objects[i].label(c, t[i]));
          }
        }
        std::string l = tuple_label(parts);
        clash         = clash || seen[l]++ > 0;
        labels[c].push_back(l);
      }
      if (clash) {
        labels[c].clear();
        for (auto const& t : tuples[c]) {
          std::vector<std::string> parts;
          for (std::size_t i = 0; i < n; ++i) {
            parts.push_back(d.objects[i].label(c, t[i]));
          }
          labels[c].push_back(tuple_label(parts));
        }
      }
    }

    std::vector<std::map<std::vector<ElementId>, ElementId>> index(k);
    for (ObjectId c = 0; c < k; ++c) {
      for (ElementId e = 0; e < tuples[c].size(); ++e) {
        index[c].emplace(tuples[c][e], e);
      }
    }
    std::vector<std::vector<ElementId>> action(base.number_of_morphisms());
    for (MorphismId f = 0; f < base.number_of_morphisms(); ++f) {
      ObjectId c = base.source(f), dd = base.target(f);
      for (auto const& t : tuples[dd]) {
        std::vector<ElementId> r(n);
        for (std::size_t i = 0; i < n; ++i) {
          r[i] = d.objects[i].act(f, t[i]);
        }
        action[f].push_back(index[c].at(r));
      }
    }
    Presheaf apex(base, std::move(labels), std::move(action));
    Cone     cone{apex, {}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<ElementId>> comp(k);
      for (ObjectId c = 0; c < k; ++c) {
        for (auto const& t : tuples[c]) {
          comp[c].push_back(t[i]);
        }
      }
      cone.legs.emplace_back(apex, d.objects[i], std::move(comp));
    }
    return cone;
  }

  Cone finite_colimit(FinCat const& base, Diagram const& d) {
    check_bases(base, d);
    std::size_t const n = d.objects.size();
    std::size_t const k = base.number_of_objects();
    // Flat numbering of the disjoint union at each object.
    std::vector<std::vector<std::size_t>> offset(k, std::vector<std::size_t>(n + 1, 0));
    for (ObjectId c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        offset[c][i + 1] = offset[c][i] + d.objects[i].size(c);
      }
    }
    std::vector<std::vector<ElementId>>   cls(k);
    std::vector<std::vector<std::size_t>> reps(k);
    for (ObjectId c = 0; c < k; ++c) {
      UnionFind uf(offset[c][n]);
      for (auto const& a : d.arrows) {
        for (ElementId x = 0; x < d.objects[a.from].size(c); ++x) {
          uf.unite(offset[c][a.from] + x, offset[c][a.to] + a.map(c, x));
        }
      }
      cls[c].assign(offset[c][n], UNDEFINED);
      for (std::size_t u = 0; u < offset[c][n]; ++u) {
        std::size_t r = uf.find(u);
        if (r == u) {
          cls[c][u] = reps[c].size();
          reps[c].push_back(u);
        }
      }
      for (std::size_t u = 0; u < offset[c][n]; ++u) {
        cls[c][u] = cls[c][uf.find(u)];
      }
    }
    auto locate = [&](ObjectId c, std::size_t u) {
      std::size_t i = 0;
      while (offset[c][i + 1] <= u) {
        ++i;
      }
      return std::pair<std::size_t, ElementId>{i, u - offset[c][i]};
    };
    std::vector<std::vector<std::string>> labels(k);
    for (ObjectId c = 0; c < k; ++c) {
      std::map<std::string, int> seen;
      bool                       clash = false;
      for (std::size_t u : reps[c]) {
        auto [i, x] = locate(c, u);
        labels[c].push_back(d.objects[i].label(c, x));
        clash = clash || seen[labels[c].back()]++ > 0;
      }
      if (clash) {
        for (std::size_t r = 0; r < reps[c].size(); ++r) {
          auto [i, x]  = locate(c, reps[c][r]);
          labels[c][r] = std::to_string(i) + ":" + d.objects[i].label(c, x);
        }
      }
    }
    std::vector<std::vector<ElementId>> action(base.number_of_morphisms());
    for (MorphismId f = 0; f < base.number_of_morphisms(); ++f) {
      ObjectId c = base.source(f), dd = base.target(f);
      for (std::size_t u : reps[dd]) {
        auto [i, x] = locate(dd, u);
        action[f].push_back(cls[c][offset[c][i] + d.objects[i].act(f, x)]);
      }
    }
    Presheaf apex(base, std::move(labels), std::move(action));
    Cone     cocone{apex, {}};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<ElementId>> comp(k);
      for (ObjectId c = 0; c < k; ++c) {
        for (ElementId x = 0; x < d.objects[i].size(c); ++x) {
          comp[c].push_back(cls[c][offset[c][i] + x]);
        }
      }
      cocone.legs.emplace_back(d.objects[i], apex, std::move(comp));
    }
    return cocone;
  }

  Cone product(Presheaf const& x, Presheaf const& y) {
    return finite_limit(x.base(), {{x, y}, {}});
  }

  Cone pullback(NatTrans const& f, NatTrans const& g) {
    auto const& base = f.source().base();
    Diagram     d{{f.source(), g.source(), f.target()}, {{0, 2, f}, {1, 2, g}}};
    Cone        c = finite_limit(base, d);
    c.legs.pop_back();
    return c;
  }

  NatTrans equalizer(NatTrans const& f, NatTrans const& g) {
    auto const&                    Y = f.source();
    std::vector<std::vector<bool>> part(Y.base().number_of_objects());
    for (ObjectId c = 0; c < part.size(); ++c) {
      for (ElementId y = 0; y < Y.size(c); ++y) {
        part[c].push_back(f(c, y) == g(c, y));
      }
    }
    return Subpresheaf(Y, std::move(part)).inclusion();
  }

  Cone coproduct(Presheaf const& x, Presheaf const& y) {
    return finite_colimit(x.base(), {{x, y}, {}});
  }

  Cone pushout(NatTrans const& f, NatTrans const& g) {
    auto const& base = f.source().base();
    Diagram     d{{f.target(), g.target(), f.source()}, {{2, 0, f}, {2, 1, g}}};
    Cone        c = finite_colimit(base, d);
    c.legs.pop_back();
    return c;
  }

  NatTrans coequalizer(NatTrans const& f, NatTrans const& g) {
    auto const& base = f.source().base();
    Diagram     d{{f.target(), f.source()}, {{1, 0, f}, {1, 0, g}}};
    Cone        c = finite_colimit(base, d);
    return c.legs[0];
  }

  namespace {

    NatTrans induced_into_limit(std::vector<NatTrans> const& maps, Cone const& limit) {
      auto const&       W    = maps.at(0).source();
      auto const&       base = W.base();
      std::size_t const k    = base.number_of_objects();
      std::vector<std::vector<ElementId>> comp(k);
      for (ObjectId c = 0; c < k; ++c) {
        std::map<std::vector<ElementId>, ElementId> index;
        for (ElementId e = 0; e < limit.apex.size(c); ++e) {
          std::vector<ElementId> t;
          for (auto const& leg : limit.legs) {
            t.push_back(leg(c, e));
          }
          index.emplace(std::move(t), e);
        }
        for (ElementId w = 0; w < W.size(c); ++w) {
          std::vector<ElementId> t;
          for (auto const& m : maps) {
            t.push_back(m(c, w));
          }
          auto it = index.find(t);
          if (it == index.end()) {
            throw std::invalid_argument("maps do not form a cone over the limit");
          }
          comp[c].push_back(it->second);
        }
      }
      return {W, limit.apex, std::move(comp)};
    }

  }  // namespace

  NatTrans pair(NatTrans const& f, NatTrans const& g, Cone const& product) {
    return induced_into_limit({f, g}, product);
  }

  NatTrans product_map(NatTrans const& a, NatTrans const& b, Cone const& from, Cone const& to) {
    return induced_into_limit({compose(a, from.legs[0]), compose(b, from.legs[1])}, to);
  }

  NatTrans factor_through_mono(NatTrans const& h, NatTrans const& m) {
    auto const&                         base = h.source().base();
    std::vector<std::vector<ElementId>> comp(base.number_of_objects());
    for (ObjectId c = 0; c < comp.size(); ++c) {
      std::vector<ElementId> pre(m.target().size(c), UNDEFINED);
      for (ElementId x = 0; x < m.source().size(c); ++x) {
        pre[m(c, x)] = x;
      }
      for (ElementId w = 0; w < h.source().size(c); ++w) {
        ElementId x = pre[h(c, w)];
        if (x == UNDEFINED) {
          throw std::invalid_argument("map does not factor through the mono");
        }
        comp[c].push_back(x);
      }
    }
    return {h.source(), m.source(), std::move(comp)};
  }

  NatTrans copair(NatTrans const& a, NatTrans const& b, Cone const& pushout) {
    auto const& Q    = pushout.apex;
    auto const& base = Q.base();
    std::vector<std::vector<ElementId>> comp(base.number_of_objects());
    for (ObjectId c = 0; c < comp.size(); ++c) {
      comp[c].assign(Q.size(c), UNDEFINED);
      auto fill = [&](NatTrans const& leg, NatTrans const& m) {
        for (ElementId x = 0; x < leg.source().size(c); ++x) {
          ElementId q = leg(c, x);
          ElementId v = m(c, x);
          if (comp[c][q] != UNDEFINED && comp[c][q] != v) {
            throw std::invalid_argument("maps do not agree on the pushout");
          }
          comp[c][q] = v;
        }
      };
      fill(pushout.legs[0], a);
      fill(pushout.legs[1], b);
    }
    return {Q, a.target(), std::move(comp)};
  }

  NatTrans quotient(Presheaf const& f, std::vector<std::vector<std::size_t>> const& class_of) {
    FinCat const&                         base = f.base();
    std::size_t const                     k    = base.number_of_objects();
    std::vector<std::vector<ElementId>>   comp(k);
    std::vector<std::vector<ElementId>>   rep(k);
    std::vector<std::vector<std::string>> labels(k);
    for (ObjectId c = 0; c < k; ++c) {
      std::map<std::size_t, ElementId> number;
      for (ElementId x = 0; x < f.size(c); ++x) {
        auto [it, fresh] = number.emplace(class_of[c][x], rep[c].size());
        if (fresh) {
          rep[c].push_back(x);
          labels[c].push_back(f.label(c, x));
        }
        comp[c].push_back(it->second);
      }
    }
    std::vector<std::vector<ElementId>> action(base.number_of_morphisms());
    for (MorphismId h = 0; h < base.number_of_morphisms(); ++h) {
      ObjectId c = base.source(h), d = base.target(h);
      for (ElementId x : rep[d]) {
        ElementId y = comp[c][f.act(h, x)];
        action[h].push_back(y);
      }
      for (ElementId x = 0; x < f.size(d); ++x) {
        if (action[h][comp[d][x]] != comp[c][f.act(h, x)]) {
          throw std::invalid_argument("equivalence is not compatible with restriction");
        }
      }
    }
    Presheaf q(base, std::move(labels), std::move(action));
    return {f, q, std::move(comp)};
  }

  NatTrans coimage(NatTrans const& alpha) {
    return quotient(alpha.source(), alpha.components());
  }

}  // namespace qtopos
