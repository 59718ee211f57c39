#include "qtopos/reflection.hpp"

#include <numeric>
#include <stdexcept>

#include "qtopos/hom.hpp"

namespace qtopos {

  Reflected ReflectionOracle::reflect(Presheaf const& x) const {
    Key key{x.all_labels(), x.actions()};
    {
      std::lock_guard lock(_mutex);
      if (auto it = _cache.find(key); it != _cache.end()) {
        return it->second;
      }
    }
    Reflected r = reflect_obj(x);
    std::lock_guard lock(_mutex);
    return _cache.emplace(std::move(key), std::move(r)).first->second;
  }

  NatTrans ReflectionOracle::reflect_mor(NatTrans const& alpha) const {
    Reflected         rx  = reflect(alpha.source());
    Reflected         ry  = reflect(alpha.target());
    FinCat const&     cat = base();
    std::size_t const k   = cat.number_of_objects();
    std::vector<std::vector<ElementId>> fixed(k);
    bool                                total = true;
    for (ObjectId c = 0; c < k; ++c) {
      fixed[c].assign(rx.object.size(c), UNDEFINED);
      for (ElementId x = 0; x < alpha.source().size(c); ++x) {
        ElementId  from = rx.unit(c, x);
        ElementId  to   = ry.unit(c, alpha(c, x));
        ElementId& slot = fixed[c][from];
        if (slot != UNDEFINED && slot != to) {
          throw std::logic_error(name() + ": reflected map is not well defined on "
                                 + describe_element(alpha.source(), c, x));
        }
        slot = to;
      }
      for (ElementId v : fixed[c]) {
        total = total && v != UNDEFINED;
      }
    }
    if (total) {
      return {rx.object, ry.object, std::move(fixed)};
    }
    std::optional<NatTrans> found;
    for_each_hom(
        rx.object, ry.object,
        [&](NatTrans const& g) {
          found = g;
          return false;
        },
        {DEFAULT_HOM_BUDGET, false, fixed});
    if (!found) {
      throw std::logic_error(name() + ": no map extends the reflected units");
    }
    return *found;
  }

  TwoReflection::TwoReflection() : _cat(sites::discrete(2)) {}

  Verdict TwoReflection::is_local(Presheaf const& x) const {
    auto s = x.sizes();
    if ((s[0] == 0 && s[1] == 0) || (s[0] == 1 && s[1] == 1)) {
      return Verdict::yes();
    }
    return Verdict::no("sizes (" + std::to_string(s[0]) + "," + std::to_string(s[1]) + ") are neither (0,0) nor (1,1)");
  }

  Reflected TwoReflection::reflect_obj(Presheaf const& x) const {
    if (x.total_size() == 0) {
      return {x, identity(x)};
    }
    Presheaf one = terminal(_cat);
    return {one, to_terminal(x)};
  }

  namespace {

    // Vertex classes under the equivalence generated by the edges.
    std::vector<std::size_t> components(Presheaf const& x, MorphismId d0, MorphismId d1) {
      std::vector<std::size_t> parent(x.size(0));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t v) {
        while (parent[v] != v) {
          v = parent[v] = parent[parent[v]];
        }
        return v;
      };
      for (ElementId e = 0; e < x.size(1); ++e) {
        std::size_t a = find(x.act(d0, e)), b = find(x.act(d1, e));
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
      std::vector<std::size_t> out(x.size(0));
      for (std::size_t v = 0; v < out.size(); ++v) {
        out[v] = find(v);
      }
      return out;
    }

  }  // namespace

  Pi0Reflection::Pi0Reflection() : _cat(sites::reflexive_graph()) {}

  Verdict Pi0Reflection::is_local(Presheaf const& x) const {
    MorphismId d0 = _cat.morphism_id("d0"), s = _cat.morphism_id("s");
    for (ElementId e = 0; e < x.size(1); ++e) {
      if (x.act(s, x.act(d0, e)) != e) {
        return Verdict::no("edge " + x.label(1, e) + " is not a degenerate loop");
      }
    }
    return Verdict::yes();
  }

  Reflected Pi0Reflection::reflect_obj(Presheaf const& x) const {
    MorphismId d0 = _cat.morphism_id("d0"), d1 = _cat.morphism_id("d1"), s = _cat.morphism_id("s");
    auto       comp = components(x, d0, d1);
    std::vector<std::size_t> number(x.size(0), UNDEFINED);
    std::vector<ElementId>   reps;
    for (ElementId v = 0; v < x.size(0); ++v) {
      if (comp[v] == v) {
        number[v] = reps.size();
        reps.push_back(v);
      }
    }
    std::vector<std::vector<std::string>> labels(2);
    for (ElementId v : reps) {
      labels[0].push_back(x.label(0, v));
      labels[1].push_back(x.label(1, x.act(s, v)));
    }
    std::vector<std::vector<ElementId>> action(_cat.number_of_morphisms());
    std::vector<ElementId>              ident(reps.size());
    std::iota(ident.begin(), ident.end(), 0);
    for (auto& a : action) {
      a = ident;
    }
    Presheaf                            lx(_cat, std::move(labels), std::move(action));
    std::vector<std::vector<ElementId>> unit(2);
    for (ElementId v = 0; v < x.size(0); ++v) {
      unit[0].push_back(number[comp[v]]);
    }
    for (ElementId e = 0; e < x.size(1); ++e) {
      unit[1].push_back(number[comp[x.act(d0, e)]]);
    }
    return {lx, NatTrans(x, lx, std::move(unit))};
  }

  PreorderReflection::PreorderReflection() : _cat(sites::reflexive_graph()) {}

  Verdict PreorderReflection::is_local(Presheaf const& x) const {
    MorphismId d0 = _cat.morphism_id("d0"), d1 = _cat.morphism_id("d1");
    std::size_t const                   n = x.size(0);
    std::vector<std::vector<ElementId>> edge(n, std::vector<ElementId>(n, UNDEFINED));
    for (ElementId e = 0; e < x.size(1); ++e) {
      ElementId u = x.act(d0, e), v = x.act(d1, e);
      if (edge[u][v] != UNDEFINED) {
        return Verdict::no("parallel edges " + x.label(1, edge[u][v]) + " and " + x.label(1, e) + " from "
                           + x.label(0, u) + " to " + x.label(0, v));
      }
      edge[u][v] = e;
    }
    for (ElementId u = 0; u < n; ++u) {
      for (ElementId v = 0; v < n; ++v) {
        for (ElementId w = 0; w < n; ++w) {
          if (edge[u][v] != UNDEFINED && edge[v][w] != UNDEFINED && edge[u][w] == UNDEFINED) {
            return Verdict::no("edges " + x.label(1, edge[u][v]) + " and " + x.label(1, edge[v][w])
                               + " have no composite from " + x.label(0, u) + " to " + x.label(0, w));
          }
        }
      }
    }
    return Verdict::yes();
  }

  Reflected PreorderReflection::reflect_obj(Presheaf const& x) const {
    MorphismId d0 = _cat.morphism_id("d0"), d1 = _cat.morphism_id("d1"), s = _cat.morphism_id("s");
    std::size_t const              n = x.size(0);
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (ElementId v = 0; v < n; ++v) {
      reach[v][v] = true;
    }
    for (ElementId e = 0; e < x.size(1); ++e) {
      reach[x.act(d0, e)][x.act(d1, e)] = true;
    }
    for (ElementId w = 0; w < n; ++w) {
      for (ElementId u = 0; u < n; ++u) {
        for (ElementId v = 0; v < n; ++v) {
          if (reach[u][w] && reach[w][v]) {
            reach[u][v] = true;
          }
        }
      }
    }
    // Edges of LX are the reachable pairs, in lexicographic order. Each
    // keeps the label of the least edge of X over it, if any.
    std::vector<std::vector<ElementId>> pair_index(n, std::vector<ElementId>(n, UNDEFINED));
    std::vector<std::pair<ElementId, ElementId>> pairs;
    for (ElementId u = 0; u < n; ++u) {
      for (ElementId v = 0; v < n; ++v) {
        if (reach[u][v]) {
          pair_index[u][v] = pairs.size();
          pairs.emplace_back(u, v);
        }
      }
    }
    std::vector<std::vector<std::string>> labels(2);
    labels[0] = x.labels(0);
    std::vector<ElementId> first_edge(pairs.size(), UNDEFINED);
    for (ElementId e = 0; e < x.size(1); ++e) {
      ElementId p = pair_index[x.act(d0, e)][x.act(d1, e)];
      if (first_edge[p] == UNDEFINED) {
        first_edge[p] = e;
      }
    }
    std::map<std::string, int> seen;
    bool                       clash = false;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [u, v] = pairs[p];
      std::string l = first_edge[p] != UNDEFINED ? x.label(1, first_edge[p])
                                                 : x.label(0, u) + "<=" + x.label(0, v);
      clash         = clash || seen[l]++ > 0;
      labels[1].push_back(l);
    }
    if (clash) {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        labels[1][p] = "[" + x.label(0, pairs[p].first) + "," + x.label(0, pairs[p].second) + "]";
      }
    }
    std::vector<std::vector<ElementId>> action(_cat.number_of_morphisms());
    for (MorphismId h = 0; h < _cat.number_of_morphisms(); ++h) {
      ObjectId d = _cat.target(h);
      if (d == 0) {
        for (ElementId v = 0; v < n; ++v) {
          action[h].push_back(_cat.source(h) == 0 ? v : pair_index[v][v]);
        }
      } else {
        for (auto [u, v] : pairs) {
          if (_cat.source(h) == 0) {
            action[h].push_back(h == d0 ? u : v);
          } else if (_cat.is_identity(h)) {
            action[h].push_back(pair_index[u][v]);
          } else {
            // d0.s or d1.s
            ElementId w = (h == _cat.compose(d0, s)) ? u : v;
            action[h].push_back(pair_index[w][w]);
          }
        }
      }
    }
    Presheaf                            lx(_cat, std::move(labels), std::move(action));
    std::vector<std::vector<ElementId>> unit(2);
    for (ElementId v = 0; v < n; ++v) {
      unit[0].push_back(v);
    }
    for (ElementId e = 0; e < x.size(1); ++e) {
      unit[1].push_back(pair_index[x.act(d0, e)][x.act(d1, e)]);
    }
    return {lx, NatTrans(x, lx, std::move(unit))};
  }

  TableReflection::TableReflection(FinCat cat, std::string name, std::vector<Presheaf> local, std::vector<Entry> entries)
      : _cat(std::move(cat)), _name(std::move(name)), _local(std::move(local)), _entries(std::move(entries)) {
    for (auto const& e : _entries) {
      _local.push_back(e.unit.target());
    }
  }

  Verdict TableReflection::is_local(Presheaf const& x) const {
    for (auto const& a : _local) {
      if (is_isomorphic(x, a)) {
        return Verdict::yes();
      }
    }
    return Verdict::no("not isomorphic to any local shape of " + _name);
  }

  Reflected TableReflection::reflect_obj(Presheaf const& x) const {
    for (auto const& a : _local) {
      if (is_isomorphic(x, a)) {
        return {x, identity(x)};
      }
    }
    for (auto const& e : _entries) {
      if (auto phi = find_isomorphism(x, e.x)) {
        return {e.unit.target(), compose(e.unit, *phi)};
      }
    }
    throw std::out_of_range(_name + ": no table entry for " + describe(x));
  }

}  // namespace qtopos
