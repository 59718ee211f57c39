// Brute-force reference implementations used to cross-check the library.
// They share only the data types with it: sieves, matching families, plus,
// local-equality quotients, hom counts and presheaf enumeration are all
// recomputed here from the definitions.

#ifndef QTOPOS_TESTS_ORACLES_HPP_
#define QTOPOS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtopos/hom.hpp"
#include "qtopos/presheaf.hpp"
#include "qtopos/sheaf.hpp"
#include "qtopos/topology.hpp"

namespace oracle {

  using namespace qtopos;

  // Calls visit on every tuple in prod [0, radix[i]).
  inline void odometer(std::vector<std::size_t> const& radix, std::function<void(std::vector<std::size_t> const&)> const& visit) {
    for (auto r : radix)
      if (r == 0)
        return;
    std::vector<std::size_t> digits(radix.size(), 0);
    for (;;) {
      visit(digits);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == radix[i])
        digits[i++] = 0;
      if (i == digits.size())
        return;
    }
  }

  // Subsets of the morphisms into c closed under precomposition.
  inline std::vector<std::set<MorphismId>> sieves(FinCat const& cat, ObjectId c) {
    auto const&                      into = cat.into(c);
    std::vector<std::set<MorphismId>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << into.size()); ++mask) {
      std::set<MorphismId> s;
      for (std::size_t i = 0; i < into.size(); ++i)
        if (mask >> i & 1)
          s.insert(into[i]);
      bool closed = true;
      for (auto f : s)
        for (auto g : cat.into(cat.source(f)))
          if (!s.count(cat.compose(f, g)))
            closed = false;
      if (closed)
        out.push_back(std::move(s));
    }
    return out;
  }

  inline std::set<MorphismId> members(FinCat const& cat, ObjectId c, std::size_t s) {
    std::set<MorphismId> out;
    for (auto f : cat.into(c))
      if (cat.sieves().contains(c, s, f))
        out.insert(f);
    return out;
  }

  // T1, T2, T3 straight from the definitions.
  inline bool topology_axioms(FinCat const& cat, std::vector<std::vector<bool>> const& covers) {
    auto const& st = cat.sieves();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      if (!covers[c][st.maximal(c)])
        return false;
      for (std::size_t s = 0; s < st.count(c); ++s) {
        if (!covers[c][s])
          continue;
        auto ms = members(cat, c, s);
        for (auto h : cat.into(c)) {
          std::set<MorphismId> pulled;
          for (auto g : cat.into(cat.source(h)))
            if (ms.count(cat.compose(h, g)))
              pulled.insert(g);
          bool found = false;
          for (std::size_t t = 0; t < st.count(cat.source(h)); ++t)
            if (members(cat, cat.source(h), t) == pulled)
              found = covers[cat.source(h)][t];
          if (!found)
            return false;
        }
        for (std::size_t r = 0; r < st.count(c); ++r) {
          auto mr    = members(cat, c, r);
          bool local = true;
          for (auto f : ms) {
            std::set<MorphismId> pulled;
            for (auto g : cat.into(cat.source(f)))
              if (mr.count(cat.compose(f, g)))
                pulled.insert(g);
            bool found = false;
            for (std::size_t t = 0; t < st.count(cat.source(f)); ++t)
              if (members(cat, cat.source(f), t) == pulled)
                found = covers[cat.source(f)][t];
            local = local && found;
          }
          if (local && !covers[c][r])
            return false;
        }
      }
    }
    return true;
  }

  // Families over every member of sieve s (not just its generators),
  // indexed by MorphismId, UNDEFINED outside.
  inline std::vector<std::vector<ElementId>> families(Presheaf const& p, ObjectId c, std::size_t s) {
    auto const&              cat = p.base();
    std::vector<MorphismId>  ms;
    std::vector<std::size_t> radix;
    for (auto f : members(cat, c, s)) {
      ms.push_back(f);
      radix.push_back(p.size(cat.source(f)));
    }
    std::vector<std::vector<ElementId>> out;
    if (ms.empty()) {
      out.emplace_back(cat.number_of_morphisms(), UNDEFINED);
      return out;
    }
    odometer(radix, [&](std::vector<std::size_t> const& digits) {
      std::vector<ElementId> fam(cat.number_of_morphisms(), UNDEFINED);
      for (std::size_t i = 0; i < ms.size(); ++i)
        fam[ms[i]] = digits[i];
      for (auto f : ms)
        for (auto g : cat.into(cat.source(f)))
          if (fam[cat.compose(f, g)] != p.act(g, fam[f]))
            return;
      out.push_back(std::move(fam));
    });
    return out;
  }

  inline std::size_t amalgamation_count(Presheaf const& p, ObjectId c, std::size_t s, std::vector<ElementId> const& fam) {
    std::size_t n = 0;
    for (ElementId x = 0; x < p.size(c); ++x) {
      bool ok = true;
      for (auto f : members(p.base(), c, s))
        ok = ok && p.act(f, x) == fam[f];
      n += ok;
    }
    return n;
  }

  // Largest and smallest number of amalgamations over all covering families.
  inline std::pair<std::size_t, std::size_t> amalgamation_range(Presheaf const& p, GTopology const& j) {
    std::size_t lo = SIZE_MAX, hi = 0;
    auto const& cat = p.base();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
      for (std::size_t s = 0; s < cat.sieves().count(c); ++s) {
        if (!j.covers(c, s))
          continue;
        for (auto const& fam : families(p, c, s)) {
          auto n = amalgamation_count(p, c, s, fam);
          lo     = std::min(lo, n);
          hi     = std::max(hi, n);
        }
      }
    return {lo == SIZE_MAX ? 1 : lo, hi};
  }

  inline bool is_sheaf(Presheaf const& p, GTopology const& j) {
    auto [lo, hi] = amalgamation_range(p, j);
    return lo == 1 && hi <= 1;
  }

  inline bool is_separated(Presheaf const& p, GTopology const& j) {
    return amalgamation_range(p, j).second <= 1;
  }

  struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
      std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    }
    void unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  };

  // Builds a presheaf from elements per object numbered by class, given how
  // each morphism acts on class representatives.
  inline Presheaf build(FinCat const& cat, std::vector<std::size_t> const& sizes,
                        std::function<ElementId(MorphismId, ElementId)> const& act) {
    std::vector<std::vector<std::string>> labels(cat.number_of_objects());
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
      for (std::size_t i = 0; i < sizes[c]; ++i)
        labels[c].push_back("o" + std::to_string(i));
    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f)
      for (ElementId x = 0; x < sizes[cat.target(f)]; ++x)
        action[f].push_back(act(f, x));
    return Presheaf(cat, std::move(labels), std::move(action));
  }

  // Plus construction over all covers: pairs (S, family) modulo agreement on
  // a cover contained in both.
  inline Reflected plus(Presheaf const& p, GTopology const& j) {
    auto const& cat = p.base();
    auto const& st  = cat.sieves();
    using Key       = std::pair<std::size_t, std::vector<ElementId>>;
    std::size_t                         n_obj = cat.number_of_objects();
    std::vector<std::vector<Key>>       pairs(n_obj);
    std::vector<std::map<Key, std::size_t>> index(n_obj);
    std::vector<std::vector<std::size_t>>   class_of(n_obj);
    std::vector<std::size_t>                sizes(n_obj);
    for (ObjectId c = 0; c < n_obj; ++c) {
      for (std::size_t s = 0; s < st.count(c); ++s)
        if (j.covers(c, s))
          for (auto& fam : families(p, c, s)) {
            index[c][{s, fam}] = pairs[c].size();
            pairs[c].push_back({s, std::move(fam)});
          }
      UnionFind uf(pairs[c].size());
      for (std::size_t a = 0; a < pairs[c].size(); ++a)
        for (std::size_t b = a + 1; b < pairs[c].size(); ++b)
          for (std::size_t r = 0; r < st.count(c); ++r) {
            if (!j.covers(c, r) || !st.subset(c, r, pairs[c][a].first) || !st.subset(c, r, pairs[c][b].first))
              continue;
            bool agree = true;
            for (auto f : members(cat, c, r))
              agree = agree && pairs[c][a].second[f] == pairs[c][b].second[f];
            if (agree) {
              uf.unite(a, b);
              break;
            }
          }
      std::map<std::size_t, std::size_t> renumber;
      for (std::size_t a = 0; a < pairs[c].size(); ++a) {
        auto root = uf.find(a);
        if (!renumber.count(root))
          renumber.emplace(root, renumber.size());
        class_of[c].push_back(renumber[root]);
      }
      sizes[c] = renumber.size();
    }
    std::vector<std::vector<std::size_t>> rep(n_obj);
    for (ObjectId c = 0; c < n_obj; ++c) {
      rep[c].assign(sizes[c], 0);
      for (std::size_t a = pairs[c].size(); a-- > 0;)
        rep[c][class_of[c][a]] = a;
    }
    auto restrict = [&](MorphismId f, ObjectId c, Key const& key) {
      ObjectId               d = cat.source(f);
      std::vector<ElementId> fam(cat.number_of_morphisms(), UNDEFINED);
      std::set<MorphismId>   pulled;
      for (auto g : cat.into(d))
        if (st.contains(c, key.first, cat.compose(f, g))) {
          pulled.insert(g);
          fam[g] = key.second[cat.compose(f, g)];
        }
      std::size_t t = 0;
      while (members(cat, d, t) != pulled)
        ++t;
      return class_of[d][index[d].at({t, fam})];
    };
    Presheaf out = build(cat, sizes, [&](MorphismId f, ElementId x) {
      ObjectId c = cat.target(f);
      return restrict(f, c, pairs[c][rep[c][x]]);
    });
    std::vector<std::vector<ElementId>> unit(n_obj);
    for (ObjectId c = 0; c < n_obj; ++c)
      for (ElementId x = 0; x < p.size(c); ++x) {
        std::vector<ElementId> fam(cat.number_of_morphisms(), UNDEFINED);
        for (auto f : cat.into(c))
          fam[f] = p.act(f, x);
        unit[c].push_back(class_of[c][index[c].at({st.maximal(c), fam})]);
      }
    return {out, NatTrans(p, out, std::move(unit))};
  }

  // x ~ y iff they restrict equally along every member of some cover.
  inline Reflected separated_quotient(Presheaf const& p, GTopology const& j) {
    auto const&                           cat = p.base();
    std::vector<std::vector<std::size_t>> class_of(cat.number_of_objects());
    std::vector<std::vector<ElementId>>   rep(cat.number_of_objects());
    std::vector<std::size_t>              sizes(cat.number_of_objects());
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      UnionFind uf(p.size(c));
      for (ElementId x = 0; x < p.size(c); ++x)
        for (ElementId y = x + 1; y < p.size(c); ++y)
          for (std::size_t s = 0; s < cat.sieves().count(c); ++s) {
            if (!j.covers(c, s))
              continue;
            bool agree = true;
            for (auto f : members(cat, c, s))
              agree = agree && p.act(f, x) == p.act(f, y);
            if (agree)
              uf.unite(x, y);
          }
      std::map<std::size_t, std::size_t> renumber;
      for (ElementId x = 0; x < p.size(c); ++x) {
        auto root = uf.find(x);
        if (!renumber.count(root)) {
          renumber.emplace(root, renumber.size());
          rep[c].push_back(x);
        }
        class_of[c].push_back(renumber[root]);
      }
      sizes[c] = renumber.size();
    }
    Presheaf out = build(cat, sizes, [&](MorphismId f, ElementId x) {
      return class_of[cat.source(f)][p.act(f, rep[cat.target(f)][x])];
    });
    return {out, NatTrans(p, out, class_of)};
  }

  inline NatTrans then(NatTrans const& alpha, NatTrans const& beta) {
    std::vector<std::vector<ElementId>> comp(alpha.components().size());
    for (std::size_t c = 0; c < comp.size(); ++c)
      for (auto y : alpha.component(c))
        comp[c].push_back(beta(c, y));
    return NatTrans(alpha.source(), beta.target(), std::move(comp));
  }

  // Repeat: j-sheafify by two plus steps, then quotient by k-local equality,
  // until the object is a j-sheaf and k-separated. nullopt if it does not
  // settle within `rounds`.
  inline std::optional<Reflected> fixpoint_biseparated(Presheaf const& x, BiSite const& bs, int rounds = 8) {
    Presheaf y    = x;
    NatTrans unit = identity(x);
    for (int i = 0; i < rounds; ++i) {
      if (oracle::is_sheaf(y, bs.j) && oracle::is_separated(y, bs.k))
        return Reflected{y, unit};
      auto a = oracle::plus(y, bs.j);
      auto b = oracle::plus(a.object, bs.j);
      auto q = oracle::separated_quotient(b.object, bs.k);
      unit   = then(then(then(unit, a.unit), b.unit), q.unit);
      y      = q.object;
    }
    return std::nullopt;
  }

  // Number of natural transformations, by trying every function.
  inline std::size_t hom_count(Presheaf const& f, Presheaf const& g) {
    auto const&              cat = f.base();
    std::vector<std::size_t> radix;
    std::vector<std::pair<ObjectId, ElementId>> slots;
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
      for (ElementId x = 0; x < f.size(c); ++x) {
        radix.push_back(g.size(c));
        slots.emplace_back(c, x);
      }
    if (slots.empty())
      return 1;
    std::vector<std::vector<std::size_t>> pos(cat.number_of_objects());
    for (std::size_t i = 0; i < slots.size(); ++i)
      pos[slots[i].first].push_back(i);
    std::size_t n = 0;
    odometer(radix, [&](std::vector<std::size_t> const& v) {
      for (MorphismId m = 0; m < cat.number_of_morphisms(); ++m)
        for (ElementId x = 0; x < f.size(cat.target(m)); ++x)
          if (g.act(m, v[pos[cat.target(m)][x]]) != v[pos[cat.source(m)][f.act(m, x)]])
            return;
      ++n;
    });
    return n;
  }

  // Actions of every morphism derived from the generators' actions.
  inline std::vector<std::vector<ElementId>> derive_actions(FinCat const&                                 cat,
                                                            std::vector<std::size_t> const&               sizes,
                                                            std::map<MorphismId, std::vector<ElementId>> const& gen) {
    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      auto const& w = cat.word(f);
      for (ElementId x = 0; x < sizes[cat.target(f)]; ++x) {
        ElementId y = x;
        for (auto g : w)
          y = gen.at(g)[y];
        action[f].push_back(y);
      }
    }
    return action;
  }

  inline bool functorial(FinCat const& cat, std::vector<std::size_t> const& sizes, std::vector<std::vector<ElementId>> const& action) {
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
      for (ElementId x = 0; x < sizes[c]; ++x)
        if (action[cat.identity(c)][x] != x)
          return false;
    for (MorphismId g = 0; g < cat.number_of_morphisms(); ++g)
      for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
        auto gf = cat.compose(g, f);
        if (gf == UNDEFINED)
          continue;
        for (ElementId x = 0; x < sizes[cat.target(g)]; ++x)
          if (action[gf][x] != action[f][action[g][x]])
            return false;
      }
    return true;
  }

  // Least relabelled action table over all carrier permutations.
  inline std::vector<std::size_t> canonical(FinCat const& cat, std::vector<std::size_t> const& sizes,
                                            std::vector<std::vector<ElementId>> const& action) {
    std::vector<std::vector<std::size_t>> perm(cat.number_of_objects());
    for (ObjectId c = 0; c < perm.size(); ++c) {
      perm[c].resize(sizes[c]);
      std::iota(perm[c].begin(), perm[c].end(), 0);
    }
    std::vector<std::size_t> best;
    std::function<void(ObjectId)> go = [&](ObjectId c) {
      if (c == perm.size()) {
        std::vector<std::size_t> code(sizes.begin(), sizes.end());
        for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
          std::vector<std::size_t> row(sizes[cat.target(f)]);
          for (ElementId x = 0; x < row.size(); ++x)
            row[perm[cat.target(f)][x]] = perm[cat.source(f)][action[f][x]];
          code.insert(code.end(), row.begin(), row.end());
        }
        if (best.empty() || code < best)
          best = std::move(code);
        return;
      }
      std::sort(perm[c].begin(), perm[c].end());
      do
        go(c + 1);
      while (std::next_permutation(perm[c].begin(), perm[c].end()));
    };
    go(0);
    return best;
  }

  inline std::vector<std::size_t> canonical(Presheaf const& p) {
    return canonical(p.base(), p.sizes(), p.actions());
  }

  // Isomorphism classes of presheaves with |X(c)| <= bound, by trying every
  // action of the generators.
  inline std::set<std::vector<std::size_t>> presheaf_classes(FinCat const& cat, std::size_t bound) {
    std::set<std::vector<std::size_t>> out;
    auto const&                        gens = cat.generators();
    odometer(std::vector<std::size_t>(cat.number_of_objects(), bound + 1), [&](std::vector<std::size_t> const& sizes) {
      std::vector<std::size_t> radix;
      for (auto g : gens)
        for (std::size_t i = 0; i < sizes[cat.target(g)]; ++i)
          radix.push_back(sizes[cat.source(g)]);
      auto visit = [&](std::vector<std::size_t> const& digits) {
        std::map<MorphismId, std::vector<ElementId>> gen;
        std::size_t                                  k = 0;
        for (auto g : gens) {
          auto& row = gen[g];
          for (std::size_t i = 0; i < sizes[cat.target(g)]; ++i)
            row.push_back(digits[k++]);
        }
        auto action = derive_actions(cat, sizes, gen);
        if (functorial(cat, sizes, action))
          out.insert(canonical(cat, sizes, action));
      };
      if (radix.empty())
        visit({});
      else
        odometer(radix, visit);
    });
    return out;
  }

}  // namespace oracle

#endif  // QTOPOS_TESTS_ORACLES_HPP_
