#include "qtopos/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>

namespace qtopos {

  namespace {

    // Elements of all carriers numbered consecutively, object by object.
    struct Flat {
      std::vector<std::size_t> offset;
      std::vector<ObjectId>    object;

      explicit Flat(Presheaf const& f) {
        std::size_t const k = f.base().number_of_objects();
        offset.assign(k + 1, 0);
        for (ObjectId c = 0; c < k; ++c) {
          offset[c + 1] = offset[c] + f.size(c);
          for (ElementId x = 0; x < f.size(c); ++x) {
            object.push_back(c);
          }
        }
      }
      std::size_t size() const {
        return object.size();
      }
    };

    class Canonizer {
     public:
      explicit Canonizer(Presheaf const& f) : _f(f), _cat(f.base()), _flat(f) {
        std::size_t const n = _flat.size();
        _incoming.resize(n);
        for (MorphismId h = 0; h < _cat.number_of_morphisms(); ++h) {
          if (_cat.is_identity(h)) {
            continue;
          }
          ObjectId c = _cat.source(h), d = _cat.target(h);
          for (ElementId y = 0; y < _f.size(d); ++y) {
            _incoming[_flat.offset[c] + _f.act(h, y)].emplace_back(h, _flat.offset[d] + y);
          }
        }
      }

      // Returns the minimal encoding and the element order achieving it.
      std::pair<CanonicalForm, std::vector<std::size_t>> run() {
        std::vector<std::size_t> colour(_flat.size());
        for (std::size_t v = 0; v < colour.size(); ++v) {
          colour[v] = _flat.object[v];
        }
        refine(colour);
        search(colour);
        return {_best, _best_order};
      }

     private:
      void refine(std::vector<std::size_t>& colour) const {
        std::size_t const n       = colour.size();
        std::size_t       classes = std::set<std::size_t>(colour.begin(), colour.end()).size();
        while (true) {
          using Sig = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::pair<MorphismId, std::size_t>>>;
          std::vector<Sig> sig(n);
          for (std::size_t v = 0; v < n; ++v) {
            ObjectId                 c = _flat.object[v];
            ElementId                x = v - _flat.offset[c];
            std::vector<std::size_t> down;
            for (MorphismId h : _cat.into(c)) {
              if (!_cat.is_identity(h)) {
                down.push_back(colour[_flat.offset[_cat.source(h)] + _f.act(h, x)]);
              }
            }
            std::vector<std::pair<MorphismId, std::size_t>> up;
            for (auto [h, w] : _incoming[v]) {
              up.emplace_back(h, colour[w]);
            }
            std::sort(up.begin(), up.end());
            sig[v] = Sig{colour[v], std::move(down), std::move(up)};
          }
          std::vector<Sig> sorted = sig;
          std::sort(sorted.begin(), sorted.end());
          sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
          for (std::size_t v = 0; v < n; ++v) {
            colour[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
          }
          if (sorted.size() == classes) {
            return;
          }
          classes = sorted.size();
        }
      }

      void search(std::vector<std::size_t> const& colour) {
        std::map<std::size_t, std::vector<std::size_t>> cells;
        for (std::size_t v = 0; v < colour.size(); ++v) {
          cells[colour[v]].push_back(v);
        }
        for (auto const& [col, members] : cells) {
          if (members.size() < 2) {
            continue;
          }
          for (std::size_t chosen : members) {
            std::vector<std::size_t> next(colour.size());
            for (std::size_t v = 0; v < colour.size(); ++v) {
              next[v] = 2 * colour[v] + ((colour[v] == col && v != chosen) ? 1 : 0);
            }
            refine(next);
            search(next);
          }
          return;
        }
        // Discrete: colours order the elements, and colour order respects
        // objects.
        std::vector<std::size_t> order(colour.size());
        for (std::size_t v = 0; v < colour.size(); ++v) {
          order[colour[v]] = v;
        }
        std::vector<std::size_t> pos(colour.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
          pos[order[i]] = i;
        }
        CanonicalForm form;
        for (ObjectId c = 0; c < _cat.number_of_objects(); ++c) {
          form.push_back(_f.size(c));
        }
        for (MorphismId h = 0; h < _cat.number_of_morphisms(); ++h) {
          ObjectId c = _cat.source(h), d = _cat.target(h);
          for (std::size_t i = _flat.offset[d]; i < _flat.offset[d + 1]; ++i) {
            ElementId y = order[i] - _flat.offset[d];
            form.push_back(pos[_flat.offset[c] + _f.act(h, y)] - _flat.offset[c]);
          }
        }
        if (_best.empty() || form < _best) {
          _best       = std::move(form);
          _best_order = std::move(order);
        }
      }

      Presheaf const&                                           _f;
      FinCat                                                    _cat;
      Flat                                                      _flat;
      std::vector<std::vector<std::pair<MorphismId, std::size_t>>> _incoming;
      CanonicalForm                                             _best;
      std::vector<std::size_t>                                  _best_order;
    };

    std::string element_label(ObjectId c, ElementId x) {
      return std::string(1, static_cast<char>('a' + c)) + std::to_string(x);
    }

    // The presheaf with elements renumbered in canonical order.
    Presheaf canonical_copy(Presheaf const& f) {
      auto [form, order] = Canonizer(f).run();
      (void)form;
      FinCat const&                       cat = f.base();
      Flat                                flat(f);
      std::vector<std::size_t>            pos(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = i;
      }
      std::vector<std::vector<std::string>> labels(cat.number_of_objects());
      for (ObjectId c = 0; c < labels.size(); ++c) {
        for (ElementId x = 0; x < f.size(c); ++x) {
          labels[c].push_back(element_label(c, x));
        }
      }
      std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
      for (MorphismId h = 0; h < cat.number_of_morphisms(); ++h) {
        ObjectId c = cat.source(h), d = cat.target(h);
        for (std::size_t i = flat.offset[d]; i < flat.offset[d + 1]; ++i) {
          ElementId y = order[i] - flat.offset[d];
          action[h].push_back(pos[flat.offset[c] + f.act(h, y)] - flat.offset[c]);
        }
      }
      return {cat, std::move(labels), std::move(action)};
    }

    class StructureSearch {
     public:
      StructureSearch(FinCat const& cat, std::vector<std::size_t> sizes, std::size_t& nodes, std::size_t budget)
          : _cat(cat), _sizes(std::move(sizes)), _nodes(nodes), _budget(budget) {
        _gens = cat.generators();
        std::stable_sort(_gens.begin(), _gens.end(), [&](MorphismId a, MorphismId b) {
          return cat.into(cat.target(a)).size() < cat.into(cat.target(b)).size();
        });
        _value.assign(cat.number_of_morphisms(), {});
        for (MorphismId g : _gens) {
          _value[g].assign(_sizes[cat.target(g)], UNDEFINED);
          for (ElementId x = 0; x < _sizes[cat.target(g)]; ++x) {
            _slots.emplace_back(g, x);
          }
        }
      }

      template <typename Visit>
      void run(Visit&& visit) {
        for (MorphismId g : _gens) {
          if (_sizes[_cat.target(g)] > 0 && _sizes[_cat.source(g)] == 0) {
            return;
          }
        }
        search(0, visit);
      }

     private:
      ElementId eval(MorphismId m, ElementId x) const {
        for (MorphismId g : _cat.word(m)) {
          x = _value[g][x];
          if (x == UNDEFINED) {
            return UNDEFINED;
          }
        }
        return x;
      }

      bool consistent() const {
        for (MorphismId g : _gens) {
          ObjectId d = _cat.target(g);
          for (MorphismId m : _cat.into(_cat.source(g))) {
            MorphismId gm = _cat.compose(g, m);
            for (ElementId x = 0; x < _sizes[d]; ++x) {
              ElementId lhs = eval(gm, x);
              if (lhs == UNDEFINED) {
                continue;
              }
              ElementId xg = _value[g][x];
              if (xg == UNDEFINED) {
                continue;
              }
              ElementId rhs = eval(m, xg);
              if (rhs != UNDEFINED && rhs != lhs) {
                return false;
              }
            }
          }
        }
        return true;
      }

      template <typename Visit>
      void search(std::size_t i, Visit& visit) {
        if (++_nodes > _budget) {
          throw BudgetExceeded("presheaf enumeration exceeded its budget of " + std::to_string(_budget)
                               + " nodes");
        }
        if (i == _slots.size()) {
          std::vector<std::vector<ElementId>> action(_cat.number_of_morphisms());
          for (MorphismId m = 0; m < _cat.number_of_morphisms(); ++m) {
            for (ElementId x = 0; x < _sizes[_cat.target(m)]; ++x) {
              action[m].push_back(eval(m, x));
            }
          }
          std::vector<std::vector<std::string>> labels(_cat.number_of_objects());
          for (ObjectId c = 0; c < labels.size(); ++c) {
            for (ElementId x = 0; x < _sizes[c]; ++x) {
              labels[c].push_back(element_label(c, x));
            }
          }
          visit(Presheaf(_cat, std::move(labels), std::move(action)));
          return;
        }
        auto [g, x] = _slots[i];
        for (ElementId y = 0; y < _sizes[_cat.source(g)]; ++y) {
          _value[g][x] = y;
          if (consistent()) {
            search(i + 1, visit);
          }
        }
        _value[g][x] = UNDEFINED;
      }

      FinCat                                        _cat;
      std::vector<std::size_t>                      _sizes;
      std::size_t&                                  _nodes;
      std::size_t                                   _budget;
      std::vector<MorphismId>                       _gens;
      std::vector<std::vector<ElementId>>           _value;
      std::vector<std::pair<MorphismId, ElementId>> _slots;
    };

  }  // namespace

  CanonicalForm canonical_form(Presheaf const& f) {
    return Canonizer(f).run().first;
  }

  std::vector<Presheaf> enumerate_presheaves(FinCat const&                   cat,
                                             std::vector<std::size_t> const& bounds,
                                             std::size_t                     budget) {
    std::size_t const        k = cat.number_of_objects();
    std::vector<std::size_t> bound(k);
    for (ObjectId c = 0; c < k; ++c) {
      bound[c] = bounds.size() == 1 ? bounds[0] : bounds.at(c);
    }
    std::map<std::tuple<std::size_t, std::vector<std::size_t>, CanonicalForm>, Presheaf> found;
    std::size_t              nodes = 0;
    std::vector<std::size_t> sizes(k, 0);
    while (true) {
      StructureSearch search(cat, sizes, nodes, budget);
      search.run([&](Presheaf const& p) {
        CanonicalForm form  = canonical_form(p);
        std::size_t   total = p.total_size();
        auto          key   = std::tuple{total, sizes, form};
        if (found.find(key) == found.end()) {
          found.emplace(std::move(key), canonical_copy(p));
        }
      });
      ObjectId c = 0;
      while (c < k && sizes[c] == bound[c]) {
        sizes[c++] = 0;
      }
      if (c == k) {
        break;
      }
      ++sizes[c];
    }
    std::vector<Presheaf> out;
    for (auto& [key, p] : found) {
      out.push_back(p);
    }
    return out;
  }

  std::vector<Presheaf> unique_up_to_iso(std::vector<Presheaf> const& items) {
    std::set<std::pair<std::size_t, CanonicalForm>> seen;
    std::vector<Presheaf>                           out;
    for (auto const& p : items) {
      if (seen.emplace(p.base().number_of_objects(), canonical_form(p)).second) {
        out.push_back(p);
      }
    }
    return out;
  }

}  // namespace qtopos
