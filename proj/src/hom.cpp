#include "qtopos/hom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qtopos {

  namespace {

    class HomEnumerator {
     public:
      HomEnumerator(Presheaf const& f, Presheaf const& g, HomSearch const& options)
          : _f(f), _g(g), _opt(options), _cat(f.base()) {
        if (!(f.base() == g.base())) {
          throw std::invalid_argument("presheaves over different bases");
        }
        std::size_t const k = _cat.number_of_objects();
        _value.resize(k);
        _used.resize(k);
        for (ObjectId c = 0; c < k; ++c) {
          _value[c].assign(f.size(c), UNDEFINED);
          _used[c].assign(g.size(c), 0);
        }
        // Elements with many restrictions first, so that one choice forces
        // as much as possible.
        std::vector<ObjectId> objects(k);
        std::iota(objects.begin(), objects.end(), 0);
        std::stable_sort(objects.begin(), objects.end(), [&](ObjectId a, ObjectId b) {
          return _cat.into(a).size() > _cat.into(b).size();
        });
        for (ObjectId c : objects) {
          for (ElementId x = 0; x < f.size(c); ++x) {
            _order.emplace_back(c, x);
          }
        }
      }

      void run(std::function<bool(NatTrans const&)> const& visit) {
        _visit = &visit;
        if (_opt.injective) {
          for (ObjectId c = 0; c < _cat.number_of_objects(); ++c) {
            if (_f.size(c) > _g.size(c)) {
              return;
            }
          }
        }
        if (!_opt.fixed.empty()) {
          for (ObjectId c = 0; c < _cat.number_of_objects(); ++c) {
            for (ElementId x = 0; x < _f.size(c); ++x) {
              ElementId y = _opt.fixed.at(c).at(x);
              if (y != UNDEFINED && !assign(c, x, y)) {
                return;
              }
            }
          }
        }
        search(0);
      }

     private:
      struct TrailEntry {
        ObjectId  c;
        ElementId x;
      };

      bool set(ObjectId c, ElementId x, ElementId y) {
        ElementId& v = _value[c][x];
        if (v != UNDEFINED) {
          return v == y;
        }
        if (_opt.injective && _used[c][y] > 0) {
          return false;
        }
        v = y;
        ++_used[c][y];
        _trail.push_back({c, x});
        return true;
      }

      bool assign(ObjectId c, ElementId x, ElementId y) {
        if (!set(c, x, y)) {
          return false;
        }
        for (MorphismId h : _cat.into(c)) {
          if (!set(_cat.source(h), _f.act(h, x), _g.act(h, y))) {
            return false;
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          auto [c, x] = _trail.back();
          _trail.pop_back();
          --_used[c][_value[c][x]];
          _value[c][x] = UNDEFINED;
        }
      }

      bool search(std::size_t i) {
        while (i < _order.size() && _value[_order[i].first][_order[i].second] != UNDEFINED) {
          ++i;
        }
        if (i == _order.size()) {
          return (*_visit)(NatTrans(_f, _g, _value));
        }
        auto [c, x] = _order[i];
        for (ElementId y = 0; y < _g.size(c); ++y) {
          if (++_tried > _opt.budget) {
            throw BudgetExceeded("natural transformation search exceeded its budget of "
                                 + std::to_string(_opt.budget) + " candidates");
          }
          std::size_t mark = _trail.size();
          bool        go   = true;
          if (assign(c, x, y)) {
            go = search(i + 1);
          }
          undo(mark);
          if (!go) {
            return false;
          }
        }
        return true;
      }

      Presheaf const&                             _f;
      Presheaf const&                             _g;
      HomSearch const&                            _opt;
      FinCat                                      _cat;
      std::vector<std::vector<ElementId>>         _value;
      std::vector<std::vector<std::size_t>>       _used;
      std::vector<std::pair<ObjectId, ElementId>> _order;
      std::vector<TrailEntry>                     _trail;
      std::size_t                                 _tried = 0;
      std::function<bool(NatTrans const&)> const* _visit = nullptr;
    };

  }  // namespace

  void for_each_hom(Presheaf const&                             f,
                    Presheaf const&                             g,
                    std::function<bool(NatTrans const&)> const& visit,
                    HomSearch const&                            options) {
    HomEnumerator(f, g, options).run(visit);
  }

  std::vector<NatTrans> hom_presheaf_set(Presheaf const& f, Presheaf const& g, std::size_t budget) {
    std::vector<NatTrans> out;
    for_each_hom(
        f, g,
        [&](NatTrans const& a) {
          out.push_back(a);
          return true;
        },
        {budget, false, {}});
    return out;
  }

  std::size_t count_homs(Presheaf const& f, Presheaf const& g, std::size_t budget) {
    std::size_t n = 0;
    for_each_hom(
        f, g,
        [&](NatTrans const&) {
          ++n;
          return true;
        },
        {budget, false, {}});
    return n;
  }

  std::optional<NatTrans> find_isomorphism(Presheaf const& f, Presheaf const& g, std::size_t budget) {
    if (!(f.base() == g.base()) || f.sizes() != g.sizes()) {
      return std::nullopt;
    }
    std::optional<NatTrans> found;
    for_each_hom(
        f, g,
        [&](NatTrans const& a) {
          found = a;
          return false;
        },
        {budget, true, {}});
    return found;
  }

  bool is_isomorphic(Presheaf const& f, Presheaf const& g, std::size_t budget) {
    return find_isomorphism(f, g, budget).has_value();
  }

  Exponential exponential(Presheaf const& f, Presheaf const& g, std::size_t budget) {
    FinCat const&     cat = f.base();
    std::size_t const k   = cat.number_of_objects();

    std::vector<Cone>                                          yf(k);
    std::vector<std::vector<NatTrans>>                         thetas(k);
    std::vector<std::map<std::vector<std::vector<ElementId>>, ElementId>> index(k);
    std::vector<std::vector<std::string>>                      labels(k);
    std::size_t                                                counter = 0;
    for (ObjectId c = 0; c < k; ++c) {
      yf[c]     = product(yoneda(cat, c), f);
      thetas[c] = hom_presheaf_set(yf[c].apex, g, budget);
      for (ElementId i = 0; i < thetas[c].size(); ++i) {
        index[c].emplace(thetas[c][i].components(), i);
        labels[c].push_back("h" + std::to_string(counter++));
      }
    }

    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId h = 0; h < cat.number_of_morphisms(); ++h) {
      ObjectId d = cat.source(h), c = cat.target(h);
      // y_h x 1 : y_d x F -> y_c x F
      NatTrans yh   = yoneda_map(cat, h);
      NatTrans ymap = product_map(yh, identity(f), yf[d], yf[c]);
      for (auto const& theta : thetas[c]) {
        action[h].push_back(index[d].at(compose(theta, ymap).components()));
      }
    }
    Presheaf object(cat, std::move(labels), std::move(action));

    Cone prod = product(object, f);
    std::vector<std::vector<ElementId>> ev(k);
    for (ObjectId c = 0; c < k; ++c) {
      // The element (id_c, x) of y_c x F.
      std::map<std::pair<ElementId, ElementId>, ElementId> pos;
      for (ElementId e = 0; e < yf[c].apex.size(c); ++e) {
        pos.emplace(std::pair{yf[c].legs[0](c, e), yf[c].legs[1](c, e)}, e);
      }
      auto const& ends   = cat.hom(c, c);
      auto const  id_pos = static_cast<ElementId>(
          std::find(ends.begin(), ends.end(), cat.identity(c)) - ends.begin());
      for (ElementId e = 0; e < prod.apex.size(c); ++e) {
        ElementId t = prod.legs[0](c, e);
        ElementId x = prod.legs[1](c, e);
        ev[c].push_back(thetas[c][t](c, pos.at({id_pos, x})));
      }
    }
    NatTrans evaluation(prod.apex, g, std::move(ev));
    return {object, prod, evaluation, std::move(thetas)};
  }

}  // namespace qtopos
