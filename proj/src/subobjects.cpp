#include "qtopos/subobjects.hpp"

#include <stdexcept>
#include <string>

#include "qtopos/sieve.hpp"

namespace qtopos {

  namespace {

    enum class Mark : unsigned char { Unknown, In, Out };

    class SubobjectSearch {
     public:
      SubobjectSearch(Presheaf const& f, std::size_t budget) : _f(f), _cat(f.base()), _budget(budget) {
        std::size_t const k = _cat.number_of_objects();
        _mark.resize(k);
        _up.resize(k);
        for (ObjectId c = 0; c < k; ++c) {
          _mark[c].assign(f.size(c), Mark::Unknown);
          _up[c].resize(f.size(c));
          for (ElementId x = 0; x < f.size(c); ++x) {
            _order.emplace_back(c, x);
          }
        }
        // _up[d][z] lists the elements restricting to z.
        for (ObjectId c = 0; c < k; ++c) {
          for (ElementId x = 0; x < f.size(c); ++x) {
            for (MorphismId h : _cat.into(c)) {
              _up[_cat.source(h)][f.act(h, x)].emplace_back(c, x);
            }
          }
        }
      }

      std::vector<Subpresheaf> run() {
        search(0);
        return std::move(_out);
      }

     private:
      bool force(ObjectId c, ElementId x, Mark m) {
        if (_mark[c][x] != Mark::Unknown) {
          return _mark[c][x] == m;
        }
        _mark[c][x] = m;
        _trail.emplace_back(c, x);
        if (m == Mark::In) {
          for (MorphismId h : _cat.into(c)) {
            if (!force(_cat.source(h), _f.act(h, x), Mark::In)) {
              return false;
            }
          }
        } else {
          for (auto [d, y] : _up[c][x]) {
            if (!force(d, y, Mark::Out)) {
              return false;
            }
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          auto [c, x] = _trail.back();
          _trail.pop_back();
          _mark[c][x] = Mark::Unknown;
        }
      }

      void search(std::size_t i) {
        if (++_nodes > _budget) {
          throw BudgetExceeded("subobject enumeration exceeded its budget of " + std::to_string(_budget)
                               + " nodes");
        }
        while (i < _order.size() && _mark[_order[i].first][_order[i].second] != Mark::Unknown) {
          ++i;
        }
        if (i == _order.size()) {
          std::vector<std::vector<bool>> part(_mark.size());
          for (ObjectId c = 0; c < _mark.size(); ++c) {
            for (Mark m : _mark[c]) {
              part[c].push_back(m == Mark::In);
            }
          }
          _out.emplace_back(_f, std::move(part));
          return;
        }
        auto [c, x] = _order[i];
        for (Mark m : {Mark::Out, Mark::In}) {
          std::size_t mark = _trail.size();
          if (force(c, x, m)) {
            search(i + 1);
          }
          undo(mark);
        }
      }

      Presheaf const&                                           _f;
      FinCat                                                    _cat;
      std::size_t                                               _budget;
      std::size_t                                               _nodes = 0;
      std::vector<std::vector<Mark>>                            _mark;
      std::vector<std::vector<std::vector<std::pair<ObjectId, ElementId>>>> _up;
      std::vector<std::pair<ObjectId, ElementId>>               _order;
      std::vector<std::pair<ObjectId, ElementId>>               _trail;
      std::vector<Subpresheaf>                                  _out;
    };

  }  // namespace

  std::vector<Subpresheaf> enumerate_subobjects(Presheaf const& f, std::size_t budget) {
    return SubobjectSearch(f, budget).run();
  }

  Subpresheaf generated_subobject(Presheaf const& f, std::vector<std::vector<ElementId>> const& gens) {
    FinCat const&                  cat = f.base();
    std::vector<std::vector<bool>> part(cat.number_of_objects());
    for (ObjectId c = 0; c < part.size(); ++c) {
      part[c].assign(f.size(c), false);
    }
    for (ObjectId c = 0; c < gens.size(); ++c) {
      for (ElementId x : gens[c]) {
        for (MorphismId h : cat.into(c)) {
          part[cat.source(h)][f.act(h, x)] = true;
        }
      }
    }
    return {f, std::move(part)};
  }

  SubobjectClassifier subobject_classifier(FinCat const& cat) {
    SieveTable const&                     st = cat.sieves();
    std::vector<std::vector<std::string>> labels(cat.number_of_objects());
    for (ObjectId c = 0; c < labels.size(); ++c) {
      for (std::size_t s = 0; s < st.count(c); ++s) {
        labels[c].push_back(st.describe(c, s));
      }
    }
    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId h = 0; h < cat.number_of_morphisms(); ++h) {
      for (std::size_t s = 0; s < st.count(cat.target(h)); ++s) {
        action[h].push_back(st.pullback(s, h));
      }
    }
    Presheaf                            omega(cat, std::move(labels), std::move(action));
    std::vector<std::vector<ElementId>> t(cat.number_of_objects());
    for (ObjectId c = 0; c < t.size(); ++c) {
      t[c].push_back(st.maximal(c));
    }
    return {omega, NatTrans(terminal(cat), omega, std::move(t))};
  }

  NatTrans classify(Subpresheaf const& a, SubobjectClassifier const& omega) {
    Presheaf const&                     f   = a.ambient();
    FinCat const&                       cat = f.base();
    SieveTable const&                   st  = cat.sieves();
    std::vector<std::vector<ElementId>> chi(cat.number_of_objects());
    for (ObjectId c = 0; c < chi.size(); ++c) {
      for (ElementId x = 0; x < f.size(c); ++x) {
        MorphismSet members(cat.number_of_morphisms(), false);
        for (MorphismId h : cat.into(c)) {
          members[h] = a.contains(cat.source(h), f.act(h, x));
        }
        chi[c].push_back(st.index(c, members));
      }
    }
    return {f, omega.omega, std::move(chi)};
  }

  NatTrans classify(NatTrans const& m, SubobjectClassifier const& omega) {
    if (!is_mono(m)) {
      throw std::invalid_argument("classify: map is not a monomorphism");
    }
    return classify(image(m), omega);
  }

  Subpresheaf true_part(NatTrans const& chi, SubobjectClassifier const& omega) {
    Presheaf const&                f   = chi.source();
    FinCat const&                  cat = f.base();
    std::vector<std::vector<bool>> part(cat.number_of_objects());
    for (ObjectId c = 0; c < part.size(); ++c) {
      for (ElementId x = 0; x < f.size(c); ++x) {
        part[c].push_back(chi(c, x) == omega.truth(c, 0));
      }
    }
    return {f, std::move(part)};
  }

}  // namespace qtopos
