#include "qtopos/presheaf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qtopos {

  ////////////////////////////////////////////////////////////////////////
  // Presheaf
  ////////////////////////////////////////////////////////////////////////

  Presheaf::Presheaf()
      : _labels(std::make_shared<std::vector<std::vector<std::string>> const>()),
        _action(std::make_shared<std::vector<std::vector<ElementId>> const>()) {}

  Presheaf::Presheaf(FinCat                                base,
                     std::vector<std::vector<std::string>> labels,
                     std::vector<std::vector<ElementId>>   action)
      : _base(std::move(base)),
        _labels(std::make_shared<std::vector<std::vector<std::string>> const>(std::move(labels))),
        _action(std::make_shared<std::vector<std::vector<ElementId>> const>(std::move(action))) {}

  FinCat const& Presheaf::base() const noexcept {
    return _base;
  }

  std::size_t Presheaf::size(ObjectId c) const {
    return (*_labels)[c].size();
  }

  std::size_t Presheaf::total_size() const {
    std::size_t n = 0;
    for (auto const& l : *_labels) {
      n += l.size();
    }
    return n;
  }

  std::vector<std::size_t> Presheaf::sizes() const {
    std::vector<std::size_t> out;
    for (auto const& l : *_labels) {
      out.push_back(l.size());
    }
    return out;
  }

  std::optional<ElementId> Presheaf::find(ObjectId c, std::string_view label) const {
    auto const& l  = (*_labels)[c];
    auto        it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) {
      return std::nullopt;
    }
    return static_cast<ElementId>(it - l.begin());
  }

  Presheaf Presheaf::relabel(std::vector<std::vector<std::string>> labels) const {
    Presheaf p = *this;
    p._labels  = std::make_shared<std::vector<std::vector<std::string>> const>(std::move(labels));
    return p;
  }

  bool Presheaf::same_structure(Presheaf const& that) const {
    if (!(_base == that._base) || sizes() != that.sizes()) {
      return false;
    }
    return _action == that._action || *_action == *that._action;
  }

  bool Presheaf::operator==(Presheaf const& that) const {
    return same_structure(that) && (_labels == that._labels || *_labels == *that._labels);
  }

  bool NatTrans::operator==(NatTrans const& that) const {
    return _components == that._components && _source.same_structure(that._source)
           && _target.same_structure(that._target);
  }

  ////////////////////////////////////////////////////////////////////////
  // Subpresheaf
  ////////////////////////////////////////////////////////////////////////

  Subpresheaf Subpresheaf::full(Presheaf const& ambient) {
    std::vector<std::vector<bool>> part;
    for (ObjectId c = 0; c < ambient.base().number_of_objects(); ++c) {
      part.emplace_back(ambient.size(c), true);
    }
    return {ambient, std::move(part)};
  }

  Subpresheaf Subpresheaf::empty(Presheaf const& ambient) {
    std::vector<std::vector<bool>> part;
    for (ObjectId c = 0; c < ambient.base().number_of_objects(); ++c) {
      part.emplace_back(ambient.size(c), false);
    }
    return {ambient, std::move(part)};
  }

  std::size_t Subpresheaf::size(ObjectId c) const {
    return static_cast<std::size_t>(std::count(_part[c].begin(), _part[c].end(), true));
  }

  bool Subpresheaf::is_subset_of(Subpresheaf const& that) const {
    for (std::size_t c = 0; c < _part.size(); ++c) {
      for (std::size_t x = 0; x < _part[c].size(); ++x) {
        if (_part[c][x] && !that._part[c][x]) {
          return false;
        }
      }
    }
    return true;
  }

  Subpresheaf Subpresheaf::intersect(Subpresheaf const& that) const {
    auto part = _part;
    for (std::size_t c = 0; c < part.size(); ++c) {
      for (std::size_t x = 0; x < part[c].size(); ++x) {
        part[c][x] = part[c][x] && that._part[c][x];
      }
    }
    return {_ambient, std::move(part)};
  }

  Subpresheaf Subpresheaf::unite(Subpresheaf const& that) const {
    auto part = _part;
    for (std::size_t c = 0; c < part.size(); ++c) {
      for (std::size_t x = 0; x < part[c].size(); ++x) {
        part[c][x] = part[c][x] || that._part[c][x];
      }
    }
    return {_ambient, std::move(part)};
  }

  namespace {

    // Position of each ambient element inside the part, UNDEFINED outside.
    std::vector<std::vector<ElementId>> part_index(Subpresheaf const& s) {
      std::vector<std::vector<ElementId>> idx;
      for (auto const& row : s.part()) {
        idx.emplace_back(row.size(), UNDEFINED);
        ElementId n = 0;
        for (std::size_t x = 0; x < row.size(); ++x) {
          if (row[x]) {
            idx.back()[x] = n++;
          }
        }
      }
      return idx;
    }

  }  // namespace

  Presheaf Subpresheaf::to_presheaf() const {
    auto const&                           cat = _ambient.base();
    auto                                  idx = part_index(*this);
    std::vector<std::vector<std::string>> labels(cat.number_of_objects());
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      for (ElementId x = 0; x < _ambient.size(c); ++x) {
        if (_part[c][x]) {
          labels[c].push_back(_ambient.label(c, x));
        }
      }
    }
    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      ObjectId d = cat.target(f);
      ObjectId c = cat.source(f);
      for (ElementId x = 0; x < _ambient.size(d); ++x) {
        if (_part[d][x]) {
          action[f].push_back(idx[c][_ambient.act(f, x)]);
        }
      }
    }
    return {cat, std::move(labels), std::move(action)};
  }

  NatTrans Subpresheaf::inclusion() const {
    std::vector<std::vector<ElementId>> comp(_part.size());
    for (std::size_t c = 0; c < _part.size(); ++c) {
      for (ElementId x = 0; x < _part[c].size(); ++x) {
        if (_part[c][x]) {
          comp[c].push_back(x);
        }
      }
    }
    return {to_presheaf(), _ambient, std::move(comp)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  Verdict check_functorial(Presheaf const& p) {
    auto const& cat = p.base();
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      if (p.action(f).size() != p.size(cat.target(f))) {
        return Verdict::no("action of " + cat.morphism_name(f) + " has the wrong domain");
      }
      for (ElementId x : p.action(f)) {
        if (x >= p.size(cat.source(f))) {
          return Verdict::no("action of " + cat.morphism_name(f) + " leaves its codomain");
        }
      }
    }
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      MorphismId id = cat.identity(c);
      for (ElementId x = 0; x < p.size(c); ++x) {
        if (p.act(id, x) != x) {
          return Verdict::no("identity " + cat.morphism_name(id) + " moves "
                             + p.label(c, x));
        }
      }
    }
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      for (MorphismId g : cat.out_of(cat.target(f))) {
        MorphismId gf = cat.compose(g, f);
        for (ElementId x = 0; x < p.size(cat.target(g)); ++x) {
          if (p.act(gf, x) != p.act(f, p.act(g, x))) {
            return Verdict::no("(" + cat.morphism_name(g) + ", " + cat.morphism_name(f)
                               + ") at " + p.label(cat.target(g), x));
          }
        }
      }
    }
    return Verdict::yes();
  }

  Presheaf validate_presheaf(FinCat const&                         base,
                             std::vector<std::vector<std::string>> labels,
                             std::vector<std::vector<ElementId>>   action) {
    if (labels.size() != base.number_of_objects()) {
      throw ValidationError("presheaf has the wrong number of carriers");
    }
    action.resize(base.number_of_morphisms());
    std::vector<bool> known(base.number_of_morphisms(), false);
    for (MorphismId f = 0; f < base.number_of_morphisms(); ++f) {
      if (base.is_identity(f)) {
        if (action[f].empty()) {
          action[f].resize(labels[base.target(f)].size());
          std::iota(action[f].begin(), action[f].end(), 0);
        }
        known[f] = true;
      } else if (!action[f].empty() || labels[base.target(f)].empty()) {
        known[f] = true;
      }
    }
    // Derive the rest: x.(g.f) = (x.g).f.
    bool progress = true;
    while (progress) {
      progress = false;
      for (MorphismId f = 0; f < base.number_of_morphisms(); ++f) {
        if (!known[f]) {
          continue;
        }
        for (MorphismId g : base.out_of(base.target(f))) {
          MorphismId gf = base.compose(g, f);
          if (!known[g] || known[gf]) {
            continue;
          }
          std::vector<ElementId> a(labels[base.target(g)].size());
          for (ElementId x = 0; x < a.size(); ++x) {
            ElementId y = action[g][x];
            if (y >= action[f].size()) {
              throw ValidationError("action of '" + base.morphism_name(g)
                                        + "' leaves its codomain",
                                    {base.morphism_name(g)});
            }
            a[x] = action[f][y];
          }
          action[gf] = std::move(a);
          known[gf]  = true;
          progress   = true;
        }
      }
    }
    for (MorphismId f = 0; f < base.number_of_morphisms(); ++f) {
      if (!known[f]) {
        throw ValidationError("missing action for morphism '" + base.morphism_name(f) + "'",
                              {base.morphism_name(f)});
      }
    }
    for (std::size_t c = 0; c < labels.size(); ++c) {
      auto sorted = labels[c];
      std::sort(sorted.begin(), sorted.end());
      auto it = std::adjacent_find(sorted.begin(), sorted.end());
      if (it != sorted.end()) {
        throw ValidationError("duplicate element '" + *it + "' at object '"
                                  + base.object_name(c) + "'",
                              {*it});
      }
    }
    Presheaf p(base, std::move(labels), std::move(action));
    // Re-run the full check to name the failing pair.
    auto const& cat = p.base();
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      if (p.action(f).size() != p.size(cat.target(f))) {
        throw ValidationError("action of '" + cat.morphism_name(f) + "' has the wrong domain",
                              {cat.morphism_name(f)});
      }
      for (ElementId x : p.action(f)) {
        if (x >= p.size(cat.source(f))) {
          throw ValidationError("action of '" + cat.morphism_name(f) + "' leaves its codomain",
                                {cat.morphism_name(f)});
        }
      }
    }
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      MorphismId id = cat.identity(c);
      for (ElementId x = 0; x < p.size(c); ++x) {
        if (p.act(id, x) != x) {
          throw ValidationError("identity '" + cat.morphism_name(id) + "' does not act trivially",
                                {cat.morphism_name(id), p.label(c, x)});
        }
      }
    }
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      for (MorphismId g : cat.out_of(cat.target(f))) {
        MorphismId gf = cat.compose(g, f);
        for (ElementId x = 0; x < p.size(cat.target(g)); ++x) {
          if (p.act(gf, x) != p.act(f, p.act(g, x))) {
            std::string gn = cat.morphism_name(g), fn = cat.morphism_name(f);
            throw ValidationError("action is not functorial on (" + gn + ", " + fn + ") at '"
                                      + p.label(cat.target(g), x) + "'",
                                  {gn, fn, p.label(cat.target(g), x)});
          }
        }
      }
    }
    return p;
  }

  Presheaf validate_presheaf(FinCat const& base, PresheafDescription const& raw) {
    if (raw.carriers.size() != base.number_of_objects()) {
      throw ValidationError("presheaf '" + raw.name + "' has the wrong number of carriers");
    }
    auto lookup = [&](ObjectId c, std::string const& x) {
      auto const& l  = raw.carriers[c];
      auto        it = std::find(l.begin(), l.end(), x);
      if (it == l.end()) {
        throw ValidationError("unknown element '" + x + "' at object '" + base.object_name(c)
                                  + "'",
                              {x});
      }
      return static_cast<ElementId>(it - l.begin());
    };
    std::vector<std::vector<ElementId>> action(base.number_of_morphisms());
    for (auto const& [name, pairs] : raw.actions) {
      MorphismId f = base.morphism_id(name);
      ObjectId   c = base.source(f), d = base.target(f);
      std::vector<ElementId> a(raw.carriers[d].size(), UNDEFINED);
      for (auto const& [x, y] : pairs) {
        ElementId i = lookup(d, x);
        if (a[i] != UNDEFINED) {
          throw ValidationError("action of '" + name + "' lists '" + x + "' twice", {name, x});
        }
        a[i] = lookup(c, y);
      }
      for (ElementId i = 0; i < a.size(); ++i) {
        if (a[i] == UNDEFINED) {
          throw ValidationError("action of '" + name + "' is undefined on '"
                                    + raw.carriers[d][i] + "'",
                                {name, raw.carriers[d][i]});
        }
      }
      if (!action[f].empty()) {
        throw ValidationError("action of '" + name + "' given twice", {name});
      }
      action[f] = std::move(a);
    }
    return validate_presheaf(base, raw.carriers, std::move(action));
  }

  Verdict check_natural(NatTrans const& alpha) {
    auto const& X   = alpha.source();
    auto const& Y   = alpha.target();
    auto const& cat = X.base();
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      ObjectId c = cat.source(f), d = cat.target(f);
      for (ElementId x = 0; x < X.size(d); ++x) {
        if (alpha(c, X.act(f, x)) != Y.act(f, alpha(d, x))) {
          return Verdict::no("square at " + cat.morphism_name(f) + " on " + X.label(d, x));
        }
      }
    }
    return Verdict::yes();
  }

  NatTrans validate_nat(Presheaf const&                     source,
                        Presheaf const&                     target,
                        std::vector<std::vector<ElementId>> components) {
    auto const& cat = source.base();
    if (!(cat == target.base())) {
      throw ValidationError("natural transformation between presheaves on different bases");
    }
    if (components.size() != cat.number_of_objects()) {
      throw ValidationError("natural transformation has the wrong number of components");
    }
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      if (components[c].size() != source.size(c)) {
        throw ValidationError("component at '" + cat.object_name(c) + "' has the wrong domain",
                              {cat.object_name(c)});
      }
      for (ElementId y : components[c]) {
        if (y >= target.size(c)) {
          throw ValidationError("component at '" + cat.object_name(c)
                                    + "' leaves its codomain",
                                {cat.object_name(c)});
        }
      }
    }
    NatTrans alpha(source, target, std::move(components));
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      ObjectId c = cat.source(f), d = cat.target(f);
      for (ElementId x = 0; x < source.size(d); ++x) {
        if (alpha(c, source.act(f, x)) != target.act(f, alpha(d, x))) {
          throw ValidationError("not natural: square at '" + cat.morphism_name(f)
                                    + "' fails on '" + source.label(d, x) + "'",
                                {cat.object_name(d), cat.morphism_name(f), source.label(d, x)});
        }
      }
    }
    return alpha;
  }

  NatTrans validate_nat(
      Presheaf const& source,
      Presheaf const& target,
      std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> const&
          components) {
    auto const&                         cat = source.base();
    std::vector<std::vector<ElementId>> comp(cat.number_of_objects());
    std::vector<bool>                   given(cat.number_of_objects(), false);
    for (auto const& [obj, pairs] : components) {
      ObjectId c = cat.object(obj);
      if (given[c]) {
        throw ValidationError("component at '" + obj + "' given twice", {obj});
      }
      given[c] = true;
      comp[c].assign(source.size(c), UNDEFINED);
      for (auto const& [x, y] : pairs) {
        auto xi = source.find(c, x);
        auto yi = target.find(c, y);
        if (!xi || !yi) {
          throw ValidationError("unknown element in component at '" + obj + "'",
                                {!xi ? x : y});
        }
        comp[c][*xi] = *yi;
      }
      for (ElementId x = 0; x < source.size(c); ++x) {
        if (comp[c][x] == UNDEFINED) {
          throw ValidationError("component at '" + obj + "' is undefined on '"
                                    + source.label(c, x) + "'",
                                {obj, source.label(c, x)});
        }
      }
    }
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      if (!given[c] && source.size(c) > 0) {
        throw ValidationError("missing component at '" + cat.object_name(c) + "'",
                              {cat.object_name(c)});
      }
    }
    return validate_nat(source, target, std::move(comp));
  }

  Subpresheaf validate_subpresheaf(Presheaf const& ambient, std::vector<std::vector<bool>> part) {
    auto const& cat = ambient.base();
    if (part.size() != cat.number_of_objects()) {
      throw ValidationError("subpresheaf has the wrong number of parts");
    }
    for (ObjectId c = 0; c < part.size(); ++c) {
      if (part[c].size() != ambient.size(c)) {
        throw ValidationError("subpresheaf part at '" + cat.object_name(c)
                              + "' has the wrong size");
      }
    }
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      ObjectId c = cat.source(f), d = cat.target(f);
      for (ElementId x = 0; x < ambient.size(d); ++x) {
        if (part[d][x] && !part[c][ambient.act(f, x)]) {
          throw ValidationError("subpresheaf is not closed under '" + cat.morphism_name(f)
                                    + "' at '" + ambient.label(d, x) + "'",
                                {cat.morphism_name(f), ambient.label(d, x)});
        }
      }
    }
    return {ambient, std::move(part)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Basic constructions
  ////////////////////////////////////////////////////////////////////////

  NatTrans identity(Presheaf const& p) {
    std::vector<std::vector<ElementId>> comp;
    for (ObjectId c = 0; c < p.base().number_of_objects(); ++c) {
      comp.emplace_back(p.size(c));
      std::iota(comp.back().begin(), comp.back().end(), 0);
    }
    return {p, p, std::move(comp)};
  }

  NatTrans compose(NatTrans const& beta, NatTrans const& alpha) {
    if (!alpha.target().same_structure(beta.source())) {
      throw std::invalid_argument("compose: natural transformations are not composable");
    }
    auto comp = alpha.components();
    for (std::size_t c = 0; c < comp.size(); ++c) {
      for (auto& x : comp[c]) {
        x = beta(c, x);
      }
    }
    return {alpha.source(), beta.target(), std::move(comp)};
  }

  NatTrans inverse(NatTrans const& alpha) {
    if (!is_iso(alpha)) {
      throw std::invalid_argument("inverse: natural transformation is not invertible");
    }
    std::vector<std::vector<ElementId>> comp;
    for (std::size_t c = 0; c < alpha.components().size(); ++c) {
      comp.emplace_back(alpha.target().size(c));
      for (ElementId x = 0; x < alpha.component(c).size(); ++x) {
        comp[c][alpha(c, x)] = x;
      }
    }
    return {alpha.target(), alpha.source(), std::move(comp)};
  }

  Presheaf yoneda(FinCat const& cat, ObjectId c) {
    std::vector<std::vector<std::string>> labels(cat.number_of_objects());
    std::vector<std::vector<ElementId>>   pos(cat.number_of_objects());
    std::vector<ElementId>                index(cat.number_of_morphisms(), UNDEFINED);
    for (ObjectId d = 0; d < cat.number_of_objects(); ++d) {
      for (MorphismId g : cat.hom(d, c)) {
        index[g] = labels[d].size();
        labels[d].push_back(cat.morphism_name(g));
        pos[d].push_back(g);
      }
    }
    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
      for (MorphismId g : pos[cat.target(f)]) {
        action[f].push_back(index[cat.compose(g, f)]);
      }
    }
    return {cat, std::move(labels), std::move(action)};
  }

  NatTrans yoneda_map(FinCat const& cat, MorphismId f) {
    ObjectId                            c = cat.source(f), d = cat.target(f);
    Presheaf                            yc = yoneda(cat, c);
    Presheaf                            yd = yoneda(cat, d);
    std::vector<std::vector<ElementId>> comp(cat.number_of_objects());
    for (ObjectId e = 0; e < cat.number_of_objects(); ++e) {
      auto const& to_d = cat.hom(e, d);
      for (MorphismId g : cat.hom(e, c)) {
        MorphismId fg = cat.compose(f, g);
        comp[e].push_back(
            static_cast<ElementId>(std::find(to_d.begin(), to_d.end(), fg) - to_d.begin()));
      }
    }
    return {yc, yd, std::move(comp)};
  }

  Presheaf constant(FinCat const& cat, std::vector<std::string> labels) {
    std::vector<std::vector<std::string>> l(cat.number_of_objects(), labels);
    std::vector<std::vector<ElementId>>   action(cat.number_of_morphisms());
    for (auto& a : action) {
      a.resize(labels.size());
      std::iota(a.begin(), a.end(), 0);
    }
    return {cat, std::move(l), std::move(action)};
  }

  Presheaf terminal(FinCat const& cat) {
    return constant(cat, {"*"});
  }

  Presheaf initial(FinCat const& cat) {
    return constant(cat, {});
  }

  NatTrans to_terminal(Presheaf const& p) {
    std::vector<std::vector<ElementId>> comp;
    for (ObjectId c = 0; c < p.base().number_of_objects(); ++c) {
      comp.emplace_back(p.size(c), 0);
    }
    return {p, terminal(p.base()), std::move(comp)};
  }

  NatTrans from_initial(FinCat const& cat, Presheaf const& p) {
    return {initial(cat), p, std::vector<std::vector<ElementId>>(cat.number_of_objects())};
  }

  ////////////////////////////////////////////////////////////////////////
  // Mono / epi / iso, images
  ////////////////////////////////////////////////////////////////////////

  Verdict is_mono(NatTrans const& alpha) {
    auto const& X = alpha.source();
    auto const& cat = X.base();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      std::vector<ElementId> seen(alpha.target().size(c), UNDEFINED);
      for (ElementId x = 0; x < X.size(c); ++x) {
        ElementId y = alpha(c, x);
        if (seen[y] != UNDEFINED) {
          return Verdict::no("at " + cat.object_name(c) + ": " + X.label(c, seen[y]) + " and "
                             + X.label(c, x) + " both map to "
                             + alpha.target().label(c, y));
        }
        seen[y] = x;
      }
    }
    return Verdict::yes();
  }

  Verdict is_epi(NatTrans const& alpha) {
    auto const& Y   = alpha.target();
    auto const& cat = Y.base();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      std::vector<bool> hit(Y.size(c), false);
      for (ElementId y : alpha.component(c)) {
        hit[y] = true;
      }
      for (ElementId y = 0; y < Y.size(c); ++y) {
        if (!hit[y]) {
          return Verdict::no("at " + cat.object_name(c) + ": " + Y.label(c, y)
                             + " is not in the image");
        }
      }
    }
    return Verdict::yes();
  }

  Verdict is_iso(NatTrans const& alpha) {
    if (auto v = is_mono(alpha); !v) {
      return v;
    }
    return is_epi(alpha);
  }

  Subpresheaf image(NatTrans const& alpha) {
    auto s = Subpresheaf::empty(alpha.target());
    std::vector<std::vector<bool>> part = s.part();
    for (std::size_t c = 0; c < part.size(); ++c) {
      for (ElementId y : alpha.component(c)) {
        part[c][y] = true;
      }
    }
    return {alpha.target(), std::move(part)};
  }

  ImageFactorization image_factorization(NatTrans const& alpha) {
    Subpresheaf im  = image(alpha);
    auto        idx = part_index(im);
    NatTrans    m   = im.inclusion();
    auto        comp = alpha.components();
    for (std::size_t c = 0; c < comp.size(); ++c) {
      for (auto& y : comp[c]) {
        y = idx[c][y];
      }
    }
    NatTrans e(alpha.source(), m.source(), std::move(comp));
    return {std::move(e), std::move(m)};
  }

  Subpresheaf pullback(Subpresheaf const& a, NatTrans const& f) {
    auto const&                    X = f.source();
    std::vector<std::vector<bool>> part(X.base().number_of_objects());
    for (ObjectId c = 0; c < part.size(); ++c) {
      for (ElementId x = 0; x < X.size(c); ++x) {
        part[c].push_back(a.contains(c, f(c, x)));
      }
    }
    return {X, std::move(part)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Descriptions
  ////////////////////////////////////////////////////////////////////////

  std::string describe_element(Presheaf const& p, ObjectId c, ElementId x) {
    return p.label(c, x) + "@" + p.base().object_name(c);
  }

  std::string describe(Presheaf const& p) {
    std::ostringstream out;
    auto const&        cat = p.base();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      out << (c == 0 ? "" : " ") << cat.object_name(c) << ":{";
      for (ElementId x = 0; x < p.size(c); ++x) {
        out << (x == 0 ? "" : ",") << p.label(c, x);
      }
      out << "}";
    }
    for (MorphismId f : cat.generators()) {
      out << " " << cat.morphism_name(f) << ":[";
      for (ElementId x = 0; x < p.size(cat.target(f)); ++x) {
        out << (x == 0 ? "" : ",") << p.label(cat.target(f), x) << "->"
            << p.label(cat.source(f), p.act(f, x));
      }
      out << "]";
    }
    return out.str();
  }

  std::string describe(NatTrans const& alpha) {
    std::ostringstream out;
    auto const&        cat = alpha.source().base();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      out << (c == 0 ? "" : " ") << cat.object_name(c) << ":[";
      for (ElementId x = 0; x < alpha.source().size(c); ++x) {
        out << (x == 0 ? "" : ",") << alpha.source().label(c, x) << "->"
            << alpha.target().label(c, alpha(c, x));
      }
      out << "]";
    }
    return out.str();
  }

}  // namespace qtopos
