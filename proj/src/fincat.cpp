#include "qtopos/fincat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "qtopos/sieve.hpp"

namespace qtopos {

  struct FinCat::Data {
    std::string                          name;
    std::vector<std::string>             objects;
    std::vector<Morphism>                morphisms;
    std::vector<MorphismId>              identities;
    std::vector<MorphismId>              table;
    std::vector<std::vector<MorphismId>> hom;
    std::vector<std::vector<MorphismId>> into;
    std::vector<std::vector<MorphismId>> out_of;
    std::vector<bool>                    is_identity;
    std::unordered_map<std::string, ObjectId>   object_index;
    std::unordered_map<std::string, MorphismId> morphism_index;
    std::vector<MorphismId>              generators;
    std::vector<std::vector<MorphismId>> words;

    mutable std::once_flag               sieves_once;
    mutable std::unique_ptr<SieveTable>  sieves;
  };

  namespace {

    std::vector<bool> closure_of(FinCat const&                  cat,
                                 std::vector<MorphismId> const& gens,
                                 std::vector<std::vector<MorphismId>>* words) {
      std::vector<bool>       seen(cat.number_of_morphisms(), false);
      std::deque<MorphismId>  queue;
      if (words != nullptr) {
        words->assign(cat.number_of_morphisms(), {});
      }
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        seen[cat.identity(c)] = true;
        queue.push_back(cat.identity(c));
      }
      while (!queue.empty()) {
        MorphismId x = queue.front();
        queue.pop_front();
        for (MorphismId g : gens) {
          if (cat.source(g) != cat.target(x)) {
            continue;
          }
          MorphismId y = cat.compose(g, x);
          if (!seen[y]) {
            seen[y] = true;
            if (words != nullptr) {
              auto& w = (*words)[y];
              w.push_back(g);
              w.insert(w.end(), (*words)[x].begin(), (*words)[x].end());
            }
            queue.push_back(y);
          }
        }
      }
      return seen;
    }

    void compute_generators(FinCat const& cat,
                            std::vector<MorphismId>& gens,
                            std::vector<std::vector<MorphismId>>& words) {
      gens.clear();
      for (MorphismId f = 0; f < cat.number_of_morphisms(); ++f) {
        if (cat.is_identity(f)) {
          continue;
        }
        if (!closure_of(cat, gens, nullptr)[f]) {
          gens.push_back(f);
        }
      }
      // Drop generators made redundant by later ones.
      for (std::size_t i = gens.size(); i-- > 0;) {
        std::vector<MorphismId> others = gens;
        MorphismId              g      = others[i];
        others.erase(others.begin() + i);
        if (closure_of(cat, others, nullptr)[g]) {
          gens = std::move(others);
        }
      }
      closure_of(cat, gens, &words);
    }

    std::shared_ptr<FinCat::Data> make_data(std::string              name,
                                            std::vector<std::string> objects,
                                            std::vector<Morphism>    morphisms,
                                            std::vector<MorphismId>  identities,
                                            std::vector<MorphismId>  table) {
      auto d        = std::make_shared<FinCat::Data>();
      d->name       = std::move(name);
      d->objects    = std::move(objects);
      d->morphisms  = std::move(morphisms);
      d->identities = std::move(identities);
      d->table      = std::move(table);
      std::size_t n = d->objects.size();
      d->hom.assign(n * n, {});
      d->into.assign(n, {});
      d->out_of.assign(n, {});
      d->is_identity.assign(d->morphisms.size(), false);
      for (ObjectId c = 0; c < n; ++c) {
        d->object_index.emplace(d->objects[c], c);
        d->is_identity[d->identities[c]] = true;
      }
      for (MorphismId f = 0; f < d->morphisms.size(); ++f) {
        auto const& m = d->morphisms[f];
        d->hom[m.source * n + m.target].push_back(f);
        d->into[m.target].push_back(f);
        d->out_of[m.source].push_back(f);
        d->morphism_index.emplace(m.name, f);
      }
      return d;
    }

  }  // namespace

  FinCat::FinCat() {
    static std::shared_ptr<Data const> const empty = make_data("empty", {}, {}, {}, {});
    _data                                          = empty;
  }

  FinCat FinCat::from_table_unchecked(std::string              name,
                                      std::vector<std::string> objects,
                                      std::vector<Morphism>    morphisms,
                                      std::vector<MorphismId>  identities,
                                      std::vector<MorphismId>  table) {
    auto   d = make_data(std::move(name),
                       std::move(objects),
                       std::move(morphisms),
                       std::move(identities),
                       std::move(table));
    FinCat result(d);
    compute_generators(result, d->generators, d->words);
    return result;
  }

  std::string const& FinCat::name() const noexcept {
    return _data->name;
  }

  std::size_t FinCat::number_of_objects() const noexcept {
    return _data->objects.size();
  }

  std::size_t FinCat::number_of_morphisms() const noexcept {
    return _data->morphisms.size();
  }

  std::string const& FinCat::object_name(ObjectId c) const {
    return _data->objects.at(c);
  }

  std::optional<ObjectId> FinCat::find_object(std::string_view name) const {
    auto it = _data->object_index.find(std::string(name));
    if (it == _data->object_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  ObjectId FinCat::object(std::string_view name) const {
    auto c = find_object(name);
    if (!c) {
      throw ValidationError("unknown object '" + std::string(name) + "'",
                            {std::string(name)});
    }
    return *c;
  }

  Morphism const& FinCat::morphism(MorphismId f) const {
    return _data->morphisms.at(f);
  }

  std::optional<MorphismId> FinCat::find_morphism(std::string_view name) const {
    auto it = _data->morphism_index.find(std::string(name));
    if (it == _data->morphism_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  MorphismId FinCat::morphism_id(std::string_view name) const {
    auto f = find_morphism(name);
    if (!f) {
      throw ValidationError("unknown morphism '" + std::string(name) + "'",
                            {std::string(name)});
    }
    return *f;
  }

  MorphismId FinCat::identity(ObjectId c) const {
    return _data->identities.at(c);
  }

  bool FinCat::is_identity(MorphismId f) const {
    return _data->is_identity.at(f);
  }

  MorphismId FinCat::compose(MorphismId g, MorphismId f) const {
    return _data->table[g * _data->morphisms.size() + f];
  }

  std::vector<MorphismId> const& FinCat::hom(ObjectId a, ObjectId b) const {
    if (a >= number_of_objects() || b >= number_of_objects()) {
      throw ValidationError("unknown object in hom-set request");
    }
    return _data->hom[a * number_of_objects() + b];
  }

  std::vector<MorphismId> const& FinCat::into(ObjectId c) const {
    return _data->into.at(c);
  }

  std::vector<MorphismId> const& FinCat::out_of(ObjectId c) const {
    return _data->out_of.at(c);
  }

  std::vector<MorphismId> const& FinCat::generators() const {
    return _data->generators;
  }

  std::vector<MorphismId> const& FinCat::word(MorphismId f) const {
    return _data->words.at(f);
  }

  SieveTable const& FinCat::sieves() const {
    std::call_once(_data->sieves_once, [this] {
      FinCat weak(std::shared_ptr<Data const>(std::shared_ptr<Data const>{}, _data.get()));
      _data->sieves = std::make_unique<SieveTable>(weak);
    });
    return *_data->sieves;
  }

  bool FinCat::operator==(FinCat const& that) const {
    if (_data == that._data) {
      return true;
    }
    return _data->objects == that._data->objects
           && _data->morphisms == that._data->morphisms
           && _data->identities == that._data->identities
           && _data->table == that._data->table;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void check_names_unique(std::vector<std::string> const& names, char const* what) {
      std::vector<std::string> sorted = names;
      std::sort(sorted.begin(), sorted.end());
      auto it = std::adjacent_find(sorted.begin(), sorted.end());
      if (it != sorted.end()) {
        throw ValidationError(std::string("duplicate ") + what + " '" + *it + "'", {*it});
      }
    }

    FinCat validate_table(FinCatDescription const& raw) {
      std::size_t const n = raw.morphisms.size();
      std::size_t const k = raw.objects.size();
      check_names_unique(raw.objects, "object");
      std::vector<std::string> mnames;
      for (auto const& m : raw.morphisms) {
        if (m.source >= k || m.target >= k) {
          throw ValidationError("morphism '" + m.name + "' has an unknown endpoint",
                                {m.name});
        }
        mnames.push_back(m.name);
      }
      check_names_unique(mnames, "morphism");
      if (raw.identities.size() != k) {
        throw ValidationError("missing identity: expected one identity per object");
      }
      std::vector<MorphismId> ids;
      for (ObjectId c = 0; c < k; ++c) {
        auto it = std::find(mnames.begin(), mnames.end(), raw.identities[c]);
        if (it == mnames.end()) {
          throw ValidationError("missing identity for object '" + raw.objects[c] + "'",
                                {raw.objects[c]});
        }
        MorphismId id = static_cast<MorphismId>(it - mnames.begin());
        if (raw.morphisms[id].source != c || raw.morphisms[id].target != c) {
          throw ValidationError("identity '" + raw.identities[c] + "' is not an endomorphism of '"
                                    + raw.objects[c] + "'",
                                {raw.identities[c]});
        }
        ids.push_back(id);
      }
      if (raw.table.size() != n * n) {
        throw ValidationError("composition table has the wrong size");
      }
      auto const& ms = raw.morphisms;
      for (MorphismId g = 0; g < n; ++g) {
        for (MorphismId f = 0; f < n; ++f) {
          MorphismId gf = raw.table[g * n + f];
          bool       composable = ms[f].target == ms[g].source;
          if (!composable) {
            if (gf != UNDEFINED) {
              throw ValidationError("composite defined for non-composable pair ("
                                        + ms[g].name + ", " + ms[f].name + ")",
                                    {ms[g].name, ms[f].name});
            }
            continue;
          }
          if (gf == UNDEFINED) {
            throw ValidationError("composite undefined for composable pair (" + ms[g].name
                                      + ", " + ms[f].name + ")",
                                  {ms[g].name, ms[f].name});
          }
          if (gf >= n) {
            throw ValidationError("composite outside morphism list for (" + ms[g].name + ", "
                                      + ms[f].name + ")",
                                  {ms[g].name, ms[f].name});
          }
          if (ms[gf].source != ms[f].source || ms[gf].target != ms[g].target) {
            throw ValidationError("composite of (" + ms[g].name + ", " + ms[f].name
                                      + ") has the wrong endpoints",
                                  {ms[g].name, ms[f].name});
          }
        }
      }
      for (MorphismId f = 0; f < n; ++f) {
        if (raw.table[ids[ms[f].target] * n + f] != f
            || raw.table[f * n + ids[ms[f].source]] != f) {
          throw ValidationError("identity law fails for '" + ms[f].name + "'", {ms[f].name});
        }
      }
      for (MorphismId f = 0; f < n; ++f) {
        for (MorphismId g = 0; g < n; ++g) {
          if (ms[f].target != ms[g].source) {
            continue;
          }
          MorphismId gf = raw.table[g * n + f];
          for (MorphismId h = 0; h < n; ++h) {
            if (ms[g].target != ms[h].source) {
              continue;
            }
            MorphismId hg = raw.table[h * n + g];
            if (raw.table[h * n + gf] != raw.table[hg * n + f]) {
              throw ValidationError("composition is not associative on (" + ms[h].name + ", "
                                        + ms[g].name + ", " + ms[f].name + ")",
                                    {ms[h].name, ms[g].name, ms[f].name});
            }
          }
        }
      }
      return FinCat::from_table_unchecked(
          raw.name, raw.objects, raw.morphisms, std::move(ids), raw.table);
    }

    // Todd-Coxeter style enumeration of the quotient of the free category on
    // the generators by the congruence generated by the relations. A coset is
    // a morphism out of a fixed object; generators act by post-composition.
    class Enumerator {
     public:
      Enumerator(FinCatDescription const& raw) : _raw(raw) {
        std::size_t k = raw.objects.size();
        for (auto const& m : raw.morphisms) {
          if (m.source >= k || m.target >= k) {
            throw ValidationError("morphism '" + m.name + "' has an unknown endpoint",
                                  {m.name});
          }
        }
        for (auto const& r : raw.relations) {
          auto [ls, lt] = endpoints(r.lhs);
          auto [rs, rt] = endpoints(r.rhs);
          if (ls != rs || lt != rt) {
            throw ValidationError("relation '" + spell(r.lhs) + " = " + spell(r.rhs)
                                      + "' relates morphisms with different endpoints",
                                  {spell(r.lhs), spell(r.rhs)});
          }
          _rels.push_back({ls, letters(r.lhs), letters(r.rhs)});
        }
      }

      void run() {
        std::size_t k = _raw.objects.size();
        for (ObjectId c = 0; c < k; ++c) {
          new_coset(c, c);
        }
        for (std::size_t i = 0; i < _at.size(); ++i) {
          for (auto const& rel : _rels) {
            if (find(i) != i) {
              break;
            }
            if (rel.source != _at[i]) {
              continue;
            }
            std::size_t a = trace(i, rel.lhs);
            std::size_t b = trace(find(i), rel.rhs);
            coincide(a, b);
          }
          if (find(i) != i) {
            continue;
          }
          for (std::size_t g = 0; g < _raw.morphisms.size(); ++g) {
            if (_raw.morphisms[g].source == _at[i] && _table[i][g] == UNDEFINED) {
              std::size_t y = new_coset(_start[i], _raw.morphisms[g].target);
              _table[find(i)][g] = y;
            }
          }
        }
      }

      FinCat result() const {
        std::size_t k = _raw.objects.size();
        std::size_t ngens = _raw.morphisms.size();
        // Shortlex words by breadth-first search from the identities.
        std::vector<std::size_t>              live_index(_at.size(), UNDEFINED);
        std::vector<std::size_t>              order;
        std::vector<std::vector<std::size_t>> words(_at.size());
        std::deque<std::size_t>               queue;
        for (ObjectId c = 0; c < k; ++c) {
          std::size_t x = find(c);
          if (live_index[x] == UNDEFINED) {
            live_index[x] = order.size();
            order.push_back(x);
            queue.push_back(x);
          }
        }
        while (!queue.empty()) {
          std::size_t x = queue.front();
          queue.pop_front();
          for (std::size_t g = 0; g < ngens; ++g) {
            if (_raw.morphisms[g].source != _at[x]) {
              continue;
            }
            std::size_t y = find(_table[x][g]);
            if (live_index[y] == UNDEFINED) {
              live_index[y] = order.size();
              order.push_back(y);
              words[y] = words[x];
              words[y].insert(words[y].begin(), g);
              queue.push_back(y);
            }
          }
        }
        if (order.size() > _raw.budget) {
          throw BudgetExceeded("category closure exceeds the morphism budget");
        }
        // Names: identities, then generators, then synthesized words.
        std::vector<std::string> name(_at.size());
        std::vector<int>         rank(_at.size(), 2);
        for (ObjectId c = 0; c < k; ++c) {
          std::size_t x = find(c);
          if (name[x].empty()) {
            name[x] = identity_name(c);
            rank[x] = 0;
          }
        }
        for (std::size_t g = 0; g < ngens; ++g) {
          std::size_t x = find(_table[find(_raw.morphisms[g].source)][g]);
          if (name[x].empty()) {
            name[x] = _raw.morphisms[g].name;
            rank[x] = 1;
          }
        }
        std::vector<std::size_t> synth;
        for (std::size_t x : order) {
          if (name[x].empty()) {
            std::string s;
            for (std::size_t i = 0; i < words[x].size(); ++i) {
              s += (i == 0 ? "" : ".") + _raw.morphisms[words[x][i]].name;
            }
            name[x] = s;
            synth.push_back(x);
          }
        }
        std::vector<std::size_t> sorted;
        for (ObjectId c = 0; c < k; ++c) {
          std::size_t x = find(c);
          if (rank[x] == 0 && std::find(sorted.begin(), sorted.end(), x) == sorted.end()) {
            sorted.push_back(x);
          }
        }
        for (std::size_t g = 0; g < ngens; ++g) {
          std::size_t x = find(_table[find(_raw.morphisms[g].source)][g]);
          if (rank[x] == 1 && std::find(sorted.begin(), sorted.end(), x) == sorted.end()) {
            sorted.push_back(x);
          }
        }
        std::sort(synth.begin(), synth.end(), [&](std::size_t a, std::size_t b) {
          return name[a] < name[b];
        });
        sorted.insert(sorted.end(), synth.begin(), synth.end());

        std::vector<std::size_t> index(_at.size(), UNDEFINED);
        std::vector<Morphism>    morphisms;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
          index[sorted[i]] = i;
          morphisms.push_back({name[sorted[i]], _start[sorted[i]], _at[sorted[i]]});
        }
        std::vector<MorphismId> ids;
        for (ObjectId c = 0; c < k; ++c) {
          ids.push_back(index[find(c)]);
        }
        std::size_t             n = sorted.size();
        std::vector<MorphismId> table(n * n, UNDEFINED);
        for (std::size_t fi = 0; fi < n; ++fi) {
          for (std::size_t gi = 0; gi < n; ++gi) {
            if (morphisms[fi].target != morphisms[gi].source) {
              continue;
            }
            // Apply the word of g to the coset of f.
            std::size_t x = sorted[fi];
            auto const& w = words[sorted[gi]];
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
              x = find(_table[x][*it]);
            }
            table[gi * n + fi] = index[x];
          }
        }
        FinCatDescription full;
        full.name       = _raw.name;
        full.objects    = _raw.objects;
        full.morphisms  = morphisms;
        for (ObjectId c = 0; c < k; ++c) {
          full.identities.push_back(morphisms[ids[c]].name);
        }
        full.table = std::move(table);
        return validate_table(full);
      }

     private:
      struct Rel {
        ObjectId                 source;
        std::vector<std::size_t> lhs;  // in application order
        std::vector<std::size_t> rhs;
      };

      std::string identity_name(ObjectId c) const {
        return "id_" + _raw.objects[c];
      }

      static std::string spell(std::vector<std::string> const& w) {
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
          s += (i == 0 ? "" : ".") + w[i];
        }
        return s;
      }

      // Resolves a name to either a generator index or an identity (returned
      // as UNDEFINED with `obj` set).
      std::size_t resolve(std::string const& name, ObjectId& obj) const {
        for (std::size_t g = 0; g < _raw.morphisms.size(); ++g) {
          if (_raw.morphisms[g].name == name) {
            return g;
          }
        }
        for (ObjectId c = 0; c < _raw.objects.size(); ++c) {
          if (identity_name(c) == name) {
            obj = c;
            return UNDEFINED;
          }
        }
        throw ValidationError("relation mentions unknown morphism '" + name + "'", {name});
      }

      std::pair<ObjectId, ObjectId> endpoints(std::vector<std::string> const& w) const {
        if (w.empty()) {
          throw ValidationError("empty word in relation");
        }
        ObjectId src = UNDEFINED, tgt = UNDEFINED;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          ObjectId    obj = UNDEFINED;
          std::size_t g   = resolve(*it, obj);
          ObjectId    s   = g == UNDEFINED ? obj : _raw.morphisms[g].source;
          ObjectId    t   = g == UNDEFINED ? obj : _raw.morphisms[g].target;
          if (src == UNDEFINED) {
            src = s;
          } else if (tgt != s) {
            throw ValidationError("word '" + spell(w) + "' is not composable", {spell(w)});
          }
          tgt = t;
        }
        return {src, tgt};
      }

      std::vector<std::size_t> letters(std::vector<std::string> const& w) const {
        std::vector<std::size_t> out;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          ObjectId    obj = UNDEFINED;
          std::size_t g   = resolve(*it, obj);
          if (g != UNDEFINED) {
            out.push_back(g);
          }
        }
        return out;
      }

      std::size_t new_coset(ObjectId start, ObjectId at) {
        if (_live >= 4 * _raw.budget + 16) {
          throw BudgetExceeded("category closure exceeds the morphism budget");
        }
        _start.push_back(start);
        _at.push_back(at);
        _parent.push_back(_at.size() - 1);
        _table.emplace_back(_raw.morphisms.size(), UNDEFINED);
        ++_live;
        return _at.size() - 1;
      }

      std::size_t find(std::size_t x) const {
        while (_parent[x] != x) {
          x = _parent[x];
        }
        return x;
      }

      std::size_t trace(std::size_t x, std::vector<std::size_t> const& w) {
        for (std::size_t g : w) {
          x = find(x);
          if (_table[x][g] == UNDEFINED) {
            std::size_t y = new_coset(_start[x], _raw.morphisms[g].target);
            _table[find(x)][g] = y;
          }
          x = _table[find(x)][g];
        }
        return find(x);
      }

      void coincide(std::size_t a, std::size_t b) {
        std::vector<std::pair<std::size_t, std::size_t>> queue{{a, b}};
        while (!queue.empty()) {
          auto [x, y] = queue.back();
          queue.pop_back();
          x = find(x);
          y = find(y);
          if (x == y) {
            continue;
          }
          if (y < x) {
            std::swap(x, y);
          }
          _parent[y] = x;
          --_live;
          for (std::size_t g = 0; g < _raw.morphisms.size(); ++g) {
            if (_table[y][g] == UNDEFINED) {
              continue;
            }
            if (_table[x][g] == UNDEFINED) {
              _table[x][g] = _table[y][g];
            } else {
              queue.emplace_back(_table[x][g], _table[y][g]);
            }
          }
        }
      }

      FinCatDescription const&              _raw;
      std::vector<Rel>                      _rels;
      std::vector<ObjectId>                 _start;
      std::vector<ObjectId>                 _at;
      std::vector<std::size_t>              _parent;
      std::vector<std::vector<std::size_t>> _table;
      std::size_t                           _live = 0;
    };

  }  // namespace

  FinCat validate_category(FinCatDescription const& raw) {
    check_names_unique(raw.objects, "object");
    if (!raw.table.empty()) {
      return validate_table(raw);
    }
    std::vector<std::string> names;
    for (auto const& m : raw.morphisms) {
      names.push_back(m.name);
    }
    for (auto const& o : raw.objects) {
      names.push_back("id_" + o);
    }
    check_names_unique(names, "morphism");
    Enumerator e(raw);
    e.run();
    return e.result();
  }

  FinCat opposite(FinCat const& cat) {
    std::size_t           n = cat.number_of_morphisms();
    std::vector<Morphism> ms;
    for (MorphismId f = 0; f < n; ++f) {
      auto const& m = cat.morphism(f);
      ms.push_back({m.name, m.target, m.source});
    }
    std::vector<std::string> objects;
    std::vector<MorphismId>  ids;
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      objects.push_back(cat.object_name(c));
      ids.push_back(cat.identity(c));
    }
    std::vector<MorphismId> table(n * n, UNDEFINED);
    for (MorphismId g = 0; g < n; ++g) {
      for (MorphismId f = 0; f < n; ++f) {
        // g.f in the opposite is f.g in the original.
        table[g * n + f] = cat.compose(f, g);
      }
    }
    return FinCat::from_table_unchecked(
        cat.name(), std::move(objects), std::move(ms), std::move(ids), std::move(table));
  }

  std::vector<MorphismId> const& hom_set(FinCat const& cat, ObjectId a, ObjectId b) {
    return cat.hom(a, b);
  }

  namespace sites {

    FinCat reflexive_graph() {
      static FinCat const cat = [] {
        FinCatDescription d;
        d.name      = "rgph";
        d.objects   = {"0", "1"};
        d.morphisms = {{"d0", 0, 1}, {"d1", 0, 1}, {"s", 1, 0}};
        d.relations = {{{"s", "d0"}, {"id_0"}}, {{"s", "d1"}, {"id_0"}}};
        return validate_category(d);
      }();
      return cat;
    }

    FinCat idempotent_monoid() {
      static FinCat const cat = [] {
        FinCatDescription d;
        d.name      = "idem";
        d.objects   = {"*"};
        d.morphisms = {{"e", 0, 0}};
        d.relations = {{{"e", "e"}, {"e"}}};
        return validate_category(d);
      }();
      return cat;
    }

    FinCat discrete(std::size_t n) {
      FinCatDescription d;
      d.name = "discrete" + std::to_string(n);
      for (std::size_t i = 0; i < n; ++i) {
        d.objects.push_back(std::to_string(i));
      }
      return validate_category(d);
    }

  }  // namespace sites

}  // namespace qtopos
