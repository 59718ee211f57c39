#include "qtopos/sieve.hpp"

#include <algorithm>

namespace qtopos {

  namespace {

    MorphismSet close(FinCat const& cat, ObjectId, std::vector<MorphismId> const& gens) {
      MorphismSet s(cat.number_of_morphisms(), false);
      for (MorphismId f : gens) {
        for (MorphismId g : cat.into(cat.source(f))) {
          s[cat.compose(f, g)] = true;
        }
      }
      return s;
    }

    void enumerate(FinCat const&                  cat,
                   std::vector<MorphismId> const& into,
                   std::size_t                    i,
                   MorphismSet&                   in,
                   MorphismSet&                   out,
                   std::vector<MorphismSet>&      result) {
      if (i == into.size()) {
        result.push_back(in);
        return;
      }
      MorphismId f = into[i];
      if (in[f]) {
        enumerate(cat, into, i + 1, in, out, result);
        return;
      }
      out[f] = true;
      enumerate(cat, into, i + 1, in, out, result);
      out[f] = false;

      std::vector<MorphismId> added;
      bool                    ok = true;
      for (MorphismId g : cat.into(cat.source(f))) {
        MorphismId fg = cat.compose(f, g);
        if (out[fg]) {
          ok = false;
          break;
        }
        if (!in[fg]) {
          in[fg] = true;
          added.push_back(fg);
        }
      }
      if (ok) {
        enumerate(cat, into, i + 1, in, out, result);
      }
      for (MorphismId g : added) {
        in[g] = false;
      }
    }

    std::vector<MorphismId> members_of(MorphismSet const& s) {
      std::vector<MorphismId> out;
      for (MorphismId f = 0; f < s.size(); ++f) {
        if (s[f]) {
          out.push_back(f);
        }
      }
      return out;
    }

  }  // namespace

  SieveTable::SieveTable(FinCat const& cat) : _cat(cat) {
    std::size_t const n = cat.number_of_morphisms();
    std::size_t const k = cat.number_of_objects();
    _sieves.resize(k);
    _index.resize(k);
    _pullback.resize(k);
    _generators.resize(k);
    for (ObjectId c = 0; c < k; ++c) {
      MorphismSet in(n, false), out(n, false);
      enumerate(cat, cat.into(c), 0, in, out, _sieves[c]);
      std::sort(_sieves[c].begin(), _sieves[c].end(), [](auto const& a, auto const& b) {
        auto ma = members_of(a), mb = members_of(b);
        if (ma.size() != mb.size()) {
          return ma.size() < mb.size();
        }
        return ma < mb;
      });
      for (std::size_t s = 0; s < _sieves[c].size(); ++s) {
        _index[c].emplace(_sieves[c][s], s);
      }
    }
    for (ObjectId c = 0; c < k; ++c) {
      _pullback[c].assign(_sieves[c].size() * n, UNDEFINED);
      _generators[c].resize(_sieves[c].size());
      for (std::size_t s = 0; s < _sieves[c].size(); ++s) {
        auto const& S = _sieves[c][s];
        for (MorphismId h : cat.into(c)) {
          MorphismSet pb(n, false);
          for (MorphismId g : cat.into(cat.source(h))) {
            pb[g] = S[cat.compose(h, g)];
          }
          _pullback[c][s * n + h] = _index[cat.source(h)].at(pb);
        }
        // Greedy generating set, then drop redundant members.
        std::vector<MorphismId> gens;
        for (MorphismId f : cat.into(c)) {
          if (S[f] && !close(cat, c, gens)[f]) {
            gens.push_back(f);
          }
        }
        for (std::size_t i = gens.size(); i-- > 0;) {
          auto       others = gens;
          MorphismId g      = others[i];
          others.erase(others.begin() + i);
          if (close(cat, c, others)[g]) {
            gens = std::move(others);
          }
        }
        _generators[c][s] = std::move(gens);
      }
    }
  }

  std::size_t SieveTable::size_of(ObjectId c, std::size_t s) const {
    auto const& m = _sieves[c][s];
    return static_cast<std::size_t>(std::count(m.begin(), m.end(), true));
  }

  std::size_t SieveTable::index(ObjectId c, MorphismSet const& members) const {
    auto it = _index[c].find(members);
    return it == _index[c].end() ? UNDEFINED : it->second;
  }

  bool SieveTable::subset(ObjectId c, std::size_t s, std::size_t t) const {
    auto const& a = _sieves[c][s];
    auto const& b = _sieves[c][t];
    for (std::size_t f = 0; f < a.size(); ++f) {
      if (a[f] && !b[f]) {
        return false;
      }
    }
    return true;
  }

  std::size_t SieveTable::intersect(ObjectId c, std::size_t s, std::size_t t) const {
    MorphismSet m = _sieves[c][s];
    auto const& b = _sieves[c][t];
    for (std::size_t f = 0; f < m.size(); ++f) {
      m[f] = m[f] && b[f];
    }
    return index(c, m);
  }

  std::size_t SieveTable::generate(ObjectId c, std::vector<MorphismId> const& gens) const {
    return index(c, close(_cat, c, gens));
  }

  std::string SieveTable::describe(ObjectId c, std::size_t s) const {
    if (s == maximal(c)) {
      return "max";
    }
    if (s == empty(c)) {
      return "{}";
    }
    std::string out = "<";
    auto const& g   = _generators[c][s];
    for (std::size_t i = 0; i < g.size(); ++i) {
      out += (i == 0 ? "" : ",") + _cat.morphism_name(g[i]);
    }
    return out + ">";
  }

  std::vector<Sieve> enumerate_sieves(FinCat const& cat, ObjectId c) {
    auto const&        t = cat.sieves();
    std::vector<Sieve> out;
    for (std::size_t s = 0; s < t.count(c); ++s) {
      out.push_back(t.sieve(c, s));
    }
    return out;
  }

  Sieve pullback_sieve(FinCat const& cat, Sieve const& s, MorphismId h) {
    if (cat.target(h) != s.base) {
      throw ValidationError("pullback_sieve: morphism '" + cat.morphism_name(h)
                                + "' does not land in the sieve's object",
                            {cat.morphism_name(h)});
    }
    MorphismSet pb(cat.number_of_morphisms(), false);
    for (MorphismId g : cat.into(cat.source(h))) {
      pb[g] = s.members[cat.compose(h, g)];
    }
    return {cat.source(h), pb};
  }

  Sieve generate_sieve(FinCat const& cat, ObjectId c, std::vector<MorphismId> const& gens) {
    for (MorphismId f : gens) {
      if (cat.target(f) != c) {
        throw ValidationError("generator '" + cat.morphism_name(f) + "' does not land in '"
                                  + cat.object_name(c) + "'",
                              {cat.morphism_name(f)});
      }
    }
    return {c, close(cat, c, gens)};
  }

  bool is_sieve(FinCat const& cat, Sieve const& s) {
    if (s.members.size() != cat.number_of_morphisms()) {
      return false;
    }
    for (MorphismId f = 0; f < s.members.size(); ++f) {
      if (!s.members[f]) {
        continue;
      }
      if (cat.target(f) != s.base) {
        return false;
      }
      for (MorphismId g : cat.into(cat.source(f))) {
        if (!s.members[cat.compose(f, g)]) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace qtopos
