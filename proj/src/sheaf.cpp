#include "qtopos/sheaf.hpp"

#include <map>
#include <string>

#include "qtopos/limits.hpp"

namespace qtopos {

  std::vector<Family> matching_families(Presheaf const& f, ObjectId c, std::size_t s) {
    FinCat const&     cat  = f.base();
    SieveTable const& st   = cat.sieves();
    auto const&       gens = st.generators(c, s);
    std::vector<Family> out;
    Family              fam(cat.number_of_morphisms(), UNDEFINED);
    std::vector<MorphismId> trail;

    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == gens.size()) {
        out.push_back(fam);
        return;
      }
      MorphismId g = gens[i];
      ObjectId   d = cat.source(g);
      for (ElementId x = 0; x < f.size(d); ++x) {
        std::size_t mark = trail.size();
        bool        ok   = true;
        for (MorphismId h : cat.into(d)) {
          MorphismId gh = cat.compose(g, h);
          ElementId  v  = f.act(h, x);
          if (fam[gh] == UNDEFINED) {
            fam[gh] = v;
            trail.push_back(gh);
          } else if (fam[gh] != v) {
            ok = false;
            break;
          }
        }
        if (ok) {
          self(self, i + 1);
        }
        while (trail.size() > mark) {
          fam[trail.back()] = UNDEFINED;
          trail.pop_back();
        }
      }
    };
    rec(rec, 0);
    return out;
  }

  Family restrict_to(Presheaf const& f, ObjectId c, std::size_t s, ElementId x) {
    FinCat const&     cat = f.base();
    SieveTable const& st  = cat.sieves();
    Family            fam(cat.number_of_morphisms(), UNDEFINED);
    for (MorphismId g : cat.into(c)) {
      if (st.contains(c, s, g)) {
        fam[g] = f.act(g, x);
      }
    }
    return fam;
  }

  std::vector<ElementId> amalgamations(Presheaf const& f, ObjectId c, std::size_t s, Family const& family) {
    std::vector<ElementId> out;
    for (ElementId x = 0; x < f.size(c); ++x) {
      if (restrict_to(f, c, s, x) == family) {
        out.push_back(x);
      }
    }
    return out;
  }

  std::string describe_family(Presheaf const& f, ObjectId c, std::size_t s, Family const& family) {
    FinCat const&     cat = f.base();
    SieveTable const& st  = cat.sieves();
    std::string       out = "{";
    bool              first = true;
    for (MorphismId g : st.generators(c, s)) {
      out += (first ? "" : ", ") + cat.morphism_name(g) + " -> " + f.label(cat.source(g), family[g]);
      first = false;
    }
    return out + "}";
  }

  Verdict is_separated(Presheaf const& f, GTopology const& j) {
    FinCat const&     cat = f.base();
    SieveTable const& st  = cat.sieves();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      for (std::size_t s : j.covering_sieves(c)) {
        if (s == st.maximal(c)) {
          continue;
        }
        std::map<Family, ElementId> seen;
        for (ElementId x = 0; x < f.size(c); ++x) {
          auto [it, fresh] = seen.emplace(restrict_to(f, c, s, x), x);
          if (!fresh) {
            return Verdict::no("on " + cat.object_name(c) + ", cover " + st.describe(c, s) + ": family "
                               + describe_family(f, c, s, it->first) + " has two amalgamations "
                               + f.label(c, it->second) + " and " + f.label(c, x));
          }
        }
      }
    }
    return Verdict::yes();
  }

  Verdict is_sheaf(Presheaf const& f, GTopology const& j) {
    if (auto v = is_separated(f, j); !v) {
      return v;
    }
    FinCat const&     cat = f.base();
    SieveTable const& st  = cat.sieves();
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      for (std::size_t s : j.covering_sieves(c)) {
        if (s == st.maximal(c)) {
          continue;
        }
        for (Family const& fam : matching_families(f, c, s)) {
          if (amalgamations(f, c, s, fam).empty()) {
            return Verdict::no("on " + cat.object_name(c) + ", cover " + st.describe(c, s) + ": family "
                               + describe_family(f, c, s, fam) + " has no amalgamation");
          }
        }
      }
    }
    return Verdict::yes();
  }

  Reflected plus(Presheaf const& f, GTopology const& j) {
    FinCat const&     cat = f.base();
    SieveTable const& st  = cat.sieves();
    std::size_t const k   = cat.number_of_objects();

    std::vector<std::vector<Family>>            families(k);
    std::vector<std::map<Family, ElementId>>    index(k);
    std::vector<std::vector<std::string>>       labels(k);
    for (ObjectId c = 0; c < k; ++c) {
      std::size_t s    = j.minimal_cover(c);
      auto const& gens = st.generators(c, s);
      families[c]      = matching_families(f, c, s);
      for (ElementId i = 0; i < families[c].size(); ++i) {
        Family const& fam = families[c][i];
        index[c].emplace(fam, i);
        if (gens.size() == 1) {
          labels[c].push_back(f.label(cat.source(gens[0]), fam[gens[0]]));
        } else {
          std::string l = "[";
          for (std::size_t t = 0; t < gens.size(); ++t) {
            l += (t == 0 ? "" : ",") + f.label(cat.source(gens[t]), fam[gens[t]]);
          }
          labels[c].push_back(l + "]");
        }
      }
    }

    std::vector<std::vector<ElementId>> action(cat.number_of_morphisms());
    for (MorphismId h = 0; h < cat.number_of_morphisms(); ++h) {
      ObjectId    d  = cat.source(h);
      ObjectId    c  = cat.target(h);
      std::size_t sd = j.minimal_cover(d);
      for (Family const& fam : families[c]) {
        Family r(cat.number_of_morphisms(), UNDEFINED);
        for (MorphismId g : cat.into(d)) {
          if (st.contains(d, sd, g)) {
            r[g] = fam[cat.compose(h, g)];
          }
        }
        action[h].push_back(index[d].at(r));
      }
    }
    Presheaf fplus(cat, std::move(labels), std::move(action));

    std::vector<std::vector<ElementId>> unit(k);
    for (ObjectId c = 0; c < k; ++c) {
      for (ElementId x = 0; x < f.size(c); ++x) {
        unit[c].push_back(index[c].at(restrict_to(f, c, j.minimal_cover(c), x)));
      }
    }
    return {fplus, NatTrans(f, fplus, std::move(unit))};
  }

  Reflected sheafify(Presheaf const& f, GTopology const& j) {
    Reflected once  = plus(f, j);
    Reflected twice = plus(once.object, j);
    return {twice.object, compose(twice.unit, once.unit)};
  }

  Reflected separated_reflection(Presheaf const& f, GTopology const& j) {
    FinCat const&                         cat = f.base();
    std::vector<std::vector<std::size_t>> class_of(cat.number_of_objects());
    for (ObjectId c = 0; c < class_of.size(); ++c) {
      std::map<Family, std::size_t> classes;
      for (ElementId x = 0; x < f.size(c); ++x) {
        auto [it, fresh] = classes.emplace(restrict_to(f, c, j.minimal_cover(c), x), classes.size());
        class_of[c].push_back(it->second);
      }
    }
    NatTrans q = quotient(f, class_of);
    return {q.target(), q};
  }

  Reflected biseparated_reflect(Presheaf const& x, BiSite const& bs) {
    if (!bs.j.is_subtopology_of(bs.k)) {
      throw ValidationError("bisite " + bs.name + ": j is not contained in k");
    }
    Reflected   a   = sheafify(x, bs.k);
    Subpresheaf cl  = closure(image(a.unit), bs.j);
    NatTrans    inc = cl.inclusion();
    return {inc.source(), factor_through_mono(a.unit, inc)};
  }

  Verdict is_biseparated(Presheaf const& x, BiSite const& bs) {
    if (auto v = is_sheaf(x, bs.j); !v) {
      return Verdict::no("not a j-sheaf: " + v.witness);
    }
    if (auto v = is_separated(x, bs.k); !v) {
      return Verdict::no("not k-separated: " + v.witness);
    }
    return Verdict::yes();
  }

}  // namespace qtopos
