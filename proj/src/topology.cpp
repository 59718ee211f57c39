#include "qtopos/topology.hpp"

#include <optional>
#include <stdexcept>

namespace qtopos {

  GTopology::GTopology(FinCat base, std::vector<std::vector<bool>> covers, std::string name)
      : _base(std::move(base)), _covers(std::move(covers)), _name(std::move(name)) {
    SieveTable const& st = _base.sieves();
    for (ObjectId c = 0; c < _base.number_of_objects(); ++c) {
      std::size_t m = st.maximal(c);
      for (std::size_t s = 0; s < st.count(c); ++s) {
        if (_covers[c][s]) {
          m = st.intersect(c, m, s);
        }
      }
      _minimal.push_back(m);
    }
  }

  GTopology GTopology::renamed(std::string name) const {
    GTopology t = *this;
    t._name     = std::move(name);
    return t;
  }

  std::vector<std::size_t> GTopology::covering_sieves(ObjectId c) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < _covers[c].size(); ++s) {
      if (_covers[c][s]) {
        out.push_back(s);
      }
    }
    return out;
  }

  bool GTopology::is_trivial() const {
    SieveTable const& st = _base.sieves();
    for (ObjectId c = 0; c < _covers.size(); ++c) {
      for (std::size_t s = 0; s < _covers[c].size(); ++s) {
        if (_covers[c][s] != (s == st.maximal(c))) {
          return false;
        }
      }
    }
    return true;
  }

  bool GTopology::is_subtopology_of(GTopology const& that) const {
    if (!(_base == that._base)) {
      return false;
    }
    for (ObjectId c = 0; c < _covers.size(); ++c) {
      for (std::size_t s = 0; s < _covers[c].size(); ++s) {
        if (_covers[c][s] && !that._covers[c][s]) {
          return false;
        }
      }
    }
    return true;
  }

  std::string GTopology::describe() const {
    SieveTable const& st = _base.sieves();
    std::string       out;
    for (ObjectId c = 0; c < _covers.size(); ++c) {
      out += _base.object_name(c) + ": {";
      bool first = true;
      for (std::size_t s : covering_sieves(c)) {
        out += (first ? "" : ", ") + st.describe(c, s);
        first = false;
      }
      out += "}\n";
    }
    return out;
  }

  namespace {

    std::vector<std::vector<bool>> flags_from(FinCat const& cat, std::vector<std::vector<std::size_t>> const& covers) {
      SieveTable const&              st = cat.sieves();
      std::vector<std::vector<bool>> flags(cat.number_of_objects());
      if (covers.size() > cat.number_of_objects()) {
        throw std::invalid_argument("more cover lists than objects");
      }
      for (ObjectId c = 0; c < flags.size(); ++c) {
        flags[c].assign(st.count(c), false);
        if (c < covers.size()) {
          for (std::size_t s : covers[c]) {
            flags[c].at(s) = true;
          }
        }
      }
      return flags;
    }

    struct AxiomFailure {
      std::string              message;
      std::vector<std::string> witness;
    };

    std::optional<AxiomFailure> find_axiom_failure(FinCat const& cat, std::vector<std::vector<bool>> const& covers) {
      SieveTable const& st = cat.sieves();
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        if (!covers[c][st.maximal(c)]) {
          return AxiomFailure{"T1: the maximal sieve on " + cat.object_name(c) + " does not cover",
                              {cat.object_name(c)}};
        }
      }
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        for (std::size_t s = 0; s < st.count(c); ++s) {
          if (!covers[c][s]) {
            continue;
          }
          for (MorphismId h : cat.into(c)) {
            std::size_t p = st.pullback(s, h);
            if (!covers[cat.source(h)][p]) {
              return AxiomFailure{"T2: pullback of cover " + st.describe(c, s) + " on " + cat.object_name(c)
                                      + " along " + cat.morphism_name(h) + " is "
                                      + st.describe(cat.source(h), p) + ", which does not cover",
                                  {cat.object_name(c), st.describe(c, s), cat.morphism_name(h)}};
            }
          }
        }
      }
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        for (std::size_t s = 0; s < st.count(c); ++s) {
          if (!covers[c][s]) {
            continue;
          }
          for (std::size_t r = 0; r < st.count(c); ++r) {
            if (covers[c][r]) {
              continue;
            }
            bool locally = true;
            for (MorphismId f : cat.into(c)) {
              if (st.contains(c, s, f) && !covers[cat.source(f)][st.pullback(r, f)]) {
                locally = false;
                break;
              }
            }
            if (locally) {
              return AxiomFailure{"T3: " + st.describe(c, r) + " on " + cat.object_name(c)
                                      + " is covering locally on the cover " + st.describe(c, s)
                                      + " but does not cover",
                                  {cat.object_name(c), st.describe(c, s), st.describe(c, r)}};
            }
          }
        }
      }
      return std::nullopt;
    }

  }  // namespace

  Verdict check_topology_axioms(FinCat const& cat, std::vector<std::vector<bool>> const& covers) {
    auto failure = find_axiom_failure(cat, covers);
    return failure ? Verdict::no(failure->message) : Verdict::yes();
  }

  GTopology validate_topology(FinCat const& cat, std::vector<std::vector<std::size_t>> covers, std::string name) {
    auto flags = flags_from(cat, covers);
    if (auto failure = find_axiom_failure(cat, flags)) {
      throw ValidationError(failure->message, failure->witness);
    }
    return {cat, std::move(flags), std::move(name)};
  }

  GTopology generate_topology(FinCat const& cat, std::vector<std::vector<std::size_t>> coverage, std::string name) {
    SieveTable const& st    = cat.sieves();
    auto              flags = flags_from(cat, coverage);
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      flags[c][st.maximal(c)] = true;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        for (std::size_t s = 0; s < st.count(c); ++s) {
          if (!flags[c][s]) {
            continue;
          }
          for (MorphismId h : cat.into(c)) {
            std::size_t p = st.pullback(s, h);
            if (!flags[cat.source(h)][p]) {
              flags[cat.source(h)][p] = true;
              changed                 = true;
            }
          }
        }
      }
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        for (std::size_t r = 0; r < st.count(c); ++r) {
          if (flags[c][r]) {
            continue;
          }
          for (std::size_t s = 0; s < st.count(c) && !flags[c][r]; ++s) {
            if (!flags[c][s]) {
              continue;
            }
            bool locally = true;
            for (MorphismId f : cat.into(c)) {
              if (st.contains(c, s, f) && !flags[cat.source(f)][st.pullback(r, f)]) {
                locally = false;
                break;
              }
            }
            if (locally) {
              flags[c][r] = true;
              changed     = true;
            }
          }
        }
      }
    }
    return {cat, std::move(flags), std::move(name)};
  }

  GTopology trivial_topology(FinCat const& cat) {
    SieveTable const&                     st = cat.sieves();
    std::vector<std::vector<std::size_t>> covers(cat.number_of_objects());
    for (ObjectId c = 0; c < covers.size(); ++c) {
      covers[c].push_back(st.maximal(c));
    }
    return {cat, flags_from(cat, covers), "trivial"};
  }

  GTopology degenerate_topology(FinCat const& cat) {
    SieveTable const&              st = cat.sieves();
    std::vector<std::vector<bool>> flags(cat.number_of_objects());
    for (ObjectId c = 0; c < flags.size(); ++c) {
      flags[c].assign(st.count(c), true);
    }
    return {cat, std::move(flags), "degenerate"};
  }

  Subpresheaf closure(Subpresheaf const& a, GTopology const& j) {
    Presheaf const&                f   = a.ambient();
    FinCat const&                  cat = f.base();
    SieveTable const&              st  = cat.sieves();
    std::vector<std::vector<bool>> part(cat.number_of_objects());
    for (ObjectId c = 0; c < part.size(); ++c) {
      for (ElementId x = 0; x < f.size(c); ++x) {
        if (a.contains(c, x)) {
          part[c].push_back(true);
          continue;
        }
        MorphismSet members(cat.number_of_morphisms(), false);
        for (MorphismId h : cat.into(c)) {
          members[h] = a.contains(cat.source(h), f.act(h, x));
        }
        part[c].push_back(j.covers(c, st.index(c, members)));
      }
    }
    return {f, std::move(part)};
  }

  Verdict is_dense(Subpresheaf const& a, GTopology const& j) {
    Subpresheaf cl = closure(a, j);
    for (ObjectId c = 0; c < cl.part().size(); ++c) {
      for (ElementId x = 0; x < a.ambient().size(c); ++x) {
        if (!cl.contains(c, x)) {
          return Verdict::no("element " + describe_element(a.ambient(), c, x) + " is not in the closure");
        }
      }
    }
    return Verdict::yes();
  }

  Verdict is_closed(Subpresheaf const& a, GTopology const& j) {
    Subpresheaf cl = closure(a, j);
    for (ObjectId c = 0; c < cl.part().size(); ++c) {
      for (ElementId x = 0; x < a.ambient().size(c); ++x) {
        if (cl.contains(c, x) && !a.contains(c, x)) {
          return Verdict::no("element " + describe_element(a.ambient(), c, x)
                             + " lies in the closure but not in the subobject");
        }
      }
    }
    return Verdict::yes();
  }

  BiSite make_bisite(GTopology j, GTopology k, std::string name) {
    if (!(j.base() == k.base())) {
      throw ValidationError("bisite topologies live over different categories");
    }
    if (!j.is_subtopology_of(k)) {
      SieveTable const& st = j.base().sieves();
      for (ObjectId c = 0; c < j.base().number_of_objects(); ++c) {
        for (std::size_t s = 0; s < st.count(c); ++s) {
          if (j.covers(c, s) && !k.covers(c, s)) {
            throw ValidationError("j is not contained in k: " + st.describe(c, s) + " on "
                                      + j.base().object_name(c) + " is a j-cover but not a k-cover",
                                  {j.base().object_name(c), st.describe(c, s)});
          }
        }
      }
    }
    return {std::move(name), std::move(j), std::move(k)};
  }

}  // namespace qtopos
