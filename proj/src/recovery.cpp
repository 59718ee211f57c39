#include "qtopos/recovery.hpp"

#include <map>
#include <stdexcept>

#include "qtopos/hom.hpp"
#include "qtopos/limits.hpp"

namespace qtopos {

  Subpresheaf sieve_subobject(FinCat const& cat, ObjectId c, std::size_t s) {
    Presheaf                       y = yoneda(cat, c);
    SieveTable const&              st = cat.sieves();
    std::vector<std::vector<bool>> part(cat.number_of_objects());
    for (ObjectId d = 0; d < part.size(); ++d) {
      for (MorphismId f : cat.hom(d, c)) {
        part[d].push_back(st.contains(c, s, f));
      }
    }
    return {y, std::move(part)};
  }

  RFactorization r_factorization(ReflectionOracle const& r, Presheaf const& x) {
    Reflected          lx = r.reflect(x);
    ImageFactorization im = image_factorization(lx.unit);
    Verdict            replay = is_mono(r.reflect(im.epi.target()).unit);
    if (!replay) {
      replay.witness = "unit of the image is not mono: " + replay.witness;
    }
    return {im.epi, im.mono, replay};
  }

  KRecovery recover_k(ReflectionOracle const& r) {
    FinCat const&     cat = r.base();
    SieveTable const& st  = cat.sieves();
    KRecovery         out;
    out.candidates.resize(cat.number_of_objects());
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      for (std::size_t s = 0; s < st.count(c); ++s) {
        NatTrans lm = r.reflect_mor(sieve_subobject(cat, c, s).inclusion());
        out.candidates[c].push_back(is_mono(lm).holds && is_epi_in_local(r, lm).holds);
      }
    }
    if (Verdict v = check_topology_axioms(cat, out.candidates); v) {
      out.topology = GTopology(cat, out.candidates, "k");
    } else {
      out.witness = v.witness;
    }
    return out;
  }

  GTopology recover_j(ReflectionOracle const& r) {
    FinCat const&                         cat = r.base();
    SieveTable const&                     st  = cat.sieves();
    std::size_t const                     n   = cat.number_of_objects();
    std::vector<std::vector<bool>>        inverted(n);
    for (ObjectId c = 0; c < n; ++c) {
      for (std::size_t s = 0; s < st.count(c); ++s) {
        inverted[c].push_back(is_iso(r.reflect_mor(sieve_subobject(cat, c, s).inclusion())).holds);
      }
    }
    std::vector<std::vector<std::size_t>> coverage(n);
    for (ObjectId c = 0; c < n; ++c) {
      for (std::size_t s = 0; s < st.count(c); ++s) {
        bool all = true;
        for (MorphismId h : cat.into(c)) {
          all = all && inverted[cat.source(h)][st.pullback(s, h)];
        }
        if (all) {
          coverage[c].push_back(s);
        }
      }
    }
    return generate_topology(cat, coverage, "j");
  }

  AuditReport check_e_equals_biseparated(ReflectionOracle const&      r,
                                         GTopology const&             j,
                                         GTopology const&             k,
                                         std::vector<Presheaf> const& objects,
                                         bool                         exhaustive) {
    AuditReport report{"e-equals-biseparated", true, exhaustive, 0, {}};
    for (auto const& x : objects) {
      ++report.instances;
      Verdict local = r.is_local(x);
      Verdict sheaf = is_sheaf(x, j);
      Verdict sep   = is_separated(x, k);
      if (local.holds != (sheaf.holds && sep.holds)) {
        report.passed  = false;
        std::string why = local.holds ? (!sheaf ? "local but " + sheaf.witness : "local but " + sep.witness)
                                      : "j-sheaf and k-separated but not local: " + local.witness;
        report.witness = describe(x) + ": " + why;
        return report;
      }
    }
    return report;
  }

  namespace {

    // Number of b with b . alpha = a, for every a : source(alpha) -> x.
    std::pair<std::vector<NatTrans>, std::vector<std::size_t>> factorization_counts(Presheaf const& x,
                                                                                     NatTrans const& alpha,
                                                                                     std::size_t     budget) {
      std::vector<NatTrans>                       as = hom_presheaf_set(alpha.source(), x, budget);
      std::map<std::vector<std::vector<ElementId>>, std::size_t> index;
      for (std::size_t i = 0; i < as.size(); ++i) {
        index.emplace(as[i].components(), i);
      }
      std::vector<std::size_t> count(as.size(), 0);
      for_each_hom(
          alpha.target(), x,
          [&](NatTrans const& b) {
            ++count[index.at(compose(b, alpha).components())];
            return true;
          },
          {budget, false, {}});
      return {std::move(as), std::move(count)};
    }

    Verdict factorization_verdict(Presheaf const& x, NatTrans const& alpha, std::size_t budget, bool exact) {
      auto [as, count] = factorization_counts(x, alpha, budget);
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (count[i] > 1 || (exact && count[i] == 0)) {
          return Verdict::no("the map " + describe(as[i]) + " factors in " + std::to_string(count[i]) + " ways");
        }
      }
      return Verdict::yes();
    }

  }  // namespace

  Verdict is_orthogonal(Presheaf const& x, NatTrans const& alpha, std::size_t budget) {
    return factorization_verdict(x, alpha, budget, true);
  }

  Verdict is_separated_wrt(Presheaf const& x, NatTrans const& alpha, std::size_t budget) {
    return factorization_verdict(x, alpha, budget, false);
  }

  AuditReport check_universal_property(ReflectionOracle const&      r,
                                       std::vector<Presheaf> const& inputs,
                                       std::vector<Presheaf> const& objects) {
    AuditReport           report{"universal-property", true, true, 0, {}};
    std::vector<Presheaf> local;
    for (auto const& a : objects) {
      if (r.is_local(a)) {
        local.push_back(a);
      }
    }
    for (auto const& x : inputs) {
      Reflected lx = r.reflect(x);
      if (Verdict v = r.is_local(lx.object); !v) {
        report.passed  = false;
        report.witness = "reflection of " + describe(x) + " is not local: " + v.witness;
        return report;
      }
      for (auto const& a : local) {
        ++report.instances;
        if (Verdict v = is_orthogonal(a, lx.unit); !v) {
          report.passed  = false;
          report.witness = "local " + describe(a) + " is not orthogonal to the unit of " + describe(x) + ": " + v.witness;
          return report;
        }
      }
    }
    return report;
  }

  WeakClassifier weak_classifier(BiSite const& bs) {
    FinCat const&       cat = bs.base();
    SubobjectClassifier om  = subobject_classifier(cat);
    BisiteReflection    r(bs);
    NatTrans            lt  = r.reflect_mor(om.truth);
    NatTrans            chi = classify(lt, om);
    NatTrans            ell = r.reflect(om.omega).unit;
    NatTrans            e   = equalizer(compose(chi, ell), identity(om.omega));
    NatTrans            t   = factor_through_mono(om.truth, e);

    WeakClassifier wc{om, chi, e, t, {}};
    Presheaf const& w = e.source();
    wc.obligations.emplace_back("Omega' is biseparated", is_biseparated(w, bs));
    wc.obligations.emplace_back("unit of Omega' is iso", is_iso(r.reflect(w).unit));
    Verdict fixed = compose(compose(chi, ell), e) == e ? Verdict::yes()
                                                       : Verdict::no("chi . unit does not fix Omega'");
    wc.obligations.emplace_back("chi . unit restricts to the identity on Omega'", fixed);
    return wc;
  }

  AuditReport check_classifies(WeakClassifier const& wc, BiSite const& bs, std::vector<Presheaf> const& objects) {
    AuditReport      report{"classifies", true, true, 0, {}};
    BisiteReflection r(bs);
    Presheaf const&  w = wc.object();
    auto fail = [&](std::string why) {
      report.passed  = false;
      report.witness = std::move(why);
      return report;
    };
    for (auto const& o : wc.obligations) {
      if (!o.second) {
        return fail(o.first + " fails: " + o.second.witness);
      }
    }
    std::vector<Presheaf> local;
    for (auto const& a : objects) {
      if (r.is_local(a)) {
        local.push_back(a);
      }
    }
    std::vector<NatTrans> epis;
    for (auto const& p : local) {
      for (auto const& q : local) {
        for (auto const& e : hom_presheaf_set(p, q)) {
          if (is_epi_in_local(r, e)) {
            epis.push_back(e);
          }
        }
      }
    }
    for (auto const& y : local) {
      std::vector<NatTrans> fs = hom_presheaf_set(y, w);
      for (auto const& a : enumerate_subobjects(y)) {
        ++report.instances;
        bool        closed = is_closed(a, bs.k).holds;
        std::size_t count  = 0;
        for (auto const& f : fs) {
          bool same = true;
          for (ObjectId c = 0; c < y.base().number_of_objects() && same; ++c) {
            for (ElementId x = 0; x < y.size(c) && same; ++x) {
              same = (f(c, x) == wc.truth(c, 0)) == a.contains(c, x);
            }
          }
          count += same ? 1 : 0;
        }
        std::string what = "subobject " + describe(a.to_presheaf()) + " of " + describe(y);
        if (closed && count != 1) {
          return fail("k-closed " + what + " has " + std::to_string(count) + " classifying maps");
        }
        if (!closed && count != 0) {
          return fail("non-closed " + what + " has " + std::to_string(count) + " classifying maps");
        }
        if (!closed) {
          continue;
        }
        // u : Q -> Y with u . e inside A must itself land in A.
        for (auto const& e : epis) {
          for (auto const& u : hom_presheaf_set(e.target(), y)) {
            bool inside_after = true;
            bool inside       = true;
            for (ObjectId c = 0; c < y.base().number_of_objects(); ++c) {
              for (ElementId p = 0; p < e.source().size(c); ++p) {
                inside_after = inside_after && a.contains(c, u(c, e(c, p)));
              }
              for (ElementId q = 0; q < e.target().size(c); ++q) {
                inside = inside && a.contains(c, u(c, q));
              }
            }
            if (inside_after && !inside) {
              return fail("k-closed " + what + " has no diagonal against the epi " + describe(e));
            }
          }
        }
      }
    }
    return report;
  }

}  // namespace qtopos
