// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qtopos/enumerate.hpp"
#include "qtopos/gallery.hpp"
#include "qtopos/limits.hpp"
#include "qtopos/recovery.hpp"

using namespace qtopos;

namespace {

  struct Result {
    bool        pass = true;
    std::string detail;
  };

  // Collects the first few problems of a criterion.
  struct Tally {
    std::size_t              checked = 0;
    std::vector<std::string> problems;

    void expect(bool ok, std::string const& what) {
      ++checked;
      if (!ok && problems.size() < 3)
        problems.push_back(what);
      else if (!ok)
        problems.emplace_back();
    }
    Result result(std::string const& summary) const {
      if (problems.empty())
        return {true, summary + "; " + std::to_string(checked) + " checks"};
      std::string text = std::to_string(problems.size()) + " of " + std::to_string(checked) + " checks failed";
      for (auto const& p : problems)
        if (!p.empty())
          text += "; " + p;
      return {false, text};
    }
  };

  FinCat const& rgph() {
    static FinCat const cat = sites::reflexive_graph();
    return cat;
  }

  FinCat const& idem() {
    static FinCat const cat = sites::idempotent_monoid();
    return cat;
  }

  GTopology k_simple() {
    return generate_topology(rgph(), {{}, {3}}, "k_simple");
  }

  GTopology k_idem() {
    return generate_topology(idem(), {{1}}, "k");
  }

  CheckReport check(GalleryCase const& gc, ProbeSet const& probes, Condition c, std::size_t max_failures = 1) {
    return run_check(c, *gc.oracle, probes, max_failures);
  }

  ProbeSet probes_of(GalleryCase const& gc) {
    return make_probe_set(*gc.oracle, gc.options, gc.hand);
  }

  bool iso_over_units(Reflected const& a, Reflected const& b) {
    bool found = false;
    for_each_hom(
        a.object, b.object,
        [&](NatTrans const& phi) {
          found = is_iso(phi) && compose(phi, a.unit) == b.unit;
          return !found;
        },
        HomSearch{DEFAULT_HOM_BUDGET, true, {}});
    return found;
  }

  // Precomposition with the unit is a bijection hom(LX, A) -> hom(X, A).
  bool hom_bijection(Reflected const& lx, Presheaf const& a) {
    auto                                          from_l = hom_presheaf_set(lx.object, a);
    std::set<std::vector<std::vector<ElementId>>> images;
    for (auto const& g : from_l)
      images.insert(compose(g, lx.unit).components());
    return images.size() == from_l.size() && images.size() == oracle::hom_count(lx.unit.source(), a);
  }

  Result criterion1() {
    auto  gc     = build_case("two");
    auto  probes = probes_of(gc);
    Tally t;
    auto  monos = check(gc, probes, Condition::Monos);
    auto  sle   = check(gc, probes, Condition::SemiLeftExact);
    auto  prod  = check(gc, probes, Condition::Products);
    t.expect(monos.passed && monos.exhaustive, "monos: " + monos.witness());
    t.expect(sle.passed && sle.exhaustive, "semi-left-exact: " + sle.witness());
    t.expect(!prod.passed, "products passed");
    if (!prod.passed) {
      auto const& f = prod.failures.front();
      t.expect(size_vector(f.instance.objects[0]) == "(0,1)" && size_vector(f.instance.objects[1]) == "(1,0)",
               "witness pair " + size_vector(f.instance.objects[0]) + ", " + size_vector(f.instance.objects[1]));
      t.expect(f.outcome.comparison && size_vector(f.outcome.comparison->source()) == "(0,0)"
                   && size_vector(f.outcome.comparison->target()) == "(1,1)",
               "comparison " + f.outcome.detail);
      t.expect(!check_instance(*gc.oracle, f.instance).holds, "products witness does not replay");
    }
    return t.result("monos pass, semi-left-exact pass, products fail at ((0,1),(1,0)) with L = (0,0) vs (1,1); "
                    + std::to_string(probes.objects.size()) + " objects with components <= 2");
  }

  Result criterion2() {
    auto  gc     = build_case("pi0");
    auto  probes = probes_of(gc);
    Tally t;
    auto  prod   = check(gc, probes, Condition::Products);
    auto  stable = check(gc, probes, Condition::StableUnits);
    auto  monos  = check(gc, probes, Condition::Monos);
    t.expect(prod.passed && prod.exhaustive, "products: " + prod.witness());
    t.expect(stable.passed && stable.exhaustive, "stable-units: " + stable.witness());
    std::size_t max_vertices = 0;
    for (auto const& x : probes.objects)
      max_vertices = std::max(max_vertices, x.size(0));
    t.expect(max_vertices == 3, "probe objects reach " + std::to_string(max_vertices) + " vertices");
    t.expect(!monos.passed, "monos passed");
    if (!monos.passed) {
      auto const& m  = monos.failures.front().instance.maps[0];
      auto        lm = gc.oracle->reflect_mor(m);
      t.expect(m.source().size(0) == 2 && m.target().size(1) == 4 && is_mono(m), "witness is not X into KX with |X| = 2");
      t.expect(lm.source().size(0) == 2 && lm.target().size(0) == 1, "pi0 values are not 2 and 1");
    }
    return t.result("products and stable-units pass over " + std::to_string(prod.instances) + " and "
                    + std::to_string(stable.instances) + " instances (graphs up to 3 vertices); monos fail at X into KX, 2 vs 1");
  }

  Result criterion3() {
    auto  gc     = build_case("preord");
    auto  probes = probes_of(gc);
    Tally t;
    auto  monos = check(gc, probes, Condition::Monos);
    auto  prod  = check(gc, probes, Condition::Products);
    auto  sle   = check(gc, probes, Condition::SemiLeftExact);
    t.expect(monos.passed && monos.exhaustive, "monos: " + monos.witness());
    t.expect(prod.passed && prod.exhaustive, "products: " + prod.witness());
    t.expect(!sle.passed, "semi-left-exact passed");
    if (!sle.passed) {
      auto const& inst = sle.failures.front().instance;
      auto const& u    = inst.maps[0];
      auto        lx   = gc.oracle->reflect(inst.objects[0]);
      auto        pb   = pullback(u, lx.unit);
      auto const& p    = pb.apex;
      std::set<std::string> vertices;
      for (ElementId v = 0; v < p.size(0); ++v)
        vertices.insert(u.source().label(0, pb.legs[0](0, v)));
      std::size_t non_loops = 0;
      for (ElementId e = 0; e < p.size(1); ++e)
        non_loops += p.act(rgph().morphism_id("d0"), e) != p.act(rgph().morphism_id("d1"), e);
      t.expect(vertices == std::set<std::string>{"x", "z"}, "pullback vertices differ from {x, z}");
      t.expect(non_loops == 0, "pullback has a connecting edge");
      t.expect(u.source().sizes() == std::vector<std::size_t>{2, 3}, "A is not {x <= z}");
      t.expect(!check_instance(*gc.oracle, inst).holds, "witness does not replay");
    }
    return t.result("monos and products pass at bound 3; semi-left-exact fails on the chain x->w->z, pullback {x, z} without edge vs A = {x <= z}, replayed");
  }

  Result criterion4() {
    auto  gc = build_case("idempotent-mset");
    Tally t;
    auto  k = recover_k(*gc.oracle);
    t.expect(k.topology && cover_listing(*k.topology) == CoverListing{{"*", {"<e>", "max"}}},
             "recovered k: " + (k.topology ? k.topology->describe() : k.witness));
    auto top   = k.topology ? *k.topology : k_idem();
    auto msets = enumerate_presheaves(idem(), {4});
    auto e     = idem().morphism_id("e");
    for (auto const& x : msets) {
      t.expect(bool(is_separated(x, top)) == bool(is_sheaf(x, top)), "separated but not a sheaf: " + describe(x));
      auto                  lx = gc.oracle->reflect(x);
      std::set<std::string> fixed, got;
      for (ElementId v = 0; v < x.size(0); ++v)
        if (x.act(e, v) == v)
          fixed.insert(x.label(0, v));
      for (ElementId v = 0; v < lx.object.size(0); ++v)
        got.insert(lx.object.label(0, v));
      t.expect(fixed == got && got.size() == lx.object.size(0), "LX is not Fix(e) for " + describe(x));
      for (ElementId v = 0; v < x.size(0); ++v)
        t.expect(lx.object.label(0, lx.unit(0, v)) == x.label(0, x.act(e, v)), "unit is not x -> x.e for " + describe(x));
    }
    return t.result("k = {<e>, max}; " + std::to_string(msets.size())
                    + " M-sets with <= 4 elements: separated iff sheaf, LX = Fix(e) with unit x -> x.e");
  }

  Result criterion5() {
    auto  gc     = build_case("simple-graphs");
    auto  probes = probes_of(gc);
    Tally t;
    std::size_t instances = 0;
    for (auto c : ALL_CONDITIONS) {
      auto r = check(gc, probes, c);
      instances += r.instances;
      t.expect(r.passed && r.exhaustive, condition_name(c) + ": " + r.witness());
    }
    auto j = recover_j(*gc.oracle);
    auto k = recover_k(*gc.oracle);
    t.expect(j == trivial_topology(rgph()), "recovered j: " + j.describe());
    t.expect(k.topology && *k.topology == k_simple(), "recovered k: " + (k.topology ? k.topology->describe() : k.witness));
    auto objects = enumerate_presheaves(rgph(), gc.options.bounds);
    auto eq      = check_e_equals_biseparated(*gc.oracle, j, k_simple(), objects);
    t.expect(eq.passed && eq.exhaustive, "E vs biseparated: " + eq.witness);
    return t.result("six checks pass over " + std::to_string(instances) + " instances; j = trivial, k = k_simple; E = Sep(k) n Sh(j) on "
                    + std::to_string(objects.size()) + " graphs");
  }

  Result criterion6() {
    Tally       t;
    std::size_t pairs = 0;
    std::vector<std::pair<BiSite, std::vector<std::size_t>>> sites_and_bounds{
        {make_bisite(trivial_topology(idem()), k_idem(), "idempotent-mset"), {3}},
        {make_bisite(trivial_topology(idem()), k_idem(), "idempotent-mset"), {4}},
        {make_bisite(trivial_topology(rgph()), k_simple(), "simple-graphs"), {3}},
        {make_bisite(trivial_topology(rgph()), k_simple(), "simple-graphs"), {3, 5}},
        {make_bisite(k_idem(), k_idem(), "idem-localization"), {3}},
        {make_bisite(k_simple(), k_simple(), "rgph-localization"), {3}}};
    for (auto const& [bs, bounds] : sites_and_bounds) {
      auto                  objects = enumerate_presheaves(bs.base(), bounds);
      std::vector<Presheaf> local;
      for (auto const& a : objects)
        if (is_biseparated(a, bs))
          local.push_back(a);
      for (auto const& x : objects) {
        auto lx = biseparated_reflect(x, bs);
        for (auto const& a : local) {
          ++pairs;
          t.expect(hom_bijection(lx, a), bs.name + ": hom bijection fails for " + describe(x) + " against " + describe(a));
        }
        auto fix = oracle::fixpoint_biseparated(x, bs);
        t.expect(fix.has_value(), bs.name + ": fixpoint iteration did not settle for " + describe(x));
        if (fix)
          t.expect(iso_over_units(lx, *fix), bs.name + ": fixpoint result differs for " + describe(x));
      }
    }
    return t.result(std::to_string(pairs) + " (X, A) hom bijections; fixpoint oracle agrees on every X");
  }

  Result criterion7() {
    Tally                  t;
    std::vector<GTopology> tops{trivial_topology(rgph()), k_simple(), trivial_topology(idem()), k_idem(),
                                trivial_topology(sites::discrete(2)), degenerate_topology(sites::discrete(2))};
    std::size_t subobjects = 0;
    for (auto const& top : tops) {
      auto objects = enumerate_presheaves(top.base(), {3});
      for (auto const& x : objects) {
        auto p = plus(x, top);
        t.expect(bool(is_separated(p.object, top)), "plus not separated: " + describe(x));
        t.expect(oracle::is_separated(p.object, top), "plus not separated (oracle): " + describe(x));
        auto pp = plus(p.object, top);
        t.expect(is_sheaf(pp.object, top) && oracle::is_sheaf(pp.object, top), "plus plus not a sheaf: " + describe(x));
        auto a = sheafify(x, top);
        t.expect(bool(is_iso(sheafify(a.object, top).unit)), "sheafify not idempotent: " + describe(x));
        auto subs = enumerate_subobjects(x);
        subobjects += subs.size();
        for (auto const& s : subs) {
          auto cs = closure(s, top);
          t.expect(s.is_subset_of(cs) && closure(cs, top) == cs, "closure not inflationary and idempotent");
          for (auto const& s2 : subs)
            if (s.is_subset_of(s2))
              t.expect(cs.is_subset_of(closure(s2, top)), "closure not monotone");
        }
      }
      for (auto const& x : objects)
        for (auto const& y : objects) {
          auto subs = enumerate_subobjects(y);
          for (auto const& f : hom_presheaf_set(x, y))
            for (auto const& s : subs)
              t.expect(pullback(closure(s, top), f) == closure(pullback(s, f), top), "closure not pullback-stable");
        }
    }
    return t.result(std::to_string(tops.size()) + " topologies, " + std::to_string(subobjects) + " subobjects");
  }

  Result criterion8() {
    Tally t;
    auto  bs = make_bisite(trivial_topology(rgph()), k_simple(), "simple");
    auto  wc = weak_classifier(bs);
    t.expect(bool(is_biseparated(wc.object(), bs)), "Omega' is not biseparated");
    for (auto const& [what, v] : wc.obligations)
      t.expect(bool(v), what + ": " + v.witness);
    auto objects = enumerate_presheaves(rgph(), {2});
    auto report  = check_classifies(wc, bs, objects);
    t.expect(report.passed, "check_classifies: " + report.witness);

    // Independent count of classifying maps for every k-closed subobject.
    std::size_t closed = 0;
    for (auto const& y : objects) {
      if (!is_biseparated(y, bs))
        continue;
      auto maps = hom_presheaf_set(y, wc.object());
      for (auto const& a : enumerate_subobjects(y)) {
        if (!is_biseparated(a.to_presheaf(), bs))
          continue;
        bool        is_closed_sub = closure(a, bs.k) == a;
        std::size_t n             = 0;
        for (auto const& f : maps) {
          bool same = true;
          for (ObjectId c = 0; c < 2; ++c)
            for (ElementId v = 0; v < y.size(c); ++v)
              same = same && ((f(c, v) == wc.truth(c, 0)) == a.contains(c, v));
          n += same;
        }
        closed += is_closed_sub;
        t.expect(n == (is_closed_sub ? 1u : 0u), "subobject of " + describe(y) + " has " + std::to_string(n) + " classifying maps");
      }
    }
    return t.result("Omega' " + size_vector(wc.object()) + " biseparated; " + std::to_string(report.instances) + " instances, "
                    + std::to_string(closed) + " k-closed monos classified uniquely");
  }

  Result criterion9() {
    Tally       t;
    std::size_t embedded = 0, transported = 0;
    for (auto const& name : gallery_names()) {
      auto gc     = build_case(name);
      auto probes = probes_of(gc);
      auto stable = check(gc, probes, Condition::StableUnits);
      if (stable.passed) {
        t.expect(check(gc, probes, Condition::SemiLeftExact).passed, name + ": stable units without semi-left-exactness");
        t.expect(check(gc, probes, Condition::Products).passed, name + ": stable units without products");
      }
      auto one = terminal(gc.oracle->base());
      for (auto const& inst : instances_for(Condition::SemiLeftExact, *gc.oracle, probes)) {
        auto     lx = gc.oracle->reflect(inst.objects[0]);
        Instance as_pullback{Condition::StableUnits, "cospan", {}, {lx.unit, inst.maps[0]}, "embedded"};
        if (check_instance(*gc.oracle, as_pullback).holds) {
          ++embedded;
          t.expect(check_instance(*gc.oracle, inst).holds, name + ": embedded pullback preserved but semi-left-exact instance fails");
        }
      }
      if (gc.oracle->is_local(one))
        for (auto const& inst : instances_for(Condition::Products, *gc.oracle, probes)) {
          Instance as_pullback{Condition::StableUnits, "cospan", {}, {to_terminal(inst.objects[0]), to_terminal(inst.objects[1])}, "embedded"};
          if (check_instance(*gc.oracle, as_pullback).holds) {
            ++embedded;
            t.expect(check_instance(*gc.oracle, inst).holds, name + ": embedded pullback preserved but product instance fails");
          }
        }
      auto qlex = check(gc, probes, Condition::QuasiLex, 0);
      for (auto const& f : qlex.failures) {
        if (f.instance.shape != "equalizer") {
          t.expect(false, name + ": quasi-lex failure of shape " + f.instance.shape + " has no mono transport");
          continue;
        }
        auto const& fm = f.instance.maps[0];
        auto const& gm = f.instance.maps[1];
        auto        e  = equalizer(fm, gm);
        // Union of the graphs of f and g inside X x Y, glued along the equalizer.
        auto po    = pushout(e, e);
        auto pr    = product(fm.source(), fm.target());
        auto union_of_graphs = copair(pair(identity(fm.source()), fm, pr), pair(identity(fm.source()), gm, pr), po);
        t.expect(bool(is_mono(union_of_graphs)), name + ": union of graphs is not mono");
        ++transported;
        bool found = false;
        for (auto const& m : {e, union_of_graphs})
          if (!check_instance(*gc.oracle, Instance{Condition::Monos, "mono", {}, {m}, "transported"}).holds) {
            found = true;
            break;
          }
        t.expect(found, name + ": quasi-lex failure #" + std::to_string(f.index) + " does not transport");
      }
    }
    return t.result(std::to_string(embedded) + " embedded pullback instances consistent; " + std::to_string(transported)
                    + " quasi-lex failures transported to mono failures");
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"example two", criterion1},
      {"example pi0", criterion2},
      {"example preord", criterion3},
      {"idempotent M-sets", criterion4},
      {"simple-graph bisite", criterion5},
      {"biseparated reflection oracles", criterion6},
      {"plus-construction and closure laws", criterion7},
      {"weak subobject classifier", criterion8},
      {"theorem consistency", criterion9}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto   start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (std::exception const& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all         = all && r.pass;
    std::printf("criterion %zu (%s): %s [%.2fs] %s\n", i + 1, criteria[i].first.c_str(), r.pass ? "PASS" : "FAIL", secs,
                r.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
