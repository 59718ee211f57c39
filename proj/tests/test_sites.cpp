#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qtopos/enumerate.hpp"
#include "qtopos/gallery.hpp"
#include "qtopos/hom.hpp"
#include "qtopos/limits.hpp"
#include "qtopos/subobjects.hpp"

using namespace qtopos;

namespace {

  FinCat const& rgph() {
    static FinCat const cat = sites::reflexive_graph();
    return cat;
  }

  FinCat const& idem() {
    static FinCat const cat = sites::idempotent_monoid();
    return cat;
  }

  std::size_t sieve_index(FinCat const& cat, ObjectId c, std::string const& text) {
    for (std::size_t s = 0; s < cat.sieves().count(c); ++s)
      if (cat.sieves().describe(c, s) == text)
        return s;
    throw std::invalid_argument("no sieve " + text);
  }

  GTopology k_simple() {
    return generate_topology(rgph(), {{}, {sieve_index(rgph(), 1, "<d0,d1>")}}, "k_simple");
  }

  GTopology k_idem() {
    return generate_topology(idem(), {{sieve_index(idem(), 0, "<e>")}}, "k");
  }

  std::vector<GTopology> gallery_topologies() {
    return {trivial_topology(rgph()), k_simple(), trivial_topology(idem()), k_idem(),
            trivial_topology(sites::discrete(2)), degenerate_topology(sites::discrete(2))};
  }

  std::vector<Presheaf> probes_for(FinCat const& cat) {
    if (cat.number_of_objects() == 2 && cat.number_of_morphisms() == 7)
      return enumerate_presheaves(cat, {3, 5});
    return enumerate_presheaves(cat, {3});
  }

  std::vector<std::string> descriptions(FinCat const& cat, ObjectId c) {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < cat.sieves().count(c); ++s)
      out.push_back(cat.sieves().describe(c, s));
    return out;
  }

  Presheaf multigraph() {
    return make_graph({"a", "b"}, {{"a", "b"}, {"a", "b"}});
  }

  bool iso_over_units(Reflected const& a, Reflected const& b) {
    bool found = false;
    for_each_hom(
        a.object, b.object,
        [&](NatTrans const& phi) {
          if (is_iso(phi) && compose(phi, a.unit) == b.unit)
            found = true;
          return !found;
        },
        HomSearch{DEFAULT_HOM_BUDGET, true, {}});
    return found;
  }

}  // namespace

TEST_CASE("sieve enumeration") {
  CHECK(descriptions(idem(), 0) == std::vector<std::string>{"{}", "<e>", "max"});
  CHECK(descriptions(rgph(), 0) == std::vector<std::string>{"{}", "max"});
  CHECK(descriptions(rgph(), 1) == std::vector<std::string>{"{}", "<d0>", "<d1>", "<d0,d1>", "max"});
  auto d0 = sieve_index(rgph(), 1, "<d0>");
  CHECK(rgph().sieves().size_of(1, d0) == 2);
  CHECK(rgph().sieves().contains(1, d0, rgph().morphism_id("d0.s")));

  for (auto const& cat : {rgph(), idem(), sites::discrete(2), opposite(rgph())})
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      auto brute = oracle::sieves(cat, c);
      auto got   = enumerate_sieves(cat, c);
      REQUIRE(got.size() == brute.size());
      for (auto const& s : got) {
        CHECK(is_sieve(cat, s));
        std::set<MorphismId> ms;
        for (auto f : cat.into(c))
          if (s.members[f])
            ms.insert(f);
        CHECK(std::find(brute.begin(), brute.end(), ms) != brute.end());
      }
    }
}

TEST_CASE("pullback sieves") {
  auto const& g  = rgph();
  auto const& st = g.sieves();
  for (auto h : g.into(1))
    CHECK(st.pullback(st.maximal(1), h) == st.maximal(g.source(h)));
  auto both = sieve_index(g, 1, "<d0,d1>");
  CHECK(st.pullback(both, g.morphism_id("d0")) == st.maximal(0));
  CHECK(st.pullback(0, g.morphism_id("d1")) == 0);
  CHECK(st.pullback(sieve_index(g, 1, "<d0>"), g.morphism_id("d1")) == 0);

  for (ObjectId c = 0; c < 2; ++c)
    for (std::size_t s = 0; s < st.count(c); ++s)
      for (auto h : g.into(c)) {
        auto p = pullback_sieve(g, st.sieve(c, s), h);
        CHECK(is_sieve(g, p));
        CHECK(st.index(g.source(h), p.members) == st.pullback(s, h));
      }
}

TEST_CASE("topology validation") {
  auto const& g = rgph();
  for (auto const& cat : {rgph(), idem(), sites::discrete(2)}) {
    auto t = trivial_topology(cat);
    CHECK(t.is_trivial());
    CHECK(oracle::topology_axioms(cat, t.flags()));
  }
  auto both = sieve_index(g, 1, "<d0,d1>");
  auto k    = validate_topology(g, {{1}, {both, 4}});
  CHECK(k == k_simple());

  try {
    validate_topology(g, {{1}, {sieve_index(g, 1, "<d0>"), 4}});
    FAIL("T2 violation accepted");
  } catch (ValidationError const& e) {
    auto const& w = e.witness();
    CHECK(std::find(w.begin(), w.end(), "d1") != w.end());
  }
  CHECK_THROWS_AS(validate_topology(g, {{1}, {both}}), ValidationError);

  SECTION("every assignment: validation agrees with the axioms") {
    std::size_t valid = 0;
    for (std::size_t m0 = 0; m0 < 4; ++m0)
      for (std::size_t m1 = 0; m1 < 32; ++m1) {
        std::vector<std::vector<bool>> flags{{bool(m0 & 1), bool(m0 & 2)}, {}};
        for (std::size_t s = 0; s < 5; ++s)
          flags[1].push_back(m1 >> s & 1);
        bool ok = oracle::topology_axioms(g, flags);
        CHECK(bool(check_topology_axioms(g, flags)) == ok);
        valid += ok;
      }
    CHECK(valid > 2);
  }
}

TEST_CASE("generated topologies") {
  auto const& g = rgph();
  CHECK(generate_topology(g, {{}, {}}) == trivial_topology(g));
  auto ks = k_simple();
  CHECK(ks.covering_sieves(0) == std::vector<std::size_t>{1});
  CHECK(ks.covering_sieves(1) == std::vector<std::size_t>{sieve_index(g, 1, "<d0,d1>"), 4});
  auto k = k_idem();
  CHECK(k.covering_sieves(0) == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(k.covers(0, 0));

  SECTION("least topology containing the coverage") {
    for (auto const& cat : {rgph(), idem()}) {
      auto const&              st = cat.sieves();
      std::vector<std::size_t> all;
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
        all.push_back(st.count(c));
      oracle::odometer(all, [&](std::vector<std::size_t> const& pick) {
        std::vector<std::vector<std::size_t>> coverage(cat.number_of_objects());
        for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
          coverage[c].push_back(pick[c]);
        auto t = generate_topology(cat, coverage);
        CHECK(oracle::topology_axioms(cat, t.flags()));
        // Every topology containing the coverage contains t.
        std::vector<std::size_t> bits;
        for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
          for (std::size_t s = 0; s < st.count(c); ++s)
            bits.push_back(2);
        oracle::odometer(bits, [&](std::vector<std::size_t> const& b) {
          std::vector<std::vector<bool>> flags(cat.number_of_objects());
          std::size_t                    i = 0;
          for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
            for (std::size_t s = 0; s < st.count(c); ++s)
              flags[c].push_back(b[i++]);
          for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
            if (!flags[c][pick[c]])
              return;
          if (!oracle::topology_axioms(cat, flags))
            return;
          for (ObjectId c = 0; c < cat.number_of_objects(); ++c)
            for (std::size_t s = 0; s < st.count(c); ++s)
              if (t.covers(c, s))
                CHECK(flags[c][s]);
        });
      });
    }
  }
}

TEST_CASE("closure and density") {
  auto const& g  = rgph();
  auto        ks = k_simple();
  auto        y1 = yoneda(g, 1);
  auto        vertices = sieve_subobject(g, 1, sieve_index(g, 1, "<d0,d1>"));
  CHECK(closure(vertices, ks) == Subpresheaf::full(y1));
  CHECK(is_dense(vertices, ks));
  CHECK_FALSE(is_dense(Subpresheaf::empty(yoneda(g, 0)), ks));
  CHECK(is_dense(Subpresheaf::full(y1), trivial_topology(g)));
  CHECK(closure(vertices, trivial_topology(g)) == vertices);

  SECTION("closure laws on every subobject") {
    for (auto const& t : gallery_topologies()) {
      auto objects = probes_for(t.base());
      for (auto const& x : objects) {
        auto subs = enumerate_subobjects(x);
        for (auto const& a : subs) {
          auto ca = closure(a, t);
          CHECK(a.is_subset_of(ca));
          CHECK(closure(ca, t) == ca);
          CHECK(closure(Subpresheaf::full(x), t) == Subpresheaf::full(x));
          for (auto const& b : subs)
            if (a.is_subset_of(b))
              CHECK(ca.is_subset_of(closure(b, t)));
        }
      }
      // Pullback stability along every map between small probes.
      for (auto const& x : objects)
        for (auto const& y : objects) {
          if (x.total_size() + y.total_size() > 8)
            continue;
          auto subs = enumerate_subobjects(y);
          for (auto const& f : hom_presheaf_set(x, y))
            for (auto const& a : subs)
              CHECK(pullback(closure(a, t), f) == closure(pullback(a, f), t));
        }
    }
  }
}

TEST_CASE("matching families") {
  auto const& g  = rgph();
  auto        mg = multigraph();
  CHECK(matching_families(mg, 1, 4).size() == mg.size(1));
  auto both = sieve_index(g, 1, "<d0,d1>");
  CHECK(matching_families(mg, 1, both).size() == 4);
  CHECK(matching_families(mg, 1, 0).size() == 1);

  for (auto const& t : gallery_topologies())
    for (auto const& x : probes_for(t.base()))
      for (ObjectId c = 0; c < t.base().number_of_objects(); ++c)
        for (std::size_t s = 0; s < t.base().sieves().count(c); ++s) {
          auto got = matching_families(x, c, s);
          CHECK(got.size() == oracle::families(x, c, s).size());
          for (ElementId e = 0; e < x.size(c); ++e) {
            auto fam = restrict_to(x, c, s, e);
            CHECK(std::find(got.begin(), got.end(), fam) != got.end());
            auto am = amalgamations(x, c, s, fam);
            CHECK(std::find(am.begin(), am.end(), e) != am.end());
          }
        }
}

TEST_CASE("sheaf and separated") {
  auto const& g = rgph();
  auto        ks = k_simple();
  CHECK_FALSE(is_separated(multigraph(), ks));
  CHECK(is_separated(make_graph({"a", "b"}, {{"a", "b"}}), ks));
  // The cover <e> has the single family x_e = e, amalgamated by both 1 and e.
  auto free = is_separated(yoneda(idem(), 0), k_idem());
  CHECK_FALSE(free);
  CHECK_FALSE(free.witness.empty());
  CHECK(is_sheaf(make_mset({"p", "q"}, {"p", "q"}), k_idem()));
  for (auto const& x : probes_for(g))
    CHECK(is_sheaf(x, trivial_topology(g)));

  for (auto const& t : gallery_topologies())
    for (auto const& x : probes_for(t.base())) {
      CHECK(bool(is_sheaf(x, t)) == oracle::is_sheaf(x, t));
      CHECK(bool(is_separated(x, t)) == oracle::is_separated(x, t));
    }

  SECTION("simple graphs are exactly the separated ones") {
    for (auto const& x : probes_for(g)) {
      std::set<std::pair<ElementId, ElementId>> ends;
      for (ElementId e = 0; e < x.size(1); ++e)
        ends.insert({x.act(g.morphism_id("d0"), e), x.act(g.morphism_id("d1"), e)});
      CHECK(bool(is_separated(x, ks)) == (ends.size() == x.size(1)));
    }
  }
}

TEST_CASE("plus construction") {
  auto const& g  = rgph();
  auto        ks = k_simple();
  auto        y1 = yoneda(g, 1);
  auto        p  = plus(y1, ks);
  CHECK(p.object.size(1) == 4);
  CHECK(p.object.size(0) == 2);

  auto t = plus(y1, trivial_topology(g));
  CHECK(is_iso(t.unit));

  for (auto const& top : gallery_topologies())
    for (auto const& x : probes_for(top.base())) {
      auto once = plus(x, top);
      CHECK(check_natural(once.unit));
      CHECK(is_separated(once.object, top));
      auto twice = plus(once.object, top);
      CHECK(is_sheaf(twice.object, top));
      auto ref = oracle::plus(x, top);
      CHECK(iso_over_units(once, ref));
      if (is_separated(x, top))
        CHECK(is_sheaf(once.object, top));
    }
}

TEST_CASE("sheafification") {
  auto const& g  = rgph();
  auto        ks = k_simple();
  for (auto const& top : gallery_topologies())
    for (auto const& x : probes_for(top.base())) {
      auto a = sheafify(x, top);
      CHECK(is_sheaf(a.object, top));
      CHECK(bool(is_iso(a.unit)) == bool(is_sheaf(x, top)));
      CHECK(is_iso(sheafify(a.object, top).unit));
    }

  SECTION("k_simple sheaves are complete graphs on the vertices") {
    for (auto const& x : probes_for(g)) {
      auto a = sheafify(x, ks);
      CHECK(a.object.size(0) == x.size(0));
      CHECK(a.object.size(1) == x.size(0) * x.size(0));
    }
  }
  SECTION("idempotent monoid sheaves are the fixed points") {
    auto e = idem().morphism_id("e");
    for (auto const& x : probes_for(idem())) {
      std::size_t fixed = 0;
      for (ElementId v = 0; v < x.size(0); ++v)
        fixed += x.act(e, v) == v;
      CHECK(sheafify(x, k_idem()).object.size(0) == fixed);
    }
  }
}

TEST_CASE("separated reflection") {
  auto const& g = rgph();
  for (auto const& top : gallery_topologies())
    for (auto const& x : probes_for(top.base())) {
      auto s = separated_reflection(x, top);
      CHECK(is_separated(s.object, top));
      CHECK(is_epi(s.unit));
      auto img = image_factorization(sheafify(x, top).unit);
      CHECK(iso_over_units(s, {img.epi.target(), img.epi}));
      CHECK(iso_over_units(s, oracle::separated_quotient(x, top)));
    }
  for (auto const& x : probes_for(g))
    CHECK(is_iso(separated_reflection(x, trivial_topology(g)).unit));
  auto collapsed = separated_reflection(multigraph(), k_simple());
  CHECK(collapsed.object.size(1) == 3);
  for (auto const& x : probes_for(idem()))
    CHECK(bool(is_separated(x, k_idem())) == bool(is_sheaf(x, k_idem())));
}

TEST_CASE("biseparated reflection") {
  auto const& g      = rgph();
  auto        simple = make_bisite(trivial_topology(g), k_simple(), "simple");
  auto        split  = make_bisite(trivial_topology(idem()), k_idem(), "split");

  auto l = biseparated_reflect(multigraph(), simple);
  CHECK(l.object.size(1) == 3);
  CHECK(is_biseparated(l.object, simple));
  CHECK_FALSE(is_biseparated(multigraph(), simple));
  CHECK(is_biseparated(make_graph({"a", "b"}, {{"a", "b"}}), simple));
  CHECK_THROWS_AS(make_bisite(k_simple(), trivial_topology(g)), ValidationError);
  CHECK_THROWS_AS(biseparated_reflect(multigraph(), BiSite{"bad", k_simple(), trivial_topology(g)}), ValidationError);

  auto x = make_mset({"p", "q", "r"}, {"q", "q", "r"});
  auto r = biseparated_reflect(x, split);
  CHECK(r.object.size(0) == 2);

  for (auto const& bs : {simple, split, make_bisite(k_simple(), k_simple()), make_bisite(k_idem(), k_idem())})
    for (auto const& y : probes_for(bs.base())) {
      auto ly = biseparated_reflect(y, bs);
      CHECK(is_biseparated(ly.object, bs));
      if (is_biseparated(y, bs))
        CHECK(is_iso(ly.unit));
      if (bs.j == bs.k)
        CHECK(iso_over_units(ly, sheafify(y, bs.k)));
    }
}
