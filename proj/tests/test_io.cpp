#include <catch_amalgamated.hpp>

#include "qtopos/enumerate.hpp"
#include "qtopos/gallery.hpp"
#include "qtopos/io.hpp"

using namespace qtopos;

namespace {

  std::string const SITES = QTOPOS_DATA_DIR "/sites/";

  std::string error_of(std::string const& text) {
    Workspace ws;
    try {
      load_text(ws, text, "in");
    } catch (std::exception const& e) {
      return e.what();
    }
    return {};
  }

}  // namespace

TEST_CASE("shipped site files load") {
  Workspace ws;
  for (auto f : {"rgph.txt", "simple.txt", "multigraph.txt", "mset.txt"})
    load_file(ws, SITES + f);
  CHECK(ws.categories.at("graphs") == sites::reflexive_graph());
  CHECK(ws.topologies.at("k_simple") == generate_topology(sites::reflexive_graph(), {{}, {3}}));
  CHECK(ws.topologies.at("trivial").is_trivial());
  CHECK(ws.bisites.count("simple") == 1);
  CHECK(ws.bisites.count("split") == 1);
  CHECK(ws.presheaves.at("G").sizes() == std::vector<std::size_t>{2, 4});
  CHECK(ws.presheaves.at("X").size(0) == 3);
}

TEST_CASE("errors carry line numbers") {
  Workspace ws;
  try {
    load_file(ws, SITES + "broken_relation.txt");
    FAIL("loaded a broken relation");
  } catch (ValidationError const& e) {
    std::string what = e.what();
    CHECK(what.find("broken_relation.txt:4:") != std::string::npos);
    CHECK(what.find("'g'") != std::string::npos);
  }
  try {
    load_file(ws, SITES + "t2_failure.txt");
    FAIL("loaded a topology violating T2");
  } catch (ValidationError const& e) {
    CHECK(std::string(e.what()).find("along d1") != std::string::npos);
    CHECK(e.witness().back() == "d1");
  }
  CHECK(error_of("presheaf G over nowhere\n").find("in:1:") == 0);
  CHECK(error_of("object a\n").find("in:1:") == 0);
  CHECK(error_of("category c\nobject a\nmor f : a -> b\n").find("in:3:") == 0);
  CHECK(error_of("presheaf G over rgph\nat 0: {a}\nat 1: {l}\nact d0: l -> a\nact d1: l -> a\nact s: a -> l\n").empty());
  CHECK(error_of("presheaf G over rgph\nat 0: {a, b}\nat 1: {la, lb}\nact d0: la -> b, lb -> a\n"
                 "act d1: la -> a, lb -> b\nact s: a -> la, b -> lb\n")
            .find("in:6:")
        == 0);
  CHECK_FALSE(error_of("topology j over rgph\ncover 1: {s}\n").empty());
  CHECK_FALSE(error_of("topology a over rgph\ncover 0: {id_0}\ncover 1: {id_1}\n"
                       "topology b over rgph\ncover 0: {id_0}\ncover 1: {d0, d1}\ncover 1: {id_1}\n"
                       "bisite wrong\nj b\nk a\n")
                   .empty());
}

TEST_CASE("saturation") {
  Workspace   ws;
  std::string text = "topology k over rgph\ncover 1: {d0, d1}\n";
  CHECK_THROWS_AS(load_text(ws, text, "in"), ValidationError);
  load_text(ws, text, "in", LoadOptions{true});
  CHECK(ws.topologies.at("k") == generate_topology(sites::reflexive_graph(), {{}, {3}}));
}

TEST_CASE("round trips") {
  auto reload_category = [](FinCat const& cat) {
    Workspace ws;
    load_text(ws, write_category(cat), "out");
    return ws.categories.at(cat.name());
  };
  for (auto const& cat : {sites::reflexive_graph(), sites::idempotent_monoid(), sites::discrete(2)})
    CHECK(reload_category(cat) == cat);

  SECTION("presheaves, maps and topologies") {
    auto      g = make_graph({"a", "b"}, {{"a", "b"}, {"a", "b"}});
    Workspace ws;
    load_text(ws, write_presheaf("G", g), "out");
    CHECK(ws.presheaves.at("G") == g);
    for (auto const& p : enumerate_presheaves(sites::reflexive_graph(), {2, 3})) {
      Workspace w2;
      load_text(w2, write_presheaf("P", p), "out");
      CHECK(w2.presheaves.at("P") == p);
    }
    auto odd = g.relabel({{"a b", "x<=y"}, {"\"q\"", "l,1", "{", "->"}});
    Workspace w3;
    load_text(w3, write_presheaf("odd", odd), "out");
    CHECK(w3.presheaves.at("odd") == odd);

    auto unit = build_case("simple-graphs").oracle->reflect(g).unit;
    Workspace w4;
    load_text(w4, write_presheaf("G", g) + write_presheaf("LG", unit.target()) + write_nat("u", "G", "LG", unit), "out");
    CHECK(w4.nats.at("u") == unit);

    for (auto const& t : {generate_topology(sites::reflexive_graph(), {{}, {3}}, "ks"),
                          generate_topology(sites::idempotent_monoid(), {{1}}, "k"),
                          degenerate_topology(sites::discrete(2)).renamed("d")}) {
      Workspace w5;
      load_text(w5, write_topology(t.name(), t), "out");
      CHECK(w5.topologies.at(t.name()) == t);
    }
  }
  SECTION("bisites and tables") {
    Workspace ws;
    load_file(ws, SITES + "simple.txt");
    load_text(ws, write_bisite("again", "trivial", "k_simple"), "out");
    CHECK(ws.bisites.at("again").k == ws.bisites.at("simple").k);
    load_text(ws,
              "presheaf A over rgph\nat 0: {p}\nat 1: {pp}\nact d0: pp -> p\nact d1: pp -> p\nact s: p -> pp\n"
              "table t over rgph\nlocal A\n",
              "out");
    auto r = ws.tables.at("t").oracle("t");
    CHECK(r->is_local(ws.presheaves.at("A")));
    CHECK_FALSE(r->is_local(make_graph({"a", "b"}, {})));
  }
}

TEST_CASE("quoting") {
  CHECK(quote_token("abc") == "abc");
  CHECK(quote_token("d0.s") == "d0.s");
  CHECK(quote_token("x<=z") == "\"x<=z\"");
  CHECK(quote_token("") == "\"\"");
}
