#include "qtopos/gallery.hpp"

#include <map>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "qtopos/gallery_data.hpp"

namespace qtopos {

  namespace {

    using nlohmann::json;

    json const& expectations() {
      static json const data = json::parse(GALLERY_EXPECTED_JSON);
      return data;
    }

    json const& case_data(std::string const& name) {
      for (auto const& c : expectations().at("cases")) {
        if (c.at("name") == name) {
          return c;
        }
      }
      throw std::invalid_argument("unknown gallery case '" + name + "'");
    }

    CoverListing listing_from(json const& j) {
      CoverListing out;
      for (auto const& [obj, sieves] : j.items()) {
        out[obj] = sieves.get<std::vector<std::string>>();
      }
      return out;
    }

    NatTrans inclusion_by_label(Presheaf const& a, Presheaf const& b) {
      std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> comps;
      FinCat const& cat = a.base();
      for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto const& l : a.labels(c)) {
          pairs.emplace_back(l, l);
        }
        comps.emplace_back(cat.object_name(c), std::move(pairs));
      }
      return validate_nat(a, b, comps);
    }

    void hand_two(GalleryCase& gc) {
      FinCat   cat = gc.oracle->base();
      Presheaf x   = validate_presheaf(cat, PresheafDescription{"X", {{}, {"b"}}, {}});
      Presheaf y   = validate_presheaf(cat, PresheafDescription{"Y", {{"a"}, {}}, {}});
      gc.hand.products.emplace_back(x, y);
    }

    void hand_pi0(GalleryCase& gc) {
      Presheaf x  = make_graph({"a", "b"}, {});
      Presheaf kx = make_graph({"a", "b"}, {{"a", "b"}, {"b", "a"}});
      gc.hand.monos.push_back(inclusion_by_label(x, kx));
    }

    void hand_preord(GalleryCase& gc) {
      Presheaf  x  = make_graph({"x", "w", "z"}, {{"x", "w"}, {"w", "z"}});
      Presheaf  a  = make_graph({"x", "z"}, {{"x", "z"}});
      Reflected lx = gc.oracle->reflect(x);
      NatTrans  u  = validate_nat(a, lx.object,
                                  {{"0", {{"x", "x"}, {"z", "z"}}},
                                   {"1", {{"xx", "xx"}, {"zz", "zz"}, {"xz", "x<=z"}}}});
      gc.hand.semi_left_exact.emplace_back(x, u);
    }

  }  // namespace

  CoverListing cover_listing(GTopology const& t) {
    FinCat const&     cat = t.base();
    SieveTable const& st  = cat.sieves();
    CoverListing      out;
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      auto& v = out[cat.object_name(c)];
      for (std::size_t s : t.covering_sieves(c)) {
        v.push_back(st.describe(c, s));
      }
    }
    return out;
  }

  std::string const& gallery_expected_json() {
    static std::string const text = GALLERY_EXPECTED_JSON;
    return text;
  }

  std::vector<std::string> gallery_names() {
    std::vector<std::string> out;
    for (auto const& c : expectations().at("cases")) {
      out.push_back(c.at("name").get<std::string>());
    }
    return out;
  }

  Presheaf make_graph(std::vector<std::string> const&                         vertices,
                      std::vector<std::pair<std::string, std::string>> const& edges) {
    PresheafDescription d;
    d.name = "G";
    d.carriers.resize(2);
    std::vector<std::pair<std::string, std::string>> d0, d1, s;
    for (auto const& v : vertices) {
      d.carriers[0].push_back(v);
      d.carriers[1].push_back(v + v);
      d0.emplace_back(v + v, v);
      d1.emplace_back(v + v, v);
      s.emplace_back(v, v + v);
    }
    std::map<std::string, int> seen;
    for (auto const& [u, v] : edges) {
      int         n = seen[u + v]++;
      std::string e = u + v + (n ? std::to_string(n + 1) : "");
      d.carriers[1].push_back(e);
      d0.emplace_back(e, u);
      d1.emplace_back(e, v);
    }
    d.actions = {{"d0", d0}, {"d1", d1}, {"s", s}};
    return validate_presheaf(sites::reflexive_graph(), d);
  }

  Presheaf make_mset(std::vector<std::string> const& elements, std::vector<std::string> const& e_action) {
    PresheafDescription d;
    d.name     = "M";
    d.carriers = {elements};
    std::vector<std::pair<std::string, std::string>> e;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      e.emplace_back(elements[i], e_action.at(i));
    }
    d.actions = {{"e", e}};
    return validate_presheaf(sites::idempotent_monoid(), d);
  }

  GalleryCase build_case(std::string const& name) {
    json const& data = case_data(name);
    GalleryCase gc;
    gc.name    = name;
    gc.summary = data.at("summary").get<std::string>();
    FinCat rgph = sites::reflexive_graph();
    if (name == "two") {
      gc.oracle  = std::make_shared<TwoReflection>();
      gc.options = {{2}, {2}, true, true};
      hand_two(gc);
    } else if (name == "pi0") {
      gc.oracle  = std::make_shared<Pi0Reflection>();
      gc.options = {{3, 5}, {2, 4}, true, true};
      hand_pi0(gc);
    } else if (name == "preord") {
      gc.oracle  = std::make_shared<PreorderReflection>();
      gc.options = {{3, 5}, {2, 4}, true, true};
      hand_preord(gc);
    } else if (name == "idempotent-mset") {
      FinCat m   = sites::idempotent_monoid();
      gc.bisite  = make_bisite(trivial_topology(m), generate_topology(m, {{1}}, "k"), "idempotent-mset");
      gc.oracle  = std::make_shared<BisiteReflection>(*gc.bisite);
      gc.options = {{4}, {2}, true, true};
    } else if (name == "simple-graphs") {
      gc.bisite  = make_bisite(trivial_topology(rgph), generate_topology(rgph, {{}, {3}}, "k_simple"), "simple-graphs");
      gc.oracle  = std::make_shared<BisiteReflection>(*gc.bisite);
      gc.options = {{3, 5}, {2, 4}, true, true};
    } else {
      throw std::invalid_argument("unknown gallery case '" + name + "'");
    }
    for (Condition c : ALL_CONDITIONS) {
      json const& cell = data.at("matrix").at(condition_name(c));
      gc.expected.emplace_back(c, ExpectedCell{cell.at("expect") == "pass", cell.at("basis").get<std::string>()});
    }
    if (auto it = data.find("recovery"); it != data.end()) {
      ExpectedRecovery er;
      er.k_valid = it->at("k_valid").get<bool>();
      if (er.k_valid) {
        er.k                    = listing_from(it->at("k"));
        er.e_equals_biseparated = it->at("e_equals_biseparated").get<bool>();
      }
      er.j        = listing_from(it->at("j"));
      gc.recovery = std::move(er);
    }
    return gc;
  }

  CaseReport run_case(GalleryCase const& gc, std::size_t max_failures) {
    ReflectionOracle const& r = *gc.oracle;
    CaseReport              report;
    report.name   = gc.name;
    report.probes = make_probe_set(r, gc.options, gc.hand);
    for (auto const& [cond, cell] : gc.expected) {
      CheckReport cr = run_check(cond, r, report.probes, max_failures);
      if (cr.passed != cell.pass) {
        report.mismatches.push_back(cr.condition + ": expected " + (cell.pass ? "pass" : "fail") + ", got "
                                    + (cr.passed ? "pass" : "fail " + cr.witness()));
      }
      report.checks.push_back(std::move(cr));
    }
    if (!gc.recovery) {
      return report;
    }
    ExpectedRecovery const& er = *gc.recovery;
    report.k                   = recover_k(r);
    report.j                   = recover_j(r);
    if (cover_listing(*report.j) != er.j) {
      report.mismatches.push_back("recovered j differs:\n" + report.j->describe());
    }
    if (report.k->topology.has_value() != er.k_valid) {
      report.mismatches.push_back(std::string("recovered k ") + (er.k_valid ? "fails: " + report.k->witness : "validates"));
    }
    if (report.k->topology) {
      if (er.k_valid && cover_listing(*report.k->topology) != er.k) {
        report.mismatches.push_back("recovered k differs:\n" + report.k->topology->describe());
      }
      report.e_equals = check_e_equals_biseparated(r, *report.j, *report.k->topology, report.probes.objects,
                                                   report.probes.exhaustive);
      if (er.k_valid && report.e_equals->passed != er.e_equals_biseparated) {
        report.mismatches.push_back("E versus biseparated: expected " + std::string(er.e_equals_biseparated ? "pass" : "fail")
                                    + ", got " + (report.e_equals->passed ? "pass" : "fail " + report.e_equals->witness));
      }
    }
    return report;
  }

}  // namespace qtopos
