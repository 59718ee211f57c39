#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtopos/enumerate.hpp"
#include "qtopos/gallery.hpp"
#include "qtopos/io.hpp"
#include "qtopos/recovery.hpp"

#ifndef QTOPOS_VERSION
#define QTOPOS_VERSION "0.0.0"
#endif

using namespace qtopos;
using json = nlohmann::ordered_json;

namespace {

  constexpr int EXIT_PASS  = 0;
  constexpr int EXIT_FAIL  = 1;
  constexpr int EXIT_INPUT = 2;

  struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct Result {
    std::string name;
    bool        pass       = true;
    bool        exhaustive = true;
    std::string witness;
    bool        expect_fail = false;
    // Reported but never affects the exit status.
    bool        informational = false;

    bool ok() const {
      return informational || pass != expect_fail;
    }
  };

  struct Report {
    std::string                                      command;
    std::vector<std::string>                         inputs;
    std::vector<Result>                              results;
    std::vector<std::pair<std::string, std::string>> artifacts;  // (name, text)

    int exit_code() const {
      return std::all_of(results.begin(), results.end(), [](Result const& r) { return r.ok(); }) ? EXIT_PASS : EXIT_FAIL;
    }
  };

  struct Common {
    std::vector<std::string> inputs;
    std::string              format = "text";
    std::string              bound;
    std::string              out;
    bool                     saturate = false;
  };

  void emit(Report const& report, Common const& common) {
    if (!common.out.empty()) {
      std::ofstream f(common.out);
      if (!f) {
        throw InputError("cannot write " + common.out);
      }
      for (auto const& [name, text] : report.artifacts) {
        f << text << "\n";
      }
    }
    if (common.format == "json") {
      json j;
      j["tool_version"] = QTOPOS_VERSION;
      j["command"]      = report.command;
      j["inputs"]       = report.inputs;
      j["results"]      = json::array();
      for (auto const& r : report.results) {
        json e{{"name", r.name}, {"verdict", r.pass ? "pass" : "fail"}, {"exhaustive", r.exhaustive}};
        if (!r.witness.empty()) {
          e["witness"] = r.witness;
        }
        if (r.expect_fail) {
          e["expected"] = "fail";
        }
        j["results"].push_back(std::move(e));
      }
      if (common.out.empty() && !report.artifacts.empty()) {
        for (auto const& [name, text] : report.artifacts) {
          j["artifacts"][name] = text;
        }
      }
      std::cout << j.dump(2) << "\n";
      return;
    }
    if (common.out.empty()) {
      for (auto const& [name, text] : report.artifacts) {
        std::cout << text << "\n";
      }
    }
    for (auto const& r : report.results) {
      std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL");
      if (r.expect_fail) {
        std::cout << (r.pass ? " (expected to fail)" : " (expected)");
      }
      if (!r.exhaustive) {
        std::cout << " [not exhaustive]";
      }
      if (r.informational) {
        std::cout << " (informational)";
      }
      std::cout << "\n";
      if (!r.witness.empty()) {
        std::istringstream lines(r.witness);
        for (std::string line; std::getline(lines, line);) {
          std::cout << "  " << line << "\n";
        }
      }
    }
  }

  std::vector<std::size_t> parse_bound(std::string const& text) {
    std::vector<std::size_t> out;
    std::stringstream        in(text);
    for (std::string part; std::getline(in, part, ',');) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoul(part, &used));
        if (used != part.size()) {
          throw std::invalid_argument(part);
        }
      } catch (std::exception const&) {
        throw InputError("bad bound '" + text + "'");
      }
    }
    if (out.empty()) {
      throw InputError("empty bound");
    }
    return out;
  }

  std::vector<std::size_t> fit_bound(std::vector<std::size_t> b, FinCat const& cat) {
    if (b.size() != 1 && b.size() != cat.number_of_objects()) {
      throw InputError("bound needs 1 or " + std::to_string(cat.number_of_objects()) + " entries");
    }
    return b;
  }

  Workspace load_inputs(Common const& common) {
    Workspace ws;
    for (auto const& path : common.inputs) {
      load_file(ws, path, {common.saturate});
    }
    return ws;
  }

  template <typename Map>
  auto const& find_named(Map const& m, std::string const& name, std::string const& kind) {
    auto it = m.find(name);
    if (it == m.end()) {
      throw InputError("no " + kind + " named '" + name + "' in the inputs");
    }
    return it->second;
  }

  struct Resolved {
    std::string           label;
    OraclePtr             oracle;
    std::optional<BiSite> bisite;
    ProbeOptions          options;
    HandPicked            hand;
  };

  // "<gallery case>", "identity", "bisite <name>" or "table <name>".
  Resolved resolve(std::vector<std::string> const& words, Workspace const& ws, std::string const& base) {
    Resolved r;
    if (words.size() == 1) {
      auto const names = gallery_names();
      if (std::find(names.begin(), names.end(), words[0]) != names.end()) {
        GalleryCase gc = build_case(words[0]);
        r              = {gc.name, gc.oracle, gc.bisite, gc.options, gc.hand};
        return r;
      }
      if (words[0] == "identity") {
        r.label  = "identity";
        r.oracle = std::make_shared<IdentityReflection>(find_named(ws.categories, base, "category"));
        return r;
      }
    } else if (words.size() == 2 && words[0] == "bisite") {
      r.label  = words[1];
      r.bisite = find_named(ws.bisites, words[1], "bisite");
      r.oracle = std::make_shared<BisiteReflection>(*r.bisite);
      return r;
    } else if (words.size() == 2 && words[0] == "table") {
      r.label  = words[1];
      r.oracle = find_named(ws.tables, words[1], "table").oracle(words[1]);
      return r;
    }
    std::string joined;
    for (auto const& w : words) {
      joined += (joined.empty() ? "" : " ") + w;
    }
    throw InputError("unknown reflection '" + joined + "'");
  }

  void apply_bound(Resolved& r, std::string const& bound) {
    if (bound.empty()) {
      return;
    }
    auto b = fit_bound(parse_bound(bound), r.oracle->base());
    r.options.bounds = b;
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::size_t small = r.options.small_bounds.size() == 1 ? r.options.small_bounds[0] : r.options.small_bounds.at(i);
      b[i]              = std::min(b[i], small);
    }
    r.options.small_bounds = b;
  }

  std::vector<Condition> parse_conditions(std::vector<std::string> const& items) {
    std::vector<Condition> out;
    for (auto const& item : items) {
      std::stringstream in(item);
      for (std::string part; std::getline(in, part, ',');) {
        try {
          out.push_back(parse_condition(part));
        } catch (std::invalid_argument const& e) {
          throw InputError(e.what());
        }
      }
    }
    return out;
  }

  Result from_check(CheckReport const& cr) {
    return {cr.condition, cr.passed, cr.exhaustive, cr.witness(), false};
  }

  Result from_audit(AuditReport const& ar) {
    return {ar.name, ar.passed, ar.exhaustive, ar.witness, false};
  }

  // validate

  Report cmd_validate(Common const& common) {
    // Later files may refer to blocks of earlier ones.
    Report    report{"validate", common.inputs, {}, {}};
    Workspace ws;
    for (auto const& path : common.inputs) {
      Result r{path, true, true, {}, false};
      try {
        std::size_t before = ws.loaded.size();
        load_file(ws, path, {common.saturate});
        for (std::size_t i = before; i < ws.loaded.size(); ++i) {
          auto const& [kind, name] = ws.loaded[i];
          r.witness += (r.witness.empty() ? "" : "\n") + kind + " " + name + ": ok";
        }
      } catch (ParseError const& e) {
        r.pass    = false;
        r.witness = e.what();
      } catch (ValidationError const& e) {
        r.pass    = false;
        r.witness = e.what();
        if (!e.witness().empty()) {
          std::string w;
          for (auto const& s : e.witness()) {
            w += (w.empty() ? "" : ", ") + s;
          }
          r.witness += "\nwitness: " + w;
        }
      }
      report.results.push_back(std::move(r));
    }
    return report;
  }

  // reflect

  struct ReflectArgs {
    std::string presheaf;
    std::string j;
    std::string k;
    std::string bisite;
    bool        certify = false;
  };

  Report cmd_reflect(Common const& common, ReflectArgs const& a) {
    Workspace       ws = load_inputs(common);
    Presheaf const& x  = find_named(ws.presheaves, a.presheaf, "presheaf");
    Report          report{"reflect", common.inputs, {}, {}};
    Reflected       out;
    OraclePtr       oracle;
    std::string     how;
    if (!a.bisite.empty() || (!a.j.empty() && !a.k.empty())) {
      BiSite bs;
      if (!a.bisite.empty()) {
        bs = find_named(ws.bisites, a.bisite, "bisite");
      } else {
        try {
          bs = make_bisite(find_named(ws.topologies, a.j, "topology"), find_named(ws.topologies, a.k, "topology"),
                           a.j + "," + a.k);
        } catch (ValidationError const& e) {
          throw InputError(e.what());
        }
      }
      out    = biseparated_reflect(x, bs);
      oracle = std::make_shared<BisiteReflection>(bs);
      how    = "biseparated";
      report.results.push_back({"biseparated", is_biseparated(out.object, bs).holds, true, {}, false});
    } else if (!a.j.empty()) {
      GTopology const& j = find_named(ws.topologies, a.j, "topology");
      out                = sheafify(x, j);
      BiSite bs          = make_bisite(j, j, a.j);
      oracle             = std::make_shared<BisiteReflection>(bs);
      how                = "sheaf";
      Verdict v          = is_sheaf(out.object, j);
      report.results.push_back({"sheaf", v.holds, true, v.witness, false});
    } else if (!a.k.empty()) {
      GTopology const& k = find_named(ws.topologies, a.k, "topology");
      out                = separated_reflection(x, k);
      oracle             = std::make_shared<BisiteReflection>(make_bisite(trivial_topology(k.base()), k, a.k));
      how                = "separated";
      Verdict v          = is_separated(out.object, k);
      report.results.push_back({"separated", v.holds, true, v.witness, false});
    } else {
      throw InputError("reflect needs --j, --k or --bisite");
    }
    Verdict iso = is_iso(out.unit);
    report.results.push_back({"unit-iso", iso.holds, true, iso.witness, false, true});
    std::string lname = "L" + a.presheaf;
    report.artifacts.emplace_back(lname, write_presheaf(lname, out.object));
    report.artifacts.emplace_back("unit", write_nat("unit_" + a.presheaf, a.presheaf, lname, out.unit));
    if (a.certify) {
      std::vector<std::size_t> b = common.bound.empty() ? std::vector<std::size_t>{2} : parse_bound(common.bound);
      auto probes = enumerate_presheaves(x.base(), fit_bound(b, x.base()));
      Result r = from_audit(check_universal_property(*oracle, {x}, probes));
      r.name   = "certify (" + how + ")";
      report.results.push_back(std::move(r));
    }
    return report;
  }

  // check

  struct CheckArgs {
    std::vector<std::string> reflection;
    std::vector<std::string> conditions;
    std::vector<std::string> expect_fail;
    std::string              base = "rgph";
  };

  Report cmd_check(Common const& common, CheckArgs const& a) {
    Workspace ws = load_inputs(common);
    Resolved  r  = resolve(a.reflection, ws, a.base);
    apply_bound(r, common.bound);
    std::vector<Condition> conds = parse_conditions(a.conditions);
    if (conds.empty()) {
      conds.assign(std::begin(ALL_CONDITIONS), std::end(ALL_CONDITIONS));
    }
    std::vector<Condition> expected = parse_conditions(a.expect_fail);
    ProbeSet               probes   = make_probe_set(*r.oracle, r.options, r.hand);
    Report                 report{"check " + r.label, common.inputs, {}, {}};
    for (Condition c : conds) {
      Result res      = from_check(run_check(c, *r.oracle, probes));
      res.expect_fail = std::find(expected.begin(), expected.end(), c) != expected.end();
      report.results.push_back(std::move(res));
    }
    return report;
  }

  // recover

  Report cmd_recover(Common const& common, CheckArgs const& a) {
    Workspace ws = load_inputs(common);
    Resolved  r  = resolve(a.reflection, ws, a.base);
    apply_bound(r, common.bound);
    Report    report{"recover " + r.label, common.inputs, {}, {}};
    GTopology j = recover_j(*r.oracle);
    report.results.push_back({"recover-j", true, true, j.describe(), false, false});
    report.artifacts.emplace_back("j", write_topology("j", j));
    KRecovery k = recover_k(*r.oracle);
    if (!k.topology) {
      report.results.push_back({"recover-k", false, true, k.witness, false});
    } else {
      report.results.push_back({"recover-k", true, true, k.topology->describe(), false});
      report.artifacts.emplace_back("k", write_topology("k", *k.topology));
      std::vector<Presheaf> objects = enumerate_presheaves(r.oracle->base(), r.options.bounds);
      objects.insert(objects.begin(), r.hand.objects.begin(), r.hand.objects.end());
      report.results.push_back(from_audit(check_e_equals_biseparated(*r.oracle, j, *k.topology, objects)));
    }
    std::vector<std::string> expected;
    for (auto const& item : a.expect_fail) {
      std::stringstream in(item);
      for (std::string part; std::getline(in, part, ',');) {
        expected.push_back(part);
      }
    }
    for (auto& res : report.results) {
      res.expect_fail = std::find(expected.begin(), expected.end(), res.name) != expected.end();
    }
    return report;
  }

  // classifier

  Report cmd_classifier(Common const& common, CheckArgs const& a) {
    Workspace ws = load_inputs(common);
    Resolved  r  = resolve(a.reflection, ws, a.base);
    if (!r.bisite) {
      throw InputError("classifier needs a bisite reflection");
    }
    std::vector<std::size_t> b = common.bound.empty() ? std::vector<std::size_t>{2} : parse_bound(common.bound);
    WeakClassifier wc = weak_classifier(*r.bisite);
    Report         report{"classifier " + r.label, common.inputs, {}, {}};
    report.artifacts.emplace_back("Omega'", write_presheaf("Omega'", wc.object()));
    report.artifacts.emplace_back("t'", write_nat("t'", "1", "Omega'", wc.truth));
    for (auto const& [what, v] : wc.obligations) {
      report.results.push_back({what, v.holds, true, v.witness, false});
    }
    auto objects = enumerate_presheaves(r.bisite->base(), fit_bound(b, r.bisite->base()));
    report.results.push_back(from_audit(check_classifies(wc, *r.bisite, objects)));
    return report;
  }

  // gallery

  Report cmd_gallery_list() {
    Report report{"gallery list", {}, {}, {}};
    for (auto const& name : gallery_names()) {
      GalleryCase gc = build_case(name);
      std::string line;
      for (auto const& [c, cell] : gc.expected) {
        line += (line.empty() ? "" : ", ") + condition_name(c) + " " + (cell.pass ? "pass" : "fail");
      }
      report.results.push_back({name, true, true, gc.summary + "\nexpected: " + line, false});
    }
    return report;
  }

  Report cmd_gallery_run(std::vector<std::string> names) {
    Report report{"gallery run", {}, {}, {}};
    for (auto const& name : names) {
      GalleryCase gc = build_case(name);
      CaseReport  cr = run_case(gc);
      for (std::size_t i = 0; i < cr.checks.size(); ++i) {
        Result res      = from_check(cr.checks[i]);
        res.name        = name + "/" + res.name;
        res.expect_fail = !gc.expected[i].second.pass;
        report.results.push_back(std::move(res));
      }
      if (cr.j) {
        report.results.push_back({name + "/recover-j", true, true, cr.j->describe(), false});
      }
      if (cr.k) {
        bool valid = cr.k->topology.has_value();
        report.results.push_back({name + "/recover-k", valid, true, valid ? cr.k->topology->describe() : cr.k->witness,
                                  gc.recovery && !gc.recovery->k_valid});
      }
      if (cr.e_equals) {
        Result res      = from_audit(*cr.e_equals);
        res.name        = name + "/" + res.name;
        res.expect_fail = gc.recovery && !gc.recovery->e_equals_biseparated;
        report.results.push_back(std::move(res));
      }
      std::string mism;
      for (auto const& m : cr.mismatches) {
        mism += (mism.empty() ? "" : "\n") + m;
      }
      report.results.push_back({name + "/agreement", cr.agrees(), true, mism, false});
    }
    return report;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite sites, reflections and their exactness conditions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QTOPOS_VERSION);

  Common common;
  auto   add_common = [&](CLI::App* sub, bool files_positional) {
    if (files_positional) {
      sub->add_option("files", common.inputs, "Input files")->required()->check(CLI::ExistingFile);
    } else {
      sub->add_option("-i,--input", common.inputs, "Input files")->check(CLI::ExistingFile);
    }
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--bound", common.bound, "Carrier bound, one entry or one per object (e.g. 3,5)");
    sub->add_option("-o,--out", common.out, "Write produced files here");
    sub->add_flag("--saturate", common.saturate, "Close topology covers under the axioms");
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate input files");
  add_common(validate, true);

  ReflectArgs ra;
  auto*       reflect = app.add_subcommand("reflect", "Sheafify, separate or biseparate a presheaf");
  add_common(reflect, true);
  reflect->add_option("--presheaf", ra.presheaf, "Presheaf to reflect")->required();
  reflect->add_option("--j", ra.j, "Topology j (sheaf condition)");
  reflect->add_option("--k", ra.k, "Topology k (separation)");
  reflect->add_option("--bisite", ra.bisite, "Bisite");
  reflect->add_flag("--certify", ra.certify, "Check the universal property against enumerated local objects");

  CheckArgs ca;
  auto*     check = app.add_subcommand("check", "Run condition checks on a reflection");
  add_common(check, false);
  check->add_option("reflection", ca.reflection, "Gallery case, identity, 'bisite NAME' or 'table NAME'")->required();
  check->add_option("--conditions", ca.conditions, "Conditions to check (default all)");
  check->add_flag("--all", "Check all conditions");
  check->add_option("--expect-fail", ca.expect_fail, "Conditions expected to fail");
  check->add_option("--base", ca.base, "Base category of the identity reflection");

  CheckArgs rc;
  auto*     recover = app.add_subcommand("recover", "Recover the topologies j and k from a reflection");
  add_common(recover, false);
  recover->add_option("reflection", rc.reflection, "Gallery case, identity, 'bisite NAME' or 'table NAME'")->required();
  recover->add_option("--expect-fail", rc.expect_fail, "Results expected to fail");
  recover->add_option("--base", rc.base, "Base category of the identity reflection");

  CheckArgs cc;
  auto*     classifier = app.add_subcommand("classifier", "Weak subobject classifier of a bisite");
  add_common(classifier, false);
  classifier->add_option("reflection", cc.reflection, "Gallery bisite case or 'bisite NAME'")->required();

  auto*                    gallery = app.add_subcommand("gallery", "Built-in examples");
  gallery->require_subcommand(1);
  auto*                    glist = gallery->add_subcommand("list", "List the cases");
  std::vector<std::string> gnames;
  bool                     gall = false;
  auto*                    grun = gallery->add_subcommand("run", "Run cases against their expected verdicts");
  grun->add_option("names", gnames, "Case names");
  grun->add_flag("--all", gall, "Run every case");
  for (auto* sub : {glist, grun}) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? EXIT_PASS : EXIT_INPUT;
  }

  try {
    Report report;
    if (*validate) {
      report = cmd_validate(common);
    } else if (*reflect) {
      report = cmd_reflect(common, ra);
    } else if (*check) {
      report = cmd_check(common, ca);
    } else if (*recover) {
      report = cmd_recover(common, rc);
    } else if (*classifier) {
      report = cmd_classifier(common, cc);
    } else if (*glist) {
      report = cmd_gallery_list();
    } else {
      if (gall) {
        gnames = gallery_names();
      }
      if (gnames.empty()) {
        throw InputError("gallery run needs case names or --all");
      }
      report = cmd_gallery_run(gnames);
    }
    emit(report, common);
    return report.exit_code();
  } catch (InputError const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (ValidationError const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (BudgetExceeded const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return EXIT_INPUT;
}
