#include "qtopos/checks.hpp"

#include <cctype>
#include <stdexcept>

#include "qtopos/enumerate.hpp"
#include "qtopos/hom.hpp"
#include "qtopos/limits.hpp"
#include "qtopos/subobjects.hpp"

namespace qtopos {

  std::string condition_name(Condition c) {
    switch (c) {
      case Condition::Monos: return "monos";
      case Condition::Products: return "products";
      case Condition::Frobenius: return "frobenius";
      case Condition::SemiLeftExact: return "semi-left-exact";
      case Condition::StableUnits: return "stable-units";
      case Condition::QuasiLex: return "quasi-lex";
    }
    return "?";
  }

  Condition parse_condition(std::string const& name) {
    std::string n;
    for (char ch : name) {
      n += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (n == "monos" || n == "mono" || n == "m") {
      return Condition::Monos;
    }
    if (n == "products" || n == "product" || n == "prod" || n == "p") {
      return Condition::Products;
    }
    if (n == "frobenius" || n == "frob" || n == "f") {
      return Condition::Frobenius;
    }
    if (n == "semi-left-exact" || n == "sle" || n == "semileftexact" || n == "slee") {
      return Condition::SemiLeftExact;
    }
    if (n == "stable-units" || n == "stable" || n == "su" || n == "stableunits") {
      return Condition::StableUnits;
    }
    if (n == "quasi-lex" || n == "qlex" || n == "ql" || n == "quasilex") {
      return Condition::QuasiLex;
    }
    throw std::invalid_argument("unknown condition '" + name + "'");
  }

  std::string size_vector(Presheaf const& p) {
    std::string s = "(";
    for (ObjectId c = 0; c < p.base().number_of_objects(); ++c) {
      s += (c == 0 ? "" : ",") + std::to_string(p.size(c));
    }
    return s + ")";
  }

  namespace {

    std::string show(Presheaf const& p) {
      return size_vector(p) + " " + describe(p);
    }

    Outcome iso_outcome(NatTrans const& phi, std::string const& what) {
      if (auto v = is_iso(phi); !v) {
        return {false, what + "; comparison " + show(phi.source()) + " -> " + show(phi.target()) + " is not invertible: " + v.witness, phi};
      }
      return {true, {}, phi};
    }

    NatTrans product_comparison(ReflectionOracle const& r, Presheaf const& x, Presheaf const& y) {
      Cone     prod = product(x, y);
      NatTrans lp1  = r.reflect_mor(prod.legs[0]);
      NatTrans lp2  = r.reflect_mor(prod.legs[1]);
      Cone     lprod = product(lp1.target(), lp2.target());
      return pair(lp1, lp2, lprod);
    }

    Outcome mono_and_epi_in_local(ReflectionOracle const& r, NatTrans const& phi, std::string const& what) {
      if (auto v = is_mono(phi); !v) {
        return {false, what + "; comparison " + show(phi.source()) + " -> " + show(phi.target()) + " is not mono: " + v.witness, phi};
      }
      if (auto v = is_epi_in_local(r, phi); !v) {
        return {false, what + "; comparison " + show(phi.source()) + " -> " + show(phi.target()) + " is not epi in E: " + v.witness, phi};
      }
      return {true, {}, phi};
    }

  }  // namespace

  Verdict is_epi_in_local(ReflectionOracle const& r, NatTrans const& f) {
    Cone      po = pushout(f, f);
    Reflected lq = r.reflect(po.apex);
    NatTrans  a  = compose(lq.unit, po.legs[0]);
    NatTrans  b  = compose(lq.unit, po.legs[1]);
    Presheaf const& q = f.target();
    for (ObjectId c = 0; c < q.base().number_of_objects(); ++c) {
      for (ElementId y = 0; y < q.size(c); ++y) {
        if (a(c, y) != b(c, y)) {
          return Verdict::no("the two reflected cokernel-pair injections differ at " + describe_element(q, c, y));
        }
      }
    }
    return Verdict::yes();
  }

  Outcome check_instance(ReflectionOracle const& r, Instance const& in) {
    switch (in.condition) {
      case Condition::Monos: {
        NatTrans const& m  = in.maps.at(0);
        NatTrans        lm = r.reflect_mor(m);
        if (auto v = is_mono(lm); !v) {
          return {false,
                  "mono " + show(m.source()) + " -> " + show(m.target()) + " reflects to " + show(lm.source()) + " -> "
                      + show(lm.target()) + ", not mono: " + v.witness,
                  lm};
        }
        return {true, {}, lm};
      }
      case Condition::Products: {
        Presheaf const& x = in.objects.at(0);
        Presheaf const& y = in.objects.at(1);
        return iso_outcome(product_comparison(r, x, y), "product of X = " + show(x) + " and Y = " + show(y));
      }
      case Condition::Frobenius: {
        Presheaf const& x = in.objects.at(0);
        Presheaf const& a = in.objects.at(1);
        if (!r.is_local(a)) {
          throw std::invalid_argument("frobenius instance with a non-local A");
        }
        Cone     prod   = product(x, a);
        NatTrans lp1    = r.reflect_mor(prod.legs[0]);
        NatTrans lp2    = r.reflect_mor(prod.legs[1]);
        NatTrans back   = inverse(r.reflect(a).unit);
        Cone     target = product(lp1.target(), a);
        NatTrans phi    = pair(lp1, compose(back, lp2), target);
        return iso_outcome(phi, "X = " + show(x) + ", local A = " + show(a));
      }
      case Condition::SemiLeftExact: {
        Presheaf const& x  = in.objects.at(0);
        NatTrans const& u  = in.maps.at(0);
        Reflected       lx = r.reflect(x);
        if (!u.target().same_structure(lx.object)) {
          throw std::invalid_argument("semi-left-exact instance: u does not land in LX");
        }
        if (!r.is_local(u.source())) {
          throw std::invalid_argument("semi-left-exact instance with a non-local A");
        }
        Cone     pb = pullback(u, lx.unit);
        NatTrans lq = r.reflect_mor(pb.legs[0]);
        if (auto v = is_iso(lq); !v) {
          return {false,
                  "X = " + show(x) + ", LX = " + show(lx.object) + ", A = " + show(u.source()) + ", u = "
                      + describe(u) + "; pullback P = " + show(pb.apex) + ", LP = " + show(lq.source())
                      + "; L inverts q : P -> A? no: " + v.witness,
                  lq};
        }
        return {true, {}, lq};
      }
      case Condition::StableUnits: {
        NatTrans const& f = in.maps.at(0);
        NatTrans const& g = in.maps.at(1);
        if (!r.is_local(f.target())) {
          throw std::invalid_argument("stable-units instance over a non-local base");
        }
        Cone     pb   = pullback(f, g);
        NatTrans lp1  = r.reflect_mor(pb.legs[0]);
        NatTrans lp2  = r.reflect_mor(pb.legs[1]);
        NatTrans lf   = r.reflect_mor(f);
        NatTrans lg   = r.reflect_mor(g);
        Cone     lpb  = pullback(lf, lg);
        NatTrans phi  = pair(lp1, lp2, lpb);
        return iso_outcome(phi, "cospan X = " + show(f.source()) + " -> B = " + show(f.target()) + " <- Y = "
                                    + show(g.source()));
      }
      case Condition::QuasiLex: {
        if (in.shape == "terminal") {
          Presheaf one = terminal(r.base());
          Reflected l1 = r.reflect(one);
          return mono_and_epi_in_local(r, to_terminal(l1.object), "terminal object");
        }
        if (in.shape == "product") {
          Presheaf const& x = in.objects.at(0);
          Presheaf const& y = in.objects.at(1);
          return mono_and_epi_in_local(r, product_comparison(r, x, y),
                                       "product of X = " + show(x) + " and Y = " + show(y));
        }
        if (in.shape == "equalizer") {
          NatTrans const& f   = in.maps.at(0);
          NatTrans const& g   = in.maps.at(1);
          NatTrans        e   = equalizer(f, g);
          NatTrans        le  = r.reflect_mor(e);
          NatTrans        lf  = r.reflect_mor(f);
          NatTrans        lg  = r.reflect_mor(g);
          NatTrans        e2  = equalizer(lf, lg);
          NatTrans        phi = factor_through_mono(le, e2);
          return mono_and_epi_in_local(r, phi,
                                       "equalizer of f, g : " + show(f.source()) + " -> " + show(f.target())
                                           + " (f = " + describe(f) + ", g = " + describe(g) + ")");
        }
        throw std::invalid_argument("unknown quasi-lex shape '" + in.shape + "'");
      }
    }
    throw std::invalid_argument("unknown condition");
  }

  namespace {

    bool fits(Presheaf const& p, std::vector<std::size_t> const& bounds) {
      for (ObjectId c = 0; c < p.base().number_of_objects(); ++c) {
        std::size_t b = bounds.size() == 1 ? bounds[0] : bounds.at(c);
        if (p.size(c) > b) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  ProbeSet make_probe_set(ReflectionOracle const& r, ProbeOptions const& options, HandPicked const& hand) {
    ProbeSet p;
    p.base        = r.base();
    p.hand_picked = hand.objects.size();

    std::vector<Presheaf> all = hand.objects;
    for (auto const& x : enumerate_presheaves(r.base(), options.bounds)) {
      all.push_back(x);
    }
    p.objects = unique_up_to_iso(all);

    std::vector<Presheaf> local;
    std::vector<Presheaf> small;
    std::vector<Presheaf> small_local;
    for (auto const& x : p.objects) {
      bool is_loc = static_cast<bool>(r.is_local(x));
      if (is_loc) {
        local.push_back(x);
      }
      if (fits(x, options.small_bounds)) {
        small.push_back(x);
        if (is_loc) {
          small_local.push_back(x);
        }
      }
    }

    p.monos = hand.monos;
    for (auto const& y : p.objects) {
      for (auto const& a : enumerate_subobjects(y)) {
        p.monos.push_back(a.inclusion());
      }
    }

    p.products = hand.products;
    for (std::size_t i = 0; i < p.objects.size(); ++i) {
      for (std::size_t j = i; j < p.objects.size(); ++j) {
        p.products.emplace_back(p.objects[i], p.objects[j]);
      }
    }

    for (auto const& x : p.objects) {
      for (auto const& a : local) {
        p.frobenius.emplace_back(x, a);
      }
    }

    p.semi_left_exact = hand.semi_left_exact;
    for (auto const& x : p.objects) {
      Presheaf lx = r.reflect(x).object;
      for (auto const& a : small_local) {
        for (auto const& u : hom_presheaf_set(a, lx)) {
          p.semi_left_exact.emplace_back(x, u);
        }
      }
    }

    for (auto const& [x, u] : p.semi_left_exact) {
      p.cospans.push_back({u, r.reflect(x).unit, "semi-left-exact"});
    }
    Presheaf one = terminal(r.base());
    if (r.is_local(one)) {
      for (auto const& [x, y] : p.products) {
        p.cospans.push_back({to_terminal(x), to_terminal(y), "product"});
      }
    }
    if (options.general_cospans) {
      for (auto const& b : small_local) {
        for (std::size_t i = 0; i < small.size(); ++i) {
          auto fs = hom_presheaf_set(small[i], b);
          for (std::size_t j = i; j < small.size(); ++j) {
            auto gs = hom_presheaf_set(small[j], b);
            for (auto const& f : fs) {
              for (auto const& g : gs) {
                p.cospans.push_back({f, g, "general"});
              }
            }
          }
        }
      }
    }

    for (auto const& m : p.monos) {
      Cone po = pushout(m, m);
      p.parallel_pairs.emplace_back(po.legs[0], po.legs[1]);
    }
    if (options.general_equalizers) {
      for (auto const& x : small) {
        for (auto const& y : small) {
          auto maps = hom_presheaf_set(x, y);
          for (std::size_t i = 0; i < maps.size(); ++i) {
            for (std::size_t j = i + 1; j < maps.size(); ++j) {
              p.parallel_pairs.emplace_back(maps[i], maps[j]);
            }
          }
        }
      }
    }

    std::string bounds;
    for (std::size_t i = 0; i < options.bounds.size(); ++i) {
      bounds += (i == 0 ? "" : ",") + std::to_string(options.bounds[i]);
    }
    p.exhaustive = true;
    p.provenance = std::to_string(hand.objects.size()) + " hand-picked objects, then every presheaf with carriers bounded by ("
                   + bounds + ") up to isomorphism";
    return p;
  }

  std::vector<Instance> instances_for(Condition c, ReflectionOracle const& r, ProbeSet const& p) {
    (void)r;
    std::vector<Instance> out;
    switch (c) {
      case Condition::Monos:
        for (auto const& m : p.monos) {
          out.push_back({c, "mono", {}, {m}, {}});
        }
        break;
      case Condition::Products:
        for (auto const& [x, y] : p.products) {
          out.push_back({c, "product", {x, y}, {}, {}});
        }
        break;
      case Condition::Frobenius:
        for (auto const& [x, a] : p.frobenius) {
          out.push_back({c, "product", {x, a}, {}, {}});
        }
        break;
      case Condition::SemiLeftExact:
        for (auto const& [x, u] : p.semi_left_exact) {
          out.push_back({c, "cospan", {x}, {u}, {}});
        }
        break;
      case Condition::StableUnits:
        for (auto const& cs : p.cospans) {
          out.push_back({c, "cospan", {}, {cs.left, cs.right}, cs.origin});
        }
        break;
      case Condition::QuasiLex:
        out.push_back({c, "terminal", {}, {}, {}});
        for (auto const& [x, y] : p.products) {
          out.push_back({c, "product", {x, y}, {}, {}});
        }
        for (auto const& [f, g] : p.parallel_pairs) {
          out.push_back({c, "equalizer", {}, {f, g}, {}});
        }
        break;
    }
    return out;
  }

  std::string CheckReport::witness() const {
    if (failures.empty()) {
      return {};
    }
    return "instance #" + std::to_string(failures.front().index) + ": " + failures.front().outcome.detail;
  }

  CheckReport run_check(Condition c, ReflectionOracle const& r, ProbeSet const& probes, std::size_t max_failures) {
    CheckReport report;
    report.condition  = condition_name(c);
    report.exhaustive = probes.exhaustive;
    auto instances    = instances_for(c, r, probes);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      ++report.instances;
      Outcome o = check_instance(r, instances[i]);
      if (!o.holds) {
        report.passed = false;
        report.failures.push_back({i, instances[i], std::move(o)});
        if (max_failures != 0 && report.failures.size() >= max_failures) {
          break;
        }
      }
    }
    return report;
  }

  CheckReport check_preserves_monos(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::Monos, r, p);
  }
  CheckReport check_preserves_products(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::Products, r, p);
  }
  CheckReport check_frobenius(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::Frobenius, r, p);
  }
  CheckReport check_semi_left_exact(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::SemiLeftExact, r, p);
  }
  CheckReport check_stable_units(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::StableUnits, r, p);
  }
  CheckReport check_quasi_lex(ReflectionOracle const& r, ProbeSet const& p) {
    return run_check(Condition::QuasiLex, r, p);
  }

}  // namespace qtopos
