// Probe families and decision procedures for limit-preservation properties
// of a reflection.

#ifndef QTOPOS_CHECKS_HPP_
#define QTOPOS_CHECKS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtopos/reflection.hpp"

namespace qtopos {

  enum class Condition { Monos, Products, Frobenius, SemiLeftExact, StableUnits, QuasiLex };

  inline constexpr Condition ALL_CONDITIONS[] = {Condition::Monos,         Condition::Products,
                                                 Condition::Frobenius,     Condition::SemiLeftExact,
                                                 Condition::StableUnits,   Condition::QuasiLex};

  // "monos", "products", "frobenius", "semi-left-exact", "stable-units",
  // "quasi-lex".
  std::string condition_name(Condition c);
  // Accepts the names above and a few short aliases; throws
  // std::invalid_argument otherwise.
  Condition parse_condition(std::string const& name);

  // One concrete instance of a condition.
  //   Monos          maps = {m}
  //   Products       objects = {X, Y}
  //   Frobenius      objects = {X, A}
  //   SemiLeftExact  objects = {X}, maps = {u : A -> LX}
  //   StableUnits    maps = {f : X -> B, g : Y -> B}
  //   QuasiLex       shape "terminal"; "product" with objects {X, Y};
  //                  "equalizer" with maps {f, g : X -> Y}
  struct Instance {
    Condition             condition;
    std::string           shape;
    std::vector<Presheaf> objects;
    std::vector<NatTrans> maps;
    std::string           origin;
  };

  struct Outcome {
    bool                    holds = true;
    std::string             detail;
    std::optional<NatTrans> comparison;
  };

  Outcome check_instance(ReflectionOracle const& r, Instance const& instance);

  struct ProbeOptions {
    // Per-object carrier bounds for the exhaustive family; one entry applies
    // to every object.
    std::vector<std::size_t> bounds{3};
    // Bounds for the objects used in the quadratic families: general parallel
    // pairs, general cospans and the local corners of semi-left-exact cospans.
    std::vector<std::size_t> small_bounds{2};
    bool                     general_equalizers = true;
    bool                     general_cospans    = true;
  };

  // Hand-picked probes come first in every family.
  struct HandPicked {
    std::vector<Presheaf>                      objects;
    std::vector<NatTrans>                      monos;
    std::vector<std::pair<Presheaf, Presheaf>> products;
    std::vector<std::pair<Presheaf, NatTrans>> semi_left_exact;  // (X, u : A -> LX)
  };

  struct Cospan {
    NatTrans    left;
    NatTrans    right;
    std::string origin;
  };

  struct ProbeSet {
    FinCat                                     base;
    std::vector<Presheaf>                      objects;
    std::vector<NatTrans>                      monos;
    std::vector<std::pair<Presheaf, Presheaf>> products;
    std::vector<std::pair<Presheaf, Presheaf>> frobenius;
    std::vector<std::pair<Presheaf, NatTrans>> semi_left_exact;
    std::vector<Cospan>                        cospans;
    std::vector<std::pair<NatTrans, NatTrans>> parallel_pairs;
    std::size_t                                hand_picked = 0;
    bool                                       exhaustive  = true;
    std::string                                provenance;
  };

  ProbeSet make_probe_set(ReflectionOracle const& r, ProbeOptions const& options, HandPicked const& hand = {});

  // The instances of one condition drawn from a probe set, in order.
  std::vector<Instance> instances_for(Condition c, ReflectionOracle const& r, ProbeSet const& probes);

  struct Failure {
    std::size_t index;
    Instance    instance;
    Outcome     outcome;
  };

  struct CheckReport {
    std::string          condition;
    bool                 passed     = true;
    bool                 exhaustive = true;
    std::size_t          instances  = 0;
    std::vector<Failure> failures;

    std::string witness() const;
  };

  // Stops after `max_failures` failing instances (0 = never).
  CheckReport run_check(Condition c, ReflectionOracle const& r, ProbeSet const& probes, std::size_t max_failures = 1);

  CheckReport check_preserves_monos(ReflectionOracle const& r, ProbeSet const& p);
  CheckReport check_preserves_products(ReflectionOracle const& r, ProbeSet const& p);
  CheckReport check_frobenius(ReflectionOracle const& r, ProbeSet const& p);
  CheckReport check_semi_left_exact(ReflectionOracle const& r, ProbeSet const& p);
  CheckReport check_stable_units(ReflectionOracle const& r, ProbeSet const& p);
  CheckReport check_quasi_lex(ReflectionOracle const& r, ProbeSet const& p);

  // Epi in E: the two injections of the cokernel pair of f, reflected, agree.
  // Both ends of f are assumed local.
  Verdict is_epi_in_local(ReflectionOracle const& r, NatTrans const& f);

  // The pair of sizes of every carrier, e.g. "(0,1)".
  std::string size_vector(Presheaf const& p);

}  // namespace qtopos

#endif  // QTOPOS_CHECKS_HPP_
