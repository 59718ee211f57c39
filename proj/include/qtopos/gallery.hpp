// Built-in reflections with their probe sets and expected verdicts.

#ifndef QTOPOS_GALLERY_HPP_
#define QTOPOS_GALLERY_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtopos/recovery.hpp"

namespace qtopos {

  // Covering sieves by object name, each as SieveTable::describe prints it.
  using CoverListing = std::map<std::string, std::vector<std::string>>;

  CoverListing cover_listing(GTopology const& t);

  struct ExpectedCell {
    bool        pass = true;
    std::string basis;  // "stated" or "derived"
  };

  struct ExpectedRecovery {
    bool                        k_valid = true;
    CoverListing                k;
    CoverListing                j;
    bool                        e_equals_biseparated = true;
  };

  struct GalleryCase {
    std::string                                      name;
    std::string                                      summary;
    OraclePtr                                        oracle;
    std::optional<BiSite>                            bisite;
    ProbeOptions                                     options;
    HandPicked                                       hand;
    std::vector<std::pair<Condition, ExpectedCell>>  expected;
    std::optional<ExpectedRecovery>                  recovery;
  };

  // two, pi0, preord, idempotent-mset, simple-graphs.
  std::vector<std::string> gallery_names();

  // Throws std::invalid_argument for an unknown name.
  GalleryCase build_case(std::string const& name);

  // The shipped expectations, as JSON text.
  std::string const& gallery_expected_json();

  // Builders for the graphs used as hand-picked probes. Vertices are named by
  // single labels; every vertex v gets the loop "vv", and an edge (u, v)
  // is labelled "uv", parallel copies "uv2", "uv3" ...
  Presheaf make_graph(std::vector<std::string> const&                         vertices,
                      std::vector<std::pair<std::string, std::string>> const& edges);

  // Right M-set on the idempotent monoid from the action of e.
  Presheaf make_mset(std::vector<std::string> const& elements, std::vector<std::string> const& e_action);

  struct CaseReport {
    std::string              name;
    ProbeSet                 probes;
    std::vector<CheckReport> checks;
    std::optional<KRecovery>   k;
    std::optional<GTopology>   j;
    std::optional<AuditReport> e_equals;
    std::vector<std::string>   mismatches;

    bool agrees() const {
      return mismatches.empty();
    }
  };

  // Runs the six checks, and the recovery pipeline when the case has
  // expectations for it, and compares against the expectations.
  CaseReport run_case(GalleryCase const& gc, std::size_t max_failures = 1);

}  // namespace qtopos

#endif  // QTOPOS_GALLERY_HPP_
