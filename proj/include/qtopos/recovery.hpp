// Topology recovery, the weak subobject classifier and orthogonality tests.

#ifndef QTOPOS_RECOVERY_HPP_
#define QTOPOS_RECOVERY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtopos/checks.hpp"
#include "qtopos/hom.hpp"
#include "qtopos/subobjects.hpp"

namespace qtopos {

  // Sieve s on c as a subobject of y_c.
  Subpresheaf sieve_subobject(FinCat const& cat, ObjectId c, std::size_t s);

  // A pass/fail sweep that is not one of the six conditions.
  struct AuditReport {
    std::string name;
    bool        passed     = true;
    bool        exhaustive = true;
    std::size_t instances  = 0;
    std::string witness;
  };

  // unit = into_reflection . onto_image, with onto_image pointwise onto and
  // into_reflection pointwise injective. `replay` holds when the unit of
  // the image is itself mono.
  struct RFactorization {
    NatTrans onto_image;
    NatTrans into_reflection;
    Verdict  replay;
  };
  RFactorization r_factorization(ReflectionOracle const& r, Presheaf const& x);

  // Sieves S on c with L(S -> y_c) mono and epi in E. `topology` is set when
  // these satisfy the axioms; otherwise `witness` names the violation.
  struct KRecovery {
    std::vector<std::vector<bool>> candidates;
    std::optional<GTopology>       topology;
    std::string                    witness;
  };
  KRecovery recover_k(ReflectionOracle const& r);

  // Generated by the sieves all of whose pullbacks L inverts.
  GTopology recover_j(ReflectionOracle const& r);

  // is_local(X) iff X is a j-sheaf and k-separated, for every X.
  AuditReport check_e_equals_biseparated(ReflectionOracle const&    r,
                                         GTopology const&           j,
                                         GTopology const&           k,
                                         std::vector<Presheaf> const& objects,
                                         bool                       exhaustive = true);

  // Every a : source(alpha) -> X factors through alpha exactly once (at most
  // once for is_separated_wrt).
  Verdict is_orthogonal(Presheaf const& x, NatTrans const& alpha, std::size_t budget = DEFAULT_HOM_BUDGET);
  Verdict is_separated_wrt(Presheaf const& x, NatTrans const& alpha, std::size_t budget = DEFAULT_HOM_BUDGET);

  // Every local A among `objects` is orthogonal to the unit of X.
  AuditReport check_universal_property(ReflectionOracle const&      r,
                                       std::vector<Presheaf> const& inputs,
                                       std::vector<Presheaf> const& objects);

  struct WeakClassifier {
    SubobjectClassifier omega;
    NatTrans            chi;          // LOmega -> Omega, classifies L(t)
    NatTrans            inclusion;    // Omega' -> Omega, equalizer of chi.unit and id
    NatTrans            truth;        // t' : 1 -> Omega'
    std::vector<std::pair<std::string, Verdict>> obligations;

    Presheaf const& object() const {
      return inclusion.source();
    }
  };
  WeakClassifier weak_classifier(BiSite const& bs);

  // For each pair of biseparated probe objects A <= Y: when A is k-closed
  // there is exactly one f : Y -> Omega' with f*(t') = A, otherwise none.
  // Guarded by lifting k-closed monos against every probe map that is epi
  // in E.
  AuditReport check_classifies(WeakClassifier const& wc, BiSite const& bs, std::vector<Presheaf> const& objects);

}  // namespace qtopos

#endif  // QTOPOS_RECOVERY_HPP_
