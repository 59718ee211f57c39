// Subobject lattices and the presheaf subobject classifier.

#ifndef QTOPOS_SUBOBJECTS_HPP_
#define QTOPOS_SUBOBJECTS_HPP_

#include <cstddef>
#include <vector>

#include "qtopos/presheaf.hpp"

namespace qtopos {

  // Every restriction-closed family of subsets of the carriers, each once, in
  // a deterministic order starting with the empty one. Throws BudgetExceeded
  // after `budget` search nodes.
  std::vector<Subpresheaf> enumerate_subobjects(Presheaf const& f, std::size_t budget = 1'000'000);

  // The subpresheaf generated by the given elements (per object).
  Subpresheaf generated_subobject(Presheaf const& f, std::vector<std::vector<ElementId>> const& gens);

  // Omega(c) = sieves on c, acting by pullback; truth picks the maximal sieve.
  struct SubobjectClassifier {
    Presheaf omega;
    NatTrans truth;  // 1 -> omega
  };

  SubobjectClassifier subobject_classifier(FinCat const& cat);

  // chi(x) = {f : x.f in A}.
  NatTrans classify(Subpresheaf const& a, SubobjectClassifier const& omega);
  // Throws std::invalid_argument unless m is mono.
  NatTrans classify(NatTrans const& m, SubobjectClassifier const& omega);

  // The subobject chi^*(truth) of the source of chi.
  Subpresheaf true_part(NatTrans const& chi, SubobjectClassifier const& omega);

}  // namespace qtopos

#endif  // QTOPOS_SUBOBJECTS_HPP_
