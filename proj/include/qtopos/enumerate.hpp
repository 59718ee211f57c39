// Exhaustive enumeration of small presheaves up to isomorphism.

#ifndef QTOPOS_ENUMERATE_HPP_
#define QTOPOS_ENUMERATE_HPP_

#include <cstddef>
#include <vector>

#include "qtopos/presheaf.hpp"

namespace qtopos {

  // A labelling-independent encoding: equal iff the presheaves are isomorphic.
  using CanonicalForm = std::vector<std::size_t>;

  CanonicalForm canonical_form(Presheaf const& f);

  // Every presheaf with |X(c)| <= bounds[c] (a single entry applies to every
  // object), one per isomorphism class, ordered by total size, then by size
  // vector, then by canonical form. Elements of object c are labelled with
  // the letter 'a' + c followed by an index. Throws BudgetExceeded after
  // `budget` search nodes.
  std::vector<Presheaf> enumerate_presheaves(FinCat const&                   cat,
                                             std::vector<std::size_t> const& bounds,
                                             std::size_t                     budget = 50'000'000);

  // Keeps the first member of each isomorphism class.
  std::vector<Presheaf> unique_up_to_iso(std::vector<Presheaf> const& items);

}  // namespace qtopos

#endif  // QTOPOS_ENUMERATE_HPP_
