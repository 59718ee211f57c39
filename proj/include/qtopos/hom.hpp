// Enumeration of natural transformations, isomorphism search and exponentials.

#ifndef QTOPOS_HOM_HPP_
#define QTOPOS_HOM_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qtopos/limits.hpp"
#include "qtopos/presheaf.hpp"

namespace qtopos {

  inline constexpr std::size_t DEFAULT_HOM_BUDGET = 1'000'000;

  struct HomSearch {
    // Candidate assignments tried before BudgetExceeded is thrown.
    std::size_t budget    = DEFAULT_HOM_BUDGET;
    // Only pointwise injective maps.
    bool        injective = false;
    // Optional prescribed components; UNDEFINED leaves an element free.
    // Empty means nothing is prescribed.
    std::vector<std::vector<ElementId>> fixed;
  };

  // Calls `visit` on every natural transformation F -> G, in a deterministic
  // order, until it returns false.
  void for_each_hom(Presheaf const&                          f,
                    Presheaf const&                          g,
                    std::function<bool(NatTrans const&)> const& visit,
                    HomSearch const&                         options = {});

  std::vector<NatTrans> hom_presheaf_set(Presheaf const& f,
                                         Presheaf const& g,
                                         std::size_t     budget = DEFAULT_HOM_BUDGET);

  std::size_t count_homs(Presheaf const& f, Presheaf const& g, std::size_t budget = DEFAULT_HOM_BUDGET);

  std::optional<NatTrans> find_isomorphism(Presheaf const& f,
                                           Presheaf const& g,
                                           std::size_t     budget = DEFAULT_HOM_BUDGET);

  bool is_isomorphic(Presheaf const& f, Presheaf const& g, std::size_t budget = DEFAULT_HOM_BUDGET);

  // [F,G](c) = Nat(y_c x F, G), elements labelled h0, h1, ... per object.
  struct Exponential {
    Presheaf              object;
    Cone                  product;     // [F,G] x F
    NatTrans              evaluation;  // [F,G] x F -> G
    // transformations[c][i] is element i of [F,G](c) as a map y_c x F -> G.
    std::vector<std::vector<NatTrans>> transformations;
  };

  Exponential exponential(Presheaf const& f, Presheaf const& g, std::size_t budget = DEFAULT_HOM_BUDGET);

}  // namespace qtopos

#endif  // QTOPOS_HOM_HPP_
