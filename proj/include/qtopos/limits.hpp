// Pointwise finite limits and colimits of presheaves.

#ifndef QTOPOS_LIMITS_HPP_
#define QTOPOS_LIMITS_HPP_

#include <vector>

#include "qtopos/presheaf.hpp"

namespace qtopos {

  struct Diagram {
    struct Arrow {
      std::size_t from;
      std::size_t to;
      NatTrans    map;
    };
    std::vector<Presheaf> objects;
    std::vector<Arrow>    arrows;
  };

  // A cone has legs apex -> objects[i]; a cocone has legs objects[i] -> apex.
  struct Cone {
    Presheaf              apex;
    std::vector<NatTrans> legs;
  };

  // Elements of the limit are the compatible tuples, labelled "(x0,x1,...)"
  // and ordered lexicographically. Throws std::invalid_argument on mixed
  // bases.
  Cone finite_limit(FinCat const& base, Diagram const& d);

  // Quotient of the disjoint union by the relation generated by the arrows.
  // Each class is represented by its least (object index, element) member.
  Cone finite_colimit(FinCat const& base, Diagram const& d);

  Cone product(Presheaf const& x, Presheaf const& y);
  // Legs to x (via f) and to y (via g) over the common target.
  Cone pullback(NatTrans const& f, NatTrans const& g);
  // The equalizer as a subpresheaf of the common source, with its inclusion.
  NatTrans equalizer(NatTrans const& f, NatTrans const& g);

  Cone coproduct(Presheaf const& x, Presheaf const& y);
  // Legs from the two targets of f and g (which share their source).
  Cone pushout(NatTrans const& f, NatTrans const& g);
  // Single leg from the common target.
  NatTrans coequalizer(NatTrans const& f, NatTrans const& g);

  // The unique map into a limit determined by maps into the factors.
  NatTrans pair(NatTrans const& f, NatTrans const& g, Cone const& product);
  // a x b between products (given as cones), componentwise.
  NatTrans product_map(NatTrans const& a, NatTrans const& b, Cone const& from, Cone const& to);
  // Factor h through a mono m (pointwise injective) when possible; throws
  // std::invalid_argument otherwise.
  NatTrans factor_through_mono(NatTrans const& h, NatTrans const& m);
  // The quotient of the source by the kernel of alpha. Each class keeps the
  // label of its least member.
  NatTrans coimage(NatTrans const& alpha);
  // The quotient map for an equivalence given by class ids per object, which
  // must be compatible with restriction.
  NatTrans quotient(Presheaf const& f, std::vector<std::vector<std::size_t>> const& class_of);

  // The map out of a pushout determined by maps from the two corners.
  NatTrans copair(NatTrans const& a, NatTrans const& b, Cone const& pushout);

}  // namespace qtopos

#endif  // QTOPOS_LIMITS_HPP_
