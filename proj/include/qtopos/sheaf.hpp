// Matching families, sheaf conditions and the reflections built from them.

#ifndef QTOPOS_SHEAF_HPP_
#define QTOPOS_SHEAF_HPP_

#include <cstddef>
#include <vector>

#include "qtopos/presheaf.hpp"
#include "qtopos/topology.hpp"

namespace qtopos {

  // A family indexed by MorphismId; UNDEFINED outside the sieve.
  using Family = std::vector<ElementId>;

  // All matching families for sieve s on c, ordered lexicographically by
  // their values at the generators of s.
  std::vector<Family> matching_families(Presheaf const& f, ObjectId c, std::size_t s);

  // The family (x.g)_g over sieve s.
  Family restrict_to(Presheaf const& f, ObjectId c, std::size_t s, ElementId x);

  // Elements x of F(c) with x.g = family[g] for every g in the sieve.
  std::vector<ElementId> amalgamations(Presheaf const& f, ObjectId c, std::size_t s, Family const& family);

  std::string describe_family(Presheaf const& f, ObjectId c, std::size_t s, Family const& family);

  Verdict is_sheaf(Presheaf const& f, GTopology const& j);
  Verdict is_separated(Presheaf const& f, GTopology const& j);

  struct Reflected {
    Presheaf object;
    NatTrans unit;
  };

  // F+(c) = matching families on the minimal cover of c.
  Reflected plus(Presheaf const& f, GTopology const& j);
  Reflected sheafify(Presheaf const& f, GTopology const& j);
  // Quotient by local equality.
  Reflected separated_reflection(Presheaf const& f, GTopology const& j);

  // The j-closure of the image of X in its k-sheafification. Throws
  // ValidationError if j is not contained in k.
  Reflected biseparated_reflect(Presheaf const& x, BiSite const& bs);
  Verdict is_biseparated(Presheaf const& x, BiSite const& bs);

}  // namespace qtopos

#endif  // QTOPOS_SHEAF_HPP_
