// Grothendieck topologies on finite categories, closure operators, bisites.

#ifndef QTOPOS_TOPOLOGY_HPP_
#define QTOPOS_TOPOLOGY_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qtopos/presheaf.hpp"
#include "qtopos/sieve.hpp"

namespace qtopos {

  // Covering sieves per object, as flags over the indices of base.sieves().
  class GTopology {
   public:
    GTopology() = default;
    // Unchecked; use validate_topology or generate_topology.
    GTopology(FinCat base, std::vector<std::vector<bool>> covers, std::string name = {});

    FinCat const& base() const noexcept {
      return _base;
    }
    std::string const& name() const noexcept {
      return _name;
    }
    GTopology renamed(std::string name) const;

    bool covers(ObjectId c, std::size_t s) const {
      return _covers[c][s];
    }
    std::vector<std::vector<bool>> const& flags() const noexcept {
      return _covers;
    }
    std::vector<std::size_t> covering_sieves(ObjectId c) const;

    // The intersection of all covers of c; itself a cover in a topology.
    std::size_t minimal_cover(ObjectId c) const {
      return _minimal[c];
    }

    bool is_trivial() const;
    bool is_subtopology_of(GTopology const& that) const;
    bool operator==(GTopology const& that) const {
      return _base == that._base && _covers == that._covers;
    }

    // One line per object, e.g. "1: {<d0,d1>, max}".
    std::string describe() const;

   private:
    FinCat                         _base;
    std::vector<std::vector<bool>> _covers;
    std::vector<std::size_t>       _minimal;
    std::string                    _name;
  };

  // The sieves given per object (by index); the maximal sieve is added only
  // when listed. Throws ValidationError with witness (c, S, h) for T2 or
  // (c, S, R) for T3, and (c) for T1.
  GTopology validate_topology(FinCat const&                         cat,
                              std::vector<std::vector<std::size_t>> covers,
                              std::string                           name = {});

  // Same checks, returned as a verdict.
  Verdict check_topology_axioms(FinCat const& cat, std::vector<std::vector<bool>> const& covers);

  // The least topology containing the given sieves.
  GTopology generate_topology(FinCat const&                         cat,
                              std::vector<std::vector<std::size_t>> coverage,
                              std::string                           name = {});

  // Only maximal sieves cover.
  GTopology trivial_topology(FinCat const& cat);
  // Every sieve covers, including the empty one.
  GTopology degenerate_topology(FinCat const& cat);

  // cl(A)(c) = {x : {f : x.f in A} covers c}.
  Subpresheaf closure(Subpresheaf const& a, GTopology const& j);
  Verdict is_dense(Subpresheaf const& a, GTopology const& j);
  Verdict is_closed(Subpresheaf const& a, GTopology const& j);

  struct BiSite {
    std::string name;
    GTopology   j;
    GTopology   k;

    FinCat const& base() const noexcept {
      return j.base();
    }
  };

  // Throws ValidationError unless j and k share a base and j is contained in k.
  BiSite make_bisite(GTopology j, GTopology k, std::string name = {});

}  // namespace qtopos

#endif  // QTOPOS_TOPOLOGY_HPP_
