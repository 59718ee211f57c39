// Sieves on the objects of a finite category.

#ifndef QTOPOS_SIEVE_HPP_
#define QTOPOS_SIEVE_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qtopos/fincat.hpp"

namespace qtopos {

  // Indexed by MorphismId; only morphisms into the base object may be set.
  using MorphismSet = std::vector<bool>;

  struct Sieve {
    ObjectId    base;
    MorphismSet members;

    bool operator==(Sieve const&) const = default;
    auto operator<=>(Sieve const&) const = default;
  };

  // Every sieve on every object, numbered per object. Sieves are sorted by
  // size, then by their sorted member ids, so index 0 is the empty sieve and
  // the last index is the maximal one.
  class SieveTable {
   public:
    explicit SieveTable(FinCat const& cat);

    std::size_t count(ObjectId c) const {
      return _sieves[c].size();
    }
    MorphismSet const& members(ObjectId c, std::size_t s) const {
      return _sieves[c][s];
    }
    Sieve sieve(ObjectId c, std::size_t s) const {
      return {c, _sieves[c][s]};
    }
    std::size_t empty(ObjectId) const {
      return 0;
    }
    std::size_t maximal(ObjectId c) const {
      return _sieves[c].size() - 1;
    }
    bool contains(ObjectId c, std::size_t s, MorphismId f) const {
      return _sieves[c][s][f];
    }
    std::size_t size_of(ObjectId c, std::size_t s) const;

    // UNDEFINED when `members` is not a sieve on c.
    std::size_t index(ObjectId c, MorphismSet const& members) const;

    // h*S for S = sieve s on target(h); an index on source(h).
    std::size_t pullback(std::size_t s, MorphismId h) const {
      return _pullback[_cat.target(h)][s * _cat.number_of_morphisms() + h];
    }

    bool subset(ObjectId c, std::size_t s, std::size_t t) const;
    std::size_t intersect(ObjectId c, std::size_t s, std::size_t t) const;

    // The sieve generated by an arbitrary set of morphisms into c.
    std::size_t generate(ObjectId c, std::vector<MorphismId> const& gens) const;

    // A minimal generating set, deterministic.
    std::vector<MorphismId> const& generators(ObjectId c, std::size_t s) const {
      return _generators[c][s];
    }

    // Human-readable form, e.g. "<d0,d1>", "max", "{}".
    std::string describe(ObjectId c, std::size_t s) const;

   private:
    FinCat                                            _cat;
    std::vector<std::vector<MorphismSet>>             _sieves;
    std::vector<std::map<MorphismSet, std::size_t>>   _index;
    std::vector<std::vector<std::size_t>>             _pullback;
    std::vector<std::vector<std::vector<MorphismId>>> _generators;
  };

  std::vector<Sieve> enumerate_sieves(FinCat const& cat, ObjectId c);

  // {g : h.g in S}. Requires target(h) == S.base.
  Sieve pullback_sieve(FinCat const& cat, Sieve const& s, MorphismId h);

  // Closure of a set of morphisms into c under precomposition.
  Sieve generate_sieve(FinCat const& cat, ObjectId c, std::vector<MorphismId> const& gens);

  bool is_sieve(FinCat const& cat, Sieve const& s);

}  // namespace qtopos

#endif  // QTOPOS_SIEVE_HPP_
