// Finite categories given by a total composition table.

#ifndef QTOPOS_FINCAT_HPP_
#define QTOPOS_FINCAT_HPP_

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qtopos {

  using ObjectId   = std::size_t;
  using MorphismId = std::size_t;
  using ElementId  = std::size_t;

  inline constexpr std::size_t UNDEFINED = std::numeric_limits<std::size_t>::max();

  // Raised by every validator in the library. The witness lists the names of
  // the offending items (morphisms, elements, sieves ...), in the order the
  // message mentions them.
  class ValidationError : public std::runtime_error {
   public:
    ValidationError(std::string const& what, std::vector<std::string> witness = {})
        : std::runtime_error(what), _witness(std::move(witness)) {}

    std::vector<std::string> const& witness() const noexcept {
      return _witness;
    }

   private:
    std::vector<std::string> _witness;
  };

  // Raised when an enumeration (closure, hom-sets, exponentials ...) would
  // exceed its configured budget.
  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct Morphism {
    std::string name;
    ObjectId    source;
    ObjectId    target;

    bool operator==(Morphism const&) const = default;
  };

  // A relation between two composable words of morphism names. A word is read
  // right-to-left: {"g", "f"} is f followed by g.
  struct Relation {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
  };

  // Raw input for validate_category. Either `table` is non-empty (a full
  // composition table indexed [g * n + f] for g.f, UNDEFINED when not
  // composable, over `morphisms` which then must include the identities
  // named in `identities`), or the morphisms are generators and `relations`
  // are imposed on the free category they generate.
  struct FinCatDescription {
    std::string                    name;
    std::vector<std::string>       objects;
    std::vector<Morphism>          morphisms;
    std::vector<std::string>       identities;
    std::vector<MorphismId>        table;
    std::vector<Relation>          relations;
    std::size_t                    budget = 10'000;
  };

  class SieveTable;

  class FinCat {
   public:
    FinCat();

    std::string const& name() const noexcept;

    std::size_t number_of_objects() const noexcept;
    std::size_t number_of_morphisms() const noexcept;

    std::string const& object_name(ObjectId c) const;
    std::optional<ObjectId> find_object(std::string_view name) const;
    ObjectId object(std::string_view name) const;

    Morphism const& morphism(MorphismId f) const;
    std::string const& morphism_name(MorphismId f) const {
      return morphism(f).name;
    }
    ObjectId source(MorphismId f) const {
      return morphism(f).source;
    }
    ObjectId target(MorphismId f) const {
      return morphism(f).target;
    }
    std::optional<MorphismId> find_morphism(std::string_view name) const;
    MorphismId morphism_id(std::string_view name) const;

    MorphismId identity(ObjectId c) const;
    bool is_identity(MorphismId f) const;

    // g.f, that is f followed by g; UNDEFINED unless target(f) == source(g).
    MorphismId compose(MorphismId g, MorphismId f) const;

    // Morphisms a -> b in input order.
    std::vector<MorphismId> const& hom(ObjectId a, ObjectId b) const;
    // Morphisms with target c (the carrier of the representable on c).
    std::vector<MorphismId> const& into(ObjectId c) const;
    // Morphisms with source c.
    std::vector<MorphismId> const& out_of(ObjectId c) const;

    // A small set of morphisms whose composites give every non-identity
    // morphism, together with a word in them for every morphism (empty for
    // identities). Words are read right-to-left like Relation.
    std::vector<MorphismId> const& generators() const;
    std::vector<MorphismId> const& word(MorphismId f) const;

    // Lazily built table of all sieves on every object.
    SieveTable const& sieves() const;

    bool operator==(FinCat const& that) const;
    bool same_as(FinCat const& that) const noexcept {
      return _data == that._data;
    }

    // Unchecked constructor from a full table; use validate_category.
    static FinCat from_table_unchecked(std::string                  name,
                                       std::vector<std::string>     objects,
                                       std::vector<Morphism>        morphisms,
                                       std::vector<MorphismId>      identities,
                                       std::vector<MorphismId>      table);

    struct Data;

   private:
    std::shared_ptr<Data const> _data;
    explicit FinCat(std::shared_ptr<Data const> data) : _data(std::move(data)) {}
  };

  // Throws ValidationError on a non-associative table, a missing identity, a
  // composite outside the morphism list or an unknown name, and
  // BudgetExceeded if the closure of the generators outgrows raw.budget.
  FinCat validate_category(FinCatDescription const& raw);

  FinCat opposite(FinCat const& cat);

  std::vector<MorphismId> const& hom_set(FinCat const& cat, ObjectId a, ObjectId b);

  // Convenience constructors for the sites used throughout.
  namespace sites {
    // Objects 0 (vertices) and 1 (edges), d0, d1 : 0 -> 1 picking source and
    // target, s : 1 -> 0 the degenerate loop, with s.d0 = s.d1 = id_0.
    FinCat reflexive_graph();
    // One object, morphisms {1, e} with e.e = e.
    FinCat idempotent_monoid();
    // `n` objects, identities only.
    FinCat discrete(std::size_t n);
  }  // namespace sites

}  // namespace qtopos

#endif  // QTOPOS_FINCAT_HPP_
