// Reflections of presheaf categories onto full subcategories.

#ifndef QTOPOS_REFLECTION_HPP_
#define QTOPOS_REFLECTION_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qtopos/presheaf.hpp"
#include "qtopos/sheaf.hpp"
#include "qtopos/topology.hpp"

namespace qtopos {

  // L : presheaves -> E with unit X -> LX. Implementations must be pure.
  class ReflectionOracle {
   public:
    virtual ~ReflectionOracle() = default;

    virtual FinCat const& base() const = 0;
    virtual std::string   name() const = 0;
    // Membership in E up to isomorphism.
    virtual Verdict is_local(Presheaf const& x) const = 0;

    // Memoized reflect_obj.
    Reflected reflect(Presheaf const& x) const;
    // The unique g : LX -> LY with g . unit_X = unit_Y . alpha.
    virtual NatTrans reflect_mor(NatTrans const& alpha) const;

   protected:
    virtual Reflected reflect_obj(Presheaf const& x) const = 0;

   private:
    using Key = std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<ElementId>>>;
    mutable std::mutex               _mutex;
    mutable std::map<Key, Reflected> _cache;
  };

  using OraclePtr = std::shared_ptr<ReflectionOracle const>;

  // E = (j,k)-biseparated presheaves.
  class BisiteReflection : public ReflectionOracle {
   public:
    explicit BisiteReflection(BiSite bs) : _bs(std::move(bs)) {}
    FinCat const& base() const override {
      return _bs.base();
    }
    std::string name() const override {
      return _bs.name;
    }
    Verdict is_local(Presheaf const& x) const override {
      return is_biseparated(x, _bs);
    }
    BiSite const& bisite() const noexcept {
      return _bs;
    }

   protected:
    Reflected reflect_obj(Presheaf const& x) const override {
      return biseparated_reflect(x, _bs);
    }

   private:
    BiSite _bs;
  };

  class IdentityReflection : public ReflectionOracle {
   public:
    explicit IdentityReflection(FinCat cat) : _cat(std::move(cat)) {}
    FinCat const& base() const override {
      return _cat;
    }
    std::string name() const override {
      return "identity";
    }
    Verdict is_local(Presheaf const&) const override {
      return Verdict::yes();
    }

   protected:
    Reflected reflect_obj(Presheaf const& x) const override {
      return {x, identity(x)};
    }

   private:
    FinCat _cat;
  };

  // Over the discrete category on two objects: E = {(0,0), (1,1)} and
  // L(X,Y) = (0,0) exactly when X and Y are both empty.
  class TwoReflection : public ReflectionOracle {
   public:
    TwoReflection();
    FinCat const& base() const override {
      return _cat;
    }
    std::string name() const override {
      return "two";
    }
    Verdict is_local(Presheaf const& x) const override;

   protected:
    Reflected reflect_obj(Presheaf const& x) const override;

   private:
    FinCat _cat;
  };

  // Reflexive graphs onto discrete ones: connected components.
  class Pi0Reflection : public ReflectionOracle {
   public:
    Pi0Reflection();
    FinCat const& base() const override {
      return _cat;
    }
    std::string name() const override {
      return "pi0";
    }
    Verdict is_local(Presheaf const& x) const override;

   protected:
    Reflected reflect_obj(Presheaf const& x) const override;

   private:
    FinCat _cat;
  };

  // Reflexive graphs onto preorders: at most one edge per ordered pair of
  // vertices, transitive. L keeps the vertices and takes reachability.
  class PreorderReflection : public ReflectionOracle {
   public:
    PreorderReflection();
    FinCat const& base() const override {
      return _cat;
    }
    std::string name() const override {
      return "preord";
    }
    Verdict is_local(Presheaf const& x) const override;

   protected:
    Reflected reflect_obj(Presheaf const& x) const override;

   private:
    FinCat _cat;
  };

  // A reflection given by explicit data: local shapes, and units X -> LX for
  // the objects it can reflect. Inputs are matched up to isomorphism.
  class TableReflection : public ReflectionOracle {
   public:
    struct Entry {
      Presheaf x;
      NatTrans unit;
    };

    TableReflection(FinCat cat, std::string name, std::vector<Presheaf> local, std::vector<Entry> entries);

    FinCat const& base() const override {
      return _cat;
    }
    std::string name() const override {
      return _name;
    }
    Verdict is_local(Presheaf const& x) const override;

   protected:
    // Throws std::out_of_range for objects not covered by the table.
    Reflected reflect_obj(Presheaf const& x) const override;

   private:
    FinCat                _cat;
    std::string           _name;
    std::vector<Presheaf> _local;
    std::vector<Entry>    _entries;
  };

}  // namespace qtopos

#endif  // QTOPOS_REFLECTION_HPP_
