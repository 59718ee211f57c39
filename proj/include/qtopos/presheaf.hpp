// Finite-set-valued presheaves, natural transformations and subpresheaves.

#ifndef QTOPOS_PRESHEAF_HPP_
#define QTOPOS_PRESHEAF_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtopos/fincat.hpp"

namespace qtopos {

  // A yes/no answer together with a human-readable witness when the answer is
  // negative (or, for some queries, the positive evidence).
  struct Verdict {
    bool        holds = true;
    std::string witness;

    explicit operator bool() const noexcept {
      return holds;
    }
    static Verdict yes() {
      return {true, {}};
    }
    static Verdict no(std::string why) {
      return {false, std::move(why)};
    }
  };

  // Contravariant functor into finite sets. Elements of X(c) are numbered
  // 0 .. size(c) - 1 and carry a label. For f : c -> d, act(f, x) = x.f maps
  // X(d) to X(c).
  class Presheaf {
   public:
    Presheaf();
    // Unchecked; use validate_presheaf for external data.
    Presheaf(FinCat                                base,
             std::vector<std::vector<std::string>> labels,
             std::vector<std::vector<ElementId>>   action);

    FinCat const& base() const noexcept;
    std::size_t size(ObjectId c) const;
    std::size_t total_size() const;
    std::vector<std::size_t> sizes() const;

    ElementId act(MorphismId f, ElementId x) const {
      return (*_action)[f][x];
    }
    std::vector<ElementId> const& action(MorphismId f) const {
      return (*_action)[f];
    }
    std::vector<std::vector<ElementId>> const& actions() const {
      return *_action;
    }

    std::string const& label(ObjectId c, ElementId x) const {
      return (*_labels)[c][x];
    }
    std::vector<std::string> const& labels(ObjectId c) const {
      return (*_labels)[c];
    }
    std::vector<std::vector<std::string>> const& all_labels() const {
      return *_labels;
    }
    std::optional<ElementId> find(ObjectId c, std::string_view label) const;

    // Same data with new labels.
    Presheaf relabel(std::vector<std::vector<std::string>> labels) const;

    // Same base (as a value), same carriers, same action; labels ignored.
    bool same_structure(Presheaf const& that) const;
    bool operator==(Presheaf const& that) const;

   private:
    FinCat                                                 _base;
    std::shared_ptr<std::vector<std::vector<std::string>> const> _labels;
    std::shared_ptr<std::vector<std::vector<ElementId>> const>   _action;
  };

  class NatTrans {
   public:
    NatTrans() = default;
    // Unchecked; use validate_nat for external data.
    NatTrans(Presheaf source, Presheaf target, std::vector<std::vector<ElementId>> components)
        : _source(std::move(source)),
          _target(std::move(target)),
          _components(std::move(components)) {}

    Presheaf const& source() const noexcept {
      return _source;
    }
    Presheaf const& target() const noexcept {
      return _target;
    }
    ElementId operator()(ObjectId c, ElementId x) const {
      return _components[c][x];
    }
    std::vector<ElementId> const& component(ObjectId c) const {
      return _components[c];
    }
    std::vector<std::vector<ElementId>> const& components() const noexcept {
      return _components;
    }

    // Equal components between structurally equal endpoints.
    bool operator==(NatTrans const& that) const;

   private:
    Presheaf                            _source;
    Presheaf                            _target;
    std::vector<std::vector<ElementId>> _components;
  };

  class Subpresheaf {
   public:
    Subpresheaf() = default;
    // Unchecked; use validate_subpresheaf for external data.
    Subpresheaf(Presheaf ambient, std::vector<std::vector<bool>> part)
        : _ambient(std::move(ambient)), _part(std::move(part)) {}

    static Subpresheaf full(Presheaf const& ambient);
    static Subpresheaf empty(Presheaf const& ambient);

    Presheaf const& ambient() const noexcept {
      return _ambient;
    }
    bool contains(ObjectId c, ElementId x) const {
      return _part[c][x];
    }
    std::vector<std::vector<bool>> const& part() const noexcept {
      return _part;
    }
    std::size_t size(ObjectId c) const;

    bool is_subset_of(Subpresheaf const& that) const;
    Subpresheaf intersect(Subpresheaf const& that) const;
    Subpresheaf unite(Subpresheaf const& that) const;

    // The part as a presheaf (ambient labels) with its inclusion.
    Presheaf to_presheaf() const;
    NatTrans inclusion() const;

    bool operator==(Subpresheaf const& that) const {
      return _part == that._part;
    }
    auto operator<=>(Subpresheaf const& that) const {
      return _part <=> that._part;
    }

   private:
    Presheaf                       _ambient;
    std::vector<std::vector<bool>> _part;
  };

  // Raw presheaf data: per object a list of element labels, and for some
  // morphisms f : c -> d a list of pairs (x, x.f) with x in X(d). Actions of
  // identities are implicit; actions of morphisms not listed are derived
  // from listed ones by composition.
  struct PresheafDescription {
    std::string                                                       name;
    std::vector<std::vector<std::string>>                             carriers;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> actions;
  };

  // Throws ValidationError naming the morphism pair (g, f) where functoriality
  // fails, or the offending morphism/element.
  Presheaf validate_presheaf(FinCat const& base, PresheafDescription const& raw);

  // Same, from numeric data: action[f] may be empty for morphisms to derive.
  Presheaf validate_presheaf(FinCat const&                         base,
                             std::vector<std::vector<std::string>> labels,
                             std::vector<std::vector<ElementId>>   action);

  // Throws ValidationError naming the square (object, morphism, element)
  // where naturality fails.
  NatTrans validate_nat(Presheaf const&                     source,
                        Presheaf const&                     target,
                        std::vector<std::vector<ElementId>> components);

  // Component data keyed by labels: per object a list of (x, alpha(x)).
  NatTrans validate_nat(Presheaf const& source,
                        Presheaf const& target,
                        std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> const& components);

  Subpresheaf validate_subpresheaf(Presheaf const& ambient, std::vector<std::vector<bool>> part);

  // Checks functoriality of an already-built presheaf.
  Verdict check_functorial(Presheaf const& p);
  Verdict check_natural(NatTrans const& alpha);

  NatTrans identity(Presheaf const& p);
  // beta . alpha
  NatTrans compose(NatTrans const& beta, NatTrans const& alpha);
  // Inverse of a pointwise bijection; throws std::invalid_argument otherwise.
  NatTrans inverse(NatTrans const& alpha);

  Presheaf yoneda(FinCat const& cat, ObjectId c);
  // y(f) : y_c -> y_d for f : c -> d, postcomposition.
  NatTrans yoneda_map(FinCat const& cat, MorphismId f);

  Presheaf terminal(FinCat const& cat);
  Presheaf initial(FinCat const& cat);
  // Every carrier a copy of `labels`, every action the identity.
  Presheaf constant(FinCat const& cat, std::vector<std::string> labels);
  NatTrans to_terminal(Presheaf const& p);
  NatTrans from_initial(FinCat const& cat, Presheaf const& p);

  Verdict is_mono(NatTrans const& alpha);
  Verdict is_epi(NatTrans const& alpha);
  Verdict is_iso(NatTrans const& alpha);

  struct ImageFactorization {
    NatTrans epi;   // source -> image, pointwise surjective
    NatTrans mono;  // image -> target, pointwise injective
  };
  ImageFactorization image_factorization(NatTrans const& alpha);
  Subpresheaf image(NatTrans const& alpha);

  // f*(A) for A a subpresheaf of target(f).
  Subpresheaf pullback(Subpresheaf const& a, NatTrans const& f);

  // The restriction x -> x.f as a readable string, for witnesses.
  std::string describe_element(Presheaf const& p, ObjectId c, ElementId x);
  std::string describe(Presheaf const& p);
  std::string describe(NatTrans const& alpha);

}  // namespace qtopos

#endif  // QTOPOS_PRESHEAF_HPP_
