// Line-oriented text format for categories, presheaves, maps, topologies,
// bisites and reflection tables.
//
//   category rgph
//   object 0
//   object 1
//   mor d0 : 0 -> 1
//   rel s.d0 = id_0              words read right-to-left
//
//   presheaf G over rgph
//   at 0: {a, b}
//   act d0: e -> a, ...          x -> x.d0 for x in G(1)
//
//   nat f : G -> H
//   component 0: a -> a, ...
//
//   topology k over rgph
//   cover 1: {d0, d1}            generators of a covering sieve
//
//   bisite b
//   j trivial
//   k k
//
//   table t over rgph
//   local A                      a local shape
//   unit f                       a unit X -> LX
//
// Tokens with characters outside [A-Za-z0-9_.'*+^~] are double-quoted. In
// `rel` lines a bare token is split at dots; a quoted one names a single
// morphism. `#` starts a comment.

#ifndef QTOPOS_IO_HPP_
#define QTOPOS_IO_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtopos/reflection.hpp"
#include "qtopos/topology.hpp"

namespace qtopos {

  class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct TableSpec {
    FinCat                cat;
    std::vector<Presheaf> local;
    std::vector<NatTrans> units;

    OraclePtr oracle(std::string const& name) const;
  };

  // Everything loaded so far; later files may refer to earlier names. The
  // categories rgph, idem and discrete2 are predefined.
  struct Workspace {
    std::map<std::string, FinCat>    categories;
    std::map<std::string, Presheaf>  presheaves;
    std::map<std::string, NatTrans>  nats;
    std::map<std::string, GTopology> topologies;
    std::map<std::string, BiSite>    bisites;
    std::map<std::string, TableSpec> tables;
    // (kind, name) in load order.
    std::vector<std::pair<std::string, std::string>> loaded;

    Workspace();
  };

  struct LoadOptions {
    // Close listed covers under the topology axioms instead of requiring them.
    bool saturate = false;
  };

  // Syntax errors raise ParseError, failed validation ValidationError; both
  // messages start with "<source>:<line>: ".
  void load_text(Workspace& ws, std::string_view text, std::string const& source, LoadOptions const& options = {});
  void load_file(Workspace& ws, std::string const& path, LoadOptions const& options = {});

  std::string quote_token(std::string const& token);

  std::string write_category(FinCat const& cat);
  std::string write_presheaf(std::string const& name, Presheaf const& p);
  std::string write_nat(std::string const& name, std::string const& source, std::string const& target, NatTrans const& alpha);
  std::string write_topology(std::string const& name, GTopology const& t);
  std::string write_bisite(std::string const& name, std::string const& j, std::string const& k);

}  // namespace qtopos

#endif  // QTOPOS_IO_HPP_
