#include "qtopos/io.hpp"

#include <cctype>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace qtopos {

  namespace {

    bool bare_char(char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || std::string_view("_.'*+^~").find(ch) != std::string_view::npos;
    }

    struct Token {
      std::string text;
      bool        quoted = false;
      bool        symbol = false;

      bool is(std::string_view s) const {
        return symbol && text == s;
      }
    };

    class Lexer {
     public:
      Lexer(std::string_view line, std::string where) : _line(line), _where(std::move(where)) {}

      std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t        i = 0;
        while (i < _line.size()) {
          char ch = _line[i];
          if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
          } else if (ch == '#') {
            break;
          } else if (ch == '"') {
            std::string s;
            ++i;
            while (true) {
              if (i >= _line.size()) {
                throw ParseError(_where + "unterminated quote");
              }
              if (_line[i] == '\\' && i + 1 < _line.size()) {
                s += _line[i + 1];
                i += 2;
              } else if (_line[i] == '"') {
                ++i;
                break;
              } else {
                s += _line[i++];
              }
            }
            out.push_back({s, true, false});
          } else if (_line.substr(i, 2) == "->") {
            out.push_back({"->", false, true});
            i += 2;
          } else if (std::string_view(":,{}=").find(ch) != std::string_view::npos) {
            out.push_back({std::string(1, ch), false, true});
            ++i;
          } else if (bare_char(ch)) {
            std::size_t j = i;
            while (j < _line.size() && bare_char(_line[j])) {
              ++j;
            }
            out.push_back({std::string(_line.substr(i, j - i)), false, false});
            i = j;
          } else {
            throw ParseError(_where + "unexpected character '" + std::string(1, ch) + "'");
          }
        }
        return out;
      }

     private:
      std::string_view _line;
      std::string      _where;
    };

    // Cursor over one line's tokens.
    class Line {
     public:
      Line(std::vector<Token> tokens, std::string where) : _t(std::move(tokens)), _where(std::move(where)) {}

      std::string const& where() const {
        return _where;
      }
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError(_where + what);
      }
      bool done() const {
        return _i == _t.size();
      }
      Token const& peek() const {
        if (done()) {
          fail("unexpected end of line");
        }
        return _t[_i];
      }
      std::string name() {
        Token const& t = peek();
        if (t.symbol) {
          fail("expected a name, found '" + t.text + "'");
        }
        ++_i;
        return t.text;
      }
      Token next() {
        Token t = peek();
        ++_i;
        return t;
      }
      void expect(std::string_view s) {
        if (done() || !peek().is(s)) {
          fail("expected '" + std::string(s) + "'");
        }
        ++_i;
      }
      bool accept(std::string_view s) {
        if (!done() && peek().is(s)) {
          ++_i;
          return true;
        }
        return false;
      }
      void end() const {
        if (!done()) {
          fail("unexpected '" + _t[_i].text + "'");
        }
      }

      // {a, b, ...}
      std::vector<std::string> set() {
        expect("{");
        std::vector<std::string> out;
        if (accept("}")) {
          return out;
        }
        do {
          out.push_back(name());
        } while (accept(","));
        expect("}");
        return out;
      }

      // x -> y, ...   (possibly empty)
      std::vector<std::pair<std::string, std::string>> pairs() {
        std::vector<std::pair<std::string, std::string>> out;
        if (done()) {
          return out;
        }
        do {
          std::string a = name();
          expect("->");
          out.emplace_back(a, name());
        } while (accept(","));
        return out;
      }

      // Morphism names of a composite word, outermost first.
      std::vector<std::string> word(std::string_view stop) {
        std::vector<std::string> out;
        while (!done() && !peek().is(stop)) {
          Token t = next();
          if (t.symbol) {
            fail("unexpected '" + t.text + "' in a word");
          }
          if (t.quoted) {
            out.push_back(t.text);
            continue;
          }
          std::size_t start = 0;
          while (start <= t.text.size()) {
            std::size_t dot = t.text.find('.', start);
            if (dot == std::string::npos) {
              dot = t.text.size();
            }
            if (dot > start) {
              out.push_back(t.text.substr(start, dot - start));
            }
            start = dot + 1;
          }
        }
        if (out.empty()) {
          fail("empty word");
        }
        return out;
      }

     private:
      std::vector<Token> _t;
      std::size_t        _i = 0;
      std::string        _where;
    };

    template <typename Map>
    auto const& lookup(Map const& m, std::string const& name, std::string const& kind, Line const& line) {
      auto it = m.find(name);
      if (it == m.end()) {
        line.fail("unknown " + kind + " '" + name + "'");
      }
      return it->second;
    }

    class Loader {
     public:
      Loader(Workspace& ws, std::string source, LoadOptions const& options)
          : _ws(ws), _source(std::move(source)), _options(options) {}

      void line(std::string_view text, std::size_t number) {
        std::string where = _source + ":" + std::to_string(number) + ": ";
        Line        l(Lexer(text, where).run(), where);
        if (l.done()) {
          return;
        }
        std::string kw = l.name();
        if (kw == "category" || kw == "presheaf" || kw == "nat" || kw == "topology" || kw == "bisite"
            || kw == "table") {
          finish();
          _kind  = kw;
          _start = where;
          _lines.clear();
          header(kw, l);
        } else if (_kind.empty()) {
          l.fail("'" + kw + "' outside of a block");
        } else {
          _lines.emplace_back(where, std::string(text));
          body(kw, l);
        }
      }

      void finish() {
        if (_kind.empty()) {
          return;
        }
        try {
          build();
        } catch (ValidationError const& e) {
          throw ValidationError(blame(e.witness()) + e.what(), e.witness());
        } catch (BudgetExceeded const& e) {
          throw BudgetExceeded(_start + e.what());
        }
        _ws.loaded.emplace_back(_kind, _name);
        _kind.clear();
      }

     private:
      // The first body line mentioning the leading witness item, else the
      // block header.
      std::string const& blame(std::vector<std::string> const& witness) const {
        if (witness.empty()) {
          return _start;
        }
        std::string const& w = witness.front();
        for (auto const& [where, text] : _lines) {
          std::size_t i = 0;
          while (i < text.size()) {
            std::size_t j = i;
            while (j < text.size() && bare_char(text[j])) {
              ++j;
            }
            std::string_view run(text.data() + i, j - i);
            if (run == w) {
              return where;
            }
            for (std::size_t a = 0; a <= run.size();) {
              std::size_t b = std::min(run.find('.', a), run.size());
              if (run.substr(a, b - a) == w) {
                return where;
              }
              a = b + 1;
            }
            i = j + 1;
          }
        }
        return _start;
      }

      void header(std::string const& kw, Line& l) {
        _name = l.name();
        _cat  = {};
        _cat_desc  = {};
        _carriers.clear();
        _actions.clear();
        _components.clear();
        _covers.clear();
        _j.clear();
        _k.clear();
        _local.clear();
        _units.clear();
        if (kw == "category") {
          _cat_desc.name = _name;
        } else if (kw == "presheaf" || kw == "topology" || kw == "table") {
          if (l.name() != "over") {
            l.fail("expected 'over'");
          }
          _cat = lookup(_ws.categories, l.name(), "category", l);
          _carriers.assign(_cat.number_of_objects(), {});
          _covers.assign(_cat.number_of_objects(), {});
        } else if (kw == "nat") {
          l.expect(":");
          _src = lookup(_ws.presheaves, l.name(), "presheaf", l);
          l.expect("->");
          _tgt = lookup(_ws.presheaves, l.name(), "presheaf", l);
        }
        l.end();
      }

      ObjectId object(Line const& l, std::string const& name) const {
        auto c = _cat.find_object(name);
        if (!c) {
          l.fail("unknown object '" + name + "' of " + _cat.name());
        }
        return *c;
      }

      void body(std::string const& kw, Line& l) {
        if (_kind == "category" && kw == "object") {
          _cat_desc.objects.push_back(l.name());
        } else if (_kind == "category" && kw == "mor") {
          std::string name = l.name();
          l.expect(":");
          std::string src = l.name();
          l.expect("->");
          std::string dst = l.name();
          _cat_desc.morphisms.push_back({name, object_index(l, src), object_index(l, dst)});
        } else if (_kind == "category" && kw == "rel") {
          Relation r;
          r.lhs = l.word("=");
          l.expect("=");
          r.rhs = l.word("");
          _cat_desc.relations.push_back(std::move(r));
        } else if (_kind == "presheaf" && kw == "at") {
          ObjectId c = object(l, l.name());
          l.expect(":");
          _carriers[c] = l.set();
        } else if (_kind == "presheaf" && kw == "act") {
          std::string m = l.name();
          l.expect(":");
          _actions.emplace_back(m, l.pairs());
        } else if (_kind == "nat" && kw == "component") {
          std::string c = l.name();
          l.expect(":");
          _components.emplace_back(c, l.pairs());
        } else if (_kind == "topology" && kw == "cover") {
          ObjectId c = object(l, l.name());
          l.expect(":");
          std::vector<MorphismId> gens;
          for (auto const& m : l.set()) {
            auto id = _cat.find_morphism(m);
            if (!id || _cat.target(*id) != c) {
              l.fail("'" + m + "' is not a morphism into " + _cat.object_name(c));
            }
            gens.push_back(*id);
          }
          _covers[c].push_back(_cat.sieves().generate(c, gens));
        } else if (_kind == "bisite" && (kw == "j" || kw == "k")) {
          (kw == "j" ? _j : _k) = l.name();
          lookup(_ws.topologies, kw == "j" ? _j : _k, "topology", l);
        } else if (_kind == "table" && kw == "local") {
          _local.push_back(lookup(_ws.presheaves, l.name(), "presheaf", l));
        } else if (_kind == "table" && kw == "unit") {
          _units.push_back(lookup(_ws.nats, l.name(), "map", l));
        } else {
          l.fail("unexpected '" + kw + "' in a " + _kind + " block");
        }
        l.end();
      }

      ObjectId object_index(Line const& l, std::string const& name) const {
        for (std::size_t i = 0; i < _cat_desc.objects.size(); ++i) {
          if (_cat_desc.objects[i] == name) {
            return i;
          }
        }
        l.fail("unknown object '" + name + "'");
      }

      void build() {
        if (_kind == "category") {
          _ws.categories[_name] = validate_category(_cat_desc);
        } else if (_kind == "presheaf") {
          _ws.presheaves[_name] = validate_presheaf(_cat, PresheafDescription{_name, _carriers, _actions});
        } else if (_kind == "nat") {
          _ws.nats[_name] = validate_nat(_src, _tgt, _components);
        } else if (_kind == "topology") {
          _ws.topologies[_name] = _options.saturate ? generate_topology(_cat, _covers, _name)
                                                    : validate_topology(_cat, _covers, _name);
        } else if (_kind == "bisite") {
          if (_j.empty() || _k.empty()) {
            throw ValidationError("bisite " + _name + " needs both j and k", {_name});
          }
          _ws.bisites[_name] = make_bisite(_ws.topologies.at(_j), _ws.topologies.at(_k), _name);
        } else if (_kind == "table") {
          for (auto const& u : _units) {
            if (!(u.source().base() == _cat)) {
              throw ValidationError("unit of table " + _name + " lives over another category", {_name});
            }
          }
          _ws.tables[_name] = TableSpec{_cat, _local, _units};
        }
      }

      Workspace&                            _ws;
      std::string                           _source;
      LoadOptions                           _options;
      std::string                           _kind;
      std::string                           _name;
      std::string                           _start;
      std::vector<std::pair<std::string, std::string>> _lines;
      FinCat                                _cat;
      FinCatDescription                     _cat_desc;
      std::vector<std::vector<std::string>> _carriers;
      std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> _actions;
      std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> _components;
      Presheaf                              _src;
      Presheaf                              _tgt;
      std::vector<std::vector<std::size_t>> _covers;
      std::string                           _j;
      std::string                           _k;
      std::vector<Presheaf>                 _local;
      std::vector<NatTrans>                 _units;
    };

    std::string join_pairs(std::vector<std::pair<std::string, std::string>> const& pairs) {
      std::string out;
      for (auto const& [a, b] : pairs) {
        out += (out.empty() ? "" : ", ") + quote_token(a) + " -> " + quote_token(b);
      }
      return out;
    }

    std::string word_text(FinCat const& cat, std::vector<MorphismId> const& w) {
      std::string out;
      for (MorphismId g : w) {
        out += (out.empty() ? "" : ".") + quote_token(cat.morphism_name(g));
      }
      return out;
    }

  }  // namespace

  OraclePtr TableSpec::oracle(std::string const& name) const {
    std::vector<TableReflection::Entry> entries;
    for (auto const& u : units) {
      entries.push_back({u.source(), u});
    }
    return std::make_shared<TableReflection>(cat, name, local, std::move(entries));
  }

  Workspace::Workspace() {
    categories["rgph"] = sites::reflexive_graph();
    categories["idem"] = sites::idempotent_monoid();
    categories["discrete2"] = sites::discrete(2);
  }

  void load_text(Workspace& ws, std::string_view text, std::string const& source, LoadOptions const& options) {
    Loader      loader(ws, source, options);
    std::size_t number = 0;
    while (!text.empty()) {
      std::size_t nl   = text.find('\n');
      std::string_view line = text.substr(0, nl);
      loader.line(line, ++number);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    }
    loader.finish();
  }

  void load_file(Workspace& ws, std::string const& path, LoadOptions const& options) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError(path + ": cannot open");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    load_text(ws, buf.str(), path, options);
  }

  std::string quote_token(std::string const& token) {
    bool bare = !token.empty();
    for (char ch : token) {
      bare = bare && bare_char(ch);
    }
    if (bare) {
      return token;
    }
    std::string out = "\"";
    for (char ch : token) {
      if (ch == '"' || ch == '\\') {
        out += '\\';
      }
      out += ch;
    }
    return out + "\"";
  }

  std::string write_category(FinCat const& cat) {
    std::ostringstream out;
    out << "category " << quote_token(cat.name()) << "\n";
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      out << "object " << quote_token(cat.object_name(c)) << "\n";
    }
    for (MorphismId g : cat.generators()) {
      out << "mor " << quote_token(cat.morphism_name(g)) << " : " << quote_token(cat.object_name(cat.source(g)))
          << " -> " << quote_token(cat.object_name(cat.target(g))) << "\n";
    }
    // g.word(m) = word(g.m) for every generator g and every m before it.
    for (MorphismId g : cat.generators()) {
      for (MorphismId m : cat.into(cat.source(g))) {
        std::vector<MorphismId> lhs{g};
        for (MorphismId h : cat.word(m)) {
          lhs.push_back(h);
        }
        MorphismId gm = cat.compose(g, m);
        if (lhs == cat.word(gm)) {
          continue;
        }
        std::string rhs = cat.is_identity(gm) ? quote_token(cat.morphism_name(gm)) : word_text(cat, cat.word(gm));
        out << "rel " << word_text(cat, lhs) << " = " << rhs << "\n";
      }
    }
    return out.str();
  }

  std::string write_presheaf(std::string const& name, Presheaf const& p) {
    FinCat const&      cat = p.base();
    std::ostringstream out;
    out << "presheaf " << quote_token(name) << " over " << quote_token(cat.name()) << "\n";
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      out << "at " << quote_token(cat.object_name(c)) << ": {";
      for (ElementId x = 0; x < p.size(c); ++x) {
        out << (x ? ", " : "") << quote_token(p.label(c, x));
      }
      out << "}\n";
    }
    for (MorphismId g : cat.generators()) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (ElementId y = 0; y < p.size(cat.target(g)); ++y) {
        pairs.emplace_back(p.label(cat.target(g), y), p.label(cat.source(g), p.act(g, y)));
      }
      out << "act " << quote_token(cat.morphism_name(g)) << ":" << (pairs.empty() ? "" : " ") << join_pairs(pairs)
          << "\n";
    }
    return out.str();
  }

  std::string write_nat(std::string const& name, std::string const& source, std::string const& target, NatTrans const& alpha) {
    FinCat const&      cat = alpha.source().base();
    std::ostringstream out;
    out << "nat " << quote_token(name) << " : " << quote_token(source) << " -> " << quote_token(target) << "\n";
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (ElementId x = 0; x < alpha.source().size(c); ++x) {
        pairs.emplace_back(alpha.source().label(c, x), alpha.target().label(c, alpha(c, x)));
      }
      out << "component " << quote_token(cat.object_name(c)) << ":" << (pairs.empty() ? "" : " ")
          << join_pairs(pairs) << "\n";
    }
    return out.str();
  }

  std::string write_topology(std::string const& name, GTopology const& t) {
    FinCat const&      cat = t.base();
    SieveTable const&  st  = cat.sieves();
    std::ostringstream out;
    out << "topology " << quote_token(name) << " over " << quote_token(cat.name()) << "\n";
    for (ObjectId c = 0; c < cat.number_of_objects(); ++c) {
      for (std::size_t s : t.covering_sieves(c)) {
        out << "cover " << quote_token(cat.object_name(c)) << ": {";
        bool first = true;
        for (MorphismId g : st.generators(c, s)) {
          out << (first ? "" : ", ") << quote_token(cat.morphism_name(g));
          first = false;
        }
        out << "}\n";
      }
    }
    return out.str();
  }

  std::string write_bisite(std::string const& name, std::string const& j, std::string const& k) {
    return "bisite " + quote_token(name) + "\nj " + quote_token(j) + "\nk " + quote_token(k) + "\n";
  }

}  // namespace qtopos
