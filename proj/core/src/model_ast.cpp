#include "platec/model_ast.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace platec {

std::string_view to_string(VariableKind k) {
  switch (k) {
    case VariableKind::observed: return "observed";
    case VariableKind::hidden: return "hidden";
    case VariableKind::hyper: return "hyper";
    case VariableKind::deterministic: return "deterministic";
  }
  return "hidden";
}

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::real: return "real";
    case Domain::bit: return "bit";
    case Domain::integer: return "int";
  }
  return "real";
}

std::optional<VariableKind> parse_kind(std::string_view s) {
  if (s == "observed") return VariableKind::observed;
  if (s == "hidden") return VariableKind::hidden;
  if (s == "hyper") return VariableKind::hyper;
  if (s == "deterministic") return VariableKind::deterministic;
  return std::nullopt;
}

std::optional<Domain> parse_domain(std::string_view s) {
  if (s == "real") return Domain::real;
  if (s == "bit") return Domain::bit;
  if (s == "int") return Domain::integer;
  return std::nullopt;
}

const IndexSet* PlateModel::find_index(std::string_view n) const {
  auto it = std::find_if(index_sets.begin(), index_sets.end(), [&](const IndexSet& i) { return i.name == n; });
  return it == index_sets.end() ? nullptr : &*it;
}

const Variable* PlateModel::find_variable(std::string_view n) const {
  auto it = std::find_if(variables.begin(), variables.end(), [&](const Variable& v) { return v.name == n; });
  return it == variables.end() ? nullptr : &*it;
}

namespace {

enum class Tok { ident, string, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int column = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokenizes one line at a time. Column numbers are 1-based byte offsets.
class LineLexer {
 public:
  LineLexer(std::string_view line, int lineno) : line_(line), lineno_(lineno) {}

  Token peek() {
    if (!peeked_) {
      peeked_ = lex();
    }
    return *peeked_;
  }

  Token next() {
    Token t = peek();
    peeked_.reset();
    return t;
  }

  SourceLocation loc(int column) const { return {lineno_, column}; }

  // Raw remainder of the line (comment stripped), starting after the current
  // position. Used for opaque def expressions.
  std::pair<std::string, int> rest() {
    peeked_.reset();
    std::size_t end = pos_;
    bool in_str = false;
    while (end < line_.size()) {
      char c = line_[end];
      if (c == '"') in_str = !in_str;
      if (c == '#' && !in_str) break;
      ++end;
    }
    std::string text(line_.substr(pos_, end - pos_));
    int col = static_cast<int>(pos_) + 1;
    pos_ = line_.size();
    return {text, col};
  }

 private:
  Token lex() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      pos_ = line_.size();
      return {Tok::end, "", col};
    }
    char c = line_[pos_];
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < line_.size() && ident_char(line_[pos_])) ++pos_;
      return {Tok::ident, std::string(line_.substr(start, pos_ - start)), col};
    }
    if (c == '"') {
      std::string value;
      ++pos_;
      while (pos_ < line_.size() && line_[pos_] != '"') {
        if (line_[pos_] == '\\' && pos_ + 1 < line_.size()) ++pos_;
        value += line_[pos_++];
      }
      if (pos_ >= line_.size()) throw SyntaxError(loc(col), "unterminated string literal", {"'\"'"});
      ++pos_;
      return {Tok::string, value, col};
    }
    if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
      pos_ += 2;
      return {Tok::punct, "->", col};
    }
    if (c == ':' || c == '[' || c == ']' || c == ',' || c == '=') {
      ++pos_;
      return {Tok::punct, std::string(1, c), col};
    }
    throw SyntaxError(loc(col), std::string("unexpected character '") + c + "'");
  }

  std::string_view line_;
  int lineno_;
  std::size_t pos_ = 0;
  std::optional<Token> peeked_;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of line";
    case Tok::string: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PlateModel run() {
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t nl = text_.find('\n', start);
      std::string_view line = text_.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++lineno;
      statement(line, lineno);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (!have_header_) throw SyntaxError({lineno, 1}, "missing model header", {"'model'"});
    return std::move(model_);
  }

 private:
  void statement(std::string_view line, int lineno) {
    LineLexer lx(line, lineno);
    Token head = lx.next();
    if (head.kind == Tok::end) return;
    if (!have_header_) {
      if (head.kind != Tok::ident || head.text != "model") {
        throw SyntaxError(lx.loc(head.column), "unexpected " + describe(head), {"'model'"});
      }
      model_.name = ident(lx, "model name");
      have_header_ = true;
      end(lx);
      return;
    }
    if (head.kind == Tok::ident) {
      if (head.text == "index") return index_decl(lx, head);
      if (head.text == "var") return var_decl(lx, head);
      if (head.text == "def") return def_decl(lx, head);
      if (head.text == "edge") return edge_decl(lx, head);
      if (head.text == "model") throw SyntaxError(lx.loc(head.column), "duplicate model header");
    }
    throw SyntaxError(lx.loc(head.column), "unexpected " + describe(head), {"'index'", "'var'", "'def'", "'edge'"});
  }

  void index_decl(LineLexer& lx, const Token& head) {
    IndexSet ix;
    ix.location = lx.loc(head.column);
    ix.name = ident(lx, "index name");
    Token t = lx.peek();
    if (t.kind == Tok::ident && t.text == "in") {
      lx.next();
      ix.parent = ident(lx, "parent index name");
      t = lx.peek();
    }
    if (t.kind == Tok::string) {
      ix.label = lx.next().text;
      t = lx.peek();
    }
    if (t.kind == Tok::ident && t.text == "nonempty") {
      lx.next();
      ix.nonempty = true;
    }
    t = lx.peek();
    if (t.kind != Tok::end) {
      throw SyntaxError(lx.loc(t.column), "unexpected " + describe(t), {"'in'", "label string", "'nonempty'", "end of line"});
    }
    declare(ix.name, ix.location);
    model_.index_sets.push_back(std::move(ix));
  }

  // `<name> : <domain>[dims]` shared by var and def.
  Variable typed_name(LineLexer& lx, const Token& head) {
    Variable v;
    v.location = lx.loc(head.column);
    v.name = ident(lx, "variable name");
    expect(lx, ":");
    Token d = lx.next();
    auto domain = d.kind == Tok::ident ? parse_domain(d.text) : std::nullopt;
    if (!domain) throw SyntaxError(lx.loc(d.column), "unexpected " + describe(d), {"'real'", "'bit'", "'int'"});
    v.domain = *domain;
    if (lx.peek().kind == Tok::punct && lx.peek().text == "[") {
      lx.next();
      if (lx.peek().kind == Tok::punct && lx.peek().text == "]") {
        lx.next();
      } else {
        for (;;) {
          v.dims.push_back(ident(lx, "index name"));
          Token sep = lx.next();
          if (sep.kind == Tok::punct && sep.text == "]") break;
          if (sep.kind != Tok::punct || sep.text != ",") {
            throw SyntaxError(lx.loc(sep.column), "unexpected " + describe(sep), {"','", "']'"});
          }
        }
      }
    }
    return v;
  }

  void var_decl(LineLexer& lx, const Token& head) {
    Variable v = typed_name(lx, head);
    Token k = lx.next();
    auto kind = k.kind == Tok::ident ? parse_kind(k.text) : std::nullopt;
    if (!kind || *kind == VariableKind::deterministic) {
      throw SyntaxError(lx.loc(k.column), "unexpected " + describe(k), {"'observed'", "'hidden'", "'hyper'"});
    }
    v.kind = *kind;
    Token t = lx.peek();
    if (t.kind == Tok::ident && t.text == "onehot") {
      lx.next();
      Token over = lx.next();
      if (over.kind != Tok::ident || over.text != "over") {
        throw SyntaxError(lx.loc(over.column), "unexpected " + describe(over), {"'over'"});
      }
      v.onehot_over = ident(lx, "index name");
    }
    end(lx);
    declare(v.name, v.location);
    model_.variables.push_back(std::move(v));
  }

  void def_decl(LineLexer& lx, const Token& head) {
    Variable v = typed_name(lx, head);
    v.kind = VariableKind::deterministic;
    expect(lx, "=");
    auto [raw, col] = lx.rest();
    Transform tr;
    // The expression runs up to the last standalone `uses` keyword.
    std::size_t cut = std::string::npos;
    for (std::size_t p = raw.find("uses"); p != std::string::npos; p = raw.find("uses", p + 1)) {
      bool left = p == 0 || std::isspace(static_cast<unsigned char>(raw[p - 1]));
      bool right = p + 4 >= raw.size() || std::isspace(static_cast<unsigned char>(raw[p + 4]));
      if (left && right && p > 0) cut = p;
    }
    std::string expr = raw.substr(0, cut);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    tr.expression = trim(expr);
    if (tr.expression.empty()) throw SyntaxError(lx.loc(col), "empty transform expression", {"expression"});
    if (cut != std::string::npos) {
      std::string deps = raw.substr(cut + 4);
      int dep_col = col + static_cast<int>(cut) + 4;
      LineLexer dl(deps, lx.loc(0).line);
      for (;;) {
        Token t = dl.next();
        if (t.kind != Tok::ident) {
          throw SyntaxError({lx.loc(0).line, dep_col + t.column - 1}, "unexpected " + describe(t), {"variable name"});
        }
        tr.uses.push_back(t.text);
        Token sep = dl.next();
        if (sep.kind == Tok::end) break;
        if (sep.kind != Tok::punct || sep.text != ",") {
          throw SyntaxError({lx.loc(0).line, dep_col + sep.column - 1}, "unexpected " + describe(sep),
                            {"','", "end of line"});
        }
      }
    }
    v.transform = std::move(tr);
    declare(v.name, v.location);
    model_.variables.push_back(std::move(v));
  }

  void edge_decl(LineLexer& lx, const Token& head) {
    Edge e;
    e.location = lx.loc(head.column);
    e.src = ident(lx, "variable name");
    expect(lx, "->");
    e.dst = ident(lx, "variable name");
    end(lx);
    model_.edges.push_back(std::move(e));
  }

  std::string ident(LineLexer& lx, const std::string& what) {
    Token t = lx.next();
    if (t.kind != Tok::ident) throw SyntaxError(lx.loc(t.column), "unexpected " + describe(t), {what});
    return t.text;
  }

  void expect(LineLexer& lx, const std::string& punct) {
    Token t = lx.next();
    if (t.kind != Tok::punct || t.text != punct) {
      throw SyntaxError(lx.loc(t.column), "unexpected " + describe(t), {"'" + punct + "'"});
    }
  }

  void end(LineLexer& lx) {
    Token t = lx.next();
    if (t.kind != Tok::end) throw SyntaxError(lx.loc(t.column), "unexpected " + describe(t), {"end of line"});
  }

  void declare(const std::string& name, SourceLocation loc) {
    auto [it, inserted] = declared_.emplace(name, loc);
    if (!inserted) throw DuplicateName(loc, name, it->second);
  }

  std::string_view text_;
  PlateModel model_;
  bool have_header_ = false;
  std::map<std::string, SourceLocation> declared_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

}  // namespace

PlateModel parse(std::string_view text) { return Parser(text).run(); }

std::string print(const PlateModel& m) {
  std::ostringstream os;
  os << "model " << m.name << '\n';
  for (const auto& ix : m.index_sets) {
    os << "index " << ix.name;
    if (ix.parent) os << " in " << *ix.parent;
    if (!ix.label.empty()) os << ' ' << quote(ix.label);
    if (ix.nonempty) os << " nonempty";
    os << '\n';
  }
  for (const auto& v : m.variables) {
    os << (v.transform ? "def " : "var ") << v.name << " : " << to_string(v.domain);
    if (!v.dims.empty()) os << '[' << join(v.dims, ",") << ']';
    if (v.transform) {
      os << " = " << v.transform->expression;
      if (!v.transform->uses.empty()) os << " uses " << join(v.transform->uses, ", ");
    } else {
      os << ' ' << to_string(v.kind);
      if (v.onehot_over) os << " onehot over " << *v.onehot_over;
    }
    os << '\n';
  }
  for (const auto& e : m.edges) os << "edge " << e.src << " -> " << e.dst << '\n';
  return os.str();
}

PlateModel strip_locations(PlateModel m) {
  for (auto& i : m.index_sets) i.location = {};
  for (auto& v : m.variables) v.location = {};
  for (auto& e : m.edges) e.location = {};
  return m;
}

ValidationReport validate(const PlateModel& m) {
  ValidationReport r;

  std::map<std::string, SourceLocation> names;
  auto declare = [&](const std::string& n, SourceLocation loc) {
    if (!names.emplace(n, loc).second) r.error("DUPLICATE_NAME", "'" + n + "' is declared more than once", loc);
  };
  for (const auto& ix : m.index_sets) declare(ix.name, ix.location);
  for (const auto& v : m.variables) declare(v.name, v.location);

  // Index sets: parents resolve and form a forest.
  bool parents_ok = true;
  for (const auto& ix : m.index_sets) {
    if (ix.parent && !m.find_index(*ix.parent)) {
      r.error("UNDECLARED_INDEX", "parent '" + *ix.parent + "' of index '" + ix.name + "' is not declared", ix.location);
      parents_ok = false;
    }
  }
  if (parents_ok) {
    for (const auto& ix : m.index_sets) {
      std::set<std::string> seen{ix.name};
      const IndexSet* cur = &ix;
      while (cur->parent) {
        if (!seen.insert(*cur->parent).second) {
          r.error("PARENT_CYCLE", "nesting of index '" + ix.name + "' is cyclic", ix.location);
          parents_ok = false;
          break;
        }
        cur = m.find_index(*cur->parent);
      }
    }
  }

  // Variables.
  bool dims_ok = true;
  for (const auto& v : m.variables) {
    for (const auto& d : v.dims) {
      if (!m.find_index(d)) {
        r.error("UNDECLARED_INDEX", "variable '" + v.name + "' uses undeclared index '" + d + "'", v.location);
        dims_ok = false;
      }
    }
    if (v.onehot_over) {
      if (v.domain != Domain::bit) {
        r.error("ONEHOT_NOT_BIT", "one-hot constraint on non-bit variable '" + v.name + "'", v.location);
      }
      if (!m.find_index(*v.onehot_over)) {
        r.error("UNDECLARED_INDEX", "one-hot index '" + *v.onehot_over + "' is not declared", v.location);
        dims_ok = false;
      } else if (std::find(v.dims.begin(), v.dims.end(), *v.onehot_over) == v.dims.end()) {
        r.error("ONEHOT_NOT_IN_DIMS", "one-hot index '" + *v.onehot_over + "' is not a dimension of '" + v.name + "'",
                v.location);
        dims_ok = false;
      }
    }
    if (v.transform.has_value() != (v.kind == VariableKind::deterministic)) {
      r.error("TRANSFORM_KIND_MISMATCH",
              "variable '" + v.name + "' must have a transform iff it is deterministic", v.location);
    }
    if (v.transform) {
      for (const auto& u : v.transform->uses) {
        if (!m.find_variable(u)) {
          r.error("UNDECLARED_VARIABLE", "transform of '" + v.name + "' uses undeclared '" + u + "'", v.location);
        }
      }
    }
  }

  // Edges plus transform dependencies must form a DAG.
  std::map<std::string, std::vector<std::string>> succ;
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : m.edges) {
    bool ok = true;
    for (const auto* end : {&e.src, &e.dst}) {
      if (!m.find_variable(*end)) {
        r.error("UNDECLARED_VARIABLE", "edge endpoint '" + *end + "' is not a declared variable", e.location);
        ok = false;
      }
    }
    if (!seen_edges.emplace(e.src, e.dst).second) {
      r.warning("DUPLICATE_EDGE", "edge " + e.src + " -> " + e.dst + " is declared twice", e.location);
    }
    if (ok) succ[e.src].push_back(e.dst);
  }
  for (const auto& v : m.variables) {
    if (!v.transform) continue;
    for (const auto& u : v.transform->uses) {
      if (m.find_variable(u)) succ[u].push_back(v.name);
    }
  }
  {
    std::map<std::string, int> state;  // 1 = on stack, 2 = done
    std::function<bool(const std::string&)> dfs = [&](const std::string& n) {
      state[n] = 1;
      for (const auto& s : succ[n]) {
        if (state[s] == 1) return true;
        if (state[s] == 0 && dfs(s)) return true;
      }
      state[n] = 2;
      return false;
    };
    for (const auto& v : m.variables) {
      if (state[v.name] == 0 && dfs(v.name)) {
        r.error("EDGE_CYCLE", "edges and transform dependencies through '" + v.name + "' form a cycle", v.location);
        break;
      }
    }
  }

  if (!parents_ok || !dims_ok) return r;

  // Plate-level checks on resolved references.
  auto closure = [&](const std::vector<std::string>& dims) {
    std::set<std::string> out;
    for (const auto& d : dims) {
      for (const IndexSet* ix = m.find_index(d); ix; ix = ix->parent ? m.find_index(*ix->parent) : nullptr) {
        out.insert(ix->name);
      }
    }
    return out;
  };
  std::set<std::string> used;
  for (const auto& v : m.variables) {
    auto c = closure(v.dims);
    used.insert(c.begin(), c.end());
  }
  for (const auto& ix : m.index_sets) {
    if (!used.count(ix.name)) r.warning("UNUSED_INDEX", "index '" + ix.name + "' is not used by any variable", ix.location);
  }

  // Group variables by membership multiset; each group becomes one
  // association and must keep at least one identifying link.
  std::map<std::vector<std::string>, std::vector<const Variable*>> groups;
  for (const auto& v : m.variables) {
    auto c = closure(v.dims);
    std::vector<std::string> sig(c.begin(), c.end());
    for (const auto& d : c) {
      auto n = std::count(v.dims.begin(), v.dims.end(), d);
      for (long i = 1; i < n; ++i) sig.push_back(d);
    }
    std::sort(sig.begin(), sig.end());
    if (v.onehot_over && sig.size() == 1) {
      r.error("ONEHOT_WITHOUT_INTERSECTION",
              "one-hot index '" + *v.onehot_over + "' of '" + v.name + "' does not intersect another plate", v.location);
      continue;
    }
    if (sig.size() >= 2) groups[sig].push_back(&v);
  }
  for (const auto& [sig, vars] : groups) {
    std::set<std::string> members(sig.begin(), sig.end());
    // (plate, occurrence) -> identifying?
    std::vector<std::pair<std::string, bool>> links;
    for (const auto& p : sig) {
      const IndexSet* ix = m.find_index(p);
      bool nested_parent = std::any_of(members.begin(), members.end(), [&](const std::string& o) {
        const IndexSet* other = m.find_index(o);
        return other->parent && *other->parent == ix->name;
      });
      links.emplace_back(p, !nested_parent);
    }
    for (const auto* v : vars) {
      if (!v->onehot_over) continue;
      for (auto it = links.rbegin(); it != links.rend(); ++it) {
        if (it->first == *v->onehot_over) {
          it->second = false;
          break;
        }
      }
    }
    if (std::none_of(links.begin(), links.end(), [](const auto& l) { return l.second; })) {
      r.error("NO_IDENTIFYING_LINK",
              "nesting and one-hot constraints leave the intersection of '" + vars.front()->name +
                  "' without an identifying plate",
              vars.front()->location);
    }
  }
  return r;
}

}  // namespace platec
