#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "platec/emitters.hpp"
#include "platec/reducer.hpp"

namespace platec {

namespace {

// SQL:2016 reserved words likely to collide with entity or variable names.
const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {
      "ALL",    "AND",     "ANY",     "ARRAY",  "AS",      "BEGIN",  "BETWEEN", "BY",     "CASE",   "CAST",
      "CHECK",  "COLUMN",  "CREATE",  "CROSS",  "CURRENT", "DATE",   "DAY",     "DEFAULT", "DELETE", "DESC",
      "DISTINCT", "DROP",  "ELSE",    "END",    "EXCEPT",  "EXISTS", "FALSE",   "FETCH",  "FOR",    "FOREIGN",
      "FROM",   "FULL",    "GLOBAL",  "GRANT",  "GROUP",   "HAVING", "HOUR",    "IN",     "INNER",  "INSERT",
      "INTERSECT", "INTO", "IS",      "JOIN",   "KEY",     "LEFT",   "LIKE",    "LOCAL",  "MATCH",  "MINUTE",
      "MONTH",  "NATURAL", "NOT",     "NULL",   "OF",      "ON",     "OR",      "ORDER",  "OUTER",  "PRIMARY",
      "REFERENCES", "RIGHT", "ROW",   "SECOND", "SELECT",  "SET",    "SOME",    "TABLE",  "THEN",   "TIME",
      "TO",     "TRUE",    "UNION",   "UNIQUE", "UPDATE",  "USER",   "USING",   "VALUE",  "VALUES", "WHEN",
      "WHERE",  "WITH",    "YEAR"};
  return words;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string ident(const std::string& s) {
  if (reserved().count(upper(s))) return "\"" + s + "\"";
  return s;
}

std::string snake(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (std::isupper(static_cast<unsigned char>(c))) {
      bool boundary = i > 0 && (std::islower(static_cast<unsigned char>(s[i - 1])) ||
                                std::isdigit(static_cast<unsigned char>(s[i - 1])));
      if (boundary && !out.empty() && out.back() != '_') out += '_';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  return out;
}

std::string sql_type(Domain d) {
  switch (d) {
    case Domain::real: return "DOUBLE PRECISION";
    case Domain::integer: return "INTEGER";
    case Domain::bit: return "BOOLEAN";
  }
  return "DOUBLE PRECISION";
}

struct Column {
  std::string name;
  std::string type;
  bool not_null = false;
  std::string comment;
};

struct ForeignKey {
  std::string column;
  std::string table;
};

struct Table {
  std::string name;
  std::string comment;
  std::vector<Column> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;

  bool has_column(const std::string& c) const {
    return std::any_of(columns.begin(), columns.end(), [&](const Column& x) { return x.name == c; });
  }
  std::string fresh(const std::string& base) const {
    if (!has_column(base)) return base;
    for (int i = 2;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (!has_column(candidate)) return candidate;
    }
  }
};

}  // namespace

std::string table_name(std::string_view entity) { return upper(snake(entity)); }

std::string fk_column(std::string_view entity, const std::optional<std::string>& role) {
  return snake(entity) + (role ? "_" + snake(*role) : std::string()) + "_id";
}

std::string emit_ddl(const ERModel& model, std::string_view dialect) {
  if (dialect != "ansi") throw EmitError("UNSUPPORTED_DIALECT", "unsupported DDL dialect '" + std::string(dialect) + "'");
  if (model.stage != ErmStage::reduced) {
    throw EmitError("NOT_REDUCED", "DDL needs a reduced model, got stage '" + std::string(to_string(model.stage)) + "'");
  }
  if (!check_wellformed(model).ok()) throw EmitError("NOT_WELLFORMED", "DDL needs a well-formed model");

  ERModel erm = model;
  erm.canonicalize();
  std::map<std::string, Table> tables;

  for (const auto& e : erm.entities) {
    Table t;
    t.name = table_name(e.name);
    t.comment = e.name;
    if (!e.is_association()) {
      t.columns.push_back({"id", "INTEGER", true, "artificial key"});
      t.primary_key.push_back("id");
    }
    tables.emplace(e.name, std::move(t));
  }

  // Association tables: identifying link columns first, then the rest.
  for (const auto& e : erm.entities) {
    if (!e.is_association()) continue;
    Table& t = tables.at(e.name);
    auto links = erm.links_of(e.name);
    std::stable_partition(links.begin(), links.end(), [](const AssociationLink* l) { return l->identifying; });
    for (const auto* l : links) {
      std::string col = t.fresh(fk_column(l->target, l->role));
      t.columns.push_back({col, "INTEGER", l->card_assoc.min >= 1,
                           l->target + " " + l->card_target.str() + " : " + e.name + " " + l->card_assoc.str()});
      t.foreign_keys.push_back({col, table_name(l->target)});
      if (l->identifying) t.primary_key.push_back(col);
    }
  }

  // Direct relationships: the single-valued side holds the foreign key.
  for (const auto& r : erm.direct_rels) {
    std::string note = "relationship " + r.name + ": " + r.a + " " + r.card_a.str() + " -- " + r.b + " " + r.card_b.str();
    auto single = [](const Cardinality& c) { return c.max && *c.max == 1; };
    if (single(r.card_a) || single(r.card_b)) {
      bool on_a = single(r.card_a);
      const std::string& holder = on_a ? r.a : r.b;
      const std::string& target = on_a ? r.b : r.a;
      const Cardinality& c = on_a ? r.card_a : r.card_b;
      Table& t = tables.at(holder);
      std::string col = t.fresh(fk_column(target));
      t.columns.push_back({col, "INTEGER", c.min >= 1, note});
      t.foreign_keys.push_back({col, table_name(target)});
    } else {
      Table t;
      t.name = table_name(r.name);
      t.comment = note;
      for (const auto* end : {&r.a, &r.b}) {
        std::string col = t.fresh(fk_column(*end));
        t.columns.push_back({col, "INTEGER", true, ""});
        t.foreign_keys.push_back({col, table_name(*end)});
        t.primary_key.push_back(col);
      }
      tables.emplace(r.name, std::move(t));
    }
  }

  for (const auto& e : erm.entities) {
    Table& t = tables.at(e.name);
    for (const auto& a : e.attrs) t.columns.push_back({t.fresh(a.name), sql_type(a.domain), false, ""});
  }

  // Referenced tables first; name order breaks ties and cycles.
  std::map<std::string, const Table*> by_table;
  for (const auto& [_, t] : tables) by_table[t.name] = &t;
  std::vector<const Table*> order;
  std::set<std::string> done;
  while (order.size() < by_table.size()) {
    const Table* next = nullptr;
    for (const auto& [name, t] : by_table) {
      if (done.count(name)) continue;
      bool ready = std::all_of(t->foreign_keys.begin(), t->foreign_keys.end(), [&](const ForeignKey& fk) {
        return fk.table == name || done.count(fk.table);
      });
      if (ready) {
        next = t;
        break;
      }
    }
    if (!next) {
      for (const auto& [name, t] : by_table) {
        if (!done.count(name)) {
          next = t;
          break;
        }
      }
    }
    done.insert(next->name);
    order.push_back(next);
  }

  std::ostringstream os;
  os << "-- Relational schema for " << erm.name << ".\n";
  os << "-- Minimum cardinalities above one are not enforceable here and appear as comments.\n";
  for (const auto* t : order) {
    os << "\n-- " << t->comment << "\n";
    os << "CREATE TABLE " << ident(t->name) << " (\n";
    std::vector<std::string> lines;
    for (const auto& c : t->columns) {
      std::string line;
      if (!c.comment.empty() && c.comment != "artificial key") line += "  -- " + c.comment + "\n";
      line += "  " + ident(c.name) + " " + c.type + (c.not_null ? " NOT NULL" : "");
      lines.push_back(std::move(line));
    }
    if (!t->primary_key.empty()) {
      std::string pk = "  PRIMARY KEY (";
      for (std::size_t i = 0; i < t->primary_key.size(); ++i) pk += (i ? ", " : "") + ident(t->primary_key[i]);
      lines.push_back(pk + ")");
    }
    for (const auto& fk : t->foreign_keys) {
      lines.push_back("  FOREIGN KEY (" + ident(fk.column) + ") REFERENCES " + ident(fk.table) + " (id)");
    }
    for (std::size_t i = 0; i < lines.size(); ++i) os << lines[i] << (i + 1 < lines.size() ? ",\n" : "\n");
    os << ");\n";
  }
  return os.str();
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::dot: return "dot";
    case Format::mermaid: return "mermaid";
    case Format::ddl: return "ddl";
  }
  return "json";
}

std::optional<Format> parse_format(std::string_view s) {
  for (auto f : {Format::json, Format::dot, Format::mermaid, Format::ddl}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::string emit(const AtomicPlateModel& apm, const EmitOptions& options) {
  switch (options.format) {
    case Format::json: return emit_json(apm);
    case Format::dot: return emit_dot(apm);
    default:
      throw EmitError("UNSUPPORTED", std::string(to_string(options.format)) + " output is not available for an APM");
  }
}

std::string emit(const ERModel& erm, const EmitOptions& options) {
  switch (options.format) {
    case Format::json: return emit_json(erm);
    case Format::dot: return emit_dot(erm);
    case Format::mermaid: return emit_mermaid(erm);
    case Format::ddl: return emit_ddl(erm, options.dialect);
  }
  return {};
}

}  // namespace platec
