#include "platec/reducer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace platec {

EquivalenceHints EquivalenceHints::parse(std::string_view text) {
  EquivalenceHints hints;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (head != "equivalent") {
      throw SyntaxError({lineno, static_cast<int>(line.find(head)) + 1}, "unexpected '" + head + "'",
                        {"'equivalent'"});
    }
    std::vector<std::string> cls;
    for (std::string id; words >> id;) cls.push_back(id);
    if (cls.size() < 2) {
      throw SyntaxError({lineno, static_cast<int>(line.size()) + 1}, "an equivalence needs at least two relationships",
                        {"relationship name"});
    }
    hints.classes.push_back(std::move(cls));
  }
  return hints;
}

namespace {

using RelKey = std::pair<std::pair<std::string, Cardinality>, std::pair<std::string, Cardinality>>;

RelKey rel_key(const DirectRelationship& r) {
  auto x = std::make_pair(r.a, r.card_a);
  auto y = std::make_pair(r.b, r.card_b);
  if (y < x) std::swap(x, y);
  return {x, y};
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string mangle(std::string s) {
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return s;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

}  // namespace

bool is_degenerate(const ERModel& erm, const EntityType& assoc) {
  if (!assoc.is_association() || !assoc.key_attrs.empty()) return false;
  auto links = erm.links_of(assoc.name);
  return std::count_if(links.begin(), links.end(), [](const AssociationLink* l) { return l->identifying; }) == 1;
}

void merge_degenerate_association(ERModel& erm, std::string_view name, ValidationReport& report) {
  const EntityType* found = erm.find_entity(name);
  if (!found || !is_degenerate(erm, *found)) return;
  EntityType assoc = *found;

  std::string owner_name;
  std::vector<AssociationLink> others;
  for (const auto* l : erm.links_of(assoc.name)) {
    if (l->identifying) {
      owner_name = l->target;
    } else {
      others.push_back(*l);
    }
  }
  EntityType* owner = erm.find_entity(owner_name);
  if (!owner) return;

  for (auto attr : assoc.attrs) {
    if (owner->find_attr(attr.name)) {
      std::string renamed = mangle(assoc.name) + "_" + attr.name;
      report.warning("ATTR_RENAMED", "attribute '" + attr.name + "' of '" + assoc.name + "' renamed to '" + renamed +
                                         "' on '" + owner->name + "'");
      attr.name = renamed;
    }
    owner->attrs.push_back(std::move(attr));
  }
  for (const auto& l : others) {
    erm.direct_rels.push_back({l.id(), owner_name, l.target, Cardinality::one(), l.card_target, {l.id()}});
  }
  for (auto& r : erm.direct_rels) {
    if (r.a == assoc.name) r.a = owner_name;
    if (r.b == assoc.name) r.b = owner_name;
  }
  std::erase_if(erm.links, [&](const AssociationLink& l) { return l.association == assoc.name; });
  std::erase_if(erm.entities, [&](const EntityType& e) { return e.name == assoc.name; });
}

void merge_duplicate_relationships(ERModel& erm, const EquivalenceHints& hints, ValidationReport& report) {
  auto& rels = erm.direct_rels;
  UnionFind uf(rels.size());

  auto resolve = [&](const std::string& id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (rels[i].name == id ||
          std::find(rels[i].provenance.begin(), rels[i].provenance.end(), id) != rels[i].provenance.end()) {
        return i;
      }
    }
    return std::nullopt;
  };

  for (const auto& cls : hints.classes) {
    std::vector<std::size_t> members;
    for (const auto& id : cls) {
      if (auto i = resolve(id)) {
        members.push_back(*i);
      } else {
        report.warning("UNKNOWN_RELATIONSHIP", "hint names unknown relationship '" + id + "'");
      }
    }
    bool same = std::all_of(members.begin(), members.end(),
                            [&](std::size_t i) { return rel_key(rels[i]) == rel_key(rels[members.front()]); });
    if (!same) {
      std::string names;
      for (const auto& id : cls) names += (names.empty() ? "" : ", ") + id;
      report.error("HINT_MISMATCH", "relationships {" + names + "} differ in endpoints or cardinalities");
      continue;
    }
    for (auto i : members) uf.unite(i, members.front());
  }
  if (hints.assume_all) {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (std::size_t j = i + 1; j < rels.size(); ++j) {
        if (rel_key(rels[i]) == rel_key(rels[j])) uf.unite(i, j);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < rels.size(); ++i) classes[uf.find(i)].push_back(i);
  std::vector<DirectRelationship> merged;
  for (auto& [root, idx] : classes) {
    DirectRelationship r = rels[idx.front()];
    if (idx.size() > 1) {
      std::vector<std::string> names;
      std::set<std::string> prov;
      for (auto i : idx) {
        names.push_back(rels[i].name);
        prov.insert(rels[i].provenance.begin(), rels[i].provenance.end());
      }
      std::sort(names.begin(), names.end());
      r.name.clear();
      for (const auto& n : names) r.name += (r.name.empty() ? "" : "+") + n;
      r.provenance.assign(prov.begin(), prov.end());
    }
    merged.push_back(std::move(r));
  }
  rels = std::move(merged);

  std::map<RelKey, std::vector<std::string>> groups;
  for (const auto& r : rels) groups[rel_key(r)].push_back(r.name);
  for (const auto& [key, names] : groups) {
    if (names.size() < 2) continue;
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    report.warning("UNRESOLVED_DUPLICATE", "relationships {" + list + "} between '" + key.first.first + "' and '" +
                                               key.second.first + "' may be duplicates; add an equivalence hint");
  }
}

ReduceResult reduce(const ERModel& erm, const EquivalenceHints& hints) {
  ReduceResult out{erm, {}};
  ERModel& m = out.model;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : m.entities) {
      if (is_degenerate(m, e)) {
        merge_degenerate_association(m, std::string(e.name), out.report);
        changed = true;
        break;
      }
    }
  }
  // Pure artifacts: associations left with no attributes and no links.
  std::erase_if(m.entities, [&](const EntityType& e) {
    return e.is_association() && e.attrs.empty() && e.key_attrs.empty() && m.links_of(e.name).empty();
  });
  merge_duplicate_relationships(m, hints, out.report);
  bool unresolved = out.report.has("UNRESOLVED_DUPLICATE") || out.report.has("HINT_MISMATCH");
  m.stage = unresolved ? ErmStage::reduced_with_warnings : ErmStage::reduced;
  m.canonicalize();
  return out;
}

ValidationReport check_wellformed(const ERModel& erm) {
  ValidationReport r;

  std::set<std::string> names;
  std::size_t globals = 0;
  for (const auto& e : erm.entities) {
    if (!names.insert(e.name).second) r.error("DUPLICATE_ENTITY", "entity type '" + e.name + "' is defined twice");
    if (e.kind == EntityKind::global) ++globals;
  }
  if (globals > 1) r.error("MULTIPLE_GLOBAL", "more than one Global entity type");

  std::set<std::string> fk_names;
  for (const auto& e : erm.entities) {
    if (!e.is_association()) fk_names.insert(lower(e.name) + "id");
  }
  for (const auto& e : erm.entities) {
    for (const auto& a : e.attrs) {
      std::string n = lower(a.name);
      bool fk = n == "id" || (n.size() > 3 && n.ends_with("_id")) || fk_names.count(n);
      if (fk) {
        r.error("FOREIGN_KEY_ATTR",
                "attribute '" + e.name + "." + a.name + "' looks like a foreign key; use a relationship instead");
      }
    }
  }

  for (const auto& l : erm.links) {
    const EntityType* assoc = erm.find_entity(l.association);
    const EntityType* target = erm.find_entity(l.target);
    if (!assoc || !assoc->is_association() || !target || target->is_association()) {
      r.error("DANGLING_LINK", "link '" + l.id() + "' does not connect an association to an entity type");
    }
  }
  for (const auto& d : erm.direct_rels) {
    if (!erm.find_entity(d.a) || !erm.find_entity(d.b)) {
      r.error("DANGLING_LINK", "relationship '" + d.name + "' references an unknown entity type");
    }
  }

  for (const auto& e : erm.entities) {
    if (!e.is_association()) continue;
    auto links = erm.links_of(e.name);
    auto identifying = std::count_if(links.begin(), links.end(), [](const AssociationLink* l) { return l->identifying; });
    if (is_degenerate(erm, e)) {
      r.error("DEGENERATE_ASSOCIATION", "association '" + e.name + "' has a single identifying link and no key extension");
    } else if (identifying == 0 && e.key_attrs.empty()) {
      r.error("KEYLESS_ASSOCIATION", "association '" + e.name + "' has no identifying link");
    }
  }

  std::map<RelKey, std::vector<std::string>> groups;
  for (const auto& d : erm.direct_rels) groups[rel_key(d)].push_back(d.name);
  for (const auto& [key, rels] : groups) {
    if (rels.size() < 2) continue;
    std::string list;
    for (const auto& n : rels) list += (list.empty() ? "" : ", ") + n;
    r.warning("DUPLICATE_RELATIONSHIP", "relationships {" + list + "} share endpoints and cardinalities");
  }
  return r;
}

}  // namespace platec
