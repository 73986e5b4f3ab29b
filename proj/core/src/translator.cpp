#include "platec/translator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace platec {

namespace {

constexpr const char* kGlobal = "Global";

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string singular(std::string w) {
  if (w.size() > 3 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view es : {"sses", "xes", "ches", "shes"}) {
    if (w.size() > es.size() && ends_with(w, es)) return w.substr(0, w.size() - 2);
  }
  if (w.size() > 1 && ends_with(w, "s") && !ends_with(w, "ss")) return w.substr(0, w.size() - 1);
  return w;
}

EntityType* plate_entity(ERModel& erm, const std::string& plate) {
  for (auto& e : erm.entities) {
    if (e.kind == EntityKind::plate && !e.origin.empty() && e.origin.front() == plate) return &e;
  }
  return nullptr;
}

EntityType* association_for(ERModel& erm, const std::vector<std::string>& signature) {
  for (auto& e : erm.entities) {
    if (e.is_association() && e.origin == signature) return &e;
  }
  return nullptr;
}

std::string unique_name(std::string base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace

std::string entity_name_for_plate(const IndexSet& plate) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : plate.label) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  if (words.empty() || !std::isalpha(static_cast<unsigned char>(words.front()[0]))) return plate.name;
  words.back() = singular(words.back());
  std::string out;
  for (auto& w : words) {
    w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    out += w;
  }
  return out;
}

EntityType rule_entity_for_plate(const IndexSet& plate) {
  EntityType e;
  e.name = entity_name_for_plate(plate);
  e.kind = EntityKind::plate;
  e.origin = {plate.name};
  e.key_attrs = {"ID"};
  return e;
}

AssociationParts rule_association_for_intersection(const std::vector<EntityType>& members, std::string name) {
  AssociationParts parts;
  if (name.empty()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) name += '-';
      name += static_cast<char>(std::toupper(static_cast<unsigned char>(members[i].name[0])));
    }
  }
  parts.entity.name = name;
  parts.entity.kind = EntityKind::association;
  for (const auto& m : members) parts.entity.origin.insert(parts.entity.origin.end(), m.origin.begin(), m.origin.end());

  std::map<std::string, int> total, seen;
  for (const auto& m : members) ++total[m.name];
  for (const auto& m : members) {
    AssociationLink l;
    l.association = name;
    l.target = m.name;
    l.identifying = true;
    if (total[m.name] > 1) l.role = std::to_string(++seen[m.name]);
    l.card_target = Cardinality::many();
    l.card_assoc = Cardinality::one();
    parts.links.push_back(std::move(l));
  }
  return parts;
}

void rule_attribute_placement(const Atom& atom, const std::vector<IndexSet>& plates, ERModel& erm) {
  auto sig = atom.signature(plates);
  EntityType* owner = nullptr;
  if (sig.empty()) {
    owner = erm.find_entity(kGlobal);
    if (!owner) {
      EntityType g;
      g.name = kGlobal;
      g.kind = EntityKind::global;
      g.key_attrs = {"ID"};
      erm.entities.push_back(std::move(g));
      owner = &erm.entities.back();
    }
  } else if (sig.size() == 1) {
    owner = plate_entity(erm, sig.front());
  } else {
    owner = association_for(erm, sig);
  }
  if (!owner) throw TranslateError("MISSING_OWNER", "no entity type holds the plates of atom '" + atom.name + "'");
  owner->attrs.push_back({atom.source, atom.domain, atom.name});
}

void rule_nesting(ERModel& erm, const IndexSet& child, const IndexSet& parent) {
  const EntityType* child_e = plate_entity(erm, child.name);
  const EntityType* parent_e = plate_entity(erm, parent.name);
  if (!child_e || !parent_e) return;
  std::set<std::string> with_child;
  for (const auto& l : erm.links) {
    if (l.target == child_e->name) with_child.insert(l.association);
  }
  for (auto& l : erm.links) {
    if (l.target == parent_e->name && with_child.count(l.association)) {
      l.identifying = false;
      if (child.nonempty) l.card_target = Cardinality::many(1);
    }
  }
}

void rule_onehot(ERModel& erm, const Atom& atom, const std::vector<IndexSet>& plates) {
  if (!atom.onehot_over) return;
  auto sig = atom.signature(plates);
  EntityType* assoc = sig.size() >= 2 ? association_for(erm, sig) : nullptr;
  const EntityType* summed = plate_entity(erm, *atom.onehot_over);
  if (!assoc || !summed) {
    throw TranslateError("ONEHOT_WITHOUT_INTERSECTION",
                         "one-hot atom '" + atom.name + "' is not on an association containing '" +
                             *atom.onehot_over + "'");
  }
  AssociationLink* link = nullptr;
  for (auto& l : erm.links) {
    if (l.association == assoc->name && l.target == summed->name) link = &l;
  }
  if (!link) {
    throw TranslateError("ONEHOT_WITHOUT_INTERSECTION",
                         "association '" + assoc->name + "' has no link to '" + summed->name + "'");
  }
  link->identifying = false;
  std::erase_if(assoc->attrs, [&](const Attribute& a) { return a.source == atom.name; });
}

ERModel translate(const AtomicPlateModel& apm, const TranslateOptions& options) {
  ERModel erm;
  erm.name = apm.name;
  erm.stage = options.apply_constraints ? ErmStage::raw : ErmStage::structural;

  std::set<std::string> taken{kGlobal};
  std::map<std::string, EntityType> by_plate;
  for (const auto& p : apm.plates) {
    EntityType e = rule_entity_for_plate(p);
    e.name = unique_name(e.name, taken);
    taken.insert(e.name);
    by_plate[p.name] = e;
    erm.entities.push_back(std::move(e));
  }

  // Distinct intersections, ordered by arity then by plate position.
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < apm.plates.size(); ++i) position[apm.plates[i].name] = i;
  std::vector<std::vector<std::string>> signatures;
  for (const auto& a : apm.atoms) {
    auto sig = a.signature(apm.plates);
    if (sig.size() >= 2 && std::find(signatures.begin(), signatures.end(), sig) == signatures.end()) {
      signatures.push_back(std::move(sig));
    }
  }
  auto key = [&](const std::vector<std::string>& sig) {
    std::vector<std::size_t> k{sig.size()};
    for (const auto& p : sig) k.push_back(position[p]);
    return k;
  };
  std::sort(signatures.begin(), signatures.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });

  for (const auto& sig : signatures) {
    std::vector<EntityType> members;
    for (const auto& p : sig) members.push_back(by_plate.at(p));
    auto parts = rule_association_for_intersection(members);
    std::string name = unique_name(parts.entity.name, taken);
    if (name != parts.entity.name) parts = rule_association_for_intersection(members, name);
    taken.insert(name);
    erm.entities.push_back(std::move(parts.entity));
    erm.links.insert(erm.links.end(), parts.links.begin(), parts.links.end());
  }

  for (const auto& a : apm.atoms) rule_attribute_placement(a, apm.plates, erm);

  auto nesting = [&] {
    for (const auto& p : apm.plates) {
      if (!p.parent) continue;
      if (const IndexSet* parent = apm.find_plate(*p.parent)) rule_nesting(erm, p, *parent);
    }
  };
  auto onehot = [&] {
    for (const auto& a : apm.atoms) rule_onehot(erm, a, apm.plates);
  };
  if (options.apply_constraints && options.onehot_before_nesting) onehot();
  nesting();
  if (options.apply_constraints && !options.onehot_before_nesting) onehot();

  erm.canonicalize();
  return erm;
}

}  // namespace platec
