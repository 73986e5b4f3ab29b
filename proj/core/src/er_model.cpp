#include "platec/er_model.hpp"

#include <algorithm>
#include <tuple>

namespace platec {

std::string Cardinality::str() const {
  return "(" + std::to_string(min) + "," + (max ? std::to_string(*max) : std::string("N")) + ")";
}

std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::plate: return "plate";
    case EntityKind::global: return "global";
    case EntityKind::association: return "association";
  }
  return "plate";
}

std::string_view to_string(ErmStage s) {
  switch (s) {
    case ErmStage::structural: return "structural";
    case ErmStage::raw: return "raw";
    case ErmStage::reduced: return "reduced";
    case ErmStage::reduced_with_warnings: return "reduced-with-warnings";
  }
  return "raw";
}

std::optional<ErmStage> parse_erm_stage(std::string_view s) {
  for (auto st : {ErmStage::structural, ErmStage::raw, ErmStage::reduced, ErmStage::reduced_with_warnings}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

const Attribute* EntityType::find_attr(std::string_view n) const {
  auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == n; });
  return it == attrs.end() ? nullptr : &*it;
}

std::string AssociationLink::id() const {
  return association + "." + target + (role ? "#" + *role : std::string());
}

const EntityType* ERModel::find_entity(std::string_view n) const {
  auto it = std::find_if(entities.begin(), entities.end(), [&](const EntityType& e) { return e.name == n; });
  return it == entities.end() ? nullptr : &*it;
}

EntityType* ERModel::find_entity(std::string_view n) {
  auto it = std::find_if(entities.begin(), entities.end(), [&](const EntityType& e) { return e.name == n; });
  return it == entities.end() ? nullptr : &*it;
}

std::vector<const AssociationLink*> ERModel::links_of(std::string_view association) const {
  std::vector<const AssociationLink*> out;
  for (const auto& l : links) {
    if (l.association == association) out.push_back(&l);
  }
  return out;
}

std::size_t ERModel::association_count() const {
  return static_cast<std::size_t>(
      std::count_if(entities.begin(), entities.end(), [](const EntityType& e) { return e.is_association(); }));
}

void ERModel::canonicalize() {
  std::stable_sort(entities.begin(), entities.end(),
                   [](const EntityType& x, const EntityType& y) { return x.name < y.name; });
  std::stable_sort(links.begin(), links.end(), [](const AssociationLink& x, const AssociationLink& y) {
    return std::tie(x.association, x.target, x.role) < std::tie(y.association, y.target, y.role);
  });
  std::stable_sort(direct_rels.begin(), direct_rels.end(),
                   [](const DirectRelationship& x, const DirectRelationship& y) { return x.name < y.name; });
}

}  // namespace platec
